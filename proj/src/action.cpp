#include "chowbench/action.hpp"

#include <algorithm>
#include <stdexcept>

#include "chowbench/fan.hpp"

namespace chowbench {

namespace {

// all nonempty faces as (vertex set, dim), including the polytope itself
struct FaceList {
    std::vector<std::vector<int>> faces;
    std::vector<int> dims;
};

FaceList enumerate_faces(const LatticePolytope& P) {
    FaceList out;
    const auto& L = P.face_lattice();
    for (int level = 1; level < (int)L.by_dim.size(); ++level) {
        for (const auto& f : L.by_dim[level]) {
            out.faces.push_back(f);
            out.dims.push_back(level - 1);
        }
    }
    return out;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// vertices of the face attaining the extreme weight (max if sign>0)
std::vector<int> extreme_subface(const std::vector<int>& face, const std::vector<Int>& w, int sign) {
    Int best = w[face[0]];
    for (int v : face) {
        if (sign > 0 ? w[v] > best : w[v] < best) best = w[v];
    }
    std::vector<int> out;
    for (int v : face)
        if (w[v] == best) out.push_back(v);
    return out;
}

BBClosure bb_closure_core(const LatticePolytope& P, const std::vector<Int>& weights,
                          const std::vector<int>& F, int sign) {
    FaceList all = enumerate_faces(P);
    std::vector<std::vector<int>> members;
    std::vector<int> member_dims;
    for (size_t g = 0; g < all.faces.size(); ++g) {
        // for B^+ the nu-maximizing face of G must lie in F; B^- dually
        auto ext = extreme_subface(all.faces[g], weights, sign > 0 ? +1 : -1);
        if (subset_of(ext, F)) {
            members.push_back(all.faces[g]);
            member_dims.push_back(all.dims[g]);
        }
    }
    BBClosure out;
    int maxdim = 0;
    for (size_t i = 0; i < members.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < members.size(); ++j)
            if (i != j && subset_of(members[i], members[j])) { maximal = false; break; }
        if (maximal) {
            out.faces.push_back(members[i]);
            maxdim = std::max(maxdim, member_dims[i]);
        }
    }
    std::sort(out.faces.begin(), out.faces.end());
    out.codim = P.dim() - maxdim;

    // transverse edge directions at a representative vertex of F
    const auto edges = P.edges();
    int v0 = F[0];
    int count = 0;
    for (const auto& e : edges) {
        int other = -1;
        if (e.first == v0) other = e.second;
        else if (e.second == v0) other = e.first;
        if (other < 0 || std::binary_search(F.begin(), F.end(), other)) continue;
        Int diff = weights[other] - weights[v0];
        if (sign > 0 ? diff < 0 : diff > 0) ++count;
    }
    out.nu_count = count;
    return out;
}

}  // namespace

EqualizationResult equalization_check(const LatticePolytope& delta, const IntVec& nu) {
    EqualizationResult out;
    for (const auto& e : delta.edges()) {
        RatVec d = vec_sub(delta.vertices()[e.second], delta.vertices()[e.first]);
        IntVec u = primitive_from_rational(d);
        Int p = dot(u, nu);
        if (p < -1 || p > 1) {
            out.equalized = false;
            out.offending_edges.push_back({e.first, e.second, p, boost::multiprecision::abs(p)});
        }
    }
    return out;
}

ActionAnalysis analyze_action(const LatticePolytope& delta, const IntVec& nu_in) {
    if ((int)nu_in.size() != delta.ambient_dim())
        throw std::invalid_argument("nu dimension mismatch");
    bool zero = true;
    for (const auto& c : nu_in) zero = zero && c == 0;
    if (zero) throw std::invalid_argument("ZeroVector");
    if (delta.min_pairing(nu_in) == delta.max_pairing(nu_in))
        throw std::runtime_error("TrivialAction");
    if (!delta.is_lattice_polytope() || !delta.full_dimensional())
        throw std::invalid_argument("action polytope must be a full-dimensional lattice polytope");

    ActionAnalysis a;
    a.polytope = delta;
    a.nu = primitive_vector(nu_in);
    if (a.nu != nu_in) {
        Int g = content(nu_in);
        a.warnings.push_back("non-primitive nu re-parametrized: divided by " + g.str());
    }

    // weights, normalized to minimum 0
    std::vector<Int> raw;
    for (const auto& v : delta.vertices()) {
        Rational w = dot(v, a.nu);
        raw.push_back(rat_num(w));  // lattice vertices => integral
    }
    Int lo = raw[0], hi = raw[0];
    for (const auto& w : raw) { lo = std::min(lo, w); hi = std::max(hi, w); }
    if (lo == hi) throw std::runtime_error("TrivialAction");
    a.weight_offset = lo;
    for (const auto& w : raw) a.vertex_weights.push_back(w - lo);
    a.critical_values = a.vertex_weights;
    std::sort(a.critical_values.begin(), a.critical_values.end());
    a.critical_values.erase(std::unique(a.critical_values.begin(), a.critical_values.end()),
                            a.critical_values.end());
    a.criticality = (int)a.critical_values.size() - 1;
    a.bandwidth = a.critical_values.back();

    a.delta_smooth = is_smooth(normal_fan(delta));

    // fixed components = maximal nu-constant faces
    FaceList all = enumerate_faces(delta);
    std::vector<int> constant;  // indices into all.faces
    for (size_t g = 0; g < all.faces.size(); ++g) {
        bool c = true;
        for (int v : all.faces[g]) c = c && a.vertex_weights[v] == a.vertex_weights[all.faces[g][0]];
        if (c) constant.push_back((int)g);
    }
    for (int gi : constant) {
        bool maximal = true;
        for (int gj : constant)
            if (gi != gj && subset_of(all.faces[gi], all.faces[gj])) { maximal = false; break; }
        if (maximal) {
            FixedFace f;
            f.vertices = all.faces[gi];
            f.weight = a.vertex_weights[f.vertices[0]];
            f.dim = all.dims[gi];
            a.fixed_faces.push_back(std::move(f));
        }
    }
    std::sort(a.fixed_faces.begin(), a.fixed_faces.end(), [](const FixedFace& x, const FixedFace& y) {
        return x.weight != y.weight ? x.weight < y.weight : x.vertices < y.vertices;
    });
    std::vector<int> cover(delta.vertices().size(), 0);
    for (const auto& f : a.fixed_faces)
        for (int v : f.vertices) ++cover[v];
    for (int c : cover)
        if (c != 1) throw std::runtime_error("fixed faces do not partition the vertices");

    for (size_t i = 0; i < a.fixed_faces.size(); ++i) {
        if (a.fixed_faces[i].weight == 0) {
            if (a.sink_index >= 0) throw std::runtime_error("non-unique sink");
            a.sink_index = (int)i;
        }
        if (a.fixed_faces[i].weight == a.bandwidth) {
            if (a.source_index >= 0) throw std::runtime_error("non-unique source");
            a.source_index = (int)i;
        }
    }

    for (const auto& f : a.fixed_faces) {
        a.bb_plus.push_back(bb_closure_core(delta, a.vertex_weights, f.vertices, +1));
        a.bb_minus.push_back(bb_closure_core(delta, a.vertex_weights, f.vertices, -1));
    }

    auto eq = equalization_check(delta, a.nu);
    a.equalized = eq.equalized;
    a.offending_edges = std::move(eq.offending_edges);

    const int d = delta.dim();
    bool inner_codim2 = true, inner_nu2 = true, star = true;
    for (size_t i = 0; i < a.fixed_faces.size(); ++i) {
        const Int& w = a.fixed_faces[i].weight;
        if (w == 0 || w == a.bandwidth) continue;
        if (a.bb_plus[i].codim < 2 || a.bb_minus[i].codim < 2) inner_codim2 = false;
        if (a.bb_plus[i].nu_count < 2 || a.bb_minus[i].nu_count < 2) inner_nu2 = false;
        // Condition (*) restricts to weights a_i with 2 <= i <= r-2
        auto it = std::find(a.critical_values.begin(), a.critical_values.end(), w);
        int idx = (int)(it - a.critical_values.begin());
        if (idx >= 2 && idx <= a.criticality - 2 &&
            (a.bb_plus[i].codim <= 1 || a.bb_minus[i].codim <= 1))
            star = false;
    }
    a.condition_star = star;
    a.theorem_hypothesis = inner_codim2;
    a.bordism = inner_nu2;
    a.b_type = a.fixed_faces[a.sink_index].dim == d - 1 &&
               a.fixed_faces[a.source_index].dim == d - 1 && inner_codim2;

    a.bordism_identity_ok = a.delta_smooth;
    if (a.delta_smooth) {
        for (size_t i = 0; i < a.fixed_faces.size(); ++i) {
            bool ok = a.bb_plus[i].codim == a.bb_minus[i].nu_count &&
                      a.bb_minus[i].codim == a.bb_plus[i].nu_count &&
                      a.bb_plus[i].nu_count + a.bb_minus[i].nu_count + a.fixed_faces[i].dim == d;
            if (!ok) a.bordism_identity_ok = false;
        }
    }
    return a;
}

BBClosure bb_closure(const ActionAnalysis& a, const std::vector<int>& face_vertices, int sign) {
    std::vector<int> F = face_vertices;
    std::sort(F.begin(), F.end());
    bool fixed = false;
    for (const auto& f : a.fixed_faces) fixed = fixed || f.vertices == F;
    if (!fixed) throw std::invalid_argument("not a fixed face");
    return bb_closure_core(a.polytope, a.vertex_weights, F, sign);
}

std::vector<EdgeCurve> amfm_check(const ActionAnalysis& a) {
    if (!a.equalized) throw std::runtime_error("NotEqualized");
    std::vector<EdgeCurve> out;
    for (const auto& e : a.polytope.edges()) {
        Int wv = a.vertex_weights[e.first], ww = a.vertex_weights[e.second];
        if (wv == ww) continue;
        RatVec d = vec_sub(a.polytope.vertices()[e.second], a.polytope.vertices()[e.first]);
        IntVec diff(d.size());
        for (size_t k = 0; k < d.size(); ++k) diff[k] = rat_num(d[k]);
        Int length = content(diff);
        Int degree = boost::multiprecision::abs(ww - wv);
        if (length != degree) throw std::runtime_error("amfm identity violated");
        EdgeCurve c;
        c.sink = wv < ww ? e.first : e.second;
        c.source = wv < ww ? e.second : e.first;
        c.degree = degree;
        out.push_back(c);
    }
    return out;
}

}  // namespace chowbench
