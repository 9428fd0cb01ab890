#include "chowbench/polytope.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "chowbench/dd.hpp"

namespace chowbench {

namespace {

std::mutex face_lattice_mutex;

int affine_rank(const std::vector<RatVec>& pts) {
    if (pts.empty()) return -1;
    std::vector<RatVec> dirs;
    for (size_t i = 1; i < pts.size(); ++i) dirs.push_back(vec_sub(pts[i], pts[0]));
    if (dirs.empty()) return 0;
    return rank(from_rows_rat(dirs));
}

// Scale a rational covector + offset so the covector becomes primitive integer.
Facet normalize_facet(const RatVec& w, const Rational& offset) {
    IntVec p = primitive_from_rational(w);
    int k = 0;
    while (w[k] == 0) ++k;
    Rational s = Rational(p[k]) / w[k];
    return Facet{p, s * offset};
}

}  // namespace

LatticePolytope LatticePolytope::hull(std::vector<RatVec> points, std::string lattice_tag) {
    if (points.empty()) throw std::invalid_argument("hull: no points");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    LatticePolytope P;
    P.ambient_dim_ = static_cast<int>(points[0].size());
    P.lattice_tag_ = std::move(lattice_tag);
    const int n = P.ambient_dim_;
    const RatVec q0 = points[0];

    // Intrinsic dimension via a greedy affinely independent subset.
    std::vector<RatVec> indep;
    for (size_t i = 1; i < points.size(); ++i) {
        indep.push_back(vec_sub(points[i], q0));
        if (rank(from_rows_rat(indep)) != static_cast<int>(indep.size())) indep.pop_back();
    }
    const int d = static_cast<int>(indep.size());
    P.dim_ = d;

    if (d == 0) {
        P.vertices_ = {q0};
        for (int i = 0; i < n; ++i) {
            IntVec e(n, Int(0));
            e[i] = 1;
            P.equations_.push_back(Facet{e, -q0[i]});
        }
        return P;
    }

    // Saturated direction lattice and affine-hull equations.
    if (d == n) {
        for (int i = 0; i < n; ++i) {
            IntVec e(n, Int(0));
            e[i] = 1;
            P.direction_basis_.push_back(e);
        }
    } else {
        std::vector<IntVec> spanning;
        for (const auto& v : indep) spanning.push_back(primitive_from_rational(v));
        std::vector<IntVec> eq_normals = lattice_kernel(from_rows(spanning));
        for (const auto& c : eq_normals)
            P.equations_.push_back(Facet{c, -dot(q0, c)});
        P.direction_basis_ = lattice_kernel(from_rows(eq_normals));
    }

    // Intrinsic coordinates y = F (x - q0).
    RationalMatrix F;
    {
        RationalMatrix B(d, n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < n; ++j) B(i, j) = Rational(P.direction_basis_[i][j]);
        if (d == n) {
            F = *inverse(B);
        } else {
            RationalMatrix G = mat_mul(B, transpose(B));
            F = mat_mul(*inverse(G), B);
        }
    }
    auto to_intrinsic = [&](const RatVec& x) {
        RatVec w = vec_sub(x, q0);
        RatVec y(d);
        for (int i = 0; i < d; ++i) y[i] = dot(F.row(i), w);
        return y;
    };

    const int m = static_cast<int>(points.size());
    std::vector<RatVec> ys(m);
    for (int i = 0; i < m; ++i) ys[i] = to_intrinsic(points[i]);

    // Facets of the cone over (1, y): double description.
    IntMatrix A(m, d + 1);
    for (int i = 0; i < m; ++i) {
        RatVec row(d + 1);
        row[0] = 1;
        for (int j = 0; j < d; ++j) row[j + 1] = ys[i][j];
        IntVec r = primitive_from_rational(row);
        for (int j = 0; j <= d; ++j) A(i, j) = r[j];
    }
    std::vector<IntVec> facet_rays = dd::extreme_rays(A);

    // Incidence over all input points, then vertex detection: a point is a
    // vertex iff its active facet normals span the intrinsic space.
    std::vector<std::vector<int>> tight(facet_rays.size());
    for (size_t f = 0; f < facet_rays.size(); ++f) {
        const IntVec& ray = facet_rays[f];
        for (int i = 0; i < m; ++i) {
            Rational val = Rational(ray[0]);
            for (int j = 0; j < d; ++j) val += Rational(ray[j + 1]) * ys[i][j];
            if (val == 0) tight[f].push_back(i);
        }
    }
    std::vector<int> vertex_of(m, -1);
    std::vector<int> vertex_points;
    for (int i = 0; i < m; ++i) {
        std::vector<RatVec> active;
        for (size_t f = 0; f < facet_rays.size(); ++f)
            if (std::binary_search(tight[f].begin(), tight[f].end(), i)) {
                RatVec nrm(d);
                for (int j = 0; j < d; ++j) nrm[j] = Rational(facet_rays[f][j + 1]);
                active.push_back(std::move(nrm));
            }
        if (!active.empty() && rank(from_rows_rat(active)) == d) {
            vertex_of[i] = static_cast<int>(vertex_points.size());
            vertex_points.push_back(i);
        }
    }
    for (int i : vertex_points) P.vertices_.push_back(points[i]);

    // Ambient facet inequalities: lift n~ . y + c >= 0 through y = F (x - q0).
    struct Built {
        Facet facet;
        std::vector<int> verts;
    };
    std::vector<Built> built;
    for (size_t f = 0; f < facet_rays.size(); ++f) {
        RatVec w(n, Rational(0));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < d; ++k) w[j] += Rational(facet_rays[f][k + 1]) * F(k, j);
        Rational off = Rational(facet_rays[f][0]) - dot(w, q0);
        std::vector<int> fv;
        for (int i : tight[f])
            if (vertex_of[i] >= 0) fv.push_back(vertex_of[i]);
        std::sort(fv.begin(), fv.end());
        built.push_back({normalize_facet(w, off), std::move(fv)});
    }
    std::sort(built.begin(), built.end(), [](const Built& a, const Built& b) {
        return std::tie(a.facet.normal, a.facet.offset) < std::tie(b.facet.normal, b.facet.offset);
    });
    for (auto& b : built) {
        P.facets_.push_back(std::move(b.facet));
        P.facet_vertices_.push_back(std::move(b.verts));
    }
    return P;
}

const FaceLattice& LatticePolytope::face_lattice() const {
    std::lock_guard<std::mutex> lock(face_lattice_mutex);
    if (face_lattice_) return *face_lattice_;

    auto fl = std::make_shared<FaceLattice>();
    const int d = dim_;
    fl->by_dim.assign(d + 2, {});
    fl->by_dim[0] = {{}};  // empty face, dimension -1

    std::vector<int> top(vertices_.size());
    for (size_t i = 0; i < top.size(); ++i) top[i] = static_cast<int>(i);

    if (d == 0) {
        fl->by_dim[1] = {top};
        face_lattice_ = fl;
        return *face_lattice_;
    }

    // Proper faces are the closure of the facet vertex sets under
    // intersection.
    std::set<std::vector<int>> known(facet_vertices_.begin(), facet_vertices_.end());
    std::vector<std::vector<int>> frontier(known.begin(), known.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& f : frontier)
            for (const auto& g : facet_vertices_) {
                std::vector<int> h;
                std::set_intersection(f.begin(), f.end(), g.begin(), g.end(),
                                      std::back_inserter(h));
                if (h.empty()) continue;
                if (known.insert(h).second) next.push_back(std::move(h));
            }
        frontier = std::move(next);
    }

    for (const auto& face : known) {
        std::vector<RatVec> pts;
        for (int i : face) pts.push_back(vertices_[i]);
        int fd = affine_rank(pts);
        fl->by_dim[fd + 1].push_back(face);
    }
    fl->by_dim[d + 1] = {top};
    for (auto& level : fl->by_dim) std::sort(level.begin(), level.end());

    face_lattice_ = fl;
    return *face_lattice_;
}

std::vector<long> LatticePolytope::f_vector() const {
    const FaceLattice& fl = face_lattice();
    std::vector<long> f;
    for (int k = 0; k < dim_; ++k) f.push_back(static_cast<long>(fl.by_dim[k + 1].size()));
    return f;
}

std::vector<std::pair<int, int>> LatticePolytope::edges() const {
    std::vector<std::pair<int, int>> out;
    if (dim_ < 1) return out;
    const FaceLattice& fl = face_lattice();
    for (const auto& e : fl.by_dim[2]) out.emplace_back(e[0], e[1]);
    return out;
}

bool LatticePolytope::is_lattice_polytope() const {
    for (const auto& v : vertices_)
        for (const auto& c : v)
            if (rat_den(c) != 1) return false;
    return true;
}

Rational LatticePolytope::min_pairing(const IntVec& functional) const {
    Rational best = dot(vertices_[0], functional);
    for (const auto& v : vertices_) best = std::min(best, dot(v, functional));
    return best;
}

Rational LatticePolytope::max_pairing(const IntVec& functional) const {
    Rational best = dot(vertices_[0], functional);
    for (const auto& v : vertices_) best = std::max(best, dot(v, functional));
    return best;
}

// ---------------------------------------------------------------------------

std::string chart_tag(const IntVec& nu) {
    std::string tag = "chart:nu=";
    for (size_t i = 0; i < nu.size(); ++i) {
        if (i) tag += ",";
        tag += nu[i].str();
    }
    return tag;
}

AffineChart make_chart(const IntVec& nu, const Rational& level) {
    if (content(nu) != 1) throw std::invalid_argument("chart: nu must be primitive");
    AffineChart ch;
    ch.nu = nu;
    ch.level = level;
    ch.basepoint = vec_scale(level, to_rational(extended_gcd_vector(nu)));
    ch.kernel_basis = lattice_kernel_basis(nu);
    const int n = static_cast<int>(nu.size());
    const int d = n - 1;
    RationalMatrix B(d, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = Rational(ch.kernel_basis[i][j]);
    RationalMatrix G = mat_mul(B, transpose(B));
    ch.forward_map = mat_mul(*inverse(G), B);
    return ch;
}

RatVec AffineChart::forward(const RatVec& ambient_point) const {
    if (dot(ambient_point, nu) != level)
        throw std::invalid_argument("chart: point is not on the chart level");
    RatVec w = vec_sub(ambient_point, basepoint);
    RatVec out(forward_map.rows);
    for (int i = 0; i < forward_map.rows; ++i) out[i] = dot(forward_map.row(i), w);
    return out;
}

RatVec AffineChart::backward(const RatVec& chart_point) const {
    RatVec out = basepoint;
    for (size_t i = 0; i < kernel_basis.size(); ++i)
        out = vec_add(out, vec_scale(chart_point[i], to_rational(kernel_basis[i])));
    return out;
}

LatticePolytope slice_at(const LatticePolytope& P, const IntVec& nu, const Rational& a) {
    if (content(nu) != 1) throw std::invalid_argument("slice_at: nu must be primitive");
    if (a < P.min_pairing(nu) || a > P.max_pairing(nu))
        throw std::runtime_error("LevelOutOfRange");
    AffineChart chart = make_chart(nu, a);
    std::vector<RatVec> pts;
    const auto& V = P.vertices();
    for (const auto& v : V)
        if (dot(v, nu) == a) pts.push_back(chart.forward(v));
    for (auto [i, j] : P.edges()) {
        Rational vi = dot(V[i], nu), vj = dot(V[j], nu);
        if ((vi < a && a < vj) || (vj < a && a < vi)) {
            Rational t = (a - vi) / (vj - vi);
            pts.push_back(chart.forward(vec_add(V[i], vec_scale(t, vec_sub(V[j], V[i])))));
        }
    }
    return LatticePolytope::hull(std::move(pts), chart_tag(nu));
}

LatticePolytope truncate_between(const LatticePolytope& P, const IntVec& nu, const Rational& a,
                                 const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("truncate_between: requires a < b");
    if (b < P.min_pairing(nu) || a > P.max_pairing(nu))
        throw std::runtime_error("EmptyIntersection");
    std::vector<RatVec> pts;
    const auto& V = P.vertices();
    for (const auto& v : V) {
        Rational w = dot(v, nu);
        if (a <= w && w <= b) pts.push_back(v);
    }
    for (auto [i, j] : P.edges()) {
        Rational vi = dot(V[i], nu), vj = dot(V[j], nu);
        for (const Rational& cut : {a, b}) {
            if ((vi < cut && cut < vj) || (vj < cut && cut < vi)) {
                Rational t = (cut - vi) / (vj - vi);
                pts.push_back(vec_add(V[i], vec_scale(t, vec_sub(V[j], V[i]))));
            }
        }
    }
    return LatticePolytope::hull(std::move(pts), P.lattice_tag());
}

LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
    if (P.lattice_tag() != Q.lattice_tag())
        throw std::invalid_argument("minkowski_sum: chart mismatch (" + P.lattice_tag() +
                                    " vs " + Q.lattice_tag() + ")");
    std::vector<RatVec> pts;
    pts.reserve(P.vertices().size() * Q.vertices().size());
    for (const auto& p : P.vertices())
        for (const auto& q : Q.vertices()) pts.push_back(vec_add(p, q));
    return LatticePolytope::hull(std::move(pts), P.lattice_tag());
}

LatticePolytope scale_polytope(const Rational& c, const LatticePolytope& P) {
    if (c <= 0) throw std::invalid_argument("scale_polytope: scale must be positive");
    std::vector<RatVec> pts;
    for (const auto& v : P.vertices()) pts.push_back(vec_scale(c, v));
    return LatticePolytope::hull(std::move(pts), P.lattice_tag());
}

CanonicalForm canonicalize(const LatticePolytope& P) {
    RatVec t = P.vertices()[0];  // vertices are lex-sorted
    std::vector<RatVec> shifted;
    for (const auto& v : P.vertices()) shifted.push_back(vec_sub(v, t));

    Int L = 1;
    for (const auto& v : shifted)
        for (const auto& c : v) L = boost::multiprecision::lcm(L, rat_den(c));
    Int G = 0;
    for (const auto& v : shifted)
        for (const auto& c : v) G = boost::multiprecision::gcd(G, rat_num(c) * (L / rat_den(c)));
    Rational s = (G == 0) ? Rational(1) : Rational(L, G);

    std::vector<RatVec> scaled;
    for (const auto& v : shifted) scaled.push_back(vec_scale(s, v));
    return CanonicalForm{LatticePolytope::hull(std::move(scaled), P.lattice_tag()), t, s};
}

}  // namespace chowbench
