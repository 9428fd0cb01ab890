#include "chowbench/fan.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "chowbench/dd.hpp"

namespace chowbench {

namespace {

IntMatrix rows_of(const std::vector<IntVec>& v, int n) {
    IntMatrix M((int)v.size(), n);
    for (int i = 0; i < (int)v.size(); ++i)
        for (int j = 0; j < n; ++j) M(i, j) = v[i][j];
    return M;
}

// gcd of all maximal (k x k) minors of a k x n matrix with independent rows.
Int maximal_minor_gcd(const IntMatrix& M) {
    const int k = M.rows, n = M.cols;
    Int g = 0;
    std::vector<int> cols(k);
    // enumerate column subsets of size k
    for (int i = 0; i < k; ++i) cols[i] = i;
    while (true) {
        IntMatrix S(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) S(r, c) = M(r, cols[c]);
        g = boost::multiprecision::gcd(g, determinant(S));
        int i = k - 1;
        while (i >= 0 && cols[i] == n - k + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return g < 0 ? Int(-g) : g;
}

// A cone given by (independent or not) primitive rays is smooth iff the rays
// are independent and extend to a lattice basis.
bool is_smooth_cone(const std::vector<IntVec>& rays, int n) {
    if (rays.empty()) return true;
    IntMatrix M = rows_of(rays, n);
    if (rank_int(M) != M.rows) return false;
    return maximal_minor_gcd(M) == 1;
}

IntVec ray_sum(const std::vector<IntVec>& rays, int n) {
    IntVec s(n, 0);
    for (const auto& r : rays)
        for (int j = 0; j < n; ++j) s[j] += r[j];
    return s;
}

}  // namespace

Fan Fan::from_cones(int lattice_dim, const std::vector<std::vector<IntVec>>& cones) {
    Fan F;
    F.dim_ = lattice_dim;
    if (lattice_dim == 0) {
        F.cones_ = {{}};
        F.facets_ = {{}};
        return F;
    }
    if (cones.empty()) throw std::invalid_argument("fan without maximal cones");

    std::vector<IntVec> all;
    for (const auto& c : cones)
        for (const auto& r : c) all.push_back(primitive_vector(r));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    F.rays_ = std::move(all);

    std::map<IntVec, int> idx;
    for (int i = 0; i < (int)F.rays_.size(); ++i) idx[F.rays_[i]] = i;

    for (const auto& c : cones) {
        std::vector<int> ix;
        for (const auto& r : c) ix.push_back(idx.at(primitive_vector(r)));
        std::sort(ix.begin(), ix.end());
        ix.erase(std::unique(ix.begin(), ix.end()), ix.end());
        F.cones_.push_back(std::move(ix));
    }
    std::sort(F.cones_.begin(), F.cones_.end());
    F.cones_.erase(std::unique(F.cones_.begin(), F.cones_.end()), F.cones_.end());

    for (const auto& c : F.cones_) {
        std::vector<IntVec> gens;
        for (int i : c) gens.push_back(F.rays_[i]);
        if (rank_int(rows_of(gens, lattice_dim)) != lattice_dim)
            throw std::invalid_argument("maximal cone is not full-dimensional");
        F.facets_.push_back(dd::cone_facets(gens));
    }
    return F;
}

std::vector<IntVec> Fan::cone_rays(int cone_index) const {
    std::vector<IntVec> out;
    for (int i : cones_[cone_index]) out.push_back(rays_[i]);
    return out;
}

bool Fan::contains(int cone_index, const IntVec& x) const {
    for (const auto& h : facets_[cone_index])
        if (dot(h, x) < 0) return false;
    return true;
}

bool Fan::contains(int cone_index, const RatVec& x) const {
    for (const auto& h : facets_[cone_index])
        if (dot(x, h) < 0) return false;
    return true;
}

int Fan::find_cone(const IntVec& x) const {
    for (int c = 0; c < (int)cones_.size(); ++c)
        if (contains(c, x)) return c;
    return -1;
}

Fan normal_fan(const LatticePolytope& P) {
    if (!P.full_dimensional()) throw std::runtime_error("NotFullDimensional");
    const int n = P.ambient_dim();
    if (P.dim() == 0) return Fan::from_cones(0, {});

    // One maximal cone per vertex, spanned by the normals of its facets.
    std::vector<std::vector<IntVec>> cones(P.vertices().size());
    for (int f = 0; f < (int)P.facets().size(); ++f)
        for (int v : P.facet_vertices()[f]) cones[v].push_back(P.facets()[f].normal);
    (void)n;
    return Fan::from_cones(P.dim(), cones);
}

SmoothnessReport smoothness_report(const Fan& F) {
    SmoothnessReport rep;
    const int n = F.lattice_dim();
    for (int c = 0; c < (int)F.maximal_cones().size(); ++c) {
        const auto& ix = F.maximal_cones()[c];
        bool ok = (int)ix.size() == n;
        if (ok && n > 0) {
            IntMatrix M = rows_of(F.cone_rays(c), n);
            Int d = determinant(M);
            ok = (d == 1 || d == -1);
        }
        if (!ok) {
            rep.smooth = false;
            rep.offending_cones.push_back(c);
        }
    }
    return rep;
}

bool is_smooth(const Fan& F) { return smoothness_report(F).smooth; }

bool refines(const Fan& fine, const Fan& coarse) {
    if (fine.lattice_dim() != coarse.lattice_dim()) return false;
    const int n = fine.lattice_dim();
    if (n == 0) return true;
    for (int c = 0; c < (int)fine.maximal_cones().size(); ++c) {
        auto gens = fine.cone_rays(c);
        IntVec inside = ray_sum(gens, n);  // interior point of the fine cone
        int host = coarse.find_cone(inside);
        if (host < 0) return false;
        for (const auto& r : gens)
            if (!coarse.contains(host, r)) return false;
    }
    return true;
}

Fan common_refinement(const Fan& a, const Fan& b) {
    if (a.lattice_dim() != b.lattice_dim())
        throw std::invalid_argument("common_refinement: lattice rank mismatch");
    const int n = a.lattice_dim();
    if (n == 0) return Fan::from_cones(0, {});

    std::vector<std::vector<IntVec>> cones;
    for (int ca = 0; ca < (int)a.maximal_cones().size(); ++ca) {
        for (int cb = 0; cb < (int)b.maximal_cones().size(); ++cb) {
            std::vector<IntVec> cons = a.cone_facet_normals(ca);
            const auto& hb = b.cone_facet_normals(cb);
            cons.insert(cons.end(), hb.begin(), hb.end());
            auto rays = dd::extreme_rays(rows_of(cons, n));
            if ((int)rays.size() < n) continue;
            if (rank_int(rows_of(rays, n)) < n) continue;
            cones.push_back(std::move(rays));
        }
    }
    return Fan::from_cones(n, cones);
}

bool fans_equal(const Fan& a, const Fan& b) { return a == b; }

bool is_complete(const Fan& F) {
    const int n = F.lattice_dim();
    if (n == 0) return F.maximal_cones().size() == 1;
    if (F.maximal_cones().empty()) return false;
    for (int c = 0; c < (int)F.maximal_cones().size(); ++c) {
        for (const auto& h : F.cone_facet_normals(c)) {
            std::vector<IntVec> tight;
            for (int i : F.maximal_cones()[c])
                if (dot(h, F.rays()[i]) == 0) tight.push_back(F.rays()[i]);
            IntVec y = ray_sum(tight, n);  // relative-interior point of the ridge
            int count = 0;
            for (int d = 0; d < (int)F.maximal_cones().size(); ++d)
                if (F.contains(d, y)) ++count;
            if (count != 2) return false;
        }
    }
    return true;
}

Fan star_subdivide(const Fan& F, const std::vector<IntVec>& sigma_rays,
                   const std::optional<IntVec>& new_ray) {
    const int n = F.lattice_dim();
    if (sigma_rays.empty()) throw std::invalid_argument("star_subdivide: empty cone");

    std::vector<int> sigma;
    for (const auto& r : sigma_rays) {
        IntVec p = primitive_vector(r);
        auto it = std::find(F.rays().begin(), F.rays().end(), p);
        if (it == F.rays().end()) throw std::invalid_argument("star_subdivide: cone not in fan");
        sigma.push_back((int)(it - F.rays().begin()));
    }
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());

    auto contains_sigma = [&](const std::vector<int>& ix) {
        return std::includes(ix.begin(), ix.end(), sigma.begin(), sigma.end());
    };
    bool found = false;
    for (const auto& c : F.maximal_cones()) found = found || contains_sigma(c);
    if (!found) throw std::invalid_argument("star_subdivide: cone not in fan");

    IntVec rho;
    if (new_ray) {
        rho = primitive_vector(*new_ray);
    } else {
        std::vector<IntVec> gens;
        for (int i : sigma) gens.push_back(F.rays()[i]);
        rho = primitive_vector(ray_sum(gens, n));
    }

    std::vector<std::vector<IntVec>> cones;
    for (int c = 0; c < (int)F.maximal_cones().size(); ++c) {
        const auto& ix = F.maximal_cones()[c];
        if (!contains_sigma(ix)) {
            cones.push_back(F.cone_rays(c));
            continue;
        }
        // replace tau by cone(rho, facet) for every facet not containing sigma
        for (const auto& h : F.cone_facet_normals(c)) {
            bool facet_has_sigma = true;
            for (int i : sigma)
                if (dot(h, F.rays()[i]) != 0) { facet_has_sigma = false; break; }
            if (facet_has_sigma) continue;
            std::vector<IntVec> gens = {rho};
            for (int i : ix)
                if (dot(h, F.rays()[i]) == 0) gens.push_back(F.rays()[i]);
            cones.push_back(std::move(gens));
        }
    }
    return Fan::from_cones(n, cones);
}

const char* to_string(MorphismKind k) {
    switch (k) {
        case MorphismKind::Isomorphism: return "isomorphism";
        case MorphismKind::SmoothBlowup: return "smooth_blowup";
        default: return "refinement";
    }
}

MorphismClassification classify_morphism(const Fan& src, const Fan& tgt) {
    if (!refines(src, tgt)) throw std::runtime_error("NotARefinement");
    MorphismClassification out;
    if (fans_equal(src, tgt)) {
        out.kind = MorphismKind::Isomorphism;
        return out;
    }

    const int n = src.lattice_dim();
    // every target ray must persist in the source for a blowup
    for (const auto& r : tgt.rays()) {
        if (std::find(src.rays().begin(), src.rays().end(), r) == src.rays().end()) {
            out.kind = MorphismKind::Refinement;
            out.detail = "a target ray is not a ray of the source";
            return out;
        }
    }
    std::vector<IntVec> new_rays;
    for (const auto& r : src.rays())
        if (std::find(tgt.rays().begin(), tgt.rays().end(), r) == tgt.rays().end())
            new_rays.push_back(r);
    if (new_rays.empty()) {
        out.kind = MorphismKind::Refinement;
        out.detail = "same rays but different cones";
        return out;
    }

    // minimal target cone around each new ray
    std::vector<std::vector<int>> centers_ix;
    std::vector<BlowupCenter> centers;
    for (const auto& rho : new_rays) {
        int host = tgt.find_cone(rho);
        if (host < 0) {
            out.kind = MorphismKind::Refinement;
            out.detail = "new ray outside target support";
            return out;
        }
        std::vector<int> face;
        for (int i : tgt.maximal_cones()[host]) {
            bool in_face = true;
            for (const auto& h : tgt.cone_facet_normals(host)) {
                if (dot(h, rho) == 0 && dot(h, tgt.rays()[i]) != 0) { in_face = false; break; }
            }
            if (in_face) face.push_back(i);
        }
        std::vector<IntVec> gens;
        for (int i : face) gens.push_back(tgt.rays()[i]);
        if (!is_smooth_cone(gens, n)) {
            out.kind = MorphismKind::Refinement;
            out.detail = "subdivided cone is not smooth";
            return out;
        }
        if (ray_sum(gens, n) != rho) {
            out.kind = MorphismKind::Refinement;
            out.detail = "new ray is not the barycentric ray of its cone";
            return out;
        }
        BlowupCenter bc;
        bc.cone = gens;
        bc.new_ray = rho;
        bc.cone_dim = (int)gens.size();
        centers_ix.push_back(face);
        centers.push_back(std::move(bc));
    }

    for (size_t i = 0; i < centers_ix.size(); ++i) {
        for (size_t j = 0; j < centers_ix.size(); ++j) {
            if (i == j) continue;
            if (std::includes(centers_ix[i].begin(), centers_ix[i].end(),
                              centers_ix[j].begin(), centers_ix[j].end())) {
                out.kind = MorphismKind::Refinement;
                out.detail = "nested subdivision centers";
                return out;
            }
        }
    }

    // the subdivision must be order-independent and reproduce the source
    auto rebuild = [&](bool reverse) -> std::optional<Fan> {
        std::vector<int> order(centers.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return reverse ? centers[y].new_ray < centers[x].new_ray
                           : centers[x].new_ray < centers[y].new_ray;
        });
        Fan G = tgt;
        for (int i : order) {
            try {
                G = star_subdivide(G, centers[i].cone, centers[i].new_ray);
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
        }
        return G;
    };
    auto fwd = rebuild(false);
    auto bwd = rebuild(true);
    if (!fwd || !bwd || !fans_equal(*fwd, *bwd) || !fans_equal(*fwd, src)) {
        out.kind = MorphismKind::Refinement;
        out.detail = "not a simultaneous star subdivision";
        return out;
    }

    std::sort(centers.begin(), centers.end(), [](const BlowupCenter& a, const BlowupCenter& b) {
        return a.new_ray < b.new_ray;
    });
    out.kind = MorphismKind::SmoothBlowup;
    out.centers = std::move(centers);
    return out;
}

}  // namespace chowbench
