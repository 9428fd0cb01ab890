#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "chowbench/exact.hpp"

namespace chowbench {

/// One inequality of the H-representation: { x : normal . x + offset >= 0 }.
/// Normals are inner and primitive integer covectors.
struct Facet {
    IntVec normal;
    Rational offset;
    bool operator==(const Facet&) const = default;
};

/// All faces by dimension.  by_dim[k] holds the sorted vertex-index sets of
/// the faces of dimension k-1 (so by_dim[0] = {empty face}); the top face is
/// in by_dim[dim+1].  Index sets refer to LatticePolytope::vertices().
struct FaceLattice {
    std::vector<std::vector<std::vector<int>>> by_dim;
};

/// Convex polytope with exact rational vertices.  `lattice_tag` names the
/// coordinate system; operations that combine polytopes require equal tags.
class LatticePolytope {
  public:
    LatticePolytope() = default;

    /// Convex hull.  Non-extreme points are discarded; vertices end up
    /// lexicographically sorted.  Lower-dimensional input is handled: the
    /// result carries its intrinsic dimension and a saturated basis of the
    /// direction lattice.
    static LatticePolytope hull(std::vector<RatVec> points, std::string lattice_tag);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    bool full_dimensional() const { return dim_ == ambient_dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    /// Facet inequalities in ambient coordinates (valid also for
    /// lower-dimensional polytopes, where they cut the affine hull).
    const std::vector<Facet>& facets() const { return facets_; }
    /// Affine-hull equations normal . x + offset == 0 (empty when full-dim).
    const std::vector<Facet>& equations() const { return equations_; }
    /// Vertex-index sets tight on each facet, aligned with facets().
    const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }
    /// Saturated lattice basis of the direction space (dim() rows).
    const std::vector<IntVec>& direction_basis() const { return direction_basis_; }
    const std::string& lattice_tag() const { return lattice_tag_; }

    /// Cached face lattice (computed on first use).
    const FaceLattice& face_lattice() const;
    /// Number of faces per dimension 0..dim()-1 (proper faces).
    std::vector<long> f_vector() const;
    /// Edges as vertex-index pairs.
    std::vector<std::pair<int, int>> edges() const;

    bool is_lattice_polytope() const;
    Rational min_pairing(const IntVec& functional) const;
    Rational max_pairing(const IntVec& functional) const;

    bool operator==(const LatticePolytope& o) const {
        return vertices_ == o.vertices_ && lattice_tag_ == o.lattice_tag_;
    }

  private:
    int ambient_dim_ = 0;
    int dim_ = -1;
    std::vector<RatVec> vertices_;
    std::vector<Facet> facets_;
    std::vector<Facet> equations_;
    std::vector<std::vector<int>> facet_vertices_;
    std::vector<IntVec> direction_basis_;
    std::string lattice_tag_;
    mutable std::shared_ptr<const FaceLattice> face_lattice_;  // lazily filled
};

/// Deterministic coordinates on the level hyperplane { <x, nu> = level }:
/// basepoint level * p0 with <p0, nu> = 1 (extended gcd) and the saturated
/// kernel basis of nu-perp as coordinate directions.  Charts at different
/// levels of the same nu share the kernel basis, so their images are directly
/// comparable.
struct AffineChart {
    IntVec nu;
    Rational level;
    RatVec basepoint;
    std::vector<IntVec> kernel_basis;
    RationalMatrix forward_map;  // lambda = forward_map * (x - basepoint)

    RatVec forward(const RatVec& ambient_point) const;
    RatVec backward(const RatVec& chart_point) const;
};

AffineChart make_chart(const IntVec& nu, const Rational& level);
std::string chart_tag(const IntVec& nu);

/// nu^-1(a) intersected with P, re-expressed in the quotient chart.
/// Throws std::runtime_error("LevelOutOfRange") when a misses nu(P).
LatticePolytope slice_at(const LatticePolytope& P, const IntVec& nu, const Rational& a);

/// nu^-1([a,b]) intersected with P, in ambient coordinates.  Requires a < b;
/// throws std::runtime_error("EmptyIntersection") when [a,b] misses nu(P).
LatticePolytope truncate_between(const LatticePolytope& P, const IntVec& nu, const Rational& a,
                                 const Rational& b);

/// Minkowski sum; both operands must carry the same lattice_tag.
LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q);

LatticePolytope scale_polytope(const Rational& c, const LatticePolytope& P);

/// Homothety normal form: translate the lexicographically smallest vertex to
/// the origin, then scale so the vertex set is integral with content 1.
/// canonical = scale * (P - translation).
struct CanonicalForm {
    LatticePolytope polytope;
    RatVec translation;
    Rational scale;
};
CanonicalForm canonicalize(const LatticePolytope& P);

}  // namespace chowbench
