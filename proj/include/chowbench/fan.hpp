#pragma once

#include <optional>
#include <string>

#include "chowbench/polytope.hpp"

namespace chowbench {

/// Complete rational polyhedral fan in a lattice of rank lattice_dim.
/// Canonical form: primitive rays, lexicographically sorted; maximal cones as
/// sorted ray-index sets, themselves sorted.  Two fans are equal iff their
/// canonical forms coincide.  Rank 0 is allowed (one empty maximal cone).
class Fan {
  public:
    Fan() = default;

    /// Build from the ray generators of the maximal cones (all full-dim).
    static Fan from_cones(int lattice_dim, const std::vector<std::vector<IntVec>>& cones);

    int lattice_dim() const { return dim_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<std::vector<int>>& maximal_cones() const { return cones_; }
    std::vector<IntVec> cone_rays(int cone_index) const;
    /// Inner facet normals of a maximal cone (cached).
    const std::vector<IntVec>& cone_facet_normals(int cone_index) const { return facets_[cone_index]; }
    /// Exact membership x in maximal cone #cone_index.
    bool contains(int cone_index, const IntVec& x) const;
    bool contains(int cone_index, const RatVec& x) const;
    /// Index of some maximal cone containing x, or -1.
    int find_cone(const IntVec& x) const;

    bool operator==(const Fan& o) const {
        return dim_ == o.dim_ && rays_ == o.rays_ && cones_ == o.cones_;
    }

  private:
    int dim_ = 0;
    std::vector<IntVec> rays_;
    std::vector<std::vector<int>> cones_;
    std::vector<std::vector<IntVec>> facets_;  // per maximal cone
};

/// Normal fan of a polytope that is full-dimensional in its chart
/// (throws std::runtime_error("NotFullDimensional") otherwise): primitive
/// inner facet normals, one maximal cone per vertex.
Fan normal_fan(const LatticePolytope& P);

struct SmoothnessReport {
    bool smooth = true;
    std::vector<int> offending_cones;  // indices of non-smooth maximal cones
};
SmoothnessReport smoothness_report(const Fan& F);
bool is_smooth(const Fan& F);

/// True iff every maximal cone of `fine` is contained in a maximal cone of
/// `coarse` (both complete, same lattice).
bool refines(const Fan& fine, const Fan& coarse);

/// Coarsest fan refining both inputs: all full-dimensional pairwise
/// intersections of maximal cones.
Fan common_refinement(const Fan& a, const Fan& b);

bool fans_equal(const Fan& a, const Fan& b);

/// Completeness verifier: every ridge of every maximal cone is shared by
/// exactly two maximal cones.
bool is_complete(const Fan& F);

/// Star subdivision at the fan cone spanned by sigma_rays; the distinguished
/// new ray defaults to the (primitive) sum of the generators.
Fan star_subdivide(const Fan& F, const std::vector<IntVec>& sigma_rays,
                   const std::optional<IntVec>& new_ray = std::nullopt);

enum class MorphismKind { Isomorphism, SmoothBlowup, Refinement };
const char* to_string(MorphismKind k);

struct BlowupCenter {
    std::vector<IntVec> cone;  // rays of the blown-up target cone
    IntVec new_ray;
    int cone_dim = 0;  // equals the codimension of the center stratum
};

/// Classification of the toric morphism induced by a refinement src -> tgt.
struct MorphismClassification {
    MorphismKind kind = MorphismKind::Refinement;
    std::vector<BlowupCenter> centers;  // nonempty only for SmoothBlowup
    std::string detail;
};

/// Requires refines(src, tgt); throws std::runtime_error("NotARefinement")
/// otherwise.  SmoothBlowup means src is the simultaneous star subdivision of
/// tgt at smooth cones with new ray = sum of generators, checked for order
/// independence.
MorphismClassification classify_morphism(const Fan& src, const Fan& tgt);

}  // namespace chowbench
