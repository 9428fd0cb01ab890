#pragma once

#include "chowbench/polytope.hpp"

namespace chowbench {

/// A maximal face of the polytope on which the pairing with nu is constant.
struct FixedFace {
    std::vector<int> vertices;  // vertex indices, sorted
    Int weight;                 // normalized so the minimal weight is 0
    int dim = 0;
};

/// Closure of the attracting/repelling cell of a fixed face: a union of
/// closed faces, described by the maximal faces of the union.
struct BBClosure {
    std::vector<std::vector<int>> faces;  // maximal faces (vertex-index sets)
    int codim = 0;                        // dim(Delta) - dim(union)
    int nu_count = 0;                     // nu^+ (sign +) or nu^- (sign -)
};

struct EdgeIsotropy {
    int v = 0, w = 0;   // vertex indices
    Int pairing;        // <primitive edge direction, nu>
    Int order;          // |pairing| = isotropy order
};

struct ActionAnalysis {
    LatticePolytope polytope;
    IntVec nu;  // primitive; possibly re-parametrized from the input
    std::vector<std::string> warnings;

    std::vector<Int> vertex_weights;   // per vertex, normalized (min = 0)
    Int weight_offset;                 // raw minimum of <v,nu>, subtracted above
    std::vector<Int> critical_values;  // a_0 = 0 < ... < a_r
    int criticality = 0;               // r
    Int bandwidth;                     // a_r

    bool delta_smooth = false;
    std::vector<FixedFace> fixed_faces;        // sorted by (weight, vertices)
    std::vector<BBClosure> bb_plus, bb_minus;  // aligned with fixed_faces

    bool equalized = false;
    std::vector<EdgeIsotropy> offending_edges;

    bool b_type = false;
    bool bordism = false;         // nu^+/nu^- >= 2 on all inner fixed faces
    bool condition_star = false;  // codim B^+/B^- > 1 at weights a_i, 2<=i<=r-2
    bool theorem_hypothesis = false;  // same bound at all inner weights
    bool bordism_identity_ok = false; // codim B^+- == nu^-+ (smooth Delta only)

    int sink_index = -1, source_index = -1;  // into fixed_faces
};

/// Full analysis of the C*-action (Delta, nu).
/// Errors: "ZeroVector" for nu = 0, "TrivialAction" if nu is constant on
/// Delta; the polytope must be a full-dimensional lattice polytope.
/// Non-primitive nu is divided by its content with a warning.
ActionAnalysis analyze_action(const LatticePolytope& delta, const IntVec& nu);

/// B^+ (sign > 0) or B^- (sign < 0) of the fixed face with the given vertex
/// set: B^+(F) = union of closed faces whose nu-maximizing face lies in F,
/// B^-(F) dually with the minimizing face.  nu_count counts edge directions
/// at a vertex of F, transverse to F, with negative (+) / positive (-)
/// pairing.  Throws std::invalid_argument if F is not a fixed face.
BBClosure bb_closure(const ActionAnalysis& a, const std::vector<int>& face_vertices, int sign);

struct EqualizationResult {
    bool equalized = true;
    std::vector<EdgeIsotropy> offending_edges;
};
EqualizationResult equalization_check(const LatticePolytope& delta, const IntVec& nu);

/// Per-edge AM-vs-FM data for an equalized action: each edge with nonzero
/// pairing is an orbit-closure curve of degree = weight difference = lattice
/// length.  Throws std::runtime_error("NotEqualized") otherwise.
struct EdgeCurve {
    int sink = 0, source = 0;  // vertex indices (lower / higher weight)
    Int degree;                // weight difference = lattice length
};
std::vector<EdgeCurve> amfm_check(const ActionAnalysis& a);

}  // namespace chowbench
