#pragma once

#include "chowbench/action.hpp"
#include "chowbench/fan.hpp"

namespace chowbench {

struct Chamber {
    Rational tau_minus, tau_plus;
};

/// Linearization grid over the critical values: one open chamber per pair
/// 0 <= i < j <= r with midpoint representatives (quartiles when i+1 = j so
/// that tau- < tau+ inside a single interval), plus the walls (i,i) -> a_i.
/// Levels are raw (un-normalized) so they can be fed to slice/truncate.
struct ChamberGrid {
    int r = 0;
    std::vector<Int> walls;  // normalized critical values a_0=0 < ... < a_r
    Int offset;              // raw level of a_0

    Rational wall_level(int i) const;
    Chamber chamber(int i, int j) const;  // requires 0 <= i < j <= r
    Rational midpoint(int i) const;       // of [a_i, a_{i+1}], raw
};
ChamberGrid make_chamber_grid(const ActionAnalysis& a);

/// GIT quotient node (i,j) with j in {i, i+1}: the slice at the wall a_i
/// (semigeometric) or at the chamber midpoint (geometric), in the quotient
/// chart.
LatticePolytope git_quotient(const ActionAnalysis& a, int i, int j);

/// Pruning polytope of chamber (i,j): the ambient truncation of Delta at the
/// chamber representatives.
LatticePolytope pruning(const ActionAnalysis& a, int i, int j);
LatticePolytope pruning_at(const ActionAnalysis& a, const Rational& tau_minus,
                           const Rational& tau_plus);

/// Fiber polytope of (P, nu): cut nu(P) at all vertex levels, then take the
/// length-weighted Minkowski sum of the chamber-midpoint slices; returned
/// canonicalized (the normal fan is scale/translation invariant).
CanonicalForm fiber_polytope(const LatticePolytope& P, const IntVec& nu);

/// Chow node (i,j) via the fiber polytope of the pruning.
CanonicalForm chow_fiber_polytope(const ActionAnalysis& a, int i, int j);

/// Chow node (i,j) via the Minkowski sum of the wall slices of Delta at
/// a_i, ..., a_j; canonicalized.
CanonicalForm chow_minkowski_polytope(const ActionAnalysis& a, int i, int j);

enum class NodeRole { SemigeometricWall, GeometricGIT, Chow };
const char* to_string(NodeRole role);

struct DiagramNode {
    int i = 0, j = 0;
    NodeRole role = NodeRole::SemigeometricWall;
    LatticePolytope polytope;  // slice (GIT) or canonical Chow polytope
    std::optional<Fan> fan;    // absent for lower-dimensional wall slices
    bool smooth = false;
    std::vector<int> offending_cones;
    // both Chow routes, kept for cross-validation (present when j > i)
    std::optional<CanonicalForm> fiber, minkowski;
    std::optional<Fan> fiber_fan, minkowski_fan;
};

struct DiagramEdge {
    char kind = 's';  // 's': (i,j)->(i,j-1); 'd': (i,j)->(i+1,j)
    int from_i = 0, from_j = 0, to_i = 0, to_j = 0;
    MorphismClassification cls;
    std::string diagnostic;  // nonempty when classification could not run
};

struct SquareCheck {
    int i = 0, j = 0;
    bool pass = false;
};
struct CrossValidation {
    int i = 0, j = 0;
    bool pass = false;
};

struct DiagramOptions {
    bool check_squares = true;
    bool cross_validate = true;
    bool force = false;  // build even when the action is not equalized
    int threads = 0;     // 0 = CHOWBENCH_THREADS env or hardware concurrency
};

struct QuotientDiagram {
    ActionAnalysis analysis;
    ChamberGrid grid;
    std::vector<DiagramNode> nodes;  // all (i,j), 0 <= i <= j <= r, sorted
    std::vector<DiagramEdge> edges;  // s and d edges from every node with j-i >= 2
    std::vector<SquareCheck> squares;
    std::vector<CrossValidation> cross_validation;
    bool all_squares_pass = true;
    bool all_cross_pass = true;

    const DiagramNode& node(int i, int j) const;
};

/// Builds every node, classifies every s/d edge, verifies the rhombus
/// property fan(i,j) = common_refinement(fan(i,j-1), fan(i+1,j)) and
/// cross-validates the two Chow routes.  Throws
/// std::runtime_error("NotEqualized") unless the action is equalized or
/// options.force is set.
QuotientDiagram build_diagram(const ActionAnalysis& a, const DiagramOptions& options = {});

struct CenterStratum {
    std::vector<IntVec> cone;
    IntVec new_ray;
    int codim = 0;      // = dimension of the blown-up cone
    int component = 0;  // connected grouping of the center strata
};
struct EdgeCenters {
    char kind = 's';
    int from_i = 0, from_j = 0, to_i = 0, to_j = 0;
    std::vector<CenterStratum> strata;
    int components = 0;
};

/// Center strata of every SmoothBlowup edge, grouped into connected
/// components (two cones belong together when some target cone contains
/// both, i.e. the corresponding closed strata meet).
std::vector<EdgeCenters> centers_report(const QuotientDiagram& D);

}  // namespace chowbench
