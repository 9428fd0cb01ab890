#pragma once

#include "chowbench/exact.hpp"

namespace chowbench::dd {

/// Extreme rays of the pointed cone { x : A x >= 0 }.  Requires rank(A) =
/// #columns (pointedness); throws std::invalid_argument otherwise.  Rays come
/// back as primitive integer vectors in lexicographic order.
std::vector<IntVec> extreme_rays(const IntMatrix& A);

/// Facet normals (inner, primitive) of the full-dimensional pointed cone
/// generated by `rays`: the extreme rays of the dual cone.
std::vector<IntVec> cone_facets(const std::vector<IntVec>& rays);

}  // namespace chowbench::dd
