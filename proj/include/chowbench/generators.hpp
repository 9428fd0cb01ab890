#pragma once

#include "chowbench/io.hpp"

namespace chowbench {

/// The 4 x 26 vertex matrix of the bordism example (columns are vertices).
const IntMatrix& brus_matrix();

PolytopeDocument example_cube(int n);  // [0,1]^n with nu = (1,...,1); n >= 1
PolytopeDocument example_brus();       // 26 vertices, nu = 4th projection
PolytopeDocument example_segment();    // [0,1], nu = (1)
PolytopeDocument example_square();     // [0,1]^2, nu = (1,1)

/// Dispatch by name in {"cube","brus","segment","square"}; n is consumed by
/// "cube" only.  Unknown names throw std::invalid_argument.
PolytopeDocument make_example(const std::string& name, int n = 3);

}  // namespace chowbench
