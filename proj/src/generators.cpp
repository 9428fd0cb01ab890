#include "chowbench/generators.hpp"

#include <stdexcept>

namespace chowbench {

const IntMatrix& brus_matrix() {
    static const IntMatrix M = [] {
        const int rows[4][26] = {
            {0, 0, 0, 0, 0, -1, -2, -2, -2, -2, -2, -2, -3, -5,
             0, 0, 0, 0, 0, -1, -3, -5, -6, -6, -6, -6},
            {0, 0, -1, -4, -4, 0, 0, 0, -1, -3, -4, -4, -4, -4,
             0, 0, -1, -4, -4, 0, -4, -4, 0, 0, -4, -4},
            {0, -6, 0, -3, -6, 0, -1, -6, 0, 0, -1, -6, 0, 0,
             0, -6, 0, -3, -6, 0, 0, 0, -5, -6, -1, -6},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 3,
             4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4}};
        IntMatrix m(4, 26);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 26; ++j) m(i, j) = rows[i][j];
        return m;
    }();
    return M;
}

PolytopeDocument example_cube(int n) {
    if (n < 1) throw std::invalid_argument("cube requires n >= 1");
    PolytopeDocument doc;
    doc.name = "cube" + std::to_string(n);
    doc.ambient_dim = n;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
        RatVec v(n);
        for (int k = 0; k < n; ++k) v[k] = (mask >> k) & 1;
        doc.vertices.push_back(std::move(v));
    }
    doc.nu = IntVec(n, 1);
    return doc;
}

PolytopeDocument example_brus() {
    const IntMatrix& M = brus_matrix();
    PolytopeDocument doc;
    doc.name = "brus";
    doc.ambient_dim = M.rows;
    for (int j = 0; j < M.cols; ++j) {
        RatVec v(M.rows);
        for (int i = 0; i < M.rows; ++i) v[i] = M(i, j);
        doc.vertices.push_back(std::move(v));
    }
    doc.nu = IntVec{0, 0, 0, 1};
    return doc;
}

PolytopeDocument example_segment() {
    PolytopeDocument doc;
    doc.name = "segment";
    doc.ambient_dim = 1;
    doc.vertices = {{Rational(0)}, {Rational(1)}};
    doc.nu = IntVec{1};
    return doc;
}

PolytopeDocument example_square() {
    PolytopeDocument doc = example_cube(2);
    doc.name = "square";
    return doc;
}

PolytopeDocument make_example(const std::string& name, int n) {
    if (name == "cube") return example_cube(n);
    if (name == "brus") return example_brus();
    if (name == "segment") return example_segment();
    if (name == "square") return example_square();
    throw std::invalid_argument("unknown example: " + name);
}

}  // namespace chowbench
