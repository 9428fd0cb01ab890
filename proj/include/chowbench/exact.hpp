#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chowbench {

// Arbitrary-precision exact scalars.  Rational is always stored in lowest
// terms with positive denominator (cpp_rational normalizes eagerly).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rational>;

Int rat_num(const Rational& q);
Int rat_den(const Rational& q);

/// Parse "p/q" or "p" (q > 0 after normalization).  Throws std::invalid_argument.
Rational parse_rational(const std::string& s);
/// Format as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

Int dot(const IntVec& a, const IntVec& b);
Rational dot(const RatVec& a, const IntVec& b);
Rational dot(const RatVec& a, const RatVec& b);

RatVec to_rational(const IntVec& v);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rational& c, const RatVec& v);

/// gcd of all entries, non-negative; 0 for the zero vector.
Int content(const IntVec& v);

/// v / gcd(v).  Throws std::invalid_argument("ZeroVector") on the zero vector.
IntVec primitive_vector(const IntVec& v);

/// Clear denominators and divide by the content, preserving direction.
/// Throws std::invalid_argument("ZeroVector") on the zero vector.
IntVec primitive_from_rational(const RatVec& v);

// ---------------------------------------------------------------------------
// Dense matrices.  Row-major, small, exact.

template <class T>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::vector<T> row(int i) const {
        return std::vector<T>(a.begin() + static_cast<size_t>(i) * cols,
                              a.begin() + static_cast<size_t>(i + 1) * cols);
    }

    bool operator==(const Mat&) const = default;
};

using IntMatrix = Mat<Int>;
using RationalMatrix = Mat<Rational>;

IntMatrix from_rows(const std::vector<IntVec>& rows);
RationalMatrix from_rows_rat(const std::vector<RatVec>& rows);

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
RationalMatrix mat_mul(const RationalMatrix& x, const RationalMatrix& y);
IntMatrix transpose(const IntMatrix& m);
RationalMatrix transpose(const RationalMatrix& m);

/// Fraction-free Bareiss determinant (square input).
Int determinant(const IntMatrix& m);
Rational determinant(const RationalMatrix& m);

int rank(const RationalMatrix& m);
int rank_int(const IntMatrix& m);

/// Exact inverse; std::nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Solve A x = b.  Returns std::nullopt when inconsistent; free variables are
/// set to zero when the solution is not unique.
std::optional<RatVec> solve(const RationalMatrix& A, const RatVec& b);

/// Row-style Hermite normal form: H = U * A with U unimodular, H in upper
/// echelon form, pivots positive, entries above each pivot reduced into
/// [0, pivot).
struct HermiteResult {
    IntMatrix H;
    IntMatrix U;
};
HermiteResult hermite_normal_form(const IntMatrix& A);

/// Saturated basis of { x in Z^n : C x = 0 } for integer C (rows are
/// constraints).  The result extends to a basis of Z^n.
std::vector<IntVec> lattice_kernel(const IntMatrix& C);

/// Saturated basis of f-perp in Z^n; n-1 vectors for nonzero f.
/// Throws std::invalid_argument("ZeroVector") when f = 0.
std::vector<IntVec> lattice_kernel_basis(const IntVec& f);

/// Some p with <f, p> = gcd(f), via the extended-gcd sweep used everywhere
/// else; deterministic.  Throws on f = 0.
IntVec extended_gcd_vector(const IntVec& f);

/// True iff the vectors form a basis of Z^n (square and |det| = 1).
bool is_lattice_basis(const std::vector<IntVec>& vectors);

}  // namespace chowbench
