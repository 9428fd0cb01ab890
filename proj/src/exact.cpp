#include "chowbench/exact.hpp"

#include <algorithm>

namespace chowbench {

namespace mp = boost::multiprecision;

Int rat_num(const Rational& q) { return mp::numerator(q); }
Int rat_den(const Rational& q) { return mp::denominator(q); }

Rational parse_rational(const std::string& s) {
    auto parse_int = [](const std::string& t) -> Int {
        if (t.empty()) throw std::invalid_argument("bad rational: empty");
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("bad rational: " + t);
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad rational: " + t);
        return Int(t);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("bad rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

std::string format_rational(const Rational& q) {
    std::string out = rat_num(q).str();
    if (rat_den(q) != 1) out += "/" + rat_den(q).str();
    return out;
}

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RatVec& a, const IntVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
    return s;
}

Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec to_rational(const IntVec& v) {
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RatVec vec_scale(const Rational& c, const RatVec& v) {
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

Int content(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = mp::gcd(g, x);
    return g;
}

IntVec primitive_vector(const IntVec& v) {
    Int g = content(v);
    if (g == 0) throw std::invalid_argument("ZeroVector");
    IntVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

IntVec primitive_from_rational(const RatVec& v) {
    Int l = 1;
    for (const Rational& q : v) l = mp::lcm(l, rat_den(q));
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = rat_num(v[i]) * (l / rat_den(v[i]));
    return primitive_vector(w);
}

IntMatrix from_rows(const std::vector<IntVec>& rows) {
    IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

RationalMatrix from_rows_rat(const std::vector<RatVec>& rows) {
    RationalMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

template <class T>
static Mat<T> mul_impl(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) out(i, j) += x(i, k) * y(k, j);
        }
    return out;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) { return mul_impl(x, y); }
RationalMatrix mat_mul(const RationalMatrix& x, const RationalMatrix& y) { return mul_impl(x, y); }

template <class T>
static Mat<T> transpose_impl(const Mat<T>& m) {
    Mat<T> out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
    return out;
}

IntMatrix transpose(const IntMatrix& m) { return transpose_impl(m); }
RationalMatrix transpose(const RationalMatrix& m) { return transpose_impl(m); }

Int determinant(const IntMatrix& in) {
    if (in.rows != in.cols) throw std::invalid_argument("determinant: not square");
    int n = in.rows;
    if (n == 0) return 1;
    IntMatrix m = in;
    Int sign = 1, prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { sw = i; break; }
            if (sw < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(sw, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& in) {
    if (in.rows != in.cols) throw std::invalid_argument("determinant: not square");
    int n = in.rows;
    if (n == 0) return 1;
    // Clear denominators per row, then run the fraction-free elimination.
    IntMatrix m(n, n);
    Rational scale = 1;
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j) l = mp::lcm(l, rat_den(in(i, j)));
        for (int j = 0; j < n; ++j) m(i, j) = rat_num(in(i, j)) * (l / rat_den(in(i, j)));
        scale *= Rational(1, l);
    }
    return scale * Rational(determinant(m));
}

int rank(const RationalMatrix& in) {
    RationalMatrix m = in;
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
        for (int i = r + 1; i < m.rows; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / m(r, col);
            for (int j = col; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

int rank_int(const IntMatrix& in) {
    RationalMatrix m(in.rows, in.cols);
    for (int i = 0; i < in.rows; ++i)
        for (int j = 0; j < in.cols; ++j) m(i, j) = Rational(in(i, j));
    return rank(m);
}

std::optional<RationalMatrix> inverse(const RationalMatrix& in) {
    if (in.rows != in.cols) throw std::invalid_argument("inverse: not square");
    int n = in.rows;
    RationalMatrix m = in, inv = RationalMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col) != 0) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        for (int j = 0; j < n; ++j) {
            std::swap(m(col, j), m(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        Rational d = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::optional<RatVec> solve(const RationalMatrix& A, const RatVec& b) {
    int m = A.rows, n = A.cols;
    RationalMatrix aug(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n) = b[i];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (aug(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j <= n; ++j) std::swap(aug(r, j), aug(piv, j));
        for (int i = 0; i < m; ++i) {
            if (i == r || aug(i, col) == 0) continue;
            Rational f = aug(i, col) / aug(r, col);
            for (int j = col; j <= n; ++j) aug(i, j) -= f * aug(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (aug(i, n) != 0) return std::nullopt;
    RatVec x(n, Rational(0));
    for (int k = 0; k < r; ++k) x[pivot_col[k]] = aug(k, n) / aug(k, pivot_col[k]);
    return x;
}

static Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, rem = a % b;
    if (rem != 0 && ((rem < 0) != (b < 0))) --q;
    return q;
}

HermiteResult hermite_normal_form(const IntMatrix& A) {
    int m = A.rows, n = A.cols;
    IntMatrix H = A, U = IntMatrix::identity(m);
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(H(i, c), H(j, c));
        for (int c = 0; c < m; ++c) std::swap(U(i, c), U(j, c));
    };
    auto addmul = [&](int dst, int src, const Int& f) {  // row dst += f * row src
        if (f == 0) return;
        for (int c = 0; c < n; ++c) H(dst, c) += f * H(src, c);
        for (int c = 0; c < m; ++c) U(dst, c) += f * U(src, c);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < n; ++c) H(i, c) = -H(i, c);
        for (int c = 0; c < m; ++c) U(i, c) = -U(i, c);
    };

    int pr = 0;
    for (int col = 0; col < n && pr < m; ++col) {
        // gcd sweep: reduce everything below row pr in this column to zero
        while (true) {
            int best = -1;
            for (int i = pr; i < m; ++i) {
                if (H(i, col) == 0) continue;
                if (best < 0 || mp::abs(H(i, col)) < mp::abs(H(best, col))) best = i;
            }
            if (best < 0) break;
            swap_rows(pr, best);
            bool clean = true;
            for (int i = pr + 1; i < m; ++i) {
                if (H(i, col) == 0) continue;
                addmul(i, pr, -floor_div(H(i, col), H(pr, col)));
                if (H(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H(pr, col) == 0) continue;  // no pivot in this column
        if (H(pr, col) < 0) negate_row(pr);
        for (int i = 0; i < pr; ++i) addmul(i, pr, -floor_div(H(i, col), H(pr, col)));
        ++pr;
    }
    return {H, U};
}

std::vector<IntVec> lattice_kernel(const IntMatrix& C) {
    // Row-HNF of the transpose: U * C^T = H.  Rows of U matching zero rows of
    // H are a saturated kernel basis (they extend to a basis of Z^n).
    auto [H, U] = hermite_normal_form(transpose(C));
    int n = C.cols;
    std::vector<IntVec> out;
    for (int i = 0; i < n; ++i) {
        bool zero = true;
        for (int j = 0; j < H.cols; ++j)
            if (H(i, j) != 0) { zero = false; break; }
        if (zero) out.push_back(U.row(i));
    }
    return out;
}

std::vector<IntVec> lattice_kernel_basis(const IntVec& f) {
    if (content(f) == 0) throw std::invalid_argument("ZeroVector");
    return lattice_kernel(from_rows({f}));
}

IntVec extended_gcd_vector(const IntVec& f) {
    if (content(f) == 0) throw std::invalid_argument("ZeroVector");
    auto [H, U] = hermite_normal_form(transpose(from_rows({f})));
    // H(0,0) = gcd(f) > 0 and row 0 of U pairs with f to gcd(f).
    return U.row(0);
}

bool is_lattice_basis(const std::vector<IntVec>& vectors) {
    if (vectors.empty()) return true;
    if (vectors.size() != vectors[0].size()) return false;
    Int d = determinant(from_rows(vectors));
    return d == 1 || d == -1;
}

}  // namespace chowbench
