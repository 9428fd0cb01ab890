#include "chowbench/dd.hpp"

#include <algorithm>
#include <cstdint>

namespace chowbench::dd {

namespace {

// Zero-set bitmask over the processed constraints.
using Bits = std::vector<std::uint64_t>;

Bits make_bits(size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }

bool subset(const Bits& a, const Bits& b) {  // a subset of b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

Bits intersect(const Bits& a, const Bits& b) {
    Bits out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

int popcount(const Bits& b) {
    int c = 0;
    for (auto w : b) c += __builtin_popcountll(w);
    return c;
}

struct Ray {
    IntVec v;
    Bits zero;
    Int slack;  // pairing with the constraint currently being processed
};

}  // namespace

std::vector<IntVec> extreme_rays(const IntMatrix& A) {
    const int n = A.cols;
    const int m = A.rows;
    if (n == 0) return {};

    // Seed with n linearly independent constraints; their intersection is a
    // simplicial cone whose rays are the columns of the inverse.
    std::vector<int> seed;
    {
        std::vector<RatVec> rows;
        for (int i = 0; i < m && static_cast<int>(seed.size()) < n; ++i) {
            rows.push_back(to_rational(A.row(i)));
            if (rank(from_rows_rat(rows)) == static_cast<int>(rows.size()))
                seed.push_back(i);
            else
                rows.pop_back();
        }
    }
    if (static_cast<int>(seed.size()) < n)
        throw std::invalid_argument("extreme_rays: cone is not pointed");

    RationalMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = Rational(A(seed[i], j));
    RationalMatrix Binv = *inverse(B);

    // Process the seed constraints first, then the rest in input order.
    std::vector<int> order = seed;
    for (int i = 0; i < m; ++i)
        if (std::find(seed.begin(), seed.end(), i) == seed.end()) order.push_back(i);

    std::vector<Ray> rays;
    for (int j = 0; j < n; ++j) {
        RatVec col(n);
        for (int i = 0; i < n; ++i) col[i] = Binv(i, j);
        rays.push_back({primitive_from_rational(col), make_bits(m), 0});
    }

    auto recompute_zero = [&](Ray& r, int upto) {
        r.zero = make_bits(m);
        for (int k = 0; k < upto; ++k)
            if (dot(A.row(order[k]), r.v) == 0) set_bit(r.zero, k);
    };
    for (auto& r : rays) recompute_zero(r, n);

    for (int step = n; step < m; ++step) {
        const IntVec a = A.row(order[step]);
        std::vector<Ray> pos, zero, neg;
        for (auto& r : rays) {
            r.slack = dot(a, r.v);
            if (r.slack > 0)
                pos.push_back(std::move(r));
            else if (r.slack == 0)
                zero.push_back(std::move(r));
            else
                neg.push_back(std::move(r));
        }
        if (neg.empty()) {
            rays.clear();
            for (auto& r : pos) rays.push_back(std::move(r));
            for (auto& r : zero) {
                set_bit(r.zero, step);
                rays.push_back(std::move(r));
            }
            continue;
        }

        // Adjacency test is combinatorial: p and q are adjacent iff no other
        // current ray's zero set contains Z(p) & Z(q).
        auto adjacent = [&](const Ray& p, const Ray& q) {
            Bits common = intersect(p.zero, q.zero);
            if (popcount(common) < n - 2) return false;
            for (const auto& grp : {&pos, &zero, &neg})
                for (const auto& s : *grp) {
                    if (&s == &p || &s == &q) continue;
                    if (subset(common, s.zero)) return false;
                }
            return true;
        };

        std::vector<Ray> created;
        for (const auto& p : pos)
            for (const auto& q : neg) {
                if (!adjacent(p, q)) continue;
                IntVec w(n);
                for (int c = 0; c < n; ++c) w[c] = p.slack * q.v[c] - q.slack * p.v[c];
                Ray fresh{primitive_vector(w), make_bits(m), 0};
                recompute_zero(fresh, step + 1);
                created.push_back(std::move(fresh));
            }

        std::vector<Ray> next;
        for (auto& r : pos) next.push_back(std::move(r));
        for (auto& r : zero) {
            set_bit(r.zero, step);
            next.push_back(std::move(r));
        }
        for (auto& r : created) next.push_back(std::move(r));
        rays = std::move(next);
    }

    std::vector<IntVec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IntVec> cone_facets(const std::vector<IntVec>& rays) {
    if (rays.empty()) return {};
    return extreme_rays(from_rows(rays));
}

}  // namespace chowbench::dd
