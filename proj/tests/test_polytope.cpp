#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "chowbench/generators.hpp"
#include "chowbench/polytope.hpp"

using namespace chowbench;

namespace {

// ---------------------------------------------------------------------------
// Test-local oracle: brute-force facet enumeration by hyperplane search, with
// its own Gaussian elimination.  No shared code with the hull under test.

using OracleMat = std::vector<RatVec>;

int oracle_rank(OracleMat m) {
    if (m.empty()) return 0;
    size_t cols = m[0].size();
    int r = 0;
    for (size_t c = 0; c < cols && r < (int)m.size(); ++c) {
        int piv = -1;
        for (int i = r; i < (int)m.size(); ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = 0; i < (int)m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

// one kernel vector of a rank-(n-1) system with n unknowns
RatVec oracle_kernel_vec(OracleMat m, size_t cols) {
    std::vector<int> pivot_col;
    int r = 0;
    for (size_t c = 0; c < cols; ++c) {
        int piv = -1;
        for (int i = r; i < (int)m.size(); ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = 0; i < (int)m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivot_col.push_back((int)c);
        ++r;
    }
    int free_col = -1;
    for (size_t c = 0; c < cols; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), (int)c) == pivot_col.end()) {
            free_col = (int)c;
            break;
        }
    REQUIRE(free_col >= 0);
    RatVec v(cols, 0);
    v[free_col] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
        v[pivot_col[i]] = -m[i][free_col] / m[i][pivot_col[i]];
    return v;
}

int oracle_affine_rank(const std::vector<RatVec>& pts, const std::vector<int>& idx) {
    if (idx.size() <= 1) return 0;
    OracleMat diffs;
    for (size_t k = 1; k < idx.size(); ++k) diffs.push_back(vec_sub(pts[idx[k]], pts[idx[0]]));
    return oracle_rank(diffs);
}

// tight vertex-index sets of all facets of a full-dimensional point set
std::set<std::vector<int>> oracle_facets(const std::vector<RatVec>& pts) {
    const size_t n = pts[0].size();
    std::set<std::vector<int>> facets;
    std::vector<int> sub(n);
    for (size_t k = 0; k < n; ++k) sub[k] = (int)k;
    auto advance = [&]() {
        int i = (int)n - 1;
        while (i >= 0 && sub[i] == (int)pts.size() - (int)n + i) --i;
        if (i < 0) return false;
        ++sub[i];
        for (size_t k = i + 1; k < n; ++k) sub[k] = sub[k - 1] + 1;
        return true;
    };
    do {
        OracleMat diffs;
        for (size_t k = 1; k < n; ++k) diffs.push_back(vec_sub(pts[sub[k]], pts[sub[0]]));
        if (oracle_rank(diffs) != (int)n - 1) continue;
        RatVec normal = oracle_kernel_vec(diffs, n);
        Rational offset = -dot(pts[sub[0]], normal);
        bool all_ge = true, all_le = true;
        std::vector<int> tight;
        for (size_t p = 0; p < pts.size(); ++p) {
            Rational val = dot(pts[p], normal) + offset;
            if (val > 0) all_le = false;
            if (val < 0) all_ge = false;
            if (val == 0) tight.push_back((int)p);
        }
        if (all_ge || all_le) facets.insert(tight);
    } while (advance());
    return facets;
}

// f-vector by closing the facet sets under intersection and grading by rank
std::vector<long> oracle_f_vector(const std::vector<RatVec>& pts,
                                  const std::set<std::vector<int>>& facets) {
    std::vector<int> everything(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) everything[i] = (int)i;
    const int dim = oracle_affine_rank(pts, everything);

    std::set<std::vector<int>> faces = facets, frontier = facets;
    while (!frontier.empty()) {
        std::set<std::vector<int>> fresh;
        for (const auto& f : frontier)
            for (const auto& g : facets) {
                std::vector<int> meet;
                std::set_intersection(f.begin(), f.end(), g.begin(), g.end(),
                                      std::back_inserter(meet));
                if (!meet.empty() && !faces.count(meet)) fresh.insert(meet);
            }
        for (const auto& f : fresh) faces.insert(f);
        frontier = std::move(fresh);
    }
    std::vector<long> f(dim, 0);
    for (const auto& face : faces) ++f[oracle_affine_rank(pts, face)];
    return f;
}

// ---------------------------------------------------------------------------

std::vector<RatVec> cube_vertices(int n) {
    std::vector<RatVec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        RatVec v(n);
        for (int k = 0; k < n; ++k) v[k] = (mask >> k) & 1;
        pts.push_back(v);
    }
    return pts;
}

RatVec rv(std::vector<int> v) { return RatVec(v.begin(), v.end()); }
IntVec iv(std::vector<int> v) { return IntVec(v.begin(), v.end()); }

// H-representation consistency: facets valid and tight exactly on their
// recorded vertex sets, normals primitive, alternating Euler sum vanishes.
void check_consistent(const LatticePolytope& P) {
    for (size_t fi = 0; fi < P.facets().size(); ++fi) {
        const auto& f = P.facets()[fi];
        CHECK(content(f.normal) == 1);
        std::vector<int> tight;
        for (size_t v = 0; v < P.vertices().size(); ++v) {
            Rational val = dot(P.vertices()[v], f.normal) + f.offset;
            CHECK(val >= 0);
            if (val == 0) tight.push_back((int)v);
        }
        CHECK(tight == P.facet_vertices()[fi]);
    }
    for (const auto& eq : P.equations())
        for (const auto& v : P.vertices()) CHECK(dot(v, eq.normal) + eq.offset == 0);
    CHECK(std::is_sorted(P.vertices().begin(), P.vertices().end()));
    // Euler relation including the empty and top face
    long sum = -1;
    int sign = 1;
    for (long fk : P.f_vector()) {
        sum += sign * fk;
        sign = -sign;
    }
    sum += sign;  // the polytope itself
    CHECK(sum == 0);
}

LatticePolytope hull_of(std::vector<RatVec> pts, const std::string& tag = "ambient") {
    return LatticePolytope::hull(std::move(pts), tag);
}

}  // namespace

TEST_CASE("hull discards non-extreme points and sorts vertices") {
    auto pts = cube_vertices(3);
    pts.push_back({Rational(1, 2), Rational(1, 2), Rational(1, 2)});  // center
    pts.push_back({Rational(1, 2), Rational(1, 2), 0});               // facet center
    pts.push_back(rv({0, 0, 0}));                                     // duplicate
    auto P = hull_of(pts);
    CHECK(P.dim() == 3);
    CHECK(P.vertices().size() == 8);
    CHECK(P.full_dimensional());
    CHECK(P.is_lattice_polytope());
    check_consistent(P);
    // round trip
    CHECK(hull_of(P.vertices()) == P);
}

TEST_CASE("unit segment") {
    auto P = hull_of({rv({0}), rv({1})});
    CHECK(P.dim() == 1);
    CHECK(P.vertices().size() == 2);
    CHECK(P.facets().size() == 2);
    CHECK(P.f_vector() == std::vector<long>{2});
}

TEST_CASE("lower-dimensional hull carries equations and direction basis") {
    auto P = hull_of({rv({0, 0}), rv({1, 1}), rv({2, 2})});
    CHECK(P.dim() == 1);
    CHECK(P.ambient_dim() == 2);
    CHECK_FALSE(P.full_dimensional());
    CHECK(P.vertices().size() == 2);
    REQUIRE(P.equations().size() == 1);
    const auto& eq = P.equations()[0];
    CHECK(dot(rv({0, 0}), eq.normal) + eq.offset == 0);
    CHECK(dot(rv({2, 2}), eq.normal) + eq.offset == 0);
    REQUIRE(P.direction_basis().size() == 1);
    CHECK(primitive_vector(P.direction_basis()[0]) == iv({1, 1}));
    check_consistent(P);
}

TEST_CASE("single point") {
    auto P = hull_of({rv({3, 4})});
    CHECK(P.dim() == 0);
    CHECK(P.vertices().size() == 1);
    CHECK(P.f_vector().empty());
}

TEST_CASE("cube face counts") {
    auto P = hull_of(cube_vertices(3));
    CHECK(P.f_vector() == std::vector<long>{8, 12, 6});
    CHECK(P.edges().size() == 12);
    CHECK(oracle_facets(P.vertices()).size() == 6);
    check_consistent(P);
}

TEST_CASE("simplex face counts") {
    auto P = hull_of({rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
    CHECK(P.f_vector() == std::vector<long>{4, 6, 4});
    check_consistent(P);
}

TEST_CASE("bordism example polytope against the brute-force oracle") {
    const auto& M = brus_matrix();
    std::vector<RatVec> pts;
    for (int j = 0; j < M.cols; ++j) {
        RatVec v(4);
        for (int i = 0; i < 4; ++i) v[i] = M(i, j);
        pts.push_back(v);
    }
    auto P = hull_of(pts);
    CHECK(P.dim() == 4);
    CHECK(P.vertices().size() == 26);  // every column is extreme

    auto facets = oracle_facets(P.vertices());
    auto fv = oracle_f_vector(P.vertices(), facets);
    CHECK(fv == std::vector<long>{26, 52, 36, 10});  // frozen oracle values
    CHECK(P.f_vector() == fv);
    CHECK(P.facets().size() == facets.size());
    for (const auto& tight : P.facet_vertices()) CHECK(facets.count(tight) == 1);
    check_consistent(P);
}

TEST_CASE("random point sets match the oracle") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coord(0, 3);
    std::uniform_int_distribution<int> npts(5, 10);
    int checked = 0;
    for (int round = 0; round < 12; ++round) {
        std::vector<RatVec> pts;
        int m = npts(rng);
        for (int p = 0; p < m; ++p) pts.push_back(rv({coord(rng), coord(rng), coord(rng)}));
        auto P = hull_of(pts);
        if (P.dim() != 3) continue;
        ++checked;
        auto facets = oracle_facets(P.vertices());
        CHECK(P.facets().size() == facets.size());
        CHECK(P.f_vector() == oracle_f_vector(P.vertices(), facets));
        check_consistent(P);
    }
    CHECK(checked >= 6);  // the sample should be mostly full-dimensional
}

TEST_CASE("slice of the cube at a critical level is a unimodular triangle") {
    auto P = hull_of(cube_vertices(3));
    IntVec nu = iv({1, 1, 1});
    auto S = slice_at(P, nu, 1);
    CHECK(S.lattice_tag() == chart_tag(nu));
    CHECK(S.dim() == 2);
    CHECK(S.ambient_dim() == 2);
    REQUIRE(S.vertices().size() == 3);
    CHECK(S.is_lattice_polytope());
    RatVec e1 = vec_sub(S.vertices()[1], S.vertices()[0]);
    RatVec e2 = vec_sub(S.vertices()[2], S.vertices()[0]);
    Rational det = e1[0] * e2[1] - e1[1] * e2[0];
    CHECK((det == 1 || det == -1));  // normalized volume 1
}

TEST_CASE("slice of the square at 1/2 is a segment of width 1/2") {
    auto P = hull_of(cube_vertices(2));
    auto S = slice_at(P, iv({1, 1}), Rational(1, 2));
    CHECK(S.dim() == 1);
    REQUIRE(S.vertices().size() == 2);
    Rational width = S.vertices()[1][0] - S.vertices()[0][0];
    if (width < 0) width = -width;
    CHECK(width == Rational(1, 2));
}

TEST_CASE("slice of the segment at 1/2 is a point") {
    auto P = hull_of({rv({0}), rv({1})});
    auto S = slice_at(P, iv({1}), Rational(1, 2));
    CHECK(S.dim() == 0);
    CHECK(S.ambient_dim() == 0);
    CHECK(S.vertices().size() == 1);
}

TEST_CASE("slice level errors") {
    auto P = hull_of(cube_vertices(3));
    IntVec nu = iv({1, 1, 1});
    CHECK_THROWS_WITH_AS(slice_at(P, nu, Rational(7, 2)), "LevelOutOfRange", std::runtime_error);
    CHECK_THROWS_WITH_AS(slice_at(P, nu, -1), "LevelOutOfRange", std::runtime_error);
    auto S = slice_at(P, nu, 0);  // boundary level hits a single vertex
    CHECK(S.dim() == 0);
}

TEST_CASE("truncation") {
    auto seg = hull_of({rv({0}), rv({1})});
    auto T = truncate_between(seg, iv({1}), Rational(1, 4), Rational(3, 4));
    CHECK(T.vertices() == std::vector<RatVec>{{Rational(1, 4)}, {Rational(3, 4)}});

    auto cube = hull_of(cube_vertices(3));
    IntVec nu = iv({1, 1, 1});
    auto C = truncate_between(cube, nu, Rational(1, 2), Rational(5, 2));
    CHECK(C.vertices().size() == 12);  // both corners cut into triangles
    CHECK(C.facets().size() == 8);
    CHECK(oracle_facets(C.vertices()).size() == 8);
    check_consistent(C);

    CHECK(truncate_between(cube, nu, 0, 3) == cube);
    CHECK_THROWS_AS(truncate_between(cube, nu, 2, 1), std::invalid_argument);
    CHECK_THROWS_WITH_AS(truncate_between(cube, nu, 4, 5), "EmptyIntersection",
                         std::runtime_error);
}

TEST_CASE("minkowski sum against brute-force pairwise sums") {
    auto brute = [](const LatticePolytope& P, const LatticePolytope& Q) {
        std::vector<RatVec> sums;
        for (const auto& p : P.vertices())
            for (const auto& q : Q.vertices()) sums.push_back(vec_add(p, q));
        return LatticePolytope::hull(sums, P.lattice_tag());
    };

    auto I1 = hull_of({rv({0, 0}), rv({1, 0})});
    auto I2 = hull_of({rv({0, 0}), rv({0, 1})});
    auto Sq = minkowski_sum(I1, I2);
    CHECK(Sq == hull_of(cube_vertices(2)));
    CHECK(Sq == brute(I1, I2));

    // sum of two parallel square slices, mapped back to ambient coordinates
    auto square = hull_of(cube_vertices(2));
    IntVec nu = iv({1, 1});
    auto A = slice_at(square, nu, Rational(1, 2));
    auto B = slice_at(square, nu, Rational(3, 2));
    auto S = minkowski_sum(A, B);
    CHECK(S == brute(A, B));
    auto chart = make_chart(nu, 2);  // sum lives at level 1/2 + 3/2
    std::vector<RatVec> ambient;
    for (const auto& v : S.vertices()) ambient.push_back(chart.backward(v));
    std::sort(ambient.begin(), ambient.end());
    std::vector<RatVec> expect = {{Rational(1, 2), Rational(3, 2)},
                                  {Rational(3, 2), Rational(1, 2)}};
    CHECK(ambient == expect);

    // adding a point translates
    auto pt = hull_of({rv({1, 2})});
    auto Tr = minkowski_sum(square, pt);
    std::vector<RatVec> shifted;
    for (const auto& v : square.vertices()) shifted.push_back(vec_add(v, rv({1, 2})));
    std::sort(shifted.begin(), shifted.end());
    CHECK(Tr.vertices() == shifted);

    // commutativity and a random pair
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(-2, 2);
    std::vector<RatVec> ap, bp;
    for (int k = 0; k < 6; ++k) {
        ap.push_back(rv({coord(rng), coord(rng)}));
        bp.push_back(rv({coord(rng), coord(rng)}));
    }
    auto A2 = hull_of(ap), B2 = hull_of(bp);
    CHECK(minkowski_sum(A2, B2) == brute(A2, B2));
    CHECK(minkowski_sum(A2, B2) == minkowski_sum(B2, A2));

    CHECK_THROWS_AS(minkowski_sum(square, A), std::invalid_argument);  // tag mismatch
}

TEST_CASE("scaling") {
    auto square = hull_of(cube_vertices(2));
    auto D = scale_polytope(2, square);
    CHECK(D.vertices().back() == rv({2, 2}));
    CHECK(D.vertices().size() == 4);
    auto H = scale_polytope(Rational(1, 2), D);
    CHECK(H == square);
}

TEST_CASE("canonical form") {
    // homothetic hexagons canonicalize identically
    std::vector<RatVec> a, b;
    std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    RatVec base = {Rational(1, 2), Rational(3, 2), Rational(5, 2)};
    for (const auto& p : perms) {
        a.push_back({base[p[0]], base[p[1]], base[p[2]]});
        b.push_back({Rational(p[0]), Rational(p[1]), Rational(p[2])});
    }
    auto ca = canonicalize(hull_of(a));
    auto cb = canonicalize(hull_of(b));
    CHECK(ca.polytope == cb.polytope);
    CHECK(ca.scale == 1);
    CHECK(cb.scale == 1);
    CHECK(ca.translation == RatVec{Rational(1, 2), Rational(3, 2), Rational(5, 2)});
    CHECK(ca.polytope.is_lattice_polytope());

    auto seg = canonicalize(hull_of({rv({7}), {Rational(15, 2)}}));
    CHECK(seg.polytope.vertices() == std::vector<RatVec>{{0}, {1}});
    CHECK(seg.translation == RatVec{7});
    CHECK(seg.scale == 2);

    auto cube = hull_of(cube_vertices(3));
    auto cc = canonicalize(cube);
    CHECK(cc.polytope == cube);
    CHECK(cc.scale == 1);
    CHECK(cc.translation == rv({0, 0, 0}));

    // homothety invariance
    auto moved = minkowski_sum(scale_polytope(3, cube), hull_of({rv({5, -1, 2})}));
    CHECK(canonicalize(moved).polytope == cube);
}

TEST_CASE("charts share the kernel basis across levels") {
    IntVec nu = iv({2, 3, 5});
    auto c1 = make_chart(nu, 1);
    auto c2 = make_chart(nu, Rational(7, 3));
    CHECK(c1.kernel_basis == c2.kernel_basis);
    CHECK(c1.kernel_basis.size() == 2);
    for (const auto& k : c1.kernel_basis) CHECK(dot(k, nu) == 0);
    CHECK(dot(c1.basepoint, nu) == 1);
    CHECK(dot(c2.basepoint, nu) == Rational(7, 3));
    CHECK(is_lattice_basis([&] {
        auto rows = c1.kernel_basis;
        RatVec p0 = make_chart(nu, 1).basepoint;
        IntVec p0i(p0.size());
        for (size_t i = 0; i < p0.size(); ++i) p0i[i] = rat_num(p0[i]);
        rows.push_back(p0i);
        return rows;
    }()));

    // forward and backward are mutually inverse on the level hyperplane
    RatVec x = {Rational(1, 2), Rational(1, 3), 0};
    Rational level = dot(x, nu);
    auto c = make_chart(nu, level);
    CHECK(c.backward(c.forward(x)) == x);
}

TEST_CASE("pairing range") {
    auto P = hull_of(cube_vertices(3));
    CHECK(P.min_pairing(iv({1, 1, 1})) == 0);
    CHECK(P.max_pairing(iv({1, 1, 1})) == 3);
    CHECK(P.min_pairing(iv({-1, 0, 2})) == -1);
    CHECK(P.max_pairing(iv({-1, 0, 2})) == 2);
}
