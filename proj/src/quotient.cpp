#include "chowbench/quotient.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace chowbench {

namespace {

int thread_budget(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHOWBENCH_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return (int)v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? (int)hc : 1;
}

void run_parallel(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void check_chamber_indices(const ChamberGrid& g, int i, int j) {
    if (i < 0 || j > g.r || i >= j) throw std::invalid_argument("chamber index out of range");
}

}  // namespace

Rational ChamberGrid::wall_level(int i) const {
    if (i < 0 || i > r) throw std::invalid_argument("wall index out of range");
    return Rational(offset + walls[i]);
}

Rational ChamberGrid::midpoint(int i) const {
    if (i < 0 || i >= r) throw std::invalid_argument("chamber index out of range");
    return (wall_level(i) + wall_level(i + 1)) / 2;
}

Chamber ChamberGrid::chamber(int i, int j) const {
    check_chamber_indices(*this, i, j);
    if (j == i + 1) {
        // both representatives inside one interval: quartiles
        Rational a = wall_level(i), b = wall_level(i + 1);
        return {a + (b - a) / 4, a + (b - a) * 3 / 4};
    }
    return {midpoint(i), midpoint(j - 1)};
}

ChamberGrid make_chamber_grid(const ActionAnalysis& a) {
    ChamberGrid g;
    g.r = a.criticality;
    g.walls = a.critical_values;
    g.offset = a.weight_offset;
    return g;
}

LatticePolytope git_quotient(const ActionAnalysis& a, int i, int j) {
    ChamberGrid g = make_chamber_grid(a);
    if (j == i) {
        if (i < 0 || i > g.r) throw std::invalid_argument("wall index out of range");
        return slice_at(a.polytope, a.nu, g.wall_level(i));
    }
    if (j == i + 1) {
        if (i < 0 || i >= g.r) throw std::invalid_argument("chamber index out of range");
        return slice_at(a.polytope, a.nu, g.midpoint(i));
    }
    throw std::invalid_argument("git_quotient requires j in {i, i+1}");
}

LatticePolytope pruning_at(const ActionAnalysis& a, const Rational& tau_minus,
                           const Rational& tau_plus) {
    return truncate_between(a.polytope, a.nu, tau_minus, tau_plus);
}

LatticePolytope pruning(const ActionAnalysis& a, int i, int j) {
    ChamberGrid g = make_chamber_grid(a);
    check_chamber_indices(g, i, j);
    Chamber c = g.chamber(i, j);
    return pruning_at(a, c.tau_minus, c.tau_plus);
}

CanonicalForm fiber_polytope(const LatticePolytope& P, const IntVec& nu) {
    std::vector<Rational> levels;
    for (const auto& v : P.vertices()) levels.push_back(dot(v, nu));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) throw std::runtime_error("TrivialAction");

    std::optional<LatticePolytope> sum;
    for (size_t k = 0; k + 1 < levels.size(); ++k) {
        Rational mid = (levels[k] + levels[k + 1]) / 2;
        LatticePolytope piece =
            scale_polytope(levels[k + 1] - levels[k], slice_at(P, nu, mid));
        sum = sum ? minkowski_sum(*sum, piece) : piece;
    }
    return canonicalize(*sum);
}

CanonicalForm chow_fiber_polytope(const ActionAnalysis& a, int i, int j) {
    return fiber_polytope(pruning(a, i, j), a.nu);
}

CanonicalForm chow_minkowski_polytope(const ActionAnalysis& a, int i, int j) {
    ChamberGrid g = make_chamber_grid(a);
    check_chamber_indices(g, i, j);
    std::optional<LatticePolytope> sum;
    for (int k = i; k <= j; ++k) {
        LatticePolytope piece = slice_at(a.polytope, a.nu, g.wall_level(k));
        sum = sum ? minkowski_sum(*sum, piece) : piece;
    }
    return canonicalize(*sum);
}

const char* to_string(NodeRole role) {
    switch (role) {
        case NodeRole::SemigeometricWall: return "git_semigeometric";
        case NodeRole::GeometricGIT: return "git_geometric";
        default: return "chow";
    }
}

const DiagramNode& QuotientDiagram::node(int i, int j) const {
    for (const auto& n : nodes)
        if (n.i == i && n.j == j) return n;
    throw std::invalid_argument("no such node");
}

QuotientDiagram build_diagram(const ActionAnalysis& a, const DiagramOptions& options) {
    if (!a.equalized && !options.force) throw std::runtime_error("NotEqualized");
    QuotientDiagram D;
    D.analysis = a;
    D.grid = make_chamber_grid(a);
    const int r = D.grid.r;
    const int threads = thread_budget(options.threads);

    for (int i = 0; i <= r; ++i)
        for (int j = i; j <= r; ++j) {
            DiagramNode n;
            n.i = i;
            n.j = j;
            n.role = j == i ? NodeRole::SemigeometricWall
                            : (j == i + 1 ? NodeRole::GeometricGIT : NodeRole::Chow);
            D.nodes.push_back(std::move(n));
        }

    run_parallel((int)D.nodes.size(), threads, [&](int k) {
        DiagramNode& n = D.nodes[k];
        if (n.role == NodeRole::SemigeometricWall) {
            n.polytope = git_quotient(a, n.i, n.j);
        } else {
            n.fiber = chow_fiber_polytope(a, n.i, n.j);
            n.fiber_fan = normal_fan(n.fiber->polytope);
            n.minkowski = chow_minkowski_polytope(a, n.i, n.j);
            n.minkowski_fan = normal_fan(n.minkowski->polytope);
            n.polytope = n.role == NodeRole::GeometricGIT ? git_quotient(a, n.i, n.j)
                                                          : n.fiber->polytope;
        }
        if (n.polytope.full_dimensional()) {
            n.fan = normal_fan(n.polytope);
            auto rep = smoothness_report(*n.fan);
            n.smooth = rep.smooth;
            n.offending_cones = std::move(rep.offending_cones);
        }
    });

    for (const auto& n : D.nodes) {
        if (n.j - n.i < 2) continue;
        DiagramEdge s;
        s.kind = 's';
        s.from_i = n.i, s.from_j = n.j, s.to_i = n.i, s.to_j = n.j - 1;
        DiagramEdge d;
        d.kind = 'd';
        d.from_i = n.i, d.from_j = n.j, d.to_i = n.i + 1, d.to_j = n.j;
        D.edges.push_back(std::move(s));
        D.edges.push_back(std::move(d));
    }
    run_parallel((int)D.edges.size(), threads, [&](int k) {
        DiagramEdge& e = D.edges[k];
        const Fan& src = *D.node(e.from_i, e.from_j).fan;
        const Fan& tgt = *D.node(e.to_i, e.to_j).fan;
        try {
            e.cls = classify_morphism(src, tgt);
        } catch (const std::runtime_error& err) {
            e.diagnostic = err.what();
        }
    });

    if (options.check_squares) {
        for (const auto& n : D.nodes)
            if (n.j - n.i >= 2) D.squares.push_back({n.i, n.j, false});
        run_parallel((int)D.squares.size(), threads, [&](int k) {
            SquareCheck& s = D.squares[k];
            const Fan& whole = *D.node(s.i, s.j).fan;
            const Fan& left = *D.node(s.i, s.j - 1).fan;
            const Fan& right = *D.node(s.i + 1, s.j).fan;
            s.pass = fans_equal(whole, common_refinement(left, right));
        });
        for (const auto& s : D.squares) D.all_squares_pass = D.all_squares_pass && s.pass;
    }

    if (options.cross_validate) {
        for (auto& n : D.nodes) {
            if (n.j == n.i) continue;
            bool pass = fans_equal(*n.fiber_fan, *n.minkowski_fan);
            D.cross_validation.push_back({n.i, n.j, pass});
            D.all_cross_pass = D.all_cross_pass && pass;
        }
    }
    return D;
}

std::vector<EdgeCenters> centers_report(const QuotientDiagram& D) {
    std::vector<EdgeCenters> out;
    for (const auto& e : D.edges) {
        if (e.cls.kind != MorphismKind::SmoothBlowup) continue;
        EdgeCenters ec;
        ec.kind = e.kind;
        ec.from_i = e.from_i, ec.from_j = e.from_j;
        ec.to_i = e.to_i, ec.to_j = e.to_j;

        const Fan& tgt = *D.node(e.to_i, e.to_j).fan;
        auto ray_index = [&](const IntVec& r) {
            auto it = std::find(tgt.rays().begin(), tgt.rays().end(), r);
            return (int)(it - tgt.rays().begin());
        };
        const size_t m = e.cls.centers.size();
        std::vector<std::vector<int>> ix(m);
        for (size_t c = 0; c < m; ++c) {
            for (const auto& r : e.cls.centers[c].cone) ix[c].push_back(ray_index(r));
            std::sort(ix[c].begin(), ix[c].end());
        }
        // strata meet iff some target cone contains both center cones
        std::vector<int> comp(m);
        for (size_t c = 0; c < m; ++c) comp[c] = (int)c;
        std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
        for (size_t p = 0; p < m; ++p)
            for (size_t q = p + 1; q < m; ++q) {
                std::vector<int> both;
                std::set_union(ix[p].begin(), ix[p].end(), ix[q].begin(), ix[q].end(),
                               std::back_inserter(both));
                bool meet = false;
                for (const auto& cone : tgt.maximal_cones())
                    if (std::includes(cone.begin(), cone.end(), both.begin(), both.end())) {
                        meet = true;
                        break;
                    }
                if (meet) comp[find((int)p)] = find((int)q);
            }
        std::vector<int> label(m, -1);
        int groups = 0;
        for (size_t c = 0; c < m; ++c) {
            int root = find((int)c);
            if (label[root] < 0) label[root] = groups++;
            CenterStratum st;
            st.cone = e.cls.centers[c].cone;
            st.new_ray = e.cls.centers[c].new_ray;
            st.codim = e.cls.centers[c].cone_dim;
            st.component = label[root];
            ec.strata.push_back(std::move(st));
        }
        ec.components = groups;
        out.push_back(std::move(ec));
    }
    return out;
}

}  // namespace chowbench
