#include <stdexcept>

#include "doctest.h"
#include "pace/heuristics.hpp"
#include "pace/oracle.hpp"
#include "test_support.hpp"

using namespace pace;
using namespace pace::testing;

namespace {

// Forward corridor v5 -e6-> v6 -e8-> vd with a T-path whose anticorrelated
// joint makes the T-path minimum (15) exceed the edge-sum minimum (13).
struct ConflictGraph {
    RoadGraph graph;
    PaceGraph with_tpath;
    PaceGraph without_tpath;
    VertexId v5 = 5, v6 = 6, vd = 7;
};

ConflictGraph conflict_graph() {
    ConflictGraph c;
    c.graph.add_vertex(5);
    c.graph.add_vertex(6);
    c.graph.add_vertex(7);
    c.graph.add_edge(6, 5, 6, dist({{9, 0.5}, {11, 0.5}}));
    c.graph.add_edge(8, 6, 7, dist({{4, 0.5}, {6, 0.5}}));
    auto trajs = repeat_trajectories({6, 8}, {{9, 6}, {11, 4}}, {5, 5});
    c.with_tpath = extract_tpaths(trajs, c.graph, 5);
    c.without_tpath = extract_tpaths(trajs, c.graph, 11);
    return c;
}

}  // namespace

TEST_CASE("reversed units carry minimum forward costs") {
    auto g = line_graph(2);
    RoadGraph g2;
    g2.add_vertex(0);
    g2.add_vertex(1);
    g2.add_vertex(2);
    g2.add_edge(1, 0, 1, dist({{8, 0.9}, {10, 0.1}}));
    g2.add_edge(4, 1, 2, dist({{8, 1.0}}));
    auto trajs = repeat_trajectories({1, 4}, {{8, 8}, {10, 8}}, {9, 1});
    auto pace = extract_tpaths(trajs, g2, 5);
    REQUIRE(pace.tpaths().size() == 1);

    auto rg = reverse(pace);
    bool saw_edge = false, saw_tpath = false;
    for (const ReversedUnit& u : rg.out(1)) {
        if (u.is_edge && u.edge == 1) {
            saw_edge = true;
            CHECK(u.min_cost == 8);
            CHECK(u.covered_edges == 0);
            CHECK(u.to == 0);
        }
    }
    for (const ReversedUnit& u : rg.out(2)) {
        if (!u.is_edge) {
            saw_tpath = true;
            CHECK(u.min_cost == 16);
            CHECK(u.covered_edges == 2);
            CHECK(u.to == 0);
            CHECK(u.edges_reversed == std::vector<EdgeId>{4, 1});
        }
    }
    CHECK(saw_edge);
    CHECK(saw_tpath);

    // one-point distribution reverses to its only cost
    auto g3 = line_graph(1, 5);
    PaceGraph p3(g3, {}, "all", 1);
    auto rg3 = reverse(p3);
    CHECK(rg3.out(1).front().min_cost == 5);
}

TEST_CASE("tree prefers the T-path cost over the same path's edge sum") {
    auto c = conflict_graph();
    REQUIRE(c.with_tpath.tpaths().size() == 1);
    CHECK(c.with_tpath.tpaths()[0].total.min_cost() == 15);

    auto m_with = shortest_path_tree(reverse(c.with_tpath), c.vd);
    CHECK(m_with.get(c.v5) == 15);
    CHECK(m_with.get(c.v6) == 4);
    CHECK(m_with.get(c.vd) == 0);

    REQUIRE(c.without_tpath.tpaths().empty());
    auto m_without = shortest_path_tree(reverse(c.without_tpath), c.vd);
    CHECK(m_without.get(c.v5) == 13);
}

TEST_CASE("tree equals classical least cost when no T-paths exist") {
    for (std::uint64_t seed : {2, 9}) {
        InstanceOpts opts;
        opts.corridor_count = 0;
        opts.max_tpaths = 0;
        opts.build_vgraph = false;
        auto inst = make_instance(seed, opts);
        VertexId dest = inst.graph.vertices().front();
        auto m = shortest_path_tree(reverse(inst.pace), dest);

        // reference: Dijkstra over min edge costs on the reversed graph
        std::map<VertexId, Cost> ref;
        ref[dest] = 0;
        std::map<VertexId, std::vector<std::pair<VertexId, Cost>>> radj;
        for (const auto& [id, e] : inst.graph.edges())
            radj[e.to].emplace_back(e.from, inst.pace.base().weight(id).min_cost());
        for (bool changed = true; changed;) {  // Bellman-Ford is fine at this size
            changed = false;
            for (const auto& [v, outs] : radj) {
                if (!ref.count(v)) continue;
                for (auto [u, w] : outs) {
                    Cost nd = ref[v] + w;
                    if (!ref.count(u) || nd < ref[u]) {
                        ref[u] = nd;
                        changed = true;
                    }
                }
            }
        }
        for (const auto& [v, d] : ref) CHECK(m.get(v) == d);
        for (VertexId v : inst.graph.vertices())
            if (!ref.count(v)) CHECK_FALSE(m.reachable(v));
    }
}

TEST_CASE("binary heuristic boundary behavior") {
    auto c = conflict_graph();
    auto m = shortest_path_tree(reverse(c.with_tpath), c.vd);
    CHECK(binary_u(c.v5, 14, m) == 0.0);
    CHECK(binary_u(c.v5, 15, m) == 1.0);  // x == getMin counts as reachable
    CHECK(binary_u(c.v5, 21, m) == 1.0);
    CHECK(binary_u(c.vd, 0, m) == 1.0);

    MinCostMap empty;
    empty.dest = c.vd;
    empty.min_cost[c.vd] = 0;
    CHECK(binary_u(c.v5, 1'000'000, empty) == 0.0);  // unreachable sentinel
}

TEST_CASE("two-vertex table has the single-step structure") {
    RoadGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 0, 1, CostDistribution::point(3));
    PaceGraph pace(g, {}, "all", 1);
    auto updated = build_vpaths(pace);
    auto m = shortest_path_tree(reverse(pace), 1);
    auto table = build_table(updated, 1, 3, std::nullopt, m);

    CHECK(table.lookup(0, 3) == 1.0);
    CHECK(table.lookup(0, 0) == 0.0);
    CHECK(table.lookup(1, 0) == 1.0);   // destination row is all ones
    CHECK(table.lookup(1, 999) == 1.0);
}

TEST_CASE("lookup rounds budgets up to the next grid point") {
    auto c = conflict_graph();
    auto updated = build_vpaths(c.with_tpath);
    auto m = shortest_path_tree(reverse(c.with_tpath), c.vd);
    auto table = build_table(updated, c.vd, 3, std::nullopt, m);

    // v5: getMin 15 -> l at x=15; query 13..15 all resolve to column 15
    CHECK(table.lookup(c.v5, 13) == table.lookup(c.v5, 15));
    CHECK(table.lookup(c.v5, 12) == 0.0);
    CHECK(table.lookup(c.v5, 10'000) == 1.0);

    // exact grid point returns the stored cell
    const auto& row = table.rows().at(c.v5);
    Cost on_grid = static_cast<Cost>(row.l_idx) * table.delta();
    CHECK(table.lookup(c.v5, on_grid) ==
          doctest::Approx(row.values.front()).epsilon(1e-12));
}

TEST_CASE("rows are zeros, a monotone band, then ones") {
    for (std::uint64_t seed : {4, 11}) {
        auto inst = make_instance(seed);
        VertexId dest = inst.graph.vertices().back();
        auto m = shortest_path_tree(reverse(inst.pace), dest);
        auto table = build_table(inst.vgraph, dest, 2, std::nullopt, m);
        for (const auto& [v, row] : table.rows()) {
            REQUIRE(row.l_idx >= 1);
            REQUIRE(row.s_idx >= row.l_idx);
            double prev = 0.0;
            for (double val : row.values) {
                CHECK(val >= prev - 1e-12);
                CHECK(val >= 0.0);
                CHECK(val <= 1.0);
                prev = val;
            }
            CHECK(row.values.back() == 1.0);
            // cells below l are zero by construction of lookup
            CHECK(table.lookup(v, (row.l_idx - 1) * table.delta()) == 0.0);
        }
    }
}

TEST_CASE("explicit horizon too small raises") {
    auto c = conflict_graph();
    auto updated = build_vpaths(c.with_tpath);
    auto m = shortest_path_tree(reverse(c.with_tpath), c.vd);
    CHECK_THROWS_WITH_AS(build_table(updated, c.vd, 3, 2, m), "horizon too small",
                         std::runtime_error);
}

TEST_CASE("binary dominates the table which dominates the oracle") {
    for (std::uint64_t seed : {1, 6}) {
        InstanceOpts opts;
        opts.min_vertices = 7;
        opts.max_vertices = 10;
        auto inst = make_instance(seed, opts);
        VertexId dest = inst.graph.vertices().back();
        auto m = shortest_path_tree(reverse(inst.pace), dest);
        auto table = build_table(inst.vgraph, dest, 2, std::nullopt, m);

        for (VertexId v : inst.graph.vertices()) {
            if (v == dest) continue;
            std::vector<std::vector<EdgeId>> paths;
            try {
                paths = enumerate_paths(inst.graph, v, dest,
                                        static_cast<int>(inst.graph.vertex_count()));
            } catch (const std::runtime_error&) {
                continue;
            }
            std::vector<CostDistribution> dists;
            for (const auto& p : paths)
                if (!p.empty()) dists.push_back(path_distribution(p, inst.pace));
            for (int j = 1; j <= table.eta(); ++j) {
                Cost x = j * table.delta();
                double exact = 0.0;
                for (const auto& d : dists)
                    exact = std::max(exact, prob_within(d, Budget(x)));
                double tab = table.lookup(v, x);
                double bin = binary_u(v, x, m);
                CHECK(tab >= exact - 1e-9);
                CHECK(bin >= tab - 1e-9);
            }
        }
    }
}
