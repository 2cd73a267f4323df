#include <stdexcept>

#include "doctest.h"
#include "pace/io.hpp"
#include "pace/oracle.hpp"
#include "test_support.hpp"

using namespace pace;
using namespace pace::testing;

TEST_CASE("source equals destination yields only the empty path") {
    auto g = line_graph(2);
    auto paths = enumerate_paths(g, 1, 1, 4);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].empty());

    PaceGraph pace(g, {}, "all", 1);
    Query q;
    q.source = 1;
    q.dest = 1;
    q.budget = Budget(0);
    auto r = exact_best(pace, q, 4);
    CHECK(r.best_probability == 1.0);
}

TEST_CASE("parallel edges are distinct paths") {
    RoadGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(7, 0, 1, CostDistribution::point(5));
    g.add_edge(9, 0, 1, CostDistribution::point(6));
    auto paths = enumerate_paths(g, 0, 1, 3);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == std::vector<EdgeId>{7});  // lexicographic by edge id
    CHECK(paths[1] == std::vector<EdgeId>{9});
}

TEST_CASE("four-cycle exposes exactly the two simple routes") {
    RoadGraph g;
    for (int v = 0; v < 4; ++v) g.add_vertex(v);
    g.add_edge(0, 0, 1, CostDistribution::point(1));
    g.add_edge(1, 1, 2, CostDistribution::point(1));
    g.add_edge(2, 0, 3, CostDistribution::point(1));
    g.add_edge(3, 3, 2, CostDistribution::point(1));
    auto paths = enumerate_paths(g, 0, 2, 4);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == std::vector<EdgeId>{0, 1});
    CHECK(paths[1] == std::vector<EdgeId>{2, 3});
}

TEST_CASE("budget zero means probability zero away from the destination") {
    auto g = line_graph(2);
    PaceGraph pace(g, {}, "all", 1);
    Query q;
    q.source = 0;
    q.dest = 2;
    q.budget = Budget(0);
    CHECK(exact_best(pace, q, 4).best_probability == 0.0);
}

TEST_CASE("oracle result is deterministic and cap-invariant") {
    auto inst = make_instance(8);
    auto pairs = reachable_pairs(inst.graph);
    REQUIRE_FALSE(pairs.empty());
    auto [s, d] = pairs[pairs.size() / 2];
    Query q;
    q.source = s;
    q.dest = d;
    q.budget = Budget(60);

    int n = static_cast<int>(inst.graph.vertex_count());
    auto a = exact_best(inst.pace, q, n);
    auto b = exact_best(inst.pace, q, n + 5);
    CHECK(a.best_probability == b.best_probability);
    REQUIRE(a.table.size() == b.table.size());

    // byte-identical serialization of the per-path table across runs
    auto fmt = [](const OracleResult& r) {
        std::string out;
        for (const auto& e : r.table) {
            for (EdgeId eid : e.path) out += std::to_string(eid) + ",";
            out += "\t" + std::to_string(e.probability) + "\n";
        }
        return out;
    };
    auto c = exact_best(inst.pace, q, n);
    CHECK(fmt(a) == fmt(c));

    // distributions all normalized
    for (const auto& e : a.table) {
        double mass = 0.0;
        for (const auto& [cost, p] : e.dist.support()) mass += p;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("oracle refuses oversized instances") {
    // Dense bidirectional clique: the simple-path count explodes.
    RoadGraph g;
    const int n = 12;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    EdgeId id = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) g.add_edge(id++, a, b, CostDistribution::point(1));
    CHECK_THROWS_WITH_AS(enumerate_paths(g, 0, n - 1, n),
                         "instance too large for oracle", std::runtime_error);
}
