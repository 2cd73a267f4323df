#include "doctest.h"
#include "pace/pace_graph.hpp"
#include "test_support.hpp"

using namespace pace;
using namespace pace::testing;

namespace {

Trajectory make_traj(const std::vector<EdgeId>& edges, Cost cost = 10) {
    Trajectory t;
    t.period = "all";
    for (EdgeId e : edges) t.steps.push_back({e, cost});
    return t;
}

}  // namespace

TEST_CASE("candidate_subpaths enumerates multi-edge windows") {
    auto t3 = make_traj({0, 1, 2});  // three edges -> 3 multi-edge sub-paths
    auto subs = candidate_subpaths(t3);
    REQUIRE(subs.size() == 3);
    CHECK(subs[0] == std::vector<EdgeId>{0, 1});
    CHECK(subs[1] == std::vector<EdgeId>{0, 1, 2});
    CHECK(subs[2] == std::vector<EdgeId>{1, 2});

    CHECK(candidate_subpaths(make_traj({0})).empty());
    CHECK(candidate_subpaths(make_traj({0, 1, 2, 3, 4})).size() == 10);
}

TEST_CASE("extraction reproduces the 80/20 two-edge pattern") {
    auto g = line_graph(2);
    auto trajs = repeat_trajectories({0, 1}, {{10, 10}, {15, 15}}, {80, 20});

    auto pace = extract_tpaths(trajs, g, 50);
    REQUIRE(pace.tpaths().size() == 1);
    const TPath& t = pace.tpaths()[0];
    CHECK(t.support == 100);
    CHECK(t.joint.mass().at({10, 10}) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(t.joint.mass().at({15, 15}) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(t.total.at(20) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(t.total.at(30) == doctest::Approx(0.2).epsilon(1e-12));

    // edge weights become empirical histograms
    CHECK(pace.base().weight(0).at(10) == doctest::Approx(0.8).epsilon(1e-12));

    // threshold above the support extracts nothing
    CHECK(extract_tpaths(trajs, g, 101).tpaths().empty());
    CHECK_THROWS(extract_tpaths(trajs, g, 0));
}

TEST_CASE("sub-paths of a supported path are supported") {
    auto g = line_graph(3);
    auto trajs = repeat_trajectories({0, 1, 2}, {{10, 10, 10}, {12, 12, 12}}, {30, 30});
    auto pace = extract_tpaths(trajs, g, 50);
    // 60 trajectories over three edges: every multi-edge sub-path qualifies.
    REQUIRE(pace.tpaths().size() == 3);
    for (const TPath& t : pace.tpaths()) CHECK(t.support == 60);
}

TEST_CASE("raising tau never adds T-paths") {
    auto inst = make_instance(3);
    std::vector<int> taus{5, 10, 20, 40};
    std::vector<std::set<std::vector<EdgeId>>> sets;
    for (int tau : taus) {
        auto p = extract_tpaths(inst.trajectories, inst.graph, tau);
        std::set<std::vector<EdgeId>> s;
        for (const TPath& t : p.tpaths()) s.insert(t.edges);
        sets.push_back(std::move(s));
    }
    for (std::size_t i = 1; i < sets.size(); ++i) {
        CHECK(sets[i].size() <= sets[i - 1].size());
        for (const auto& edges : sets[i]) CHECK(sets[i - 1].count(edges) == 1);
    }
}

TEST_CASE("coarsest cover prefers the longest overlapping T-paths") {
    // Graph shaped like the running three-edge example: the cover of the
    // whole path is the two overlapping two-edge T-paths.
    RoadGraph g;
    for (int v = 0; v < 4; ++v) g.add_vertex(v);
    g.add_edge(1, 0, 1, dist({{8, 0.9}, {10, 0.1}}));
    g.add_edge(4, 1, 2, dist({{8, 1.0}}));
    g.add_edge(9, 2, 3, dist({{6, 1.0}}));
    auto trajs = repeat_trajectories({1, 4, 9}, {{8, 8, 6}, {10, 8, 6}}, {3, 2});
    auto pace = extract_tpaths(trajs, g, 5);

    std::vector<EdgeId> path{1, 4, 9};
    auto names = coarsest_path_sequence(path, pace);
    // T-paths: <1,4> and <4,9> plus <1,4,9>; the longest wins at position 0.
    REQUIRE(pace.find_tpath(std::vector<EdgeId>{1, 4}) != nullptr);
    REQUIRE(pace.find_tpath(std::vector<EdgeId>{4, 9}) != nullptr);
    REQUIRE(names.size() == 1);  // the full T-path covers everything

    // Drop the full T-path by thresholding: keep only the two-edge ones.
    auto trajs2 = repeat_trajectories({1, 4}, {{8, 8}}, {5});
    auto t49 = repeat_trajectories({4, 9}, {{8, 6}}, {5});
    trajs2.insert(trajs2.end(), t49.begin(), t49.end());
    auto pace2 = extract_tpaths(trajs2, g, 5);
    REQUIRE(pace2.tpaths().size() == 2);
    auto names2 = coarsest_path_sequence(path, pace2);
    REQUIRE(names2.size() == 2);
    CHECK(names2[0] == "p" + std::to_string(pace2.find_tpath(std::vector<EdgeId>{1, 4})->id));
    CHECK(names2[1] == "p" + std::to_string(pace2.find_tpath(std::vector<EdgeId>{4, 9})->id));
}

TEST_CASE("cover falls back to single edges without T-path coverage") {
    auto g = line_graph(3, 7);
    PaceGraph pace(g, {}, "all", 1);
    std::vector<EdgeId> path{0, 1, 2};
    auto names = coarsest_path_sequence(path, pace);
    CHECK(names == std::vector<std::string>{"e0", "e1", "e2"});

    // disconnected path errors
    RoadGraph g2 = line_graph(4, 7);
    PaceGraph pace2(g2, {}, "all", 1);
    std::vector<EdgeId> bad{0, 2};
    CHECK_THROWS(coarsest_cover(bad, pace2));
}

TEST_CASE("chained covers keep maximal overlap (four units over five edges)") {
    auto g = line_graph(5);
    // T-paths over edges (0,1), (1,2), (2,3); edge 4 uncovered.
    std::vector<Trajectory> trajs;
    for (auto edges : {std::vector<EdgeId>{0, 1}, {1, 2}, {2, 3}}) {
        auto more = repeat_trajectories(edges, {{10, 10}}, {5});
        trajs.insert(trajs.end(), more.begin(), more.end());
    }
    auto pace = extract_tpaths(trajs, g, 5);
    REQUIRE(pace.tpaths().size() == 3);
    std::vector<EdgeId> path{0, 1, 2, 3, 4};
    auto names = coarsest_path_sequence(path, pace);
    REQUIRE(names.size() == 4);
    CHECK(names[3] == "e4");
}

TEST_CASE("path_distribution matches the table transformation and fallbacks") {
    auto g = line_graph(2);
    auto trajs = repeat_trajectories({0, 1}, {{10, 10}, {15, 15}}, {80, 20});
    auto pace = extract_tpaths(trajs, g, 50);

    std::vector<EdgeId> path{0, 1};
    auto d = path_distribution(path, pace);
    CHECK(d.at(20) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(d.at(30) == doctest::Approx(0.2).epsilon(1e-12));
    // a path covered by one T-path equals that T-path's total
    CHECK(total_variation(d, pace.tpaths()[0].total) < 1e-12);

    // single edge: the edge weight itself
    std::vector<EdgeId> single{0};
    CHECK(total_variation(path_distribution(single, pace), pace.base().weight(0)) < 1e-12);
}

TEST_CASE("uncovered paths reduce to edge convolution") {
    auto inst = make_instance(5, [] {
        InstanceOpts o;
        o.corridor_count = 0;
        o.max_tpaths = 0;  // raise tau until no T-paths remain
        o.build_vgraph = false;
        return o;
    }());
    REQUIRE(inst.pace.tpaths().empty());
    for (auto [s, d] : reachable_pairs(inst.graph)) {
        auto paths = enumerate_paths(inst.graph, s, d, 6);
        for (const auto& p : paths) {
            if (p.empty()) continue;
            CostDistribution conv;
            for (EdgeId e : p) {
                const auto& w = inst.pace.base().weight(e);
                conv = conv.empty() ? w : convolve(conv, w);
            }
            CHECK(total_variation(path_distribution(p, inst.pace), conv) < 1e-9);
        }
        break;  // one source suffices here
    }
}

TEST_CASE("extraction validates trajectories") {
    auto g = line_graph(2);
    Trajectory bad_edge;
    bad_edge.period = "all";
    bad_edge.steps = {{99, 10}};
    CHECK_THROWS(extract_tpaths({bad_edge}, g, 1));

    Trajectory zero_cost;
    zero_cost.period = "all";
    zero_cost.steps = {{0, 0}};
    CHECK_THROWS(extract_tpaths({zero_cost}, g, 1));

    Trajectory disconnected;
    disconnected.period = "all";
    disconnected.steps = {{1, 5}, {0, 5}};  // edge 1 ends at vertex 2, edge 0 starts at 0
    CHECK_THROWS(extract_tpaths({disconnected}, g, 1));
}

TEST_CASE("per-period extraction splits by tag") {
    auto g = line_graph(2);
    auto peak = repeat_trajectories({0, 1}, {{10, 10}}, {10}, "peak");
    auto off = repeat_trajectories({0, 1}, {{15, 15}}, {10}, "off");
    peak.insert(peak.end(), off.begin(), off.end());
    auto graphs = extract_all_periods(peak, g, 5);
    REQUIRE(graphs.size() == 2);
    CHECK(graphs[0].period_tag() == "off");
    CHECK(graphs[1].period_tag() == "peak");
    CHECK(graphs[1].tpaths()[0].total.at(20) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(graphs[0].tpaths()[0].total.at(30) == doctest::Approx(1.0).epsilon(1e-12));
}
