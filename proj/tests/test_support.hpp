#pragma once

// Shared helpers for unit and acceptance tests: compact builders plus a
// reproducible random-instance factory (synthetic trajectories fed through
// T-path extraction, so all joints carry extraction-consistent marginals).

#include <map>
#include <random>

#include "pace/evaluation.hpp"
#include "pace/io.hpp"

namespace pace::testing {

inline CostDistribution dist(std::initializer_list<std::pair<Cost, double>> entries) {
    std::map<Cost, double> m;
    for (auto [c, p] : entries) m[c] = p;
    return CostDistribution(m);
}

/// Line graph 0 -e0-> 1 -e1-> 2 ... with one-point weights.
inline RoadGraph line_graph(int edges, Cost unit_cost = 10) {
    RoadGraph g;
    for (int v = 0; v <= edges; ++v) g.add_vertex(v);
    for (int e = 0; e < edges; ++e)
        g.add_edge(e, e, e + 1, CostDistribution::point(unit_cost));
    return g;
}

/// `count` identical-pattern trajectories over `edges` with given costs.
inline std::vector<Trajectory> repeat_trajectories(const std::vector<EdgeId>& edges,
                                                   const std::vector<std::vector<Cost>>& patterns,
                                                   const std::vector<int>& counts,
                                                   const std::string& period = "all") {
    std::vector<Trajectory> out;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        for (int i = 0; i < counts[p]; ++i) {
            Trajectory t;
            t.period = period;
            for (std::size_t k = 0; k < edges.size(); ++k)
                t.steps.push_back(TrajectoryStep{edges[k], patterns[p][k]});
            out.push_back(std::move(t));
        }
    }
    return out;
}

struct InstanceOpts {
    int min_vertices = 8;
    int max_vertices = 16;
    double avg_out_degree = 2.0;
    int corridor_count = 3;
    int corridor_max_edges = 4;
    int trunk_edges = 0;  // > 0: overlapping corridor windows over one trunk
    double offcorridor_cost_factor = 1.0;
    double dependency_strength = 1.0;
    int trajectory_count = 300;
    int tau = 20;
    int max_tpaths = -1;  // raise tau until at most this many T-paths (-1: no cap)
    bool build_vgraph = true;
};

struct Instance {
    RoadGraph graph;
    std::vector<Trajectory> trajectories;
    PaceGraph pace;
    UpdatedPaceGraph tgraph;
    UpdatedPaceGraph vgraph;
};

inline Instance make_instance(std::uint64_t seed, const InstanceOpts& opts = {}) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    SyntheticSpec spec;
    spec.vertex_count =
        static_cast<int>(rand_int(rng, opts.min_vertices, opts.max_vertices));
    spec.avg_out_degree = opts.avg_out_degree;
    spec.corridor_count = opts.corridor_count;
    spec.corridor_min_edges = 2;
    spec.corridor_max_edges = opts.corridor_max_edges;
    spec.trunk_edges = opts.trunk_edges;
    spec.offcorridor_cost_factor = opts.offcorridor_cost_factor;
    spec.dependency_strength = opts.dependency_strength;
    spec.trajectory_count = opts.trajectory_count;
    spec.cost_levels = 2;
    spec.noise_fraction = 0.15;

    Instance inst;
    auto [graph, trajectories] = generate_synthetic(spec, seed);
    inst.graph = std::move(graph);
    inst.trajectories = std::move(trajectories);

    int tau = opts.tau;
    inst.pace = extract_tpaths(inst.trajectories, inst.graph, tau);
    if (opts.max_tpaths >= 0) {
        while (static_cast<int>(inst.pace.tpaths().size()) > opts.max_tpaths && tau < 100000) {
            tau *= 2;
            inst.pace = extract_tpaths(inst.trajectories, inst.graph, tau);
        }
    }
    inst.tgraph = build_vpaths(inst.pace, VPathBuildOptions{false, std::nullopt});
    if (opts.build_vgraph)
        inst.vgraph = build_vpaths(inst.pace, VPathBuildOptions{true, std::nullopt});
    return inst;
}

/// Chain instance for V-path speedup measurements: one trunk 0 -> 1 -> ... -> k
/// whose windows carry the trajectory mass (so V-paths span the trunk), plus a
/// feasible-but-worse two-edge bridge over every other trunk pair. Every
/// source-to-end route follows the trunk; the bridges exist to be pushed and
/// rejected.
struct ChainInstance {
    RoadGraph graph;
    PaceGraph pace;
    UpdatedPaceGraph tgraph;
    UpdatedPaceGraph vgraph;
    VertexId source = 0;
    VertexId dest = 0;
};

inline ChainInstance make_chain_instance(std::uint64_t seed, int trunk_edges = 15) {
    std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 99);
    ChainInstance inst;
    const int k = trunk_edges;
    for (int v = 0; v <= k; ++v) inst.graph.add_vertex(v);

    std::vector<Cost> fast(k), slow(k);
    for (int e = 0; e < k; ++e) {
        fast[e] = rand_int(rng, 6, 10);
        slow[e] = fast[e] + rand_int(rng, 1, 2);
        inst.graph.add_edge(e, e, e + 1, CostDistribution::point(fast[e]));
    }
    // bridges v_i -> w_i -> v_{i+2}, costlier than the trunk pair they skip
    EdgeId next_edge = static_cast<EdgeId>(k);
    VertexId next_vertex = static_cast<VertexId>(k + 1);
    for (int i = 0; i + 2 <= k; i += 3) {
        Cost pair_slow = slow[i] + slow[i + 1];
        inst.graph.add_vertex(next_vertex);
        inst.graph.add_edge(next_edge++, i, next_vertex,
                            CostDistribution::point(pair_slow / 2 + 2));
        inst.graph.add_edge(next_edge++, next_vertex, i + 2,
                            CostDistribution::point(pair_slow / 2 + 2));
        ++next_vertex;
    }

    // trajectories over sliding windows of four trunk edges (one-edge overlap)
    std::vector<Trajectory> trajs;
    const int w = 4;
    for (int start = 0; start + 1 < k; start += w - 1) {
        int end = std::min(k, start + w);
        std::vector<EdgeId> window;
        for (int e = start; e < end; ++e) window.push_back(e);
        std::vector<Cost> fast_costs, slow_costs;
        for (EdgeId e : window) {
            fast_costs.push_back(fast[e]);
            slow_costs.push_back(slow[e]);
        }
        int fast_n = static_cast<int>(rand_int(rng, 25, 35));
        auto part = repeat_trajectories(window, {fast_costs, slow_costs},
                                        {fast_n, 40 - fast_n});
        trajs.insert(trajs.end(), part.begin(), part.end());
    }
    inst.pace = extract_tpaths(trajs, inst.graph, 30);
    inst.tgraph = build_vpaths(inst.pace, VPathBuildOptions{false, std::nullopt});
    inst.vgraph = build_vpaths(inst.pace, VPathBuildOptions{true, std::nullopt});
    inst.source = 0;
    inst.dest = static_cast<VertexId>(k);
    return inst;
}

/// All vertex pairs (s, d) with at least one simple path s -> d.
inline std::vector<std::pair<VertexId, VertexId>> reachable_pairs(const RoadGraph& g) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId s : g.vertices()) {
        std::set<VertexId> seen{s};
        std::vector<VertexId> stack{s};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId e : g.out_edges(v)) {
                VertexId to = g.edge(e).to;
                if (seen.insert(to).second) stack.push_back(to);
            }
        }
        for (VertexId d : seen)
            if (d != s) out.emplace_back(s, d);
    }
    return out;
}

}  // namespace pace::testing
