#include "pace/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pace {

std::uint64_t rand_u64(std::mt19937_64& rng) { return rng(); }

std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("bad rand_int range");
    // Modulo is biased but deterministic across platforms; the bias is
    // irrelevant at the range sizes used here.
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

struct EdgeProfile {
    std::vector<Cost> levels;  // sorted distinct cost levels
};

std::vector<EdgeId> random_simple_walk(const RoadGraph& g, std::mt19937_64& rng,
                                       int min_edges, int max_edges) {
    auto vertices = g.vertices();
    for (int attempt = 0; attempt < 64; ++attempt) {
        VertexId at = vertices[static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<std::int64_t>(vertices.size()) - 1))];
        std::vector<EdgeId> path;
        std::set<VertexId> visited{at};
        int want = static_cast<int>(rand_int(rng, min_edges, max_edges));
        while (static_cast<int>(path.size()) < want) {
            std::vector<EdgeId> options;
            for (EdgeId e : g.out_edges(at))
                if (!visited.count(g.edge(e).to)) options.push_back(e);
            if (options.empty()) break;
            EdgeId pick = options[static_cast<std::size_t>(
                rand_int(rng, 0, static_cast<std::int64_t>(options.size()) - 1))];
            path.push_back(pick);
            at = g.edge(pick).to;
            visited.insert(at);
        }
        if (static_cast<int>(path.size()) >= min_edges) return path;
    }
    return {};
}

}  // namespace

std::pair<RoadGraph, std::vector<Trajectory>> generate_synthetic(const SyntheticSpec& spec,
                                                                 std::uint64_t seed) {
    if (spec.vertex_count < 3 || spec.trajectory_count < 1 || spec.cost_levels < 1 ||
        spec.cost_min < 1 || spec.cost_max < spec.cost_min ||
        spec.dependency_strength < 0.0 || spec.dependency_strength > 1.0)
        throw std::invalid_argument("bad synthetic spec");

    std::mt19937_64 rng(seed);
    RoadGraph g;
    const int n = spec.vertex_count;
    for (int v = 0; v < n; ++v) g.add_vertex(v);

    // Ring backbone for connectivity, then random chords up to the target
    // degree. Edge weights start as one-point fallbacks at the median level.
    std::map<EdgeId, EdgeProfile> profiles;
    std::set<std::pair<VertexId, VertexId>> present;
    EdgeId next_edge = 0;

    auto add_edge = [&](VertexId from, VertexId to) {
        if (from == to || present.count({from, to})) return;
        EdgeProfile prof;
        std::set<Cost> levels;
        while (static_cast<int>(levels.size()) < spec.cost_levels)
            levels.insert(rand_int(rng, spec.cost_min, spec.cost_max));
        prof.levels.assign(levels.begin(), levels.end());
        Cost median = prof.levels[prof.levels.size() / 2];
        g.add_edge(next_edge, from, to, CostDistribution::point(median));
        profiles[next_edge] = std::move(prof);
        present.insert({from, to});
        ++next_edge;
    };

    for (int v = 0; v < n; ++v) add_edge(v, (v + 1) % n);
    const auto target_edges =
        static_cast<std::size_t>(spec.avg_out_degree * static_cast<double>(n));
    int guard = n * n * 4;
    while (g.edges().size() < target_edges && guard-- > 0) {
        VertexId a = static_cast<VertexId>(rand_int(rng, 0, n - 1));
        VertexId b = static_cast<VertexId>(rand_int(rng, 0, n - 1));
        add_edge(a, b);
    }

    std::vector<std::vector<EdgeId>> corridors;
    if (spec.trunk_edges > 0) {
        auto trunk = random_simple_walk(g, rng, std::min(spec.trunk_edges, n - 2),
                                        spec.trunk_edges);
        const int w = std::max(2, spec.corridor_max_edges);
        for (std::size_t start = 0; start + 1 < trunk.size(); start += w - 1) {
            std::size_t end = std::min(trunk.size(), start + w);
            if (end - start < 2) break;
            corridors.emplace_back(trunk.begin() + start, trunk.begin() + end);
        }
    } else {
        for (int i = 0; i < spec.corridor_count; ++i) {
            auto c =
                random_simple_walk(g, rng, spec.corridor_min_edges, spec.corridor_max_edges);
            if (!c.empty()) corridors.push_back(std::move(c));
        }
    }

    if (spec.offcorridor_cost_factor != 1.0) {
        std::set<EdgeId> on_corridor;
        for (const auto& c : corridors) on_corridor.insert(c.begin(), c.end());
        for (auto& [e, prof] : profiles) {
            if (on_corridor.count(e)) continue;
            for (Cost& level : prof.levels)
                level = static_cast<Cost>(
                    std::llround(static_cast<double>(level) * spec.offcorridor_cost_factor));
            Cost median = prof.levels[prof.levels.size() / 2];
            g.set_weight(e, CostDistribution::point(median));
        }
    }

    auto sample_costs = [&](std::span<const EdgeId> edges) {
        std::vector<Cost> costs;
        costs.reserve(edges.size());
        double regime = rand_unit(rng);
        for (EdgeId e : edges) {
            const auto& levels = profiles.at(e).levels;
            std::size_t k = levels.size();
            std::size_t idx;
            if (rand_unit(rng) < spec.dependency_strength)
                idx = std::min<std::size_t>(static_cast<std::size_t>(regime * k), k - 1);
            else
                idx = static_cast<std::size_t>(rand_int(rng, 0, static_cast<std::int64_t>(k) - 1));
            costs.push_back(levels[idx]);
        }
        return costs;
    };

    std::vector<Trajectory> trajectories;
    trajectories.reserve(static_cast<std::size_t>(spec.trajectory_count));
    for (int i = 0; i < spec.trajectory_count; ++i) {
        std::vector<EdgeId> edges;
        if (!corridors.empty() && rand_unit(rng) >= spec.noise_fraction) {
            edges = corridors[static_cast<std::size_t>(
                rand_int(rng, 0, static_cast<std::int64_t>(corridors.size()) - 1))];
        } else {
            edges = random_simple_walk(g, rng, 1, 4);
            if (edges.empty()) edges = corridors.empty() ? std::vector<EdgeId>{}
                                                         : corridors.front();
        }
        if (edges.empty()) continue;
        Trajectory t;
        t.period = spec.period_tag;
        auto costs = sample_costs(edges);
        for (std::size_t k = 0; k < edges.size(); ++k)
            t.steps.push_back(TrajectoryStep{edges[k], costs[k]});
        trajectories.push_back(std::move(t));
    }
    return {std::move(g), std::move(trajectories)};
}

}  // namespace pace
