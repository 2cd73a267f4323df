#pragma once

#include <cstdint>
#include <random>

#include "pace/road_graph.hpp"

namespace pace {

/// Desk-scale synthetic road network and trajectory generator. Corridor
/// trajectories traverse seeded paths end to end; dependency_strength
/// controls how strongly per-edge costs move together (1 = perfectly
/// rank-correlated, 0 = independent).
struct SyntheticSpec {
    int vertex_count = 24;
    double avg_out_degree = 2.2;
    int corridor_count = 3;
    int corridor_min_edges = 2;
    int corridor_max_edges = 4;
    // When > 0, corridors are overlapping windows of one trunk path of this
    // many edges, so extraction yields chained T-paths and V-path merges.
    int trunk_edges = 0;
    // Scales the cost levels of edges outside every corridor; > 1 makes the
    // seeded corridors the natural routes between their endpoints.
    double offcorridor_cost_factor = 1.0;
    double dependency_strength = 1.0;
    int trajectory_count = 400;
    int cost_levels = 2;  // support points per edge
    Cost cost_min = 5;
    Cost cost_max = 20;
    double noise_fraction = 0.2;  // short random-walk trajectories
    std::string period_tag = "all";
};

std::pair<RoadGraph, std::vector<Trajectory>> generate_synthetic(const SyntheticSpec& spec,
                                                                 std::uint64_t seed);

/// Deterministic helpers shared by the generator and the harnesses.
std::uint64_t rand_u64(std::mt19937_64& rng);
std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);  // inclusive
double rand_unit(std::mt19937_64& rng);

}  // namespace pace
