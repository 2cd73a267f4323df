#pragma once

#include "pace/router.hpp"

namespace pace {

struct OracleEntry {
    std::vector<EdgeId> path;
    CostDistribution dist;
    double probability = 0.0;
};

struct OracleResult {
    std::size_t best_index = 0;
    double best_probability = 0.0;
    std::vector<OracleEntry> table;  // all simple paths, lexicographic order
};

inline constexpr std::size_t kOraclePathGuard = 100'000;

/// All vertex-simple directed paths from s to d with at most max_edges edges,
/// lexicographic by edge ids. s == d yields just the empty path.
std::vector<std::vector<EdgeId>> enumerate_paths(const RoadGraph& g, VertexId s, VertexId d,
                                                 int max_edges);

/// Ground truth for a query: evaluates every enumerated path with the
/// assembly-based path distribution and takes the argmax probability,
/// ties broken lexicographically.
OracleResult exact_best(const PaceGraph& g, const Query& q, int max_edges);

}  // namespace pace
