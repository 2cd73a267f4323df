#pragma once

#include <cstdint>

#include "pace/heuristics.hpp"

namespace pace {

struct Query {
    VertexId source = -1;
    VertexId dest = -1;
    long depart_time = 0;  // selects the period graph
    Budget budget;
};

struct RouteResult {
    std::vector<EdgeId> path;
    double probability = 0.0;
    std::uint64_t explored = 0;  // candidate pushes
};

/// Eq.-style priority: sum over the candidate's support of
/// pdf(t) * U(frontier, B - t); terms with t > B contribute nothing.
double max_prob(const CostDistribution& dist, VertexId frontier, Budget budget,
                const HeuristicFn& u);

/// Exhaustive best-first baseline over edges and T-paths, priority by
/// expected candidate cost. Returns the max-probability path; empty path
/// with probability 0 when nothing feasible exists.
RouteResult route_naive(const PaceGraph& g, const Query& q);

struct RouteOptions {
    bool use_dominance = true;
    std::vector<std::string>* trace = nullptr;  // per-event log for debugging
};

/// Heuristic-guided search over the updated graph's units. Candidate
/// distributions are exact path-centric distributions: convolution with the
/// unit total when the extension boundary is independent, assembly otherwise.
/// Stops at the first destination pop (admissible heuristics make it optimal).
RouteResult route(const UpdatedPaceGraph& g, const Query& q, const HeuristicFn& u,
                  const MinCostMap& m, const RouteOptions& opts = {});

/// Dominance decision between a new candidate distribution and the queued
/// ones at the same frontier: discard the new one if any queued distribution
/// dominates or ties it exactly; otherwise evict every queued distribution it
/// dominates.
struct PruneOutcome {
    bool keep_new = true;
    std::vector<std::size_t> evict;  // indices into the queued span
};
PruneOutcome dominance_prune(const CostDistribution& new_dist,
                             std::span<const CostDistribution* const> queued);

/// Maps departure times onto period-tagged graphs via half-open windows.
class PeriodSelector {
public:
    void add_window(const std::string& tag, long begin, long end);
    /// Tag of the window containing t; throws "no graph for period" otherwise.
    const std::string& select(long t) const;

private:
    struct Window {
        std::string tag;
        long begin;
        long end;
    };
    std::vector<Window> windows_;
};

}  // namespace pace
