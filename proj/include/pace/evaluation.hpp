#pragma once

#include "pace/oracle.hpp"
#include "pace/synthetic.hpp"

namespace pace {

struct KLFoldResult {
    int fold = 0;
    double mean_kl_pace = 0.0;
    double mean_kl_edge = 0.0;  // pure-convolution baseline on the same folds
    int paths = 0;
    int uncovered = 0;  // testing paths using edges absent from the graph
    int failures = 0;   // estimation failures (inconsistent assembly)
};

struct KLReport {
    int tau = 0;
    int folds = 0;
    std::vector<KLFoldResult> fold_results;
    double mean_pace = 0.0;
    double mean_edge = 0.0;
    double ci95_pace = 0.0;  // half-width across folds
};

/// Five-fold (or k-fold) cross validation of path cost estimation: T-paths
/// from training folds, per-path ground truth from testing folds, KL between
/// truth and the path-centric estimate (and the convolution baseline).
/// folds == 1 is the degenerate train-equals-test mode.
KLReport eval_kl(const RoadGraph& graph, const std::vector<Trajectory>& trajectories,
                 int tau, int folds);

enum class VariantKind { TNone, TBE, TBP, TBS, VNone, VBP, VBS };

struct Variant {
    VariantKind kind = VariantKind::TNone;
    Cost delta = 1;  // budget grid for the BS variants

    std::string name() const;
    static Variant parse(const std::string& text);
};

struct WorkloadSpec {
    std::vector<std::pair<int, int>> hop_buckets = {{1, 2}, {3, 4}, {5, 7}};
    std::vector<double> budget_multipliers = {0.5, 0.75, 1.0, 1.25, 1.5};
    int pairs_per_bucket = 3;
};

struct BenchQueryResult {
    Query query;
    int bucket = 0;
    double multiplier = 0.0;
    std::string variant;
    double probability = 0.0;
    std::uint64_t explored = 0;
    double micros = 0.0;
};

struct BenchCell {
    std::string variant;
    int bucket = 0;
    double multiplier = 0.0;
    int queries = 0;
    double mean_micros = 0.0;
    double mean_explored = 0.0;
    int zero_probability = 0;
};

struct BenchReport {
    bool agreement = true;
    std::string failure;  // first disagreeing query, when any
    std::vector<BenchQueryResult> rows;
    std::vector<BenchCell> cells;
};

/// Runs every variant over a calibrated workload and cross-checks that all
/// variants return equal probabilities (1e-9). Budgets are multiples of the
/// least expected travel time from a Dijkstra pass over expected edge costs.
BenchReport bench(const RoadGraph& graph, const std::vector<Trajectory>& trajectories,
                  int tau, const WorkloadSpec& workload, const std::vector<Variant>& variants,
                  std::uint64_t seed, int workers);

/// Worker count from the PACE_WORKERS environment variable (default 1).
int env_workers();

}  // namespace pace
