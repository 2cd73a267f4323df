#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace pace {

using Cost = std::int64_t;

/// Discrete travel-cost histogram: integer costs in base units mapped to
/// probabilities. Immutable after construction; support is kept sorted.
class CostDistribution {
public:
    static constexpr double kMassTolerance = 1e-9;
    static constexpr std::size_t kDefaultMaxSupport = 10'000;

    CostDistribution() = default;  // empty, not a valid distribution

    explicit CostDistribution(const std::map<Cost, double>& mass,
                              std::size_t max_support = kDefaultMaxSupport);

    /// Distribution with all mass on a single cost.
    static CostDistribution point(Cost c);

    /// Builds from (cost, weight) pairs that need not be normalized;
    /// weights are scaled to total mass 1. Used for empirical histograms.
    static CostDistribution from_weights(const std::map<Cost, double>& weights,
                                         std::size_t max_support = kDefaultMaxSupport);

    const std::vector<std::pair<Cost, double>>& support() const { return support_; }
    bool empty() const { return support_.empty(); }
    std::size_t size() const { return support_.size(); }

    double at(Cost c) const;        // 0.0 if c is not a support point
    Cost min_cost() const;
    Cost max_cost() const;
    double mean() const;
    double cdf(Cost c) const;       // P(X <= c)

    bool operator==(const CostDistribution& other) const { return support_ == other.support_; }
    bool operator!=(const CostDistribution& other) const { return !(*this == other); }

private:
    // sorted by cost, probabilities > 0, total mass 1 within kMassTolerance
    std::vector<std::pair<Cost, double>> support_;
};

struct Budget {
    Cost value = 0;
    Budget() = default;
    explicit Budget(Cost v);
};

/// Sum of two independent cost distributions.
CostDistribution convolve(const CostDistribution& a, const CostDistribution& b);

/// First-order stochastic dominance: true iff CDF_a >= CDF_b everywhere and
/// strictly greater somewhere. Equal distributions do not dominate.
bool dominates(const CostDistribution& a, const CostDistribution& b);

/// P(cost <= budget).
double prob_within(const CostDistribution& d, Budget budget);

/// KL(truth || estimate) with additive smoothing of the estimate over the
/// union support. epsilon = 0 disables smoothing and requires the estimate
/// to cover the truth's support.
double kl_divergence(const CostDistribution& truth, const CostDistribution& estimate,
                     double epsilon = 1e-6);

/// Largest absolute difference of point masses over the union support.
double total_variation(const CostDistribution& a, const CostDistribution& b);

}  // namespace pace
