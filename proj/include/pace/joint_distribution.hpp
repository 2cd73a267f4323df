#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pace/cost_distribution.hpp"

namespace pace {

using EdgeId = std::int32_t;
using VertexId = std::int32_t;

/// Joint probability mass over the per-edge cost vectors of a path.
/// Sparse: only positive-mass vectors are stored.
class JointDistribution {
public:
    static constexpr std::size_t kMaxVectors = CostDistribution::kDefaultMaxSupport;
    static constexpr double kAssemblyDeficitTolerance = 1e-6;

    JointDistribution() = default;

    JointDistribution(std::vector<EdgeId> edges,
                      const std::map<std::vector<Cost>, double>& mass);

    /// Single-edge joint from an edge's cost distribution.
    static JointDistribution single(EdgeId edge, const CostDistribution& weight);

    /// Unnormalized counts/weights variant; scales to total mass 1.
    static JointDistribution from_weights(std::vector<EdgeId> edges,
                                          const std::map<std::vector<Cost>, double>& weights);

    const std::vector<EdgeId>& edges() const { return edges_; }
    const std::map<std::vector<Cost>, double>& mass() const { return mass_; }
    bool empty() const { return edges_.empty(); }

    /// Collapses cost vectors to their sums.
    CostDistribution total_cost() const;

    /// Restriction to a contiguous sub-sequence of edges().
    JointDistribution marginalize(std::span<const EdgeId> subset) const;

    bool operator==(const JointDistribution& other) const {
        return edges_ == other.edges_ && mass_ == other.mass_;
    }

private:
    std::vector<EdgeId> edges_;
    std::map<std::vector<Cost>, double> mass_;
};

/// Chains two joints whose edge sequences overlap on a (possibly empty)
/// suffix of j1 that is a prefix of j2. Mass of a combined vector is
/// j1 * j2 / m where m is j2's marginal on the overlap; the result is
/// renormalized and construction fails if more than kAssemblyDeficitTolerance
/// of j1's mass has no consistent j2 counterpart. With an empty overlap the
/// result is the independent product.
JointDistribution assemble(const JointDistribution& j1, const JointDistribution& j2);

/// Free-function forms mirroring the member operations.
CostDistribution total_cost(const JointDistribution& j);
JointDistribution marginalize(const JointDistribution& j, std::span<const EdgeId> subset);

}  // namespace pace
