#include "pace/joint_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pace {

namespace {

void validate(const std::vector<EdgeId>& edges,
              const std::map<std::vector<Cost>, double>& mass) {
    if (edges.empty()) throw std::invalid_argument("joint distribution needs edges");
    if (mass.empty()) throw std::invalid_argument("joint distribution has no mass");
    if (mass.size() > JointDistribution::kMaxVectors)
        throw std::invalid_argument("joint distribution vector count exceeds cap");
    double total = 0.0;
    for (const auto& [vec, p] : mass) {
        if (vec.size() != edges.size())
            throw std::invalid_argument("cost vector length mismatch");
        for (Cost c : vec)
            if (c < 0) throw std::invalid_argument("negative cost in joint distribution");
        if (!(p > 0.0)) throw std::invalid_argument("non-positive joint mass entry");
        total += p;
    }
    if (std::abs(total - 1.0) > CostDistribution::kMassTolerance)
        throw std::invalid_argument("joint mass " + std::to_string(total) +
                                    " not 1 within tolerance");
}

// Offset of `needle` as a contiguous sub-sequence of `hay`, or -1.
int find_contiguous(const std::vector<EdgeId>& hay, std::span<const EdgeId> needle) {
    if (needle.empty() || needle.size() > hay.size()) return -1;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < needle.size(); ++k)
            if (hay[i + k] != needle[k]) { match = false; break; }
        if (match) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<EdgeId> edges,
                                     const std::map<std::vector<Cost>, double>& mass)
    : edges_(std::move(edges)) {
    for (const auto& [vec, p] : mass)
        if (p != 0.0) mass_.emplace(vec, p);
    validate(edges_, mass_);
}

JointDistribution JointDistribution::single(EdgeId edge, const CostDistribution& weight) {
    JointDistribution j;
    j.edges_ = {edge};
    for (const auto& [c, p] : weight.support()) j.mass_[{c}] = p;
    validate(j.edges_, j.mass_);
    return j;
}

JointDistribution JointDistribution::from_weights(
    std::vector<EdgeId> edges, const std::map<std::vector<Cost>, double>& weights) {
    double total = 0.0;
    for (const auto& [vec, w] : weights) {
        if (w < 0.0) throw std::invalid_argument("negative weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("weights sum to zero");
    JointDistribution j;
    j.edges_ = std::move(edges);
    for (const auto& [vec, w] : weights)
        if (w > 0.0) j.mass_[vec] = w / total;
    validate(j.edges_, j.mass_);
    return j;
}

CostDistribution JointDistribution::total_cost() const {
    std::map<Cost, double> out;
    for (const auto& [vec, p] : mass_) {
        Cost sum = std::accumulate(vec.begin(), vec.end(), Cost{0});
        out[sum] += p;
    }
    return CostDistribution::from_weights(out);
}

JointDistribution JointDistribution::marginalize(std::span<const EdgeId> subset) const {
    int offset = find_contiguous(edges_, subset);
    if (offset < 0) throw std::invalid_argument("not a sub-path");
    std::map<std::vector<Cost>, double> out;
    for (const auto& [vec, p] : mass_) {
        std::vector<Cost> key(vec.begin() + offset, vec.begin() + offset + subset.size());
        out[key] += p;
    }
    JointDistribution j;
    j.edges_.assign(subset.begin(), subset.end());
    for (auto& [vec, p] : out) j.mass_.emplace(vec, p);
    validate(j.edges_, j.mass_);
    return j;
}

JointDistribution assemble(const JointDistribution& j1, const JointDistribution& j2) {
    const auto& e1 = j1.edges();
    const auto& e2 = j2.edges();

    // Longest suffix of e1 that is a prefix of e2.
    std::size_t max_k = std::min(e1.size(), e2.size());
    std::size_t overlap = 0;
    for (std::size_t k = max_k; k >= 1; --k) {
        bool match = true;
        for (std::size_t i = 0; i < k; ++i)
            if (e1[e1.size() - k + i] != e2[i]) { match = false; break; }
        if (match) { overlap = k; break; }
    }

    if (overlap == 0) {
        // Adjacency is the caller's responsibility; a shared edge anywhere
        // else means the sequences cannot be chained.
        for (EdgeId e : e2)
            if (std::find(e1.begin(), e1.end(), e) != e1.end())
                throw std::invalid_argument("not assemblable");
        std::vector<EdgeId> edges = e1;
        edges.insert(edges.end(), e2.begin(), e2.end());
        std::map<std::vector<Cost>, double> mass;
        for (const auto& [v1, p1] : j1.mass())
            for (const auto& [v2, p2] : j2.mass()) {
                std::vector<Cost> vec = v1;
                vec.insert(vec.end(), v2.begin(), v2.end());
                mass[vec] += p1 * p2;
            }
        return JointDistribution(std::move(edges), mass);
    }

    std::vector<EdgeId> ov(e1.end() - overlap, e1.end());
    JointDistribution m = j2.marginalize(std::span<const EdgeId>(ov));

    std::vector<EdgeId> edges = e1;
    edges.insert(edges.end(), e2.begin() + overlap, e2.end());

    // Group j2 vectors by overlap value for the join.
    std::map<std::vector<Cost>, std::vector<const std::pair<const std::vector<Cost>, double>*>>
        by_overlap;
    for (const auto& entry : j2.mass()) {
        std::vector<Cost> key(entry.first.begin(), entry.first.begin() + overlap);
        by_overlap[key].push_back(&entry);
    }

    std::map<std::vector<Cost>, double> mass;
    double kept = 0.0;
    for (const auto& [v1, p1] : j1.mass()) {
        std::vector<Cost> key(v1.end() - overlap, v1.end());
        auto it = by_overlap.find(key);
        if (it == by_overlap.end()) continue;  // j1 mass with no consistent j2 branch
        double denom = m.mass().at(key);
        for (const auto* entry : it->second) {
            const auto& [v2, p2] = *entry;
            std::vector<Cost> vec = v1;
            vec.insert(vec.end(), v2.begin() + overlap, v2.end());
            double p = p1 * p2 / denom;
            mass[vec] += p;
        }
        kept += p1;
    }
    if (1.0 - kept > JointDistribution::kAssemblyDeficitTolerance)
        throw std::runtime_error("assembly marginals inconsistent: deficit " +
                                 std::to_string(1.0 - kept));
    return JointDistribution::from_weights(std::move(edges), mass);
}

CostDistribution total_cost(const JointDistribution& j) { return j.total_cost(); }

JointDistribution marginalize(const JointDistribution& j, std::span<const EdgeId> subset) {
    return j.marginalize(subset);
}

}  // namespace pace
