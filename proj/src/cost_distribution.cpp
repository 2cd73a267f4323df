#include "pace/cost_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pace {

namespace {

void check_mass(const std::vector<std::pair<Cost, double>>& support, std::size_t max_support) {
    if (support.empty())
        throw std::invalid_argument("distribution has no mass");
    if (support.size() > max_support)
        throw std::invalid_argument("distribution support exceeds cap of " +
                                    std::to_string(max_support) + " points");
    double total = 0.0;
    for (const auto& [cost, p] : support) {
        if (cost < 0)
            throw std::invalid_argument("negative cost in distribution");
        if (!(p > 0.0) || p > 1.0 + CostDistribution::kMassTolerance)
            throw std::invalid_argument("probability out of (0,1] in distribution");
        total += p;
    }
    if (std::abs(total - 1.0) > CostDistribution::kMassTolerance)
        throw std::invalid_argument("distribution mass " + std::to_string(total) +
                                    " not 1 within tolerance");
}

}  // namespace

CostDistribution::CostDistribution(const std::map<Cost, double>& mass, std::size_t max_support) {
    support_.reserve(mass.size());
    for (const auto& [cost, p] : mass) {
        if (p == 0.0) continue;  // zero-mass entries are not stored
        support_.emplace_back(cost, p);
    }
    check_mass(support_, max_support);
}

CostDistribution CostDistribution::point(Cost c) {
    CostDistribution d;
    d.support_.emplace_back(c, 1.0);
    check_mass(d.support_, kDefaultMaxSupport);
    return d;
}

CostDistribution CostDistribution::from_weights(const std::map<Cost, double>& weights,
                                                std::size_t max_support) {
    double total = 0.0;
    for (const auto& [cost, w] : weights) {
        if (w < 0.0) throw std::invalid_argument("negative weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("weights sum to zero");
    CostDistribution d;
    d.support_.reserve(weights.size());
    for (const auto& [cost, w] : weights)
        if (w > 0.0) d.support_.emplace_back(cost, w / total);
    check_mass(d.support_, max_support);
    return d;
}

double CostDistribution::at(Cost c) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), c,
                               [](const auto& entry, Cost key) { return entry.first < key; });
    if (it != support_.end() && it->first == c) return it->second;
    return 0.0;
}

Cost CostDistribution::min_cost() const {
    if (support_.empty()) throw std::logic_error("empty distribution");
    return support_.front().first;
}

Cost CostDistribution::max_cost() const {
    if (support_.empty()) throw std::logic_error("empty distribution");
    return support_.back().first;
}

double CostDistribution::mean() const {
    double m = 0.0;
    for (const auto& [cost, p] : support_) m += static_cast<double>(cost) * p;
    return m;
}

double CostDistribution::cdf(Cost c) const {
    double total = 0.0;
    for (const auto& [cost, p] : support_) {
        if (cost > c) break;
        total += p;
    }
    return total;
}

Budget::Budget(Cost v) : value(v) {
    if (v < 0) throw std::invalid_argument("budget must be non-negative");
}

CostDistribution convolve(const CostDistribution& a, const CostDistribution& b) {
    std::map<Cost, double> mass;
    for (const auto& [ca, pa] : a.support())
        for (const auto& [cb, pb] : b.support())
            mass[ca + cb] += pa * pb;
    CostDistribution out;
    out = CostDistribution::from_weights(mass);
    return out;
}

bool dominates(const CostDistribution& a, const CostDistribution& b) {
    // Sweep the union support; CDFs only change at support points.
    const auto& sa = a.support();
    const auto& sb = b.support();
    std::size_t ia = 0, ib = 0;
    double cdfa = 0.0, cdfb = 0.0;
    bool strict = false;
    while (ia < sa.size() || ib < sb.size()) {
        Cost x;
        if (ib == sb.size() || (ia < sa.size() && sa[ia].first <= sb[ib].first))
            x = sa[ia].first;
        else
            x = sb[ib].first;
        while (ia < sa.size() && sa[ia].first == x) cdfa += sa[ia++].second;
        while (ib < sb.size() && sb[ib].first == x) cdfb += sb[ib++].second;
        if (cdfa < cdfb) return false;
        if (cdfa > cdfb) strict = true;
    }
    return strict;
}

double prob_within(const CostDistribution& d, Budget budget) {
    return d.cdf(budget.value);
}

double kl_divergence(const CostDistribution& truth, const CostDistribution& estimate,
                     double epsilon) {
    // Smooth the estimate over the union support, then renormalize.
    std::map<Cost, double> est;
    for (const auto& [c, p] : estimate.support()) est[c] = p;
    if (epsilon > 0.0) {
        for (const auto& [c, p] : truth.support()) est.try_emplace(c, 0.0);
        double total = 0.0;
        for (auto& [c, p] : est) {
            p += epsilon;
            total += p;
        }
        for (auto& [c, p] : est) p /= total;
    }
    double kl = 0.0;
    for (const auto& [c, p] : truth.support()) {
        auto it = est.find(c);
        if (it == est.end() || it->second <= 0.0)
            throw std::runtime_error("support mismatch");
        kl += p * std::log(p / it->second);
    }
    return kl;
}

double total_variation(const CostDistribution& a, const CostDistribution& b) {
    double tv = 0.0;
    const auto& sa = a.support();
    const auto& sb = b.support();
    std::size_t ia = 0, ib = 0;
    while (ia < sa.size() || ib < sb.size()) {
        if (ib == sb.size() || (ia < sa.size() && sa[ia].first < sb[ib].first)) {
            tv = std::max(tv, sa[ia].second);
            ++ia;
        } else if (ia == sa.size() || sb[ib].first < sa[ia].first) {
            tv = std::max(tv, sb[ib].second);
            ++ib;
        } else {
            tv = std::max(tv, std::abs(sa[ia].second - sb[ib].second));
            ++ia;
            ++ib;
        }
    }
    return tv;
}

}  // namespace pace
