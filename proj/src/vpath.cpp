#include "pace/vpath.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pace {

namespace {

bool edge_simple(std::span<const EdgeId> edges) {
    std::set<EdgeId> seen;
    for (EdgeId e : edges)
        if (!seen.insert(e).second) return false;
    return true;
}

std::size_t suffix_prefix_overlap(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
    std::size_t max_k = std::min(a.size(), b.size());
    for (std::size_t k = max_k; k >= 1; --k) {
        bool match = true;
        for (std::size_t i = 0; i < k; ++i)
            if (a[a.size() - k + i] != b[i]) { match = false; break; }
        if (match) return k;
    }
    return 0;
}

}  // namespace

UpdatedPaceGraph::UpdatedPaceGraph(PaceGraph pace, std::vector<PathUnit> units)
    : pace_(std::move(pace)), units_(std::move(units)) {
    for (std::size_t i = 0; i < units_.size(); ++i) {
        const PathUnit& u = units_[i];
        if (!by_edges_.emplace(u.edges, static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate unit edge sequence");
        Hop h;
        h.is_edge = false;
        h.unit_index = static_cast<int>(i);
        h.from = base().edge(u.edges.front()).from;
        h.to = base().edge(u.edges.back()).to;
        hops_[h.from].push_back(h);
    }
    for (const auto& [id, e] : base().edges()) {
        Hop h;
        h.is_edge = true;
        h.edge = id;
        h.from = e.from;
        h.to = e.to;
        hops_[h.from].push_back(h);
        edge_spans_.emplace(id, std::vector<EdgeId>{id});
    }
    // Deterministic expansion order: edges by id, then units by id.
    for (auto& [v, list] : hops_) {
        std::sort(list.begin(), list.end(), [this](const Hop& a, const Hop& b) {
            if (a.is_edge != b.is_edge) return a.is_edge;
            if (a.is_edge) return a.edge < b.edge;
            return units_[a.unit_index].id < units_[b.unit_index].id;
        });
    }
}

const PathUnit* UpdatedPaceGraph::find_unit(std::span<const EdgeId> edges) const {
    std::vector<EdgeId> key(edges.begin(), edges.end());
    auto it = by_edges_.find(key);
    return it == by_edges_.end() ? nullptr : &units_[it->second];
}

std::span<const Hop> UpdatedPaceGraph::out_hops(VertexId v) const {
    static const std::vector<Hop> kEmpty;
    auto it = hops_.find(v);
    return it == hops_.end() ? std::span<const Hop>(kEmpty) : std::span<const Hop>(it->second);
}

std::size_t UpdatedPaceGraph::vpath_count() const {
    std::size_t n = 0;
    for (const auto& u : units_)
        if (u.kind == UnitKind::VPath) ++n;
    return n;
}

const CostDistribution& UpdatedPaceGraph::hop_total(const Hop& h) const {
    return h.is_edge ? base().weight(h.edge) : units_[h.unit_index].total;
}

std::span<const EdgeId> UpdatedPaceGraph::hop_edges(const Hop& h) const {
    if (!h.is_edge) return units_[h.unit_index].edges;
    auto it = edge_spans_.find(h.edge);
    return std::span<const EdgeId>(it->second);
}

std::optional<PathUnit> combine(const PathUnit& a, const PathUnit& b, const PaceGraph& g) {
    std::size_t k = suffix_prefix_overlap(a.edges, b.edges);
    if (k == 0) throw std::invalid_argument("no overlap");
    if (k == b.edges.size()) return std::nullopt;  // b adds nothing

    std::vector<EdgeId> merged = a.edges;
    merged.insert(merged.end(), b.edges.begin() + k, b.edges.end());
    if (!edge_simple(merged)) return std::nullopt;

    // A merge that reproduces a T-path sequence is redundant. For T-T pairs
    // this is the explicit existence check; longer units cannot collide with
    // a T-path when supports are consistent, so the lookup is a no-op there.
    if (g.find_tpath(merged) != nullptr) return std::nullopt;

    PathUnit v;
    v.kind = UnitKind::VPath;
    v.edges = std::move(merged);
    v.total = path_distribution(v.edges, g);
    return v;
}

UpdatedPaceGraph build_vpaths(const PaceGraph& g, const VPathBuildOptions& opts) {
    std::vector<PathUnit> units;
    for (const TPath& t : g.tpaths())
        units.push_back(PathUnit{t.id, UnitKind::TPath, t.edges, t.total});

    if (!opts.include_vpaths) return UpdatedPaceGraph(g, std::move(units));

    std::set<std::vector<EdgeId>> known;
    for (const auto& u : units) known.insert(u.edges);

    const std::size_t hard_cap = g.base().vertex_count();
    const std::size_t len_cap =
        opts.max_edges ? std::min<std::size_t>(*opts.max_edges, hard_cap) : hard_cap;

    int next_id = units.empty() ? 0 : units.back().id + 1;
    for (const auto& u : units) next_id = std::max(next_id, u.id + 1);

    // Round 1: T-path pairs. Later rounds: pairs where at least one side is a
    // V-path from the previous round, the other from that round or a T-path.
    std::vector<PathUnit> prev = units;  // round-1 inputs
    bool first_round = true;
    std::size_t rounds = 0;
    while (!prev.empty()) {
        if (++rounds > g.base().vertex_count() + 1)
            throw std::logic_error("V-path construction exceeded the iteration bound");
        std::map<std::vector<EdgeId>, PathUnit> fresh;
        auto try_pair = [&](const PathUnit& a, const PathUnit& b) {
            if (suffix_prefix_overlap(a.edges, b.edges) == 0) return;
            auto v = combine(a, b, g);
            if (!v) return;
            if (v->edges.size() > len_cap) return;
            if (known.count(v->edges) || fresh.count(v->edges)) return;
            fresh.emplace(v->edges, std::move(*v));
        };
        for (const PathUnit& a : prev)
            for (const PathUnit& b : prev)
                if (&a != &b) try_pair(a, b);
        if (!first_round) {
            for (const PathUnit& a : prev)
                for (const TPath& t : g.tpaths()) {
                    PathUnit tb{t.id, UnitKind::TPath, t.edges, t.total};
                    try_pair(a, tb);
                    try_pair(tb, a);
                }
        }
        first_round = false;
        prev.clear();
        for (auto& [edges, v] : fresh) {
            v.id = next_id++;
            known.insert(edges);
            units.push_back(v);
            prev.push_back(std::move(v));
        }
    }
    return UpdatedPaceGraph(g, std::move(units));
}

CostDistribution convolution_path_distribution(std::span<const EdgeId> path,
                                               const UpdatedPaceGraph& g) {
    auto runs = split_runs(coarsest_cover(path, g.pace()));
    CostDistribution out;
    for (const auto& run : runs) {
        CostDistribution total;
        if (run.size() == 1 && !run.front().is_tpath) {
            total = g.base().weight(run.front().edge);
        } else if (run.size() == 1) {
            total = g.pace().tpaths()[run.front().tpath_index].total;
        } else {
            std::vector<EdgeId> seq(path.begin() + run.front().begin,
                                    path.begin() + run.back().end + 1);
            const PathUnit* unit = g.find_unit(seq);
            // Units can be absent on length-capped builds; assemble then.
            total = unit ? unit->total : run_joint(run, g.pace()).total_cost();
        }
        out = out.empty() ? std::move(total) : convolve(out, total);
    }
    return out;
}

}  // namespace pace
