#include "pace/pace_graph.hpp"

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

}  // namespace

PaceGraph::PaceGraph(RoadGraph base, std::vector<TPath> tpaths, std::string period_tag, int tau)
    : base_(std::move(base)), tpaths_(std::move(tpaths)), period_(std::move(period_tag)),
      tau_(tau) {
    for (std::size_t i = 0; i < tpaths_.size(); ++i) {
        const TPath& t = tpaths_[i];
        if (t.edges.size() < 2)
            throw std::invalid_argument("T-path needs at least 2 edges");
        if (!edge_simple(t.edges))
            throw std::invalid_argument("T-path edge sequence repeats an edge");
        if (!base_.is_connected_path(t.edges))
            throw std::invalid_argument("T-path not a connected path in the base graph");
        if (!by_edges_.emplace(t.edges, static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate T-path edge sequence");
        by_first_edge_[t.edges.front()].push_back(static_cast<int>(i));
        by_start_vertex_[base_.edge(t.edges.front()).from].push_back(static_cast<int>(i));
        for (std::size_t k = 0; k + 1 < t.edges.size(); ++k)
            through_.insert(base_.edge(t.edges[k]).to);
    }
}

const TPath* PaceGraph::find_tpath(std::span<const EdgeId> edges) const {
    std::vector<EdgeId> key(edges.begin(), edges.end());
    auto it = by_edges_.find(key);
    return it == by_edges_.end() ? nullptr : &tpaths_[it->second];
}

const std::vector<int>& PaceGraph::tpaths_starting_at(EdgeId e) const {
    static const std::vector<int> kEmpty;
    auto it = by_first_edge_.find(e);
    return it == by_first_edge_.end() ? kEmpty : it->second;
}

const std::vector<int>& PaceGraph::tpaths_from_vertex(VertexId v) const {
    static const std::vector<int> kEmpty;
    auto it = by_start_vertex_.find(v);
    return it == by_start_vertex_.end() ? kEmpty : it->second;
}

std::vector<std::vector<EdgeId>> candidate_subpaths(const Trajectory& t) {
    std::vector<std::vector<EdgeId>> out;
    const std::size_t n = t.steps.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t len = 2; i + len <= n; ++len) {
            std::vector<EdgeId> sub;
            sub.reserve(len);
            for (std::size_t k = 0; k < len; ++k) sub.push_back(t.steps[i + k].edge);
            if (edge_simple(sub)) out.push_back(std::move(sub));
        }
    }
    return out;
}

PaceGraph extract_tpaths(const std::vector<Trajectory>& trajectories, const RoadGraph& graph,
                         int tau, const std::string& period_tag) {
    if (tau < 1) throw std::invalid_argument("tau must be >= 1");

    struct SubPathStats {
        int support = 0;
        std::map<std::vector<Cost>, double> vectors;
    };
    std::map<std::vector<EdgeId>, SubPathStats> subpaths;
    std::map<EdgeId, std::map<Cost, double>> edge_hist;
    std::map<EdgeId, int> edge_support;

    for (const Trajectory& t : trajectories) {
        if (!period_tag.empty() && t.period != period_tag) continue;
        std::vector<EdgeId> edges;
        edges.reserve(t.steps.size());
        for (const auto& step : t.steps) {
            if (!graph.has_edge(step.edge))
                throw std::invalid_argument("trajectory uses unknown edge " +
                                            std::to_string(step.edge));
            if (step.cost < 1)
                throw std::invalid_argument("trajectory costs must be >= 1 unit");
            edges.push_back(step.edge);
        }
        if (!graph.is_connected_path(edges))
            throw std::invalid_argument("trajectory edges are not a connected path");

        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            edge_hist[t.steps[i].edge][t.steps[i].cost] += 1.0;
            edge_support[t.steps[i].edge] += 1;
        }
        const std::size_t n = t.steps.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t len = 2; i + len <= n; ++len) {
                std::vector<EdgeId> sub(edges.begin() + i, edges.begin() + i + len);
                if (!edge_simple(sub)) continue;
                std::vector<Cost> costs;
                costs.reserve(len);
                for (std::size_t k = 0; k < len; ++k) costs.push_back(t.steps[i + k].cost);
                auto& stats = subpaths[sub];
                stats.support += 1;
                stats.vectors[costs] += 1.0;
            }
        }
    }

    RoadGraph base = graph;
    for (const auto& [e, hist] : edge_hist)
        if (edge_support[e] >= tau)
            base.set_weight(e, CostDistribution::from_weights(hist));

    std::vector<TPath> tpaths;
    for (const auto& [edges, stats] : subpaths) {
        if (stats.support < tau) continue;
        TPath t;
        t.id = static_cast<int>(tpaths.size());
        t.edges = edges;
        t.joint = JointDistribution::from_weights(edges, stats.vectors);
        t.total = t.joint.total_cost();
        t.support = stats.support;
        tpaths.push_back(std::move(t));
    }
    return PaceGraph(std::move(base), std::move(tpaths), period_tag, tau);
}

std::vector<PaceGraph> extract_all_periods(const std::vector<Trajectory>& trajectories,
                                           const RoadGraph& graph, int tau) {
    std::set<std::string> tags;
    for (const auto& t : trajectories) tags.insert(t.period);
    std::vector<PaceGraph> out;
    for (const auto& tag : tags) out.push_back(extract_tpaths(trajectories, graph, tau, tag));
    return out;
}

namespace {

// Longest T-path equal to path[pos..] prefix, ties by support then id.
int longest_tpath_at(std::span<const EdgeId> path, std::size_t pos, const PaceGraph& g) {
    int best = -1;
    std::size_t best_len = 0;
    for (int idx : g.tpaths_starting_at(path[pos])) {
        const TPath& t = g.tpaths()[idx];
        if (t.edges.size() > path.size() - pos) continue;
        bool match = true;
        for (std::size_t k = 1; k < t.edges.size(); ++k)
            if (t.edges[k] != path[pos + k]) { match = false; break; }
        if (!match) continue;
        if (best < 0 || t.edges.size() > best_len ||
            (t.edges.size() == best_len &&
             (t.support > g.tpaths()[best].support ||
              (t.support == g.tpaths()[best].support && t.id < g.tpaths()[best].id)))) {
            best = idx;
            best_len = t.edges.size();
        }
    }
    return best;
}

}  // namespace

std::vector<CoverUnit> coarsest_cover(std::span<const EdgeId> path, const PaceGraph& g) {
    if (!g.base().is_connected_path(path))
        throw std::invalid_argument("path is not connected in the graph");
    std::vector<CoverUnit> cover;
    std::size_t pos = 0;
    const std::size_t n = path.size();
    while (true) {
        CoverUnit unit;
        unit.begin = pos;
        int idx = longest_tpath_at(path, pos, g);
        if (idx >= 0) {
            unit.is_tpath = true;
            unit.tpath_index = idx;
            unit.end = pos + g.tpaths()[idx].edges.size() - 1;
        } else {
            unit.edge = path[pos];
            unit.end = pos;
        }
        cover.push_back(unit);
        if (unit.end == n - 1) break;
        // Continue the chain from the last covered edge if a T-path starts
        // there; otherwise step past it (independent continuation).
        pos = (longest_tpath_at(path, unit.end, g) >= 0) ? unit.end : unit.end + 1;
    }
    return cover;
}

std::vector<std::string> coarsest_path_sequence(std::span<const EdgeId> path,
                                                const PaceGraph& g) {
    std::vector<std::string> out;
    for (const CoverUnit& u : coarsest_cover(path, g))
        out.push_back(u.is_tpath ? "p" + std::to_string(g.tpaths()[u.tpath_index].id)
                                 : "e" + std::to_string(u.edge));
    return out;
}

std::vector<std::vector<CoverUnit>> split_runs(const std::vector<CoverUnit>& cover) {
    std::vector<std::vector<CoverUnit>> runs;
    for (const CoverUnit& u : cover) {
        if (runs.empty() || u.begin > runs.back().back().end)
            runs.emplace_back();
        runs.back().push_back(u);
    }
    return runs;
}

JointDistribution run_joint(const std::vector<CoverUnit>& run, const PaceGraph& g) {
    JointDistribution acc;
    for (const CoverUnit& u : run) {
        JointDistribution piece = u.is_tpath
                                      ? g.tpaths()[u.tpath_index].joint
                                      : JointDistribution::single(u.edge, g.base().weight(u.edge));
        acc = acc.empty() ? std::move(piece) : assemble(acc, piece);
    }
    return acc;
}

CostDistribution path_distribution(std::span<const EdgeId> path, const PaceGraph& g) {
    auto runs = split_runs(coarsest_cover(path, g));
    CostDistribution out;
    for (const auto& run : runs) {
        CostDistribution total;
        if (run.size() == 1 && !run.front().is_tpath)
            total = g.base().weight(run.front().edge);
        else if (run.size() == 1)
            total = g.tpaths()[run.front().tpath_index].total;
        else
            total = run_joint(run, g).total_cost();
        out = out.empty() ? std::move(total) : convolve(out, total);
    }
    return out;
}

}  // namespace pace
