#include "pace/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace pace {

ReversedGraph::ReversedGraph(const PaceGraph& g, bool include_tpaths) {
    for (VertexId v : g.base().vertices()) vertices_.insert(v);
    vertex_count_ = vertices_.size();

    for (const auto& [id, e] : g.base().edges()) {
        ReversedUnit u;
        u.is_edge = true;
        u.edge = id;
        u.from = e.to;
        u.to = e.from;
        u.min_cost = g.base().weight(id).min_cost();
        u.covered_edges = 0;
        u.edges_reversed = {id};
        out_[u.from].push_back(std::move(u));
    }
    if (include_tpaths) {
        for (std::size_t i = 0; i < g.tpaths().size(); ++i) {
            const TPath& t = g.tpaths()[i];
            ReversedUnit u;
            u.is_edge = false;
            u.tpath_index = static_cast<int>(i);
            u.from = g.base().edge(t.edges.back()).to;
            u.to = g.base().edge(t.edges.front()).from;
            u.min_cost = t.total.min_cost();
            u.covered_edges = static_cast<int>(t.edges.size());
            u.edges_reversed.assign(t.edges.rbegin(), t.edges.rend());
            out_[u.from].push_back(std::move(u));
        }
    }
    for (auto& [v, list] : out_) {
        std::sort(list.begin(), list.end(), [](const ReversedUnit& a, const ReversedUnit& b) {
            if (a.is_edge != b.is_edge) return a.is_edge;
            if (a.is_edge) return a.edge < b.edge;
            return a.tpath_index < b.tpath_index;
        });
    }
}

std::span<const ReversedUnit> ReversedGraph::out(VertexId v) const {
    static const std::vector<ReversedUnit> kEmpty;
    auto it = out_.find(v);
    return it == out_.end() ? std::span<const ReversedUnit>(kEmpty)
                            : std::span<const ReversedUnit>(it->second);
}

bool ReversedGraph::has_vertex(VertexId v) const { return vertices_.count(v) > 0; }

ReversedGraph reverse(const PaceGraph& g) { return ReversedGraph(g, true); }

ReversedGraph reverse_edges_only(const PaceGraph& g) { return ReversedGraph(g, false); }

namespace {

struct TreeLabel {
    Cost c1 = MinCostMap::kUnreachable;
    int c2 = 0;
    VertexId parent = -1;
    const ReversedUnit* via = nullptr;
};

// Underlying reversed-edge sequence from dest to u, following parents.
// Empty optional when the chain exceeds the cap (treated as distinct).
std::optional<std::vector<EdgeId>> trace_path(VertexId u,
                                              const std::map<VertexId, TreeLabel>& labels,
                                              VertexId dest, std::size_t cap) {
    std::vector<std::span<const EdgeId>> pieces;
    VertexId cur = u;
    while (cur != dest) {
        auto it = labels.find(cur);
        if (it == labels.end() || it->second.via == nullptr) return std::nullopt;
        pieces.push_back(it->second.via->edges_reversed);
        cur = it->second.parent;
        if (pieces.size() > cap) return std::nullopt;
    }
    std::vector<EdgeId> out;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
        out.insert(out.end(), it->begin(), it->end());
    return out;
}

}  // namespace

MinCostMap shortest_path_tree(const ReversedGraph& rg, VertexId dest) {
    if (!rg.has_vertex(dest)) throw std::invalid_argument("destination not in graph");

    std::map<VertexId, TreeLabel> labels;
    labels[dest] = TreeLabel{0, 0, -1, nullptr};

    using QEntry = std::tuple<Cost, int, VertexId>;  // (c1, c2, vertex)
    auto cmp = [](const QEntry& a, const QEntry& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::get<2>(a) > std::get<2>(b);
    };
    std::priority_queue<QEntry, std::vector<QEntry>, decltype(cmp)> queue(cmp);
    queue.emplace(0, 0, dest);

    const std::size_t trace_cap = rg.vertex_count();
    std::size_t pops = 0;
    const std::size_t pop_cap = (rg.vertex_count() + 2) * (rg.vertex_count() + 2) * 64;

    while (!queue.empty()) {
        auto [c1, c2, v] = queue.top();
        queue.pop();
        auto lit = labels.find(v);
        if (lit == labels.end() || lit->second.c1 != c1 || lit->second.c2 != c2)
            continue;  // stale entry
        if (++pops > pop_cap)
            throw std::runtime_error("shortest path tree did not stabilize");

        for (const ReversedUnit& ep : rg.out(v)) {
            VertexId u = ep.to;
            Cost nc1 = c1 + ep.min_cost;
            int nc2 = c2 + ep.covered_edges;
            TreeLabel old = labels.count(u) ? labels[u] : TreeLabel{};

            bool update = false;
            if (nc1 <= old.c1 && nc2 >= old.c2 && (nc1 < old.c1 || nc2 > old.c2)) {
                update = true;  // domination
            } else if (nc1 >= old.c1 && nc2 <= old.c2) {
                update = false;  // dominated or equal
            } else {
                // Non-domination: compare the underlying road-network paths.
                auto p_old = trace_path(u, labels, dest, trace_cap);
                auto p_new = trace_path(v, labels, dest, trace_cap);
                if (p_new) {
                    p_new->insert(p_new->end(), ep.edges_reversed.begin(),
                                  ep.edges_reversed.end());
                }
                bool same = p_old && p_new && *p_old == *p_new;
                if (same)
                    update = nc2 > old.c2;
                else
                    update = nc1 < old.c1;
            }
            if (update) {
                labels[u] = TreeLabel{nc1, nc2, v, &ep};
                queue.emplace(nc1, nc2, u);
            }
        }
    }

    MinCostMap m;
    m.dest = dest;
    for (const auto& [v, label] : labels) m.min_cost[v] = label.c1;
    return m;
}

double binary_u(VertexId v, Cost x, const MinCostMap& m) {
    if (x < 0) return 0.0;
    Cost lo = m.get(v);
    if (lo >= MinCostMap::kUnreachable) return 0.0;
    return x >= lo ? 1.0 : 0.0;
}

HeuristicTable::HeuristicTable(VertexId dest, Cost delta, int eta,
                               std::map<VertexId, Row> rows)
    : dest_(dest), delta_(delta), eta_(eta), rows_(std::move(rows)) {
    for (const auto& [v, row] : rows_) {
        if (row.l_idx < 1 || row.s_idx < row.l_idx || row.s_idx > eta_)
            throw std::invalid_argument("malformed heuristic table row");
        if (row.values.size() != static_cast<std::size_t>(row.s_idx - row.l_idx + 1))
            throw std::invalid_argument("heuristic table row size mismatch");
        double prev = 0.0;
        for (double val : row.values) {
            if (val < prev - 1e-12 || val < 0.0 || val > 1.0)
                throw std::invalid_argument("heuristic table row not monotone in [0,1]");
            prev = val;
        }
    }
}

double HeuristicTable::lookup(VertexId v, Cost x) const {
    if (x < 0) return 0.0;
    if (v == dest_) return 1.0;
    auto it = rows_.find(v);
    if (it == rows_.end()) return 0.0;  // unreachable: all-zero row
    const Row& row = it->second;
    if (x == 0) return 0.0;
    Cost j = (x + delta_ - 1) / delta_;  // round budget up to the grid
    if (j > eta_) return 1.0;            // beyond the grid; rows saturate
    if (j < row.l_idx) return 0.0;
    if (j >= row.s_idx) return 1.0;
    return row.values[static_cast<std::size_t>(j - row.l_idx)];
}

namespace {

// Budget that guarantees arrival with probability 1: reversed Dijkstra over
// edges with maximum-support weights.
std::map<VertexId, Cost> guaranteed_arrival_costs(const UpdatedPaceGraph& g, VertexId dest) {
    std::map<VertexId, std::vector<std::pair<VertexId, Cost>>> radj;
    for (const auto& [id, e] : g.base().edges())
        radj[e.to].emplace_back(e.from, g.base().weight(id).max_cost());

    std::map<VertexId, Cost> dist;
    dist[dest] = 0;
    std::priority_queue<std::pair<Cost, VertexId>, std::vector<std::pair<Cost, VertexId>>,
                        std::greater<>> q;
    q.emplace(0, dest);
    while (!q.empty()) {
        auto [d, v] = q.top();
        q.pop();
        if (dist.at(v) != d) continue;
        auto it = radj.find(v);
        if (it == radj.end()) continue;
        for (auto [u, w] : it->second) {
            Cost nd = d + w;
            auto dit = dist.find(u);
            if (dit == dist.end() || nd < dit->second) {
                dist[u] = nd;
                q.emplace(nd, u);
            }
        }
    }
    return dist;
}

}  // namespace

HeuristicTable build_table(const UpdatedPaceGraph& g, VertexId dest, Cost delta,
                           std::optional<int> eta_opt, const MinCostMap& m) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    if (!g.base().has_vertex(dest)) throw std::invalid_argument("destination not in graph");

    std::vector<VertexId> reachable;
    Cost max_min = 0;
    for (VertexId v : g.base().vertices())
        if (m.reachable(v)) {
            if (v != dest) reachable.push_back(v);
            max_min = std::max(max_min, m.get(v));
        }

    int eta;
    if (eta_opt) {
        eta = *eta_opt;
        if (eta < 1) throw std::invalid_argument("eta must be >= 1");
    } else {
        Cost sat = 0;
        for (const auto& [v, c] : guaranteed_arrival_costs(g, dest))
            if (m.reachable(v)) sat = std::max(sat, c);
        Cost horizon = std::max(3 * max_min, sat);
        horizon = std::max<Cost>(horizon, delta);
        eta = static_cast<int>((horizon + delta - 1) / delta);
    }

    std::map<VertexId, int> l_idx;
    for (VertexId v : reachable) {
        Cost lo = m.get(v);
        int l = static_cast<int>((lo + delta - 1) / delta);
        l = std::max(l, 1);
        if (l > eta) throw std::runtime_error("horizon too small");
        l_idx[v] = l;
    }

    // Outgoing units (edge, T-path or V-path) with their frontier vertices.
    std::map<VertexId, std::vector<std::pair<VertexId, const CostDistribution*>>> out_units;
    for (VertexId v : reachable) {
        auto& list = out_units[v];
        for (const Hop& h : g.out_hops(v)) {
            if (h.to != dest && !m.reachable(h.to)) continue;
            list.emplace_back(h.to, &g.hop_total(h));
        }
    }

    std::map<VertexId, std::vector<double>> col;  // per vertex, eta+1 column values
    for (VertexId v : reachable) col[v].assign(static_cast<std::size_t>(eta) + 1, 0.0);
    std::map<VertexId, int> s_idx;

    auto value_at = [&](VertexId z, Cost y) -> double {
        if (y < 0) return 0.0;
        if (z == dest) return 1.0;
        auto it = col.find(z);
        if (it == col.end()) return 0.0;
        if (y == 0) return 0.0;
        Cost j = (y + delta - 1) / delta;
        return it->second[static_cast<std::size_t>(j)];
    };

    const int pass_cap = 4 * static_cast<int>(reachable.size()) + 64;
    for (int j = 1; j <= eta; ++j) {
        const Cost x = static_cast<Cost>(j) * delta;
        for (VertexId v : reachable) {
            if (s_idx.count(v)) { col[v][j] = 1.0; continue; }
            if (j > l_idx[v]) col[v][j] = col[v][j - 1];
        }
        // Monotone fixed point over the column; round-up lookups may
        // reference the column itself when unit costs are below delta.
        bool changed = true;
        int passes = 0;
        while (changed) {
            if (++passes > pass_cap)
                throw std::runtime_error("heuristic table column did not converge");
            changed = false;
            for (VertexId v : reachable) {
                if (s_idx.count(v) || j < l_idx[v]) continue;
                double best = 0.0;
                for (const auto& [z, total] : out_units[v]) {
                    double h = 0.0;
                    for (const auto& [k, p] : total->support()) {
                        if (k > x) break;
                        h += p * value_at(z, x - k);
                    }
                    best = std::max(best, h);
                }
                if (best >= 1.0 - 1e-12) best = 1.0;
                if (best > col[v][j] + 1e-15) {
                    col[v][j] = std::min(best, 1.0);
                    changed = true;
                }
            }
        }
        for (VertexId v : reachable)
            if (!s_idx.count(v) && col[v][j] == 1.0) s_idx[v] = j;
    }

    std::map<VertexId, HeuristicTable::Row> rows;
    for (VertexId v : reachable) {
        if (!s_idx.count(v)) throw std::runtime_error("horizon too small");
        HeuristicTable::Row row;
        row.l_idx = l_idx[v];
        row.s_idx = s_idx[v];
        double prev = 0.0;
        for (int j = row.l_idx; j <= row.s_idx; ++j) {
            double val = std::max(col[v][j], prev);  // guard fp monotonicity
            row.values.push_back(val);
            prev = val;
        }
        rows.emplace(v, std::move(row));
    }
    return HeuristicTable(dest, delta, eta, std::move(rows));
}

HeuristicFn constant_one_heuristic() {
    return [](VertexId, Cost x) { return x >= 0 ? 1.0 : 0.0; };
}

HeuristicFn binary_heuristic(const MinCostMap& m) {
    return [&m](VertexId v, Cost x) { return binary_u(v, x, m); };
}

HeuristicFn table_heuristic(const HeuristicTable& t) {
    return [&t](VertexId v, Cost x) { return t.lookup(v, x); };
}

}  // namespace pace
