#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "pace/vpath.hpp"

namespace pace {

/// One reversed hop: a road edge or a T-path with direction flipped and a
/// deterministic weight equal to the minimum cost of the forward distribution.
struct ReversedUnit {
    bool is_edge = true;
    EdgeId edge = -1;
    int tpath_index = -1;
    VertexId from = -1;  // forward head
    VertexId to = -1;    // forward tail
    Cost min_cost = 0;
    int covered_edges = 0;  // edges covered by a reversed T-path, 0 for edges
    std::vector<EdgeId> edges_reversed;  // underlying edges, reversed order
};

class ReversedGraph {
public:
    ReversedGraph() = default;
    ReversedGraph(const PaceGraph& g, bool include_tpaths);

    std::span<const ReversedUnit> out(VertexId v) const;
    bool has_vertex(VertexId v) const;
    std::size_t vertex_count() const { return vertex_count_; }

private:
    std::map<VertexId, std::vector<ReversedUnit>> out_;
    std::set<VertexId> vertices_;
    std::size_t vertex_count_ = 0;
};

/// Reversed graph over edges and T-paths (the full variant).
ReversedGraph reverse(const PaceGraph& g);
/// Edge-only reversed graph (the faster, weaker binary-heuristic variant).
ReversedGraph reverse_edges_only(const PaceGraph& g);

/// Least travel cost from every vertex to one destination.
struct MinCostMap {
    static constexpr Cost kUnreachable = std::numeric_limits<Cost>::max() / 4;
    VertexId dest = -1;
    std::map<VertexId, Cost> min_cost;

    Cost get(VertexId v) const {
        auto it = min_cost.find(v);
        return it == min_cost.end() ? kUnreachable : it->second;
    }
    bool reachable(VertexId v) const { return get(v) < kUnreachable; }
};

/// Backward label-correcting search keeping (c1, c2) per vertex: c1 the tree
/// cost, c2 the count of edges covered by reversed T-paths. Domination always
/// updates; under non-domination the traced paths decide — same underlying
/// path prefers larger c2, different paths prefer smaller c1.
MinCostMap shortest_path_tree(const ReversedGraph& rg, VertexId dest);

/// 0/1 admissible bound: 1 iff x >= least cost from v to the destination.
double binary_u(VertexId v, Cost x, const MinCostMap& m);

/// Tabulated per-destination bound U(v, j*delta) with compact per-row bounds:
/// columns below l are 0, columns at or above s are 1.
class HeuristicTable {
public:
    struct Row {
        int l_idx = 0;  // 1-based first stored column
        int s_idx = 0;  // first column whose value is 1
        std::vector<double> values;  // columns l_idx..s_idx
    };

    HeuristicTable() = default;
    HeuristicTable(VertexId dest, Cost delta, int eta, std::map<VertexId, Row> rows);

    VertexId dest() const { return dest_; }
    Cost delta() const { return delta_; }
    int eta() const { return eta_; }
    const std::map<VertexId, Row>& rows() const { return rows_; }

    /// Round-up lookup: the stored value at the smallest grid budget >= x.
    double lookup(VertexId v, Cost x) const;

private:
    VertexId dest_ = -1;
    Cost delta_ = 1;
    int eta_ = 0;
    std::map<VertexId, Row> rows_;  // reachable non-destination vertices only
};

/// Builds the budget-specific table by ascending-column fixed point over the
/// unit recursion (edges, T-paths and V-paths). eta defaults to a horizon
/// that provably saturates every reachable row.
HeuristicTable build_table(const UpdatedPaceGraph& g, VertexId dest, Cost delta,
                           std::optional<int> eta, const MinCostMap& m);

/// Heuristic interface used by the router: U(vertex, remaining budget).
using HeuristicFn = std::function<double(VertexId, Cost)>;

HeuristicFn constant_one_heuristic();
HeuristicFn binary_heuristic(const MinCostMap& m);
HeuristicFn table_heuristic(const HeuristicTable& t);

}  // namespace pace
