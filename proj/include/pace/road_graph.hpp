#pragma once

#include <map>
#include <string>
#include <vector>

#include "pace/cost_distribution.hpp"
#include "pace/joint_distribution.hpp"

namespace pace {

struct Edge {
    EdgeId id = -1;
    VertexId from = -1;
    VertexId to = -1;
};

/// Directed road network with per-edge travel-cost distributions.
class RoadGraph {
public:
    void add_vertex(VertexId v);
    void add_edge(EdgeId id, VertexId from, VertexId to, CostDistribution weight);

    bool has_vertex(VertexId v) const { return vertices_.count(v) > 0; }
    bool has_edge(EdgeId e) const { return edges_.count(e) > 0; }
    const Edge& edge(EdgeId e) const;
    const CostDistribution& weight(EdgeId e) const;
    void set_weight(EdgeId e, CostDistribution weight);

    /// Outgoing edge ids, sorted by edge id.
    const std::vector<EdgeId>& out_edges(VertexId v) const;
    const std::map<VertexId, std::vector<EdgeId>>& adjacency() const { return out_; }
    const std::map<EdgeId, Edge>& edges() const { return edges_; }
    std::vector<VertexId> vertices() const;
    std::size_t vertex_count() const { return vertices_.size(); }

    /// True iff consecutive edges chain head-to-tail.
    bool is_connected_path(std::span<const EdgeId> path) const;

private:
    std::map<VertexId, int> vertices_;
    std::map<EdgeId, Edge> edges_;
    std::map<EdgeId, CostDistribution> weights_;
    std::map<VertexId, std::vector<EdgeId>> out_;
};

struct TrajectoryStep {
    EdgeId edge = -1;
    Cost cost = 0;
};

/// One observed trip: adjacent edges with per-edge travel costs, tagged with
/// the time period it was observed in.
struct Trajectory {
    std::string period;
    std::vector<TrajectoryStep> steps;
};

}  // namespace pace
