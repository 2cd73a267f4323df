#include "pace/road_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pace {

void RoadGraph::add_vertex(VertexId v) { vertices_.emplace(v, 0); }

void RoadGraph::add_edge(EdgeId id, VertexId from, VertexId to, CostDistribution weight) {
    if (!has_vertex(from) || !has_vertex(to))
        throw std::invalid_argument("edge endpoint not a declared vertex");
    if (edges_.count(id))
        throw std::invalid_argument("duplicate edge id " + std::to_string(id));
    if (weight.empty())
        throw std::invalid_argument("edge needs a weight");
    if (weight.min_cost() < 1)
        throw std::invalid_argument("zero-cost edges are not allowed");
    edges_[id] = Edge{id, from, to};
    weights_.emplace(id, std::move(weight));
    auto& list = out_[from];
    list.insert(std::upper_bound(list.begin(), list.end(), id), id);
}

const Edge& RoadGraph::edge(EdgeId e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw std::out_of_range("unknown edge " + std::to_string(e));
    return it->second;
}

const CostDistribution& RoadGraph::weight(EdgeId e) const {
    auto it = weights_.find(e);
    if (it == weights_.end()) throw std::out_of_range("unknown edge " + std::to_string(e));
    return it->second;
}

void RoadGraph::set_weight(EdgeId e, CostDistribution weight) {
    if (!has_edge(e)) throw std::out_of_range("unknown edge " + std::to_string(e));
    if (weight.min_cost() < 1)
        throw std::invalid_argument("zero-cost edges are not allowed");
    weights_[e] = std::move(weight);
}

const std::vector<EdgeId>& RoadGraph::out_edges(VertexId v) const {
    static const std::vector<EdgeId> kEmpty;
    auto it = out_.find(v);
    return it == out_.end() ? kEmpty : it->second;
}

std::vector<VertexId> RoadGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(vertices_.size());
    for (const auto& [v, _] : vertices_) out.push_back(v);
    return out;
}

bool RoadGraph::is_connected_path(std::span<const EdgeId> path) const {
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!has_edge(path[i])) return false;
        if (i > 0 && edge(path[i - 1]).to != edge(path[i]).from) return false;
    }
    return !path.empty();
}

}  // namespace pace
