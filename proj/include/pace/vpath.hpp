#pragma once

#include <optional>

#include "pace/pace_graph.hpp"

namespace pace {

enum class UnitKind { TPath, VPath };

/// A precomputed multi-edge unit of the updated graph: a T-path or a V-path,
/// carrying only its total-cost distribution.
struct PathUnit {
    int id = -1;
    UnitKind kind = UnitKind::TPath;
    std::vector<EdgeId> edges;
    CostDistribution total;
};

struct VPathBuildOptions {
    bool include_vpaths = true;
    std::optional<int> max_edges;  // cap on V-path edge length
};

/// A single hop the router can take: an edge or a multi-edge unit.
struct Hop {
    bool is_edge = true;
    EdgeId edge = -1;        // valid when is_edge
    int unit_index = -1;     // index into UpdatedPaceGraph::units() otherwise
    VertexId from = -1;
    VertexId to = -1;
};

/// PACE graph extended with V-paths; every unit's total is precomputed so
/// path distributions reduce to convolutions across independent spans.
class UpdatedPaceGraph {
public:
    UpdatedPaceGraph() = default;
    UpdatedPaceGraph(PaceGraph pace, std::vector<PathUnit> units);

    const PaceGraph& pace() const { return pace_; }
    const RoadGraph& base() const { return pace_.base(); }
    const std::vector<PathUnit>& units() const { return units_; }

    const PathUnit* find_unit(std::span<const EdgeId> edges) const;
    std::span<const Hop> out_hops(VertexId v) const;
    std::size_t vpath_count() const;

    const CostDistribution& hop_total(const Hop& h) const;
    std::span<const EdgeId> hop_edges(const Hop& h) const;

private:
    PaceGraph pace_;
    std::vector<PathUnit> units_;
    std::map<std::vector<EdgeId>, int> by_edges_;
    std::map<VertexId, std::vector<Hop>> hops_;
    std::map<EdgeId, std::vector<EdgeId>> edge_spans_;
};

/// Merges two overlapping units into a V-path candidate. Returns nullopt when
/// both inputs are T-paths and the merged sequence already is a T-path, or
/// when the merge would repeat an edge. The V-path's distribution is the
/// path-centric distribution of the merged sequence.
std::optional<PathUnit> combine(const PathUnit& a, const PathUnit& b, const PaceGraph& g);

/// Iterates pairwise combining to a fixed point: round one over T-path pairs,
/// later rounds over the previous round's V-paths.
UpdatedPaceGraph build_vpaths(const PaceGraph& g, const VPathBuildOptions& opts = {});

/// Path distribution using only precomputed unit totals: the greedy cover's
/// overlapping runs map to their recorded units and the run totals convolve.
/// A run with no recorded unit falls back to assembly.
CostDistribution convolution_path_distribution(std::span<const EdgeId> path,
                                               const UpdatedPaceGraph& g);

}  // namespace pace
