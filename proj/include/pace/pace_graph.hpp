#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pace/road_graph.hpp"

namespace pace {

/// A path traversed by at least tau trajectories, with the empirical joint
/// distribution of its per-edge costs and the derived total-cost distribution.
struct TPath {
    int id = -1;
    std::vector<EdgeId> edges;
    JointDistribution joint;
    CostDistribution total;
    int support = 0;
};

/// Road network plus T-paths for one time period.
class PaceGraph {
public:
    PaceGraph() = default;
    PaceGraph(RoadGraph base, std::vector<TPath> tpaths, std::string period_tag, int tau);

    const RoadGraph& base() const { return base_; }
    const std::vector<TPath>& tpaths() const { return tpaths_; }
    const std::string& period_tag() const { return period_; }
    int tau() const { return tau_; }

    const TPath* find_tpath(std::span<const EdgeId> edges) const;
    /// Indices into tpaths() of T-paths whose first edge is `e`.
    const std::vector<int>& tpaths_starting_at(EdgeId e) const;
    /// Indices of T-paths starting at vertex `v`, sorted by id.
    const std::vector<int>& tpaths_from_vertex(VertexId v) const;
    /// True iff some T-path has `v` as an interior vertex.
    bool tpath_through(VertexId v) const { return through_.count(v) > 0; }

private:
    RoadGraph base_;
    std::vector<TPath> tpaths_;
    std::string period_;
    int tau_ = 1;
    std::map<std::vector<EdgeId>, int> by_edges_;
    std::map<EdgeId, std::vector<int>> by_first_edge_;
    std::map<VertexId, std::vector<int>> by_start_vertex_;
    std::set<VertexId> through_;
};

/// All contiguous sub-paths of >= 2 edges, in (start, length) order.
/// Sub-sequences with repeated edges are skipped (they are not paths).
std::vector<std::vector<EdgeId>> candidate_subpaths(const Trajectory& t);

/// Mines T-paths from trajectories and replaces edge weights with empirical
/// histograms wherever at least tau traversals exist. An empty period_tag
/// uses every trajectory; otherwise only matching ones.
PaceGraph extract_tpaths(const std::vector<Trajectory>& trajectories, const RoadGraph& graph,
                         int tau, const std::string& period_tag = "");

/// One PaceGraph per period tag present in the trajectories.
std::vector<PaceGraph> extract_all_periods(const std::vector<Trajectory>& trajectories,
                                           const RoadGraph& graph, int tau);

/// One unit of a coarsest cover: either a single edge or a T-path, with the
/// [begin, end] edge-index span it occupies in the covered path.
struct CoverUnit {
    bool is_tpath = false;
    EdgeId edge = -1;    // valid when !is_tpath
    int tpath_index = -1;  // valid when is_tpath
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Greedy left-to-right coarsest cover: the longest T-path starting at the
/// current edge, falling back to the single edge; consecutive units overlap
/// on one edge whenever a T-path continues from the previous unit's last edge.
std::vector<CoverUnit> coarsest_cover(std::span<const EdgeId> path, const PaceGraph& g);

/// The cover as (edge-or-T-path) unit id strings, for reporting.
std::vector<std::string> coarsest_path_sequence(std::span<const EdgeId> path,
                                                const PaceGraph& g);

/// Maximal chains of overlapping cover units ("runs"); units in different
/// runs are independent.
std::vector<std::vector<CoverUnit>> split_runs(const std::vector<CoverUnit>& cover);

/// Joint distribution of one run, folded left to right.
JointDistribution run_joint(const std::vector<CoverUnit>& run, const PaceGraph& g);

/// Travel-cost distribution of a path under the path-centric model:
/// assembly within runs, convolution across runs.
CostDistribution path_distribution(std::span<const EdgeId> path, const PaceGraph& g);

}  // namespace pace
