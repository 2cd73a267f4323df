#pragma once

#include <iosfwd>
#include <string>

#include "pace/heuristics.hpp"
#include "pace/router.hpp"

namespace pace {
namespace io {

// Graph file, line oriented:
//   V <id>
//   E <id> <from> <to> <cost:prob,cost:prob,...>
std::string serialize_graph(const RoadGraph& g);
RoadGraph parse_graph(std::istream& in);

// Trajectory file: one per line, `<period_tag> <edge:cost> <edge:cost> ...`.
std::string serialize_trajectories(const std::vector<Trajectory>& ts);
std::vector<Trajectory> parse_trajectories(std::istream& in);

// Unit store: `U <id> <kind:T|V> <e1,e2,...> <cost:prob,...>`.
std::string serialize_units(const UpdatedPaceGraph& g);
std::vector<PathUnit> parse_units(std::istream& in);

// T-path joints: `J <id> <support> <e1,e2,...> <c|c|..:prob ...>`.
// Needed to rebuild assembly-capable PACE graphs from disk.
std::string serialize_joints(const PaceGraph& g);
struct JointRecord {
    int id = -1;
    int support = 0;
    std::vector<EdgeId> edges;
    JointDistribution joint;
};
std::vector<JointRecord> parse_joints(std::istream& in);

// Heuristic caches. Min-cost map: `M <dest> <vertex> <getMin>`.
// Table: header `HT <dest> <delta> <eta>` then per-row
// `H <dest> <vertex> <l> <s> <v_l,...,v_s>` with l and s as budget values.
std::string serialize_min_cost(const MinCostMap& m);
MinCostMap parse_min_cost(std::istream& in);
std::string serialize_table(const HeuristicTable& t);
HeuristicTable parse_table(std::istream& in);

// Query file: `<source> <dest> <departure_time> <budget>` per line.
std::vector<Query> parse_queries(std::istream& in);

// Convenience file helpers.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

RoadGraph load_graph_file(const std::string& path);
std::vector<Trajectory> load_trajectory_file(const std::string& path);

/// Rebuilds the PACE model from graph + units + joints files.
UpdatedPaceGraph load_model(const std::string& graph_path, const std::string& units_path,
                            const std::string& joints_path, const std::string& period_tag,
                            int tau);
void save_model(const UpdatedPaceGraph& g, const std::string& graph_path,
                const std::string& units_path, const std::string& joints_path);

}  // namespace io
}  // namespace pace
