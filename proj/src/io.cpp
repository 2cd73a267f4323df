#include "pace/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pace {
namespace io {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_dist(const CostDistribution& d) {
    std::string out;
    bool first = true;
    for (const auto& [c, p] : d.support()) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(c);
        out += ':';
        out += fmt_double(p);
    }
    return out;
}

CostDistribution parse_dist(const std::string& text) {
    std::map<Cost, double> mass;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("malformed distribution entry: " + item);
        mass[std::stoll(item.substr(0, colon))] += std::stod(item.substr(colon + 1));
    }
    return CostDistribution::from_weights(mass);
}

std::vector<EdgeId> parse_edge_list(const std::string& text) {
    std::vector<EdgeId> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::string fmt_edge_list(std::span<const EdgeId> edges) {
    std::string out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(edges[i]);
    }
    return out;
}

[[noreturn]] void bad_line(const std::string& line) {
    throw std::runtime_error("malformed line: " + line);
}

}  // namespace

std::string serialize_graph(const RoadGraph& g) {
    std::string out;
    for (VertexId v : g.vertices()) out += "V " + std::to_string(v) + "\n";
    for (const auto& [id, e] : g.edges()) {
        out += "E " + std::to_string(id) + " " + std::to_string(e.from) + " " +
               std::to_string(e.to) + " " + fmt_dist(g.weight(id)) + "\n";
    }
    return out;
}

RoadGraph parse_graph(std::istream& in) {
    RoadGraph g;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "V") {
            VertexId v;
            if (!(ss >> v)) bad_line(line);
            g.add_vertex(v);
        } else if (tag == "E") {
            EdgeId id;
            VertexId from, to;
            std::string dist;
            if (!(ss >> id >> from >> to >> dist)) bad_line(line);
            g.add_edge(id, from, to, parse_dist(dist));
        } else {
            bad_line(line);
        }
    }
    return g;
}

std::string serialize_trajectories(const std::vector<Trajectory>& ts) {
    std::string out;
    for (const Trajectory& t : ts) {
        out += t.period;
        for (const auto& step : t.steps)
            out += " " + std::to_string(step.edge) + ":" + std::to_string(step.cost);
        out += "\n";
    }
    return out;
}

std::vector<Trajectory> parse_trajectories(std::istream& in) {
    std::vector<Trajectory> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        Trajectory t;
        if (!(ss >> t.period)) bad_line(line);
        std::string item;
        while (ss >> item) {
            auto colon = item.find(':');
            if (colon == std::string::npos) bad_line(line);
            TrajectoryStep step;
            step.edge = std::stoi(item.substr(0, colon));
            // Costs round to the integer unit grid at ingestion.
            step.cost = static_cast<Cost>(std::llround(std::stod(item.substr(colon + 1))));
            t.steps.push_back(step);
        }
        if (t.steps.empty()) bad_line(line);
        out.push_back(std::move(t));
    }
    return out;
}

std::string serialize_units(const UpdatedPaceGraph& g) {
    std::string out;
    for (const PathUnit& u : g.units()) {
        out += "U " + std::to_string(u.id) + " " +
               (u.kind == UnitKind::TPath ? "T" : "V") + " " + fmt_edge_list(u.edges) +
               " " + fmt_dist(u.total) + "\n";
    }
    return out;
}

std::vector<PathUnit> parse_units(std::istream& in) {
    std::vector<PathUnit> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag, kind, edges, dist;
        PathUnit u;
        if (!(ss >> tag >> u.id >> kind >> edges >> dist) || tag != "U") bad_line(line);
        if (kind != "T" && kind != "V") bad_line(line);
        u.kind = kind == "T" ? UnitKind::TPath : UnitKind::VPath;
        u.edges = parse_edge_list(edges);
        u.total = parse_dist(dist);
        out.push_back(std::move(u));
    }
    return out;
}

std::string serialize_joints(const PaceGraph& g) {
    std::string out;
    for (const TPath& t : g.tpaths()) {
        out += "J " + std::to_string(t.id) + " " + std::to_string(t.support) + " " +
               fmt_edge_list(t.edges);
        for (const auto& [vec, p] : t.joint.mass()) {
            out += " ";
            for (std::size_t i = 0; i < vec.size(); ++i) {
                if (i) out += '|';
                out += std::to_string(vec[i]);
            }
            out += ":" + fmt_double(p);
        }
        out += "\n";
    }
    return out;
}

std::vector<JointRecord> parse_joints(std::istream& in) {
    std::vector<JointRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag, edges;
        JointRecord r;
        if (!(ss >> tag >> r.id >> r.support >> edges) || tag != "J") bad_line(line);
        r.edges = parse_edge_list(edges);
        std::map<std::vector<Cost>, double> mass;
        std::string entry;
        while (ss >> entry) {
            auto colon = entry.rfind(':');
            if (colon == std::string::npos) bad_line(line);
            std::vector<Cost> vec;
            std::stringstream vs(entry.substr(0, colon));
            std::string num;
            while (std::getline(vs, num, '|')) vec.push_back(std::stoll(num));
            mass[vec] += std::stod(entry.substr(colon + 1));
        }
        r.joint = JointDistribution::from_weights(r.edges, mass);
        out.push_back(std::move(r));
    }
    return out;
}

std::string serialize_min_cost(const MinCostMap& m) {
    std::string out;
    for (const auto& [v, c] : m.min_cost)
        out += "M " + std::to_string(m.dest) + " " + std::to_string(v) + " " +
               std::to_string(c) + "\n";
    return out;
}

MinCostMap parse_min_cost(std::istream& in) {
    MinCostMap m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag;
        VertexId dest, v;
        Cost c;
        if (!(ss >> tag >> dest >> v >> c) || tag != "M") bad_line(line);
        m.dest = dest;
        m.min_cost[v] = c;
    }
    return m;
}

std::string serialize_table(const HeuristicTable& t) {
    std::string out = "HT " + std::to_string(t.dest()) + " " + std::to_string(t.delta()) +
                      " " + std::to_string(t.eta()) + "\n";
    for (const auto& [v, row] : t.rows()) {
        out += "H " + std::to_string(t.dest()) + " " + std::to_string(v) + " " +
               std::to_string(static_cast<Cost>(row.l_idx) * t.delta()) + " " +
               std::to_string(static_cast<Cost>(row.s_idx) * t.delta()) + " ";
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            if (i) out += ',';
            out += fmt_double(row.values[i]);
        }
        out += "\n";
    }
    return out;
}

HeuristicTable parse_table(std::istream& in) {
    std::string line;
    VertexId dest = -1;
    Cost delta = 1;
    int eta = 0;
    std::map<VertexId, HeuristicTable::Row> rows;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "HT") {
            if (!(ss >> dest >> delta >> eta)) bad_line(line);
            have_header = true;
        } else if (tag == "H") {
            VertexId d, v;
            Cost l, s;
            std::string values;
            if (!(ss >> d >> v >> l >> s >> values)) bad_line(line);
            HeuristicTable::Row row;
            row.l_idx = static_cast<int>(l / delta);
            row.s_idx = static_cast<int>(s / delta);
            std::stringstream vs(values);
            std::string item;
            while (std::getline(vs, item, ',')) row.values.push_back(std::stod(item));
            rows.emplace(v, std::move(row));
        } else {
            bad_line(line);
        }
    }
    if (!have_header) throw std::runtime_error("heuristic table file missing HT header");
    return HeuristicTable(dest, delta, eta, std::move(rows));
}

std::vector<Query> parse_queries(std::istream& in) {
    std::vector<Query> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        Query q;
        Cost b;
        if (!(ss >> q.source >> q.dest >> q.depart_time >> b)) bad_line(line);
        q.budget = Budget(b);
        out.push_back(q);
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RoadGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return parse_graph(in);
}

std::vector<Trajectory> load_trajectory_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return parse_trajectories(in);
}

UpdatedPaceGraph load_model(const std::string& graph_path, const std::string& units_path,
                            const std::string& joints_path, const std::string& period_tag,
                            int tau) {
    RoadGraph base = load_graph_file(graph_path);

    std::ifstream uin(units_path);
    if (!uin) throw std::runtime_error("cannot read " + units_path);
    std::vector<PathUnit> units = parse_units(uin);

    std::ifstream jin(joints_path);
    if (!jin) throw std::runtime_error("cannot read " + joints_path);
    std::vector<JointRecord> joints = parse_joints(jin);

    std::vector<TPath> tpaths;
    for (const JointRecord& r : joints) {
        TPath t;
        t.id = r.id;
        t.edges = r.edges;
        t.joint = r.joint;
        t.total = r.joint.total_cost();
        t.support = r.support;
        tpaths.push_back(std::move(t));
    }
    PaceGraph pace(std::move(base), std::move(tpaths), period_tag, tau);
    return UpdatedPaceGraph(std::move(pace), std::move(units));
}

void save_model(const UpdatedPaceGraph& g, const std::string& graph_path,
                const std::string& units_path, const std::string& joints_path) {
    write_file(graph_path, serialize_graph(g.base()));
    write_file(units_path, serialize_units(g));
    write_file(joints_path, serialize_joints(g.pace()));
}

}  // namespace io
}  // namespace pace
