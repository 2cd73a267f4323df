#include "pace/oracle.hpp"

#include <stdexcept>

namespace pace {

namespace {

struct EnumState {
    const RoadGraph* g;
    VertexId dest;
    int max_edges;
    std::vector<EdgeId> path;
    std::set<VertexId> visited;
    std::vector<std::vector<EdgeId>>* out;
    std::size_t expansions = 0;
};

void dfs(EnumState& st, VertexId at) {
    if (++st.expansions > kOraclePathGuard * 64)
        throw std::runtime_error("instance too large for oracle");
    if (at == st.dest && !st.path.empty()) {
        st.out->push_back(st.path);
        if (st.out->size() > kOraclePathGuard)
            throw std::runtime_error("instance too large for oracle");
        return;  // simple paths cannot pass through the destination again
    }
    if (static_cast<int>(st.path.size()) >= st.max_edges) return;
    for (EdgeId e : st.g->out_edges(at)) {
        VertexId next = st.g->edge(e).to;
        if (st.visited.count(next)) continue;
        st.visited.insert(next);
        st.path.push_back(e);
        dfs(st, next);
        st.path.pop_back();
        st.visited.erase(next);
    }
}

}  // namespace

std::vector<std::vector<EdgeId>> enumerate_paths(const RoadGraph& g, VertexId s, VertexId d,
                                                 int max_edges) {
    if (max_edges < 1) throw std::invalid_argument("max_edges must be >= 1");
    if (!g.has_vertex(s) || !g.has_vertex(d))
        throw std::invalid_argument("endpoints not in graph");
    std::vector<std::vector<EdgeId>> out;
    if (s == d) {
        out.push_back({});
        return out;
    }
    EnumState st;
    st.g = &g;
    st.dest = d;
    st.max_edges = max_edges;
    st.visited.insert(s);
    st.out = &out;
    dfs(st, s);
    return out;
}

OracleResult exact_best(const PaceGraph& g, const Query& q, int max_edges) {
    OracleResult result;
    auto paths = enumerate_paths(g.base(), q.source, q.dest, max_edges);
    result.table.reserve(paths.size());
    for (auto& path : paths) {
        OracleEntry entry;
        entry.dist = path.empty() ? CostDistribution::point(0) : path_distribution(path, g);
        entry.probability = prob_within(entry.dist, q.budget);
        entry.path = std::move(path);
        result.table.push_back(std::move(entry));
    }
    result.best_index = 0;
    result.best_probability = 0.0;
    for (std::size_t i = 0; i < result.table.size(); ++i) {
        if (result.table[i].probability > result.best_probability) {
            result.best_probability = result.table[i].probability;
            result.best_index = i;
        }
    }
    return result;
}

}  // namespace pace
