#include "pace/router.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace pace {

double max_prob(const CostDistribution& dist, VertexId frontier, Budget budget,
                const HeuristicFn& u) {
    double total = 0.0;
    for (const auto& [t, p] : dist.support()) {
        if (t > budget.value) break;
        total += p * u(frontier, budget.value - t);
    }
    return total;
}

namespace {

void validate_query(const RoadGraph& g, const Query& q) {
    if (!g.has_vertex(q.source) || !g.has_vertex(q.dest))
        throw std::invalid_argument("query endpoints not in graph");
}

// Vertices a unit passes through after its start: interior vertices and the
// final one.
void unit_vertices_after_start(const RoadGraph& g, std::span<const EdgeId> edges,
                               std::vector<VertexId>& out) {
    out.clear();
    for (EdgeId e : edges) out.push_back(g.edge(e).to);
}

}  // namespace

RouteResult route_naive(const PaceGraph& g, const Query& q) {
    validate_query(g.base(), q);
    if (q.source == q.dest) return RouteResult{{}, 1.0, 0};

    struct Candidate {
        std::vector<EdgeId> path;
        std::set<VertexId> vertices;
        CostDistribution dist;
        VertexId frontier;
        double expected;
        std::uint64_t seq;
    };
    std::vector<Candidate> pool;
    auto cmp = [&pool](std::size_t a, std::size_t b) {
        const Candidate& ca = pool[a];
        const Candidate& cb = pool[b];
        if (ca.expected != cb.expected) return ca.expected > cb.expected;
        if (ca.path.size() != cb.path.size()) return ca.path.size() > cb.path.size();
        return ca.seq > cb.seq;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> queue(cmp);
    std::set<std::vector<EdgeId>> seen;
    std::uint64_t pushes = 0;

    RouteResult best;
    best.probability = 0.0;

    std::vector<VertexId> scratch;
    auto try_push = [&](const std::vector<EdgeId>* base_path,
                        const std::set<VertexId>* base_vertices,
                        std::span<const EdgeId> unit_edges, VertexId unit_end) {
        std::vector<EdgeId> path;
        if (base_path) path = *base_path;
        path.insert(path.end(), unit_edges.begin(), unit_edges.end());
        if (seen.count(path)) return;

        unit_vertices_after_start(g.base(), unit_edges, scratch);
        std::set<VertexId> vertices = base_vertices ? *base_vertices
                                                    : std::set<VertexId>{q.source};
        for (VertexId v : scratch) {
            if (vertices.count(v)) return;  // cycle
            vertices.insert(v);
        }

        CostDistribution dist = path_distribution(path, g);
        if (dist.min_cost() > q.budget.value) return;  // infeasible

        Candidate c;
        c.path = std::move(path);
        c.vertices = std::move(vertices);
        c.dist = std::move(dist);
        c.frontier = unit_end;
        c.expected = c.dist.mean();
        c.seq = pushes;
        seen.insert(c.path);
        pool.push_back(std::move(c));
        queue.push(pool.size() - 1);
        ++pushes;
    };

    auto expand = [&](const Candidate* from, VertexId at) {
        for (EdgeId e : g.base().out_edges(at)) {
            const Edge& edge = g.base().edge(e);
            try_push(from ? &from->path : nullptr, from ? &from->vertices : nullptr,
                     std::span<const EdgeId>(&e, 1), edge.to);
        }
        for (int idx : g.tpaths_from_vertex(at)) {
            const TPath& t = g.tpaths()[idx];
            VertexId end = g.base().edge(t.edges.back()).to;
            try_push(from ? &from->path : nullptr, from ? &from->vertices : nullptr,
                     t.edges, end);
        }
    };

    expand(nullptr, q.source);
    while (!queue.empty()) {
        std::size_t idx = queue.top();
        queue.pop();
        // Copy: pool may reallocate while expanding.
        Candidate cand = pool[idx];
        if (cand.frontier == q.dest) {
            double p = prob_within(cand.dist, q.budget);
            if (p > best.probability) {
                best.probability = p;
                best.path = cand.path;
            }
            continue;  // complete paths are not extended (frontier visited)
        }
        expand(&cand, cand.frontier);
    }
    best.explored = pushes;
    return best;
}

PruneOutcome dominance_prune(const CostDistribution& new_dist,
                             std::span<const CostDistribution* const> queued) {
    PruneOutcome out;
    for (std::size_t i = 0; i < queued.size(); ++i) {
        const CostDistribution& q = *queued[i];
        if (q == new_dist || dominates(q, new_dist)) {
            out.keep_new = false;
            out.evict.clear();
            return out;
        }
        if (dominates(new_dist, q)) out.evict.push_back(i);
    }
    return out;
}

RouteResult route(const UpdatedPaceGraph& g, const Query& q, const HeuristicFn& u,
                  const MinCostMap& m, const RouteOptions& opts) {
    validate_query(g.base(), q);
    if (q.source == q.dest) return RouteResult{{}, 1.0, 0};

    struct Candidate {
        std::vector<EdgeId> path;
        std::set<VertexId> vertices;
        CostDistribution dist;
        VertexId frontier;
        double priority;
        std::uint64_t seq;
        bool alive = true;
    };
    std::vector<Candidate> pool;
    auto cmp = [&pool](std::size_t a, std::size_t b) {
        const Candidate& ca = pool[a];
        const Candidate& cb = pool[b];
        if (ca.priority != cb.priority) return ca.priority < cb.priority;
        if (ca.path.size() != cb.path.size()) return ca.path.size() < cb.path.size();
        return ca.seq > cb.seq;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> queue(cmp);
    std::map<VertexId, std::vector<std::size_t>> at_frontier;
    std::set<std::vector<EdgeId>> seen;
    std::uint64_t pushes = 0;

    // True when the greedy cover of `path` keeps the last `tail` edges
    // independent of the prefix (no covering T-path spans the boundary).
    auto boundary_independent = [&](std::span<const EdgeId> path, std::size_t tail) {
        const std::size_t boundary = path.size() - tail;
        if (boundary == 0) return true;
        for (const CoverUnit& cu : coarsest_cover(path, g.pace()))
            if (cu.begin < boundary && cu.end >= boundary) return false;
        return true;
    };

    std::vector<VertexId> scratch;
    auto try_push = [&](const Candidate* from, const Hop& hop) {
        unit_vertices_after_start(g.base(), g.hop_edges(hop), scratch);
        const std::set<VertexId>* base_vertices = from ? &from->vertices : nullptr;
        for (VertexId v : scratch) {
            if (base_vertices ? base_vertices->count(v) > 0 : v == q.source)
                return;  // cycle guard, vertex level
        }
        // Budget feasibility cut on unit minima and the least cost onward.
        const CostDistribution& unit_total = g.hop_total(hop);
        Cost base_min = from ? from->dist.min_cost() : 0;
        if (base_min + unit_total.min_cost() + m.get(hop.to) > q.budget.value) return;

        std::vector<EdgeId> path;
        if (from) path = from->path;
        auto unit_edges = g.hop_edges(hop);
        path.insert(path.end(), unit_edges.begin(), unit_edges.end());
        if (seen.count(path)) return;

        CostDistribution dist;
        if (!from) {
            dist = unit_total;
        } else if (boundary_independent(path, unit_edges.size())) {
            dist = convolve(from->dist, unit_total);
        } else {
            dist = path_distribution(path, g.pace());
        }
        if (dist.min_cost() + m.get(hop.to) > q.budget.value) return;

        Candidate c;
        c.path = std::move(path);
        c.vertices = base_vertices ? *base_vertices : std::set<VertexId>{q.source};
        for (VertexId v : scratch) c.vertices.insert(v);
        c.dist = std::move(dist);
        c.frontier = hop.to;
        c.priority = max_prob(c.dist, c.frontier, q.budget, u);
        c.seq = pushes;

        if (opts.use_dominance && !g.pace().tpath_through(c.frontier)) {
            // Dominance is only sound where no T-path crosses the frontier
            // (completions then compose independently for every candidate)
            // and where the survivor's vertex set does not block completions
            // available to the loser.
            auto& bucket = at_frontier[c.frontier];
            for (std::size_t idx : bucket) {
                Candidate& other = pool[idx];
                if (!other.alive) continue;
                bool other_subset = std::includes(c.vertices.begin(), c.vertices.end(),
                                                  other.vertices.begin(),
                                                  other.vertices.end());
                if (other_subset &&
                    (other.dist == c.dist || dominates(other.dist, c.dist)))
                    return;  // new candidate pruned
            }
            for (std::size_t idx : bucket) {
                Candidate& other = pool[idx];
                if (!other.alive) continue;
                bool new_subset = std::includes(other.vertices.begin(),
                                                other.vertices.end(),
                                                c.vertices.begin(), c.vertices.end());
                if (new_subset && dominates(c.dist, other.dist)) other.alive = false;
            }
        }

        seen.insert(c.path);
        if (opts.trace) {
            std::string line = "push f=" + std::to_string(c.frontier) +
                               " prio=" + std::to_string(c.priority) + " edges=";
            for (EdgeId e : c.path) line += std::to_string(e) + ",";
            opts.trace->push_back(line);
        }
        pool.push_back(std::move(c));
        at_frontier[pool.back().frontier].push_back(pool.size() - 1);
        queue.push(pool.size() - 1);
        ++pushes;
    };

    for (const Hop& hop : g.out_hops(q.source)) try_push(nullptr, hop);

    while (!queue.empty()) {
        std::size_t idx = queue.top();
        queue.pop();
        if (!pool[idx].alive) continue;
        Candidate cand = pool[idx];  // copy; pool may grow during expansion
        if (opts.trace) {
            std::string line = "pop  f=" + std::to_string(cand.frontier) +
                               " prio=" + std::to_string(cand.priority) + " edges=";
            for (EdgeId e : cand.path) line += std::to_string(e) + ",";
            opts.trace->push_back(line);
        }
        if (cand.frontier == q.dest)
            return RouteResult{cand.path, prob_within(cand.dist, q.budget), pushes};
        for (const Hop& hop : g.out_hops(cand.frontier)) try_push(&cand, hop);
    }
    return RouteResult{{}, 0.0, pushes};
}

void PeriodSelector::add_window(const std::string& tag, long begin, long end) {
    if (end <= begin) throw std::invalid_argument("empty period window");
    windows_.push_back(Window{tag, begin, end});
}

const std::string& PeriodSelector::select(long t) const {
    for (const Window& w : windows_)
        if (t >= w.begin && t < w.end) return w.tag;
    throw std::runtime_error("no graph for period");
}

}  // namespace pace
