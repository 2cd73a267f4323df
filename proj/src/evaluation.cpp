#include "pace/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <queue>
#include <stdexcept>

namespace pace {

namespace {

double student_t95(int df) {
    static const double table[] = {0.0,   12.706, 4.303, 3.182, 2.776, 2.571,
                                   2.447, 2.365,  2.306, 2.262, 2.228};
    if (df <= 0) return 0.0;
    if (df <= 10) return table[df];
    return 1.96;
}

CostDistribution edge_convolution(std::span<const EdgeId> path, const RoadGraph& g) {
    CostDistribution out;
    for (EdgeId e : path) {
        const CostDistribution& w = g.weight(e);
        out = out.empty() ? w : convolve(out, w);
    }
    return out;
}

}  // namespace

KLReport eval_kl(const RoadGraph& graph, const std::vector<Trajectory>& trajectories,
                 int tau, int folds) {
    if (folds < 1) throw std::invalid_argument("folds must be >= 1");
    if (trajectories.empty()) throw std::invalid_argument("no trajectories");

    KLReport report;
    report.tau = tau;
    report.folds = folds;

    for (int fold = 0; fold < folds; ++fold) {
        std::vector<Trajectory> train, test;
        if (folds == 1) {
            train = trajectories;
            test = trajectories;
        } else {
            for (std::size_t i = 0; i < trajectories.size(); ++i) {
                if (static_cast<int>(i % static_cast<std::size_t>(folds)) == fold)
                    test.push_back(trajectories[i]);
                else
                    train.push_back(trajectories[i]);
            }
        }
        if (test.empty() || train.empty())
            throw std::invalid_argument("fold with no trajectories");

        PaceGraph pace = extract_tpaths(train, graph, tau);
        // The convolution baseline uses the same trained edge weights.
        const RoadGraph& trained = pace.base();

        // Ground truth per distinct testing path.
        std::map<std::vector<EdgeId>, std::map<Cost, double>> truth;
        for (const Trajectory& t : test) {
            std::vector<EdgeId> path;
            Cost total = 0;
            for (const auto& step : t.steps) {
                path.push_back(step.edge);
                total += step.cost;
            }
            truth[path][total] += 1.0;
        }

        KLFoldResult fr;
        fr.fold = fold;
        double sum_pace = 0.0, sum_edge = 0.0;
        for (const auto& [path, hist] : truth) {
            bool covered = true;
            for (EdgeId e : path)
                if (!trained.has_edge(e)) covered = false;
            if (!covered) {
                ++fr.uncovered;
                continue;
            }
            CostDistribution ground = CostDistribution::from_weights(hist);
            try {
                CostDistribution est_pace = path_distribution(path, pace);
                CostDistribution est_edge = edge_convolution(path, trained);
                sum_pace += kl_divergence(ground, est_pace);
                sum_edge += kl_divergence(ground, est_edge);
                ++fr.paths;
            } catch (const std::exception&) {
                ++fr.failures;
            }
        }
        if (fr.paths > 0) {
            fr.mean_kl_pace = sum_pace / fr.paths;
            fr.mean_kl_edge = sum_edge / fr.paths;
        }
        report.fold_results.push_back(fr);
    }

    double sp = 0.0, se = 0.0;
    for (const auto& fr : report.fold_results) {
        sp += fr.mean_kl_pace;
        se += fr.mean_kl_edge;
    }
    const auto k = static_cast<double>(report.fold_results.size());
    report.mean_pace = sp / k;
    report.mean_edge = se / k;
    if (report.fold_results.size() > 1) {
        double var = 0.0;
        for (const auto& fr : report.fold_results) {
            double d = fr.mean_kl_pace - report.mean_pace;
            var += d * d;
        }
        var /= (k - 1.0);
        report.ci95_pace =
            student_t95(static_cast<int>(k) - 1) * std::sqrt(var / k);
    }
    return report;
}

std::string Variant::name() const {
    switch (kind) {
        case VariantKind::TNone: return "T-None";
        case VariantKind::TBE: return "T-B-E";
        case VariantKind::TBP: return "T-B-P";
        case VariantKind::TBS: return "T-BS-" + std::to_string(delta);
        case VariantKind::VNone: return "V-None";
        case VariantKind::VBP: return "V-B-P";
        case VariantKind::VBS: return "V-BS-" + std::to_string(delta);
    }
    return "?";
}

Variant Variant::parse(const std::string& text) {
    Variant v;
    auto bs = [&](const std::string& prefix, VariantKind kind) {
        if (text.rfind(prefix, 0) == 0) {
            v.kind = kind;
            v.delta = std::stoll(text.substr(prefix.size()));
            return true;
        }
        return false;
    };
    if (text == "T-None") v.kind = VariantKind::TNone;
    else if (text == "T-B-E") v.kind = VariantKind::TBE;
    else if (text == "T-B-P") v.kind = VariantKind::TBP;
    else if (text == "V-None") v.kind = VariantKind::VNone;
    else if (text == "V-B-P") v.kind = VariantKind::VBP;
    else if (bs("T-BS-", VariantKind::TBS) || bs("V-BS-", VariantKind::VBS)) {}
    else throw std::invalid_argument("unknown variant: " + text);
    return v;
}

namespace {

std::map<VertexId, int> hop_distances(const RoadGraph& g, VertexId from) {
    std::map<VertexId, int> dist;
    dist[from] = 0;
    std::queue<VertexId> q;
    q.push(from);
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (EdgeId e : g.out_edges(v)) {
            VertexId to = g.edge(e).to;
            if (!dist.count(to)) {
                dist[to] = dist[v] + 1;
                q.push(to);
            }
        }
    }
    return dist;
}

// Least expected travel time via Dijkstra over expected edge costs.
double least_expected_time(const RoadGraph& g, VertexId s, VertexId d) {
    std::map<VertexId, double> dist;
    dist[s] = 0.0;
    std::priority_queue<std::pair<double, VertexId>,
                        std::vector<std::pair<double, VertexId>>, std::greater<>> q;
    q.emplace(0.0, s);
    while (!q.empty()) {
        auto [cost, v] = q.top();
        q.pop();
        if (cost > dist.at(v)) continue;
        if (v == d) return cost;
        for (EdgeId e : g.out_edges(v)) {
            VertexId to = g.edge(e).to;
            double nd = cost + g.weight(e).mean();
            auto it = dist.find(to);
            if (it == dist.end() || nd < it->second) {
                dist[to] = nd;
                q.emplace(nd, to);
            }
        }
    }
    return -1.0;
}

struct HeuristicSet {
    MinCostMap full;        // edges + T-paths
    MinCostMap edges_only;  // T-B-E variant
    std::map<Cost, HeuristicTable> tables;
};

}  // namespace

int env_workers() {
    const char* env = std::getenv("PACE_WORKERS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

BenchReport bench(const RoadGraph& graph, const std::vector<Trajectory>& trajectories,
                  int tau, const WorkloadSpec& workload, const std::vector<Variant>& variants,
                  std::uint64_t seed, int workers) {
    if (variants.empty()) throw std::invalid_argument("no variants");

    PaceGraph pace = extract_tpaths(trajectories, graph, tau);
    UpdatedPaceGraph tgraph = build_vpaths(pace, VPathBuildOptions{false, std::nullopt});
    UpdatedPaceGraph vgraph = build_vpaths(pace, VPathBuildOptions{true, std::nullopt});
    ReversedGraph rev_full = reverse(pace);
    ReversedGraph rev_edges = reverse_edges_only(pace);

    // Workload: source-destination pairs per hop bucket, budgets from the
    // least expected travel time.
    std::mt19937_64 rng(seed);
    auto vertices = graph.vertices();
    struct Pair {
        VertexId s, d;
        int bucket;
        double expected;
    };
    std::vector<Pair> pairs;
    for (std::size_t b = 0; b < workload.hop_buckets.size(); ++b) {
        auto [lo, hi] = workload.hop_buckets[b];
        int found = 0, attempts = 0;
        while (found < workload.pairs_per_bucket && attempts++ < 4000) {
            VertexId s = vertices[static_cast<std::size_t>(
                rand_int(rng, 0, static_cast<std::int64_t>(vertices.size()) - 1))];
            auto hops = hop_distances(graph, s);
            std::vector<VertexId> in_bucket;
            for (const auto& [v, h] : hops)
                if (h >= lo && h <= hi && v != s) in_bucket.push_back(v);
            if (in_bucket.empty()) continue;
            VertexId d = in_bucket[static_cast<std::size_t>(
                rand_int(rng, 0, static_cast<std::int64_t>(in_bucket.size()) - 1))];
            double expected = least_expected_time(pace.base(), s, d);
            if (expected <= 0.0) continue;
            pairs.push_back(Pair{s, d, static_cast<int>(b), expected});
            ++found;
        }
    }

    // Heuristics are precomputed per destination, outside the timed section.
    std::map<VertexId, HeuristicSet> heuristics;
    std::set<Cost> deltas;
    for (const Variant& v : variants)
        if (v.kind == VariantKind::TBS || v.kind == VariantKind::VBS) deltas.insert(v.delta);
    for (const Pair& p : pairs) {
        if (heuristics.count(p.d)) continue;
        HeuristicSet hs;
        hs.full = shortest_path_tree(rev_full, p.d);
        hs.edges_only = shortest_path_tree(rev_edges, p.d);
        for (Cost delta : deltas)
            hs.tables.emplace(delta, build_table(vgraph, p.d, delta, std::nullopt, hs.full));
        heuristics.emplace(p.d, std::move(hs));
    }

    struct Task {
        Query q;
        int bucket;
        double multiplier;
    };
    std::vector<Task> tasks;
    for (const Pair& p : pairs)
        for (double mult : workload.budget_multipliers) {
            Query q;
            q.source = p.s;
            q.dest = p.d;
            q.depart_time = 0;
            q.budget = Budget(static_cast<Cost>(std::llround(mult * p.expected)));
            tasks.push_back(Task{q, p.bucket, mult});
        }

    auto run_variant = [&](const Variant& v, const Query& q) -> RouteResult {
        const HeuristicSet& hs = heuristics.at(q.dest);
        switch (v.kind) {
            case VariantKind::TNone:
                return route_naive(pace, q);
            case VariantKind::TBE:
                return route(tgraph, q, binary_heuristic(hs.edges_only), hs.edges_only);
            case VariantKind::TBP:
                return route(tgraph, q, binary_heuristic(hs.full), hs.full);
            case VariantKind::TBS:
                return route(tgraph, q, table_heuristic(hs.tables.at(v.delta)), hs.full);
            case VariantKind::VNone:
                return route(vgraph, q, constant_one_heuristic(), hs.full);
            case VariantKind::VBP:
                return route(vgraph, q, binary_heuristic(hs.full), hs.full);
            case VariantKind::VBS:
                return route(vgraph, q, table_heuristic(hs.tables.at(v.delta)), hs.full);
        }
        throw std::logic_error("unreachable");
    };

    auto run_task = [&](const Task& task) {
        std::vector<BenchQueryResult> rows;
        for (const Variant& v : variants) {
            BenchQueryResult row;
            row.query = task.q;
            row.bucket = task.bucket;
            row.multiplier = task.multiplier;
            row.variant = v.name();
            auto start = std::chrono::steady_clock::now();
            RouteResult rr = run_variant(v, task.q);
            auto stop = std::chrono::steady_clock::now();
            row.probability = rr.probability;
            row.explored = rr.explored;
            row.micros =
                std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
            rows.push_back(std::move(row));
        }
        return rows;
    };

    BenchReport report;
    std::vector<std::vector<BenchQueryResult>> all(tasks.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) all[i] = run_task(tasks[i]);
    } else {
        std::vector<std::future<std::vector<BenchQueryResult>>> futures(tasks.size());
        std::size_t next = 0;
        while (next < tasks.size()) {
            std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(workers),
                                                      tasks.size() - next);
            for (std::size_t k = 0; k < batch; ++k)
                futures[next + k] = std::async(std::launch::async, run_task,
                                               std::cref(tasks[next + k]));
            for (std::size_t k = 0; k < batch; ++k) all[next + k] = futures[next + k].get();
            next += batch;
        }
    }

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        double p0 = all[i].front().probability;
        for (const auto& row : all[i]) {
            if (std::abs(row.probability - p0) > 1e-9 && report.agreement) {
                report.agreement = false;
                report.failure = "variant disagreement on query " +
                                 std::to_string(tasks[i].q.source) + "->" +
                                 std::to_string(tasks[i].q.dest) + " budget " +
                                 std::to_string(tasks[i].q.budget.value) + ": " +
                                 all[i].front().variant + "=" + std::to_string(p0) + " vs " +
                                 row.variant + "=" + std::to_string(row.probability);
            }
            report.rows.push_back(row);
        }
    }
    std::map<std::tuple<std::string, int, double>, BenchCell> cells;
    for (const auto& row : report.rows) {
        BenchCell& cell = cells[{row.variant, row.bucket, row.multiplier}];
        cell.variant = row.variant;
        cell.bucket = row.bucket;
        cell.multiplier = row.multiplier;
        cell.queries += 1;
        cell.mean_micros += row.micros;
        cell.mean_explored += static_cast<double>(row.explored);
        if (row.probability == 0.0) ++cell.zero_probability;
    }
    for (auto& [key, cell] : cells) {
        cell.mean_micros /= cell.queries;
        cell.mean_explored /= cell.queries;
        report.cells.push_back(cell);
    }
    return report;
}

}  // namespace pace
