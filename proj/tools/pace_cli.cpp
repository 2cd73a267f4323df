// Command-line front end: synthetic data generation, model building,
// heuristic precomputation, query answering, KL evaluation and benchmarks.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pace/evaluation.hpp"
#include "pace/io.hpp"

using namespace pace;

namespace {

std::string fmt_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", p);
    return buf;
}

SyntheticSpec parse_spec_file(const std::string& path) {
    SyntheticSpec spec;
    if (path.empty()) return spec;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad spec line: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "vertex_count") spec.vertex_count = std::stoi(value);
        else if (key == "avg_out_degree") spec.avg_out_degree = std::stod(value);
        else if (key == "corridor_count") spec.corridor_count = std::stoi(value);
        else if (key == "corridor_min_edges") spec.corridor_min_edges = std::stoi(value);
        else if (key == "corridor_max_edges") spec.corridor_max_edges = std::stoi(value);
        else if (key == "trunk_edges") spec.trunk_edges = std::stoi(value);
        else if (key == "dependency_strength") spec.dependency_strength = std::stod(value);
        else if (key == "trajectory_count") spec.trajectory_count = std::stoi(value);
        else if (key == "cost_levels") spec.cost_levels = std::stoi(value);
        else if (key == "cost_min") spec.cost_min = std::stoll(value);
        else if (key == "cost_max") spec.cost_max = std::stoll(value);
        else if (key == "noise_fraction") spec.noise_fraction = std::stod(value);
        else if (key == "period_tag") spec.period_tag = value;
        else throw std::runtime_error("unknown spec key: " + key);
    }
    return spec;
}

struct ModelPaths {
    std::string graph, units, joints;
};

ModelPaths model_paths(const std::string& prefix, const std::string& tag) {
    return ModelPaths{prefix + "." + tag + ".graph", prefix + "." + tag + ".units",
                      prefix + "." + tag + ".joints"};
}

int cmd_gen(const std::string& spec_path, std::uint64_t seed, const std::string& graph_out,
            const std::string& traj_out) {
    SyntheticSpec spec = parse_spec_file(spec_path);
    auto [graph, trajectories] = generate_synthetic(spec, seed);
    io::write_file(graph_out, io::serialize_graph(graph));
    io::write_file(traj_out, io::serialize_trajectories(trajectories));
    std::cout << "generated\t" << graph.vertex_count() << "\tvertices\t"
              << graph.edges().size() << "\tedges\t" << trajectories.size()
              << "\ttrajectories\n";
    return 0;
}

int cmd_extract(const std::string& graph_path, const std::string& traj_path, int tau,
                const std::string& period, const std::string& out_prefix) {
    RoadGraph graph = io::load_graph_file(graph_path);
    auto trajectories = io::load_trajectory_file(traj_path);

    std::vector<PaceGraph> graphs;
    if (!period.empty()) {
        graphs.push_back(extract_tpaths(trajectories, graph, tau, period));
    } else {
        graphs = extract_all_periods(trajectories, graph, tau);
    }
    for (const PaceGraph& g : graphs) {
        UpdatedPaceGraph tonly = build_vpaths(g, VPathBuildOptions{false, std::nullopt});
        auto paths = model_paths(out_prefix, g.period_tag());
        io::save_model(tonly, paths.graph, paths.units, paths.joints);
        std::cout << "extracted\t" << g.period_tag() << "\t" << g.tpaths().size()
                  << "\ttpaths\n";
    }
    return 0;
}

int cmd_build_vpaths(const ModelPaths& in, const std::string& period, int tau, int max_len,
                     const std::string& out_units) {
    UpdatedPaceGraph model = io::load_model(in.graph, in.units, in.joints, period, tau);
    VPathBuildOptions opts;
    opts.include_vpaths = true;
    if (max_len > 0) opts.max_edges = max_len;
    UpdatedPaceGraph built = build_vpaths(model.pace(), opts);
    io::write_file(out_units, io::serialize_units(built));
    std::cout << "vpaths\t" << built.vpath_count() << "\tunits\t" << built.units().size()
              << "\n";
    return 0;
}

int cmd_heuristics(const ModelPaths& in, const std::string& period, int tau,
                   const std::string& kind, Cost delta, VertexId dest, bool all,
                   const std::string& out) {
    UpdatedPaceGraph model = io::load_model(in.graph, in.units, in.joints, period, tau);
    ReversedGraph rev = reverse(model.pace());

    std::vector<VertexId> dests;
    if (all)
        dests = model.base().vertices();
    else
        dests.push_back(dest);

    auto emit = [&](VertexId d, const std::string& path) {
        MinCostMap m = shortest_path_tree(rev, d);
        if (kind == "binary") {
            io::write_file(path, io::serialize_min_cost(m));
        } else if (kind == "table") {
            HeuristicTable t = build_table(model, d, delta, std::nullopt, m);
            io::write_file(path, io::serialize_table(t));
        } else {
            throw std::runtime_error("unknown heuristic kind: " + kind);
        }
    };

    if (all) {
        int workers = env_workers();
        std::vector<std::future<void>> futures;
        std::size_t next = 0;
        while (next < dests.size()) {
            std::size_t batch =
                std::min<std::size_t>(static_cast<std::size_t>(workers), dests.size() - next);
            futures.clear();
            for (std::size_t k = 0; k < batch; ++k) {
                VertexId d = dests[next + k];
                futures.push_back(std::async(std::launch::async, [&, d] {
                    emit(d, out + "." + std::to_string(d) + ".txt");
                }));
            }
            for (auto& f : futures) f.get();
            next += batch;
        }
        std::cout << "heuristics\t" << dests.size() << "\tdestinations\n";
    } else {
        emit(dest, out);
        std::cout << "heuristics\t1\tdestinations\n";
    }
    return 0;
}

struct PeriodModels {
    PeriodSelector selector;
    std::map<std::string, UpdatedPaceGraph> graphs;
    bool single = false;
    std::string single_tag;

    const UpdatedPaceGraph& select(long t) const {
        if (single) return graphs.at(single_tag);
        return graphs.at(selector.select(t));
    }
};

PeriodModels load_period_models(const std::string& graph_path, const std::string& units_path,
                                const std::string& joints_path,
                                const std::string& model_prefix,
                                const std::vector<std::string>& windows, int tau) {
    PeriodModels pm;
    if (!model_prefix.empty() && !windows.empty()) {
        for (const std::string& w : windows) {
            std::stringstream ss(w);
            std::string tag, b, e;
            if (!std::getline(ss, tag, ':') || !std::getline(ss, b, ':') ||
                !std::getline(ss, e, ':'))
                throw std::runtime_error("bad window spec: " + w);
            pm.selector.add_window(tag, std::stol(b), std::stol(e));
            if (!pm.graphs.count(tag)) {
                auto paths = model_paths(model_prefix, tag);
                pm.graphs.emplace(tag,
                                  io::load_model(paths.graph, paths.units, paths.joints, tag, tau));
            }
        }
    } else if (!graph_path.empty()) {
        pm.single = true;
        pm.single_tag = "all";
        pm.graphs.emplace("all",
                          io::load_model(graph_path, units_path, joints_path, "all", tau));
    } else {
        throw std::runtime_error("route needs either --graph/--units/--joints or "
                                 "--model-prefix with --window");
    }
    return pm;
}

int cmd_route(const PeriodModels& pm, const std::string& query_path,
              const std::string& heuristic, Cost delta, bool no_dominance) {
    std::ifstream qin(query_path);
    if (!qin) throw std::runtime_error("cannot read " + query_path);
    auto queries = io::parse_queries(qin);

    // Per-destination heuristic artifacts, lazily built and cached.
    std::map<std::pair<const UpdatedPaceGraph*, VertexId>, MinCostMap> mincost;
    std::map<std::pair<const UpdatedPaceGraph*, VertexId>, HeuristicTable> tables;
    std::map<const UpdatedPaceGraph*, ReversedGraph> reversed;

    RouteOptions opts;
    opts.use_dominance = !no_dominance;

    for (const Query& q : queries) {
        const UpdatedPaceGraph& g = pm.select(q.depart_time);
        if (!reversed.count(&g)) reversed.emplace(&g, reverse(g.pace()));
        auto key = std::make_pair(&g, q.dest);
        if (!mincost.count(key))
            mincost.emplace(key, shortest_path_tree(reversed.at(&g), q.dest));
        const MinCostMap& m = mincost.at(key);

        HeuristicFn u;
        if (heuristic == "none") {
            u = constant_one_heuristic();
        } else if (heuristic == "binary") {
            u = binary_heuristic(m);
        } else if (heuristic == "table") {
            if (!tables.count(key))
                tables.emplace(key, build_table(g, q.dest, delta, std::nullopt, m));
            u = table_heuristic(tables.at(key));
        } else {
            throw std::runtime_error("unknown heuristic: " + heuristic);
        }

        auto start = std::chrono::steady_clock::now();
        RouteResult r = route(g, q, u, m, opts);
        auto stop = std::chrono::steady_clock::now();
        double us =
            std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();

        std::string path_text = "-";
        if (!r.path.empty()) {
            path_text.clear();
            for (std::size_t i = 0; i < r.path.size(); ++i) {
                if (i) path_text += ',';
                path_text += std::to_string(r.path[i]);
            }
        }
        std::cout << path_text << "\t" << fmt_prob(r.probability) << "\t" << r.explored
                  << "\t" << us << "\n";
    }
    return 0;
}

int cmd_oracle(const ModelPaths& in, const std::string& period, int tau,
               const std::string& query_path, int max_edges) {
    UpdatedPaceGraph model = io::load_model(in.graph, in.units, in.joints, period, tau);
    std::ifstream qin(query_path);
    if (!qin) throw std::runtime_error("cannot read " + query_path);
    auto queries = io::parse_queries(qin);
    for (const Query& q : queries) {
        auto r = exact_best(model.pace(), q, max_edges);
        std::cout << "# query\t" << q.source << "\t" << q.dest << "\t" << q.budget.value
                  << "\tbest\t" << fmt_prob(r.best_probability) << "\n";
        for (const auto& e : r.table) {
            std::string path_text = e.path.empty() ? "-" : "";
            for (std::size_t i = 0; i < e.path.size(); ++i) {
                if (i) path_text += ',';
                path_text += std::to_string(e.path[i]);
            }
            std::cout << path_text << "\t" << fmt_prob(e.probability) << "\n";
        }
    }
    return 0;
}

int cmd_eval_kl(const std::string& graph_path, const std::string& traj_path, int tau,
                int folds) {
    RoadGraph graph = io::load_graph_file(graph_path);
    auto trajectories = io::load_trajectory_file(traj_path);
    auto report = eval_kl(graph, trajectories, tau, folds);
    std::cout << "fold\tmean_kl_pace\tmean_kl_edge\tpaths\tuncovered\tfailures\n";
    for (const auto& fr : report.fold_results)
        std::cout << fr.fold << "\t" << fr.mean_kl_pace << "\t" << fr.mean_kl_edge << "\t"
                  << fr.paths << "\t" << fr.uncovered << "\t" << fr.failures << "\n";
    std::cout << "mean\t" << report.mean_pace << "\t" << report.mean_edge << "\tci95\t"
              << report.ci95_pace << "\n";
    return 0;
}

int cmd_bench(const std::string& graph_path, const std::string& traj_path, int tau,
              const std::string& variants_text, const std::string& buckets_text,
              const std::string& multipliers_text, int pairs_per_bucket, std::uint64_t seed,
              const std::string& summary_out) {
    RoadGraph graph = io::load_graph_file(graph_path);
    auto trajectories = io::load_trajectory_file(traj_path);

    std::vector<Variant> variants;
    {
        std::stringstream ss(variants_text);
        std::string item;
        while (std::getline(ss, item, ',')) variants.push_back(Variant::parse(item));
    }
    WorkloadSpec workload;
    workload.pairs_per_bucket = pairs_per_bucket;
    if (!buckets_text.empty()) {
        workload.hop_buckets.clear();
        std::stringstream ss(buckets_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto dash = item.find('-');
            if (dash == std::string::npos) throw std::runtime_error("bad bucket: " + item);
            workload.hop_buckets.emplace_back(std::stoi(item.substr(0, dash)),
                                              std::stoi(item.substr(dash + 1)));
        }
    }
    if (!multipliers_text.empty()) {
        workload.budget_multipliers.clear();
        std::stringstream ss(multipliers_text);
        std::string item;
        while (std::getline(ss, item, ',')) workload.budget_multipliers.push_back(std::stod(item));
    }

    auto report = bench(graph, trajectories, tau, workload, variants, seed, env_workers());

    std::cout << "variant\tbucket\tmultiplier\tqueries\tmean_us\tmean_explored\tzero_prob\n";
    for (const auto& cell : report.cells)
        std::cout << cell.variant << "\t" << cell.bucket << "\t" << cell.multiplier << "\t"
                  << cell.queries << "\t" << cell.mean_micros << "\t" << cell.mean_explored
                  << "\t" << cell.zero_probability << "\n";

    if (!summary_out.empty()) {
        nlohmann::json j;
        j["agreement"] = report.agreement;
        j["failure"] = report.failure;
        j["cells"] = nlohmann::json::array();
        for (const auto& cell : report.cells) {
            j["cells"].push_back({{"variant", cell.variant},
                                  {"bucket", cell.bucket},
                                  {"multiplier", cell.multiplier},
                                  {"queries", cell.queries},
                                  {"mean_us", cell.mean_micros},
                                  {"mean_explored", cell.mean_explored},
                                  {"zero_prob", cell.zero_probability}});
        }
        io::write_file(summary_out, j.dump(2) + "\n");
    }

    if (!report.agreement) {
        std::cerr << "AGREEMENT FAILURE: " << report.failure << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path-centric stochastic routing engine"};
    app.require_subcommand(1);

    // gen
    std::string spec_path, graph_out = "synthetic.graph", traj_out = "synthetic.traj";
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a synthetic network and trajectories");
    gen->add_option("--spec", spec_path, "key=value spec file");
    gen->add_option("--seed", seed, "random seed")->required();
    gen->add_option("--graph-out", graph_out, "output graph file");
    gen->add_option("--trajectories-out", traj_out, "output trajectory file");

    // extract-tpaths
    std::string graph_path, traj_path, period, out_prefix = "model";
    int tau = 50;
    auto* extract = app.add_subcommand("extract-tpaths", "mine T-paths from trajectories");
    extract->add_option("--graph", graph_path)->required();
    extract->add_option("--trajectories", traj_path)->required();
    extract->add_option("--tau", tau, "support threshold")->required();
    extract->add_option("--period", period, "only this period tag (default: every tag)");
    extract->add_option("--out-prefix", out_prefix);

    // build-vpaths
    ModelPaths mp;
    int max_len = 0;
    std::string out_units = "model.vpaths.units";
    auto* bv = app.add_subcommand("build-vpaths", "combine T-paths into V-paths");
    bv->add_option("--graph", mp.graph)->required();
    bv->add_option("--units", mp.units)->required();
    bv->add_option("--joints", mp.joints)->required();
    bv->add_option("--period", period);
    bv->add_option("--tau", tau);
    bv->add_option("--max-len", max_len, "cap on V-path edge count (0 = unlimited)");
    bv->add_option("--out-units", out_units);

    // heuristics
    std::string kind = "binary", heur_out = "heuristic.txt";
    Cost delta = 60;
    VertexId dest = -1;
    bool all_dests = false;
    auto* heur = app.add_subcommand("heuristics", "precompute per-destination heuristics");
    heur->add_option("--graph", mp.graph)->required();
    heur->add_option("--units", mp.units)->required();
    heur->add_option("--joints", mp.joints)->required();
    heur->add_option("--period", period);
    heur->add_option("--tau", tau);
    heur->add_option("--kind", kind, "binary|table");
    heur->add_option("--delta", delta, "budget grid step for tables");
    heur->add_option("--dest", dest, "destination vertex");
    heur->add_flag("--all", all_dests, "every vertex as destination");
    heur->add_option("--out", heur_out, "output file (prefix with --all)");

    // route
    std::string query_path, model_prefix, heuristic = "table";
    std::vector<std::string> windows;
    bool no_dominance = false;
    auto* rt = app.add_subcommand("route", "answer stochastic routing queries");
    rt->add_option("--graph", mp.graph);
    rt->add_option("--units", mp.units);
    rt->add_option("--joints", mp.joints);
    rt->add_option("--model-prefix", model_prefix, "per-period model files");
    rt->add_option("--window", windows, "period window tag:begin:end (repeatable)");
    rt->add_option("--period", period);
    rt->add_option("--tau", tau);
    rt->add_option("--query-file", query_path)->required();
    rt->add_option("--heuristic", heuristic, "none|binary|table");
    rt->add_option("--delta", delta);
    rt->add_flag("--no-dominance", no_dominance);

    // oracle
    int max_edges = 16;
    auto* orc = app.add_subcommand("oracle", "exhaustive per-path ground truth");
    orc->add_option("--graph", mp.graph)->required();
    orc->add_option("--units", mp.units)->required();
    orc->add_option("--joints", mp.joints)->required();
    orc->add_option("--period", period);
    orc->add_option("--tau", tau);
    orc->add_option("--query-file", query_path)->required();
    orc->add_option("--max-edges", max_edges);

    // eval-kl
    int folds = 5;
    auto* kl = app.add_subcommand("eval-kl", "k-fold KL evaluation of cost estimation");
    kl->add_option("--graph", graph_path)->required();
    kl->add_option("--trajectories", traj_path)->required();
    kl->add_option("--tau", tau)->required();
    kl->add_option("--folds", folds);

    // bench
    std::string variants_text = "T-None,T-B-P,V-BS-60", buckets_text, multipliers_text,
                summary_out;
    int pairs_per_bucket = 3;
    auto* bn = app.add_subcommand("bench", "variant benchmark with agreement checking");
    bn->add_option("--graph", graph_path)->required();
    bn->add_option("--trajectories", traj_path)->required();
    bn->add_option("--tau", tau)->required();
    bn->add_option("--variants", variants_text);
    bn->add_option("--buckets", buckets_text, "hop buckets lo-hi,lo-hi,...");
    bn->add_option("--multipliers", multipliers_text);
    bn->add_option("--pairs-per-bucket", pairs_per_bucket);
    bn->add_option("--seed", seed)->required();
    bn->add_option("--summary-out", summary_out, "machine-readable JSON summary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(spec_path, seed, graph_out, traj_out);
        if (extract->parsed())
            return cmd_extract(graph_path, traj_path, tau, period, out_prefix);
        if (bv->parsed())
            return cmd_build_vpaths(mp, period.empty() ? "all" : period, tau, max_len,
                                    out_units);
        if (heur->parsed()) {
            if (!all_dests && dest < 0)
                throw std::runtime_error("heuristics needs --dest or --all");
            return cmd_heuristics(mp, period.empty() ? "all" : period, tau, kind, delta,
                                  dest, all_dests, heur_out);
        }
        if (rt->parsed()) {
            auto pm = load_period_models(mp.graph, mp.units, mp.joints, model_prefix,
                                         windows, tau);
            return cmd_route(pm, query_path, heuristic, delta, no_dominance);
        }
        if (orc->parsed())
            return cmd_oracle(mp, period.empty() ? "all" : period, tau, query_path,
                              max_edges);
        if (kl->parsed()) return cmd_eval_kl(graph_path, traj_path, tau, folds);
        if (bn->parsed())
            return cmd_bench(graph_path, traj_path, tau, variants_text, buckets_text,
                             multipliers_text, pairs_per_bucket, seed, summary_out);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
