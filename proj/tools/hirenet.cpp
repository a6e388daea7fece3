// hirenet: dominance-hierarchy analysis of weighted directed hiring networks.
// Subcommands cover descriptive stats, hierarchy tests, bootstrapped MVS
// ranking, centrality panels, the latent-distance Poisson ERGM, latent-space
// clustering and a full pipeline; every command emits JSON with an embedded
// reproducibility manifest.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hirenet/centrality.hpp"
#include "hirenet/cluster.hpp"
#include "hirenet/ergm.hpp"
#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/hierarchy.hpp"
#include "hirenet/json_io.hpp"
#include "hirenet/manifest.hpp"
#include "hirenet/ranking.hpp"
#include "hirenet/stats.hpp"
#include "hirenet/synth.hpp"

namespace fs = std::filesystem;
using namespace hirenet;
using nlohmann::json;

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("HIRENET_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

struct GraphArgs {
  std::string nodes_path, edges_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nodes", nodes_path, "node table CSV (id,name,...)")
        ->required();
    cmd->add_option("--edges", edges_path, "edge list CSV (src,dst,count)")
        ->required();
  }
  WeightedDigraph load(RunManifest& manifest) const {
    std::ifstream nodes(nodes_path);
    if (!nodes) throw InputError("cannot open nodes file: " + nodes_path);
    std::ifstream edges(edges_path);
    if (!edges) throw InputError("cannot open edges file: " + edges_path);
    manifest.add_input(nodes_path);
    manifest.add_input(edges_path);
    return load_graph(nodes, edges);
  }
};

void emit(const std::string& out_path, const json& doc, const RunManifest& m) {
  if (out_path.empty()) {
    io::write_document(std::cout, doc, m);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open output file: " + out_path);
  io::write_document(out, doc, m);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  return out;
}

std::vector<double> covariates_from_csv(const std::string& path, int n,
                                        RunManifest& manifest) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open covariates file: " + path);
  manifest.add_input(path);
  CsvTable t = read_csv(in, "covariates");
  int id_col = t.column("id");
  int val_col = t.column("value");
  if (id_col < 0 || val_col < 0)
    throw InputError("covariates: header must contain 'id' and 'value'");
  std::vector<double> raw(n, 0.0);
  std::vector<bool> seen(n, false);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::string where = "covariates: row " + std::to_string(r + 2);
    long long id = detail::parse_int(t.rows[r][id_col], where);
    if (id < 0 || id >= n) throw InputError(where + ": unknown node " + std::to_string(id));
    raw[id] = detail::parse_double(t.rows[r][val_col], where);
    seen[id] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i])
      throw InputError("covariates: missing value for node " + std::to_string(i));
  return raw;
}

void write_rank_samples_csv(const ranking::BootstrapEnsemble& ens,
                            const std::vector<NodeRecord>& nodes,
                            std::ostream& out) {
  write_csv_row(out, {"node_id", "name", "replicate", "rank"});
  for (std::size_t u = 0; u < ens.rank_samples.size(); ++u)
    for (int b = 0; b < ens.B; ++b) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", ens.rank_samples[u][b]);
      write_csv_row(out, {std::to_string(u), nodes[u].name, std::to_string(b), buf});
    }
}

void write_trace_csv(const ergm::PosteriorSummary& summary, std::ostream& out) {
  write_csv_row(out, {"iteration", "loglik", "beta0", "beta1", "beta2", "beta3"});
  for (const auto& t : summary.trace) {
    char ll[32];
    std::snprintf(ll, sizeof(ll), "%.17g", t.loglik);
    std::vector<std::string> row{std::to_string(t.iteration), ll};
    for (double b : t.beta) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", b);
      row.push_back(buf);
    }
    write_csv_row(out, row);
  }
}

void write_gof_csv(const ergm::GofReport& rep, std::ostream& out) {
  write_csv_row(out, {"statistic", "network", "bin", "value"});
  auto emit_net = [&](const ergm::GofStats& s, const std::string& net) {
    auto hist = [&](const char* name, const std::vector<std::int64_t>& h) {
      for (std::size_t b = 0; b < h.size(); ++b)
        write_csv_row(out, {name, net, std::to_string(b), std::to_string(h[b])});
    };
    hist("in_degree", s.in_degree_hist);
    hist("out_degree", s.out_degree_hist);
    hist("geodesic", s.geodesic_hist);
    hist("esp", s.esp_hist);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", s.density);
    write_csv_row(out, {"density", net, "", buf});
    write_csv_row(out, {"self_hiring_nodes", net, "",
                        std::to_string(s.self_hiring_nodes)});
    std::snprintf(buf, sizeof(buf), "%.17g", s.self_hire_fraction);
    write_csv_row(out, {"self_hire_fraction", net, "", buf});
  };
  emit_net(rep.observed, "observed");
  for (std::size_t i = 0; i < rep.simulated.size(); ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "sim%04zu", i);
    emit_net(rep.simulated[i], name);
  }
}

// ---- command configs ----

struct TestCmd {
  GraphArgs graph;
  int m = 10000;
  std::uint64_t seed = 0;
  unsigned threads = default_threads();
  std::string out;
  bool steepness = false;

  int run() {
    RunManifest manifest;
    manifest.command = steepness ? "test steepness" : "test linearity";
    manifest.seed = seed;
    manifest.config["m"] = std::to_string(m);
    auto g = graph.load(manifest);
    hierarchy::TestResult res =
        steepness ? hierarchy::steepness_test(g, m, seed, threads)
                  : hierarchy::linearity_test(g, m, seed, threads);
    json doc = io::to_json(res, steepness ? "steepness_slope" : "landau_h");
    if (!steepness) doc["landau"] = hierarchy::landau_h(g).h;
    emit(out, doc, manifest);
    return 0;
  }
};

struct RankCmd {
  GraphArgs graph;
  ranking::MvsIndexConfig cfg;
  std::string objective = "mvs2";
  bool desk = false;
  std::string out, samples_csv;

  int run() {
    if (desk) {
      cfg.B = 20;
      cfg.burnin = 2000;
      cfg.iterations = 2000;
      cfg.interval = 20;
    }
    cfg.objective = ranking::parse_objective(objective);
    RunManifest manifest;
    manifest.command = "rank";
    manifest.seed = cfg.seed;
    manifest.config["objective"] = objective;
    manifest.config["bootstrap"] = std::to_string(cfg.B);
    manifest.config["burnin"] = std::to_string(cfg.burnin);
    manifest.config["iters"] = std::to_string(cfg.iterations);
    manifest.config["interval"] = std::to_string(cfg.interval);
    manifest.config["plateau"] = cfg.allow_plateau ? "true" : "false";
    auto g = graph.load(manifest);
    auto ens = ranking::mvs_index(g, cfg);
    json doc = io::to_json(ens, g.nodes());
    doc["objective"] = objective;
    emit(out, doc, manifest);
    if (!samples_csv.empty()) {
      auto f = open_out(samples_csv);
      write_rank_samples_csv(ens, g.nodes(), f);
    }
    return 0;
  }
};

struct CorrelateCmd {
  GraphArgs graph;
  std::string columns;  // comma separated nodes.csv attributes
  std::vector<std::string> rank_json;  // label=path of rank outputs
  std::string out;
  unsigned threads = default_threads();

  int run() {
    RunManifest manifest;
    manifest.command = "correlate";
    manifest.config["columns"] = columns;
    auto g = graph.load(manifest);
    auto panel = centrality::centrality_panel(g);

    std::vector<std::string> names;
    std::vector<centrality::MaybeVec> cols;
    auto add_ranks = [&](const std::string& name, const std::vector<int>& r) {
      centrality::MaybeVec v(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i];
      names.push_back(name);
      cols.push_back(std::move(v));
    };
    for (const auto& label : rank_json) {
      auto eq = label.find('=');
      if (eq == std::string::npos)
        throw InputError("--rank-json expects LABEL=PATH");
      std::string name = label.substr(0, eq), path = label.substr(eq + 1);
      std::ifstream in(path);
      if (!in) throw InputError("cannot open rank file: " + path);
      manifest.add_input(path);
      json doc = json::parse(in);
      centrality::MaybeVec v(g.n());
      for (const auto& nd : doc.at("nodes"))
        v.at(nd.at("id").get<int>()) = nd.at("mean_rank").get<double>();
      names.push_back(name);
      cols.push_back(std::move(v));
    }
    if (!columns.empty()) {
      std::stringstream ss(columns);
      std::string col;
      while (std::getline(ss, col, ',')) {
        centrality::MaybeVec v(g.n());
        for (int i = 0; i < g.n(); ++i) {
          auto it = g.nodes()[i].attrs.find(col);
          if (it == g.nodes()[i].attrs.end()) continue;
          if (it->second < 1)
            throw InputError("column '" + col + "': rank values must be >= 1");
          v[i] = it->second;
        }
        names.push_back(col);
        cols.push_back(std::move(v));
      }
    }
    add_ranks("in_strength", panel.ranks.at("in_strength"));
    add_ranks("out_strength", panel.ranks.at("out_strength"));
    add_ranks("eigenvector", panel.ranks.at("eigenvector"));
    add_ranks("pagerank", panel.ranks.at("pagerank"));
    add_ranks("betweenness", panel.ranks.at("betweenness"));
    add_ranks("hub", panel.ranks.at("hub"));
    add_ranks("authority", panel.ranks.at("authority"));

    auto corr = centrality::spearman_matrix(names, cols);
    emit(out, io::to_json(corr), manifest);
    return 0;
  }
};

struct ErgmFitCmd {
  GraphArgs graph;
  std::string covariates_path;
  ergm::ErgmConfig cfg;
  bool desk = false;
  std::string out, store_path, trace_csv;

  int run() {
    RunManifest manifest;
    manifest.command = "ergm fit";
    manifest.seed = cfg.seed;
    if (desk) cfg.schedule = ergm::Schedule::desk();
    manifest.config["d"] = std::to_string(cfg.d);
    manifest.config["G"] = std::to_string(cfg.G);
    manifest.config["warmup"] = std::to_string(cfg.schedule.warmup);
    manifest.config["iterations"] = std::to_string(cfg.schedule.iterations);
    manifest.config["thin"] = std::to_string(cfg.schedule.thin);
    manifest.config["window"] = std::to_string(cfg.schedule.window);
    auto g = graph.load(manifest);
    cfg.set_covariate_index(covariates_from_csv(covariates_path, g.n(), manifest));
    auto res = ergm::fit(g, cfg);
    for (const auto& w : res.summary.warnings)
      std::cerr << "[hirenet] warning: " << w << "\n";
    emit(out, io::to_json(res.summary), manifest);
    if (!store_path.empty()) {
      auto f = open_out(store_path);
      io::save_store(res.store, f);
    }
    if (!trace_csv.empty()) {
      auto f = open_out(trace_csv);
      write_trace_csv(res.summary, f);
    }
    return 0;
  }
};

struct ErgmGofCmd {
  GraphArgs graph;
  std::string store_path;
  int samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = default_threads();
  std::string out, csv;

  int run() {
    RunManifest manifest;
    manifest.command = "ergm gof";
    manifest.seed = seed;
    manifest.config["samples"] = std::to_string(samples);
    auto g = graph.load(manifest);
    std::ifstream in(store_path);
    if (!in) throw InputError("cannot open sample store: " + store_path);
    manifest.add_input(store_path);
    auto store = io::load_store(in);
    if (store.n != g.n())
      throw InputError("sample store node count does not match the graph");
    auto sims = ergm::posterior_predictive(store, samples, seed, threads);
    auto rep = ergm::gof(g, sims, threads);
    emit(out, io::to_json(rep), manifest);
    if (!csv.empty()) {
      auto f = open_out(csv);
      write_gof_csv(rep, f);
    }
    return 0;
  }
};

struct ClusterCmd {
  std::string fit_path;
  int kmax = 8;
  int bref = 100;
  int force_k = 0;
  std::uint64_t seed = 0;
  unsigned threads = default_threads();
  std::string out;
  std::string nodes_path, nodes_out;

  int run() {
    RunManifest manifest;
    manifest.command = "cluster";
    manifest.seed = seed;
    manifest.config["kmax"] = std::to_string(kmax);
    manifest.config["bref"] = std::to_string(bref);
    if (force_k > 0) manifest.config["k"] = std::to_string(force_k);
    std::ifstream in(fit_path);
    if (!in) throw InputError("cannot open fit summary: " + fit_path);
    manifest.add_input(fit_path);
    json fit_doc = json::parse(in);
    grouping::Points z = io::points_from_json(fit_doc.at("z_mean"));

    auto curve = grouping::gap_statistic(z, kmax, bref, seed, threads);
    int k = force_k > 0 ? force_k : curve.selected_k;
    auto assignment = grouping::pam(z, k, seed);

    json doc = io::to_json(assignment);
    doc["gap"] = io::to_json(curve);
    doc["k_source"] = force_k > 0 ? "forced" : "gap_one_se";
    emit(out, doc, manifest);

    if (!nodes_path.empty()) {
      std::ifstream nodes_in(nodes_path);
      if (!nodes_in) throw InputError("cannot open nodes file: " + nodes_path);
      std::istringstream empty_edges("src,dst,count\n");
      auto g = load_graph(nodes_in, empty_edges);
      if (g.n() != z.n)
        throw InputError("nodes file size does not match latent positions");
      for (int i = 0; i < g.n(); ++i)
        g.nodes()[i].group = std::to_string(assignment.labels[i]);
      auto f = open_out(nodes_out.empty() ? nodes_path : nodes_out);
      save_nodes(g, f);
    }
    return 0;
  }
};

struct AggregateCmd {
  GraphArgs graph;
  std::string labels_path;  // cluster output JSON; falls back to group column
  std::string out;

  int run() {
    RunManifest manifest;
    manifest.command = "aggregate";
    auto g = graph.load(manifest);
    std::vector<int> labels;
    if (!labels_path.empty()) {
      std::ifstream in(labels_path);
      if (!in) throw InputError("cannot open labels file: " + labels_path);
      manifest.add_input(labels_path);
      json doc = json::parse(in);
      labels = doc.at("labels").get<std::vector<int>>();
    } else {
      labels.resize(g.n());
      for (int i = 0; i < g.n(); ++i) {
        const std::string& grp = g.nodes()[i].group;
        if (grp.empty())
          throw InputError("node " + std::to_string(i) +
                           " has no group label; pass --labels or fill the group column");
        labels[i] = static_cast<int>(detail::parse_int(grp, "group column"));
      }
    }
    emit(out, io::to_json(grouping::aggregate(g, labels)), manifest);
    return 0;
  }
};

struct GenerateCmd {
  std::string kind = "planted";
  int n = 20;
  double intensity = 2.0;
  double noise = 0.1;
  std::string state_path;
  std::uint64_t seed = 0;
  std::string outdir;

  int run() {
    RunManifest manifest;
    manifest.command = "generate";
    manifest.seed = seed;
    manifest.config["kind"] = kind;
    WeightedDigraph g;
    if (kind == "planted") {
      manifest.config["n"] = std::to_string(n);
      manifest.config["intensity"] = std::to_string(intensity);
      manifest.config["noise"] = std::to_string(noise);
      g = synth::generate_planted({n, intensity, noise}, seed);
    } else if (kind == "ergm") {
      if (state_path.empty())
        throw ConfigError("generate ergm requires --state");
      std::ifstream in(state_path);
      if (!in) throw InputError("cannot open state file: " + state_path);
      manifest.add_input(state_path);
      json doc = json::parse(in);
      synth::ErgmSampleSpec spec;
      spec.beta = doc.at("beta").get<std::vector<double>>();
      spec.z = io::points_from_json(doc.at("z"));
      auto raw = doc.at("covariate_index").get<std::vector<double>>();
      spec.covariate.resize(raw.size());
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!(raw[i] > 0))
          throw ConfigError("generate ergm: covariate index must be positive");
        spec.covariate[i] = std::log(raw[i]);
      }
      g = synth::generate_ergm(spec, seed);
    } else {
      throw ConfigError("unknown generator kind '" + kind + "'");
    }
    fs::create_directories(outdir);
    auto nodes_f = open_out((fs::path(outdir) / "nodes.csv").string());
    save_nodes(g, nodes_f);
    auto edges_f = open_out((fs::path(outdir) / "edges.csv").string());
    save_edges(g, edges_f);
    json doc{{"n", g.n()}, {"total_weight", g.total_weight()}};
    auto meta = open_out((fs::path(outdir) / "generate.json").string());
    io::write_document(meta, doc, manifest);
    return 0;
  }
};

struct PipelineCmd {
  GraphArgs graph;
  std::string outdir;
  std::uint64_t seed = 0;
  unsigned threads = default_threads();
  bool desk = false;
  int test_m = 10000;
  ranking::MvsIndexConfig rank_cfg;
  int ergm_d = 3, ergm_G = 3;
  ergm::Schedule schedule;
  int gof_samples = 1000;
  int kmax = 8, bref = 100, force_k = 0;

  int run() {
    if (desk) {
      test_m = 1000;
      rank_cfg.B = 20;
      rank_cfg.burnin = 2000;
      rank_cfg.iterations = 2000;
      rank_cfg.interval = 20;
      schedule = ergm::Schedule::desk();
      gof_samples = 200;
      kmax = 5;
      bref = 50;
    }
    RunManifest manifest;
    manifest.command = "pipeline";
    manifest.seed = seed;
    manifest.config["desk"] = desk ? "true" : "false";
    manifest.config["test_m"] = std::to_string(test_m);
    manifest.config["bootstrap"] = std::to_string(rank_cfg.B);
    manifest.config["ergm_d"] = std::to_string(ergm_d);
    manifest.config["ergm_G"] = std::to_string(ergm_G);
    manifest.config["gof_samples"] = std::to_string(gof_samples);
    manifest.config["kmax"] = std::to_string(kmax);

    auto g = graph.load(manifest);
    fs::create_directories(outdir);
    auto path = [&](const char* name) { return (fs::path(outdir) / name).string(); };
    auto stage = [&](const char* name, auto&& fn) {
      try {
        fn();
      } catch (const NumericError& e) {
        throw NumericError(std::string("pipeline stage ") + name + ": " + e.what());
      } catch (const InputError& e) {
        throw InputError(std::string("pipeline stage ") + name + ": " + e.what());
      }
      std::cerr << "[hirenet] pipeline stage done: " << name << "\n";
    };

    stage("stats", [&] {
      auto f = open_out(path("stats.json"));
      io::write_document(f, io::to_json(describe(g)), manifest);
    });

    stage("tests", [&] {
      auto lin = hierarchy::linearity_test(g, test_m, derive_seed(seed, 11), threads);
      auto f1 = open_out(path("test_linearity.json"));
      io::write_document(f1, io::to_json(lin, "landau_h"), manifest);
      auto stp = hierarchy::steepness_test(g, test_m, derive_seed(seed, 12), threads);
      auto f2 = open_out(path("test_steepness.json"));
      io::write_document(f2, io::to_json(stp, "steepness_slope"), manifest);
    });

    ranking::BootstrapEnsemble ens;
    stage("rank", [&] {
      rank_cfg.objective = ranking::Objective::mvs2;
      rank_cfg.seed = derive_seed(seed, 21);
      rank_cfg.threads = threads;
      ens = ranking::mvs_index(g, rank_cfg);
      auto f = open_out(path("rank_mvs2.json"));
      json doc = io::to_json(ens, g.nodes());
      doc["objective"] = "mvs2";
      io::write_document(f, doc, manifest);
      auto csv = open_out(path("rank_mvs2_samples.csv"));
      write_rank_samples_csv(ens, g.nodes(), csv);
    });

    stage("centrality", [&] {
      auto panel = centrality::centrality_panel(g);
      auto f = open_out(path("centrality.json"));
      io::write_document(f, io::to_json(panel), manifest);
      // correlations over panel ranks, the MVS2 index and node columns
      std::vector<std::string> names{"mvs2"};
      std::vector<centrality::MaybeVec> cols;
      centrality::MaybeVec mvs(g.n());
      for (int i = 0; i < g.n(); ++i) mvs[i] = ens.mean_rank[i];
      cols.push_back(std::move(mvs));
      for (const auto& [name, ranks] : panel.ranks) {
        centrality::MaybeVec v(g.n());
        for (int i = 0; i < g.n(); ++i) v[i] = ranks[i];
        names.push_back(name);
        cols.push_back(std::move(v));
      }
      std::map<std::string, int> attr_counts;
      for (const auto& rec : g.nodes())
        for (const auto& [k, v] : rec.attrs) attr_counts[k]++;
      for (const auto& [name, cnt] : attr_counts) {
        centrality::MaybeVec v(g.n());
        for (int i = 0; i < g.n(); ++i) {
          auto it = g.nodes()[i].attrs.find(name);
          if (it != g.nodes()[i].attrs.end()) v[i] = it->second;
        }
        names.push_back(name);
        cols.push_back(std::move(v));
      }
      auto corr = centrality::spearman_matrix(names, cols);
      auto f2 = open_out(path("correlate.json"));
      io::write_document(f2, io::to_json(corr), manifest);
    });

    ergm::FitResult fit_res;
    stage("ergm fit", [&] {
      ergm::ErgmConfig cfg;
      cfg.d = ergm_d;
      cfg.G = ergm_G;
      cfg.schedule = schedule;
      cfg.seed = derive_seed(seed, 31);
      cfg.set_covariate_index(ens.mean_rank);  // MVS2 indices drive the covariates
      fit_res = ergm::fit(g, cfg);
      auto f = open_out(path("ergm_fit.json"));
      io::write_document(f, io::to_json(fit_res.summary), manifest);
      auto store_f = open_out(path("ergm_store.jsonl"));
      io::save_store(fit_res.store, store_f);
      auto trace_f = open_out(path("ergm_trace.csv"));
      write_trace_csv(fit_res.summary, trace_f);
    });

    stage("ergm gof", [&] {
      auto sims = ergm::posterior_predictive(fit_res.store, gof_samples,
                                             derive_seed(seed, 41), threads);
      auto rep = ergm::gof(g, sims, threads);
      auto f = open_out(path("ergm_gof.json"));
      io::write_document(f, io::to_json(rep), manifest);
      auto csv = open_out(path("ergm_gof.csv"));
      write_gof_csv(rep, csv);
    });

    grouping::GroupAssignment assignment;
    stage("cluster", [&] {
      auto curve = grouping::gap_statistic(fit_res.summary.z_mean, kmax, bref,
                                           derive_seed(seed, 51), threads);
      int k = force_k > 0 ? force_k : curve.selected_k;
      assignment = grouping::pam(fit_res.summary.z_mean, k, derive_seed(seed, 52));
      json doc = io::to_json(assignment);
      doc["gap"] = io::to_json(curve);
      doc["k_source"] = force_k > 0 ? "forced" : "gap_one_se";
      auto f = open_out(path("cluster.json"));
      io::write_document(f, doc, manifest);
      WeightedDigraph labeled = g;
      for (int i = 0; i < g.n(); ++i)
        labeled.nodes()[i].group = std::to_string(assignment.labels[i]);
      auto nodes_f = open_out(path("nodes_with_groups.csv"));
      save_nodes(labeled, nodes_f);
    });

    stage("aggregate", [&] {
      auto agg = grouping::aggregate(g, assignment.labels);
      auto f = open_out(path("aggregate.json"));
      io::write_document(f, io::to_json(agg), manifest);
    });
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dominance hierarchy analysis for faculty-hiring-style networks"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  // stats
  GraphArgs stats_graph;
  std::string stats_out;
  auto* stats_cmd = app.add_subcommand("stats", "descriptive statistics panel");
  stats_graph.attach(stats_cmd);
  stats_cmd->add_option("--out", stats_out, "output JSON path (default stdout)");

  // test linearity|steepness
  auto* test_cmd = app.add_subcommand("test", "hierarchy randomization tests");
  test_cmd->require_subcommand(1);
  TestCmd lin_cmd, stp_cmd;
  stp_cmd.steepness = true;
  auto attach_test = [](CLI::App* sub, TestCmd& c) {
    c.graph.attach(sub);
    sub->add_option("--m", c.m, "replicate count (>= 100)");
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--threads", c.threads, "worker threads");
    sub->add_option("--out", c.out, "output JSON path");
  };
  attach_test(test_cmd->add_subcommand("linearity", "dyad-randomization linearity test"),
              lin_cmd);
  attach_test(test_cmd->add_subcommand("steepness", "hierarchy steepness test"), stp_cmd);

  // rank
  RankCmd rank_cmd;
  auto* rank_sub = app.add_subcommand("rank", "bootstrapped MVR/MVS indices");
  rank_cmd.graph.attach(rank_sub);
  rank_sub->add_option("--objective", rank_cmd.objective, "mvr|mvs1|mvs2");
  rank_sub->add_option("--bootstrap", rank_cmd.cfg.B, "bootstrap replicates");
  rank_sub->add_option("--burnin", rank_cmd.cfg.burnin, "swap burn-in iterations");
  rank_sub->add_option("--iters", rank_cmd.cfg.iterations, "swap sampling iterations");
  rank_sub->add_option("--interval", rank_cmd.cfg.interval, "record every k iterations");
  rank_sub->add_option("--seed", rank_cmd.cfg.seed, "master seed");
  rank_sub->add_option("--threads", rank_cmd.cfg.threads, "worker threads");
  rank_sub->add_flag("--desk", rank_cmd.desk, "small CI-scale preset");
  rank_sub->add_flag("!--no-plateau", rank_cmd.cfg.allow_plateau,
                     "disable plateau acceptance at exact ties");
  rank_sub->add_option("--out", rank_cmd.out, "output JSON path");
  rank_sub->add_option("--samples-csv", rank_cmd.samples_csv,
                       "per-replicate rank samples CSV (boxplot data)");

  // centrality
  GraphArgs centrality_graph;
  std::string centrality_out;
  centrality::PanelOptions panel_opt;
  auto* central_cmd = app.add_subcommand("centrality", "importance score panel");
  centrality_graph.attach(central_cmd);
  central_cmd->add_option("--damping", panel_opt.damping, "pagerank damping");
  central_cmd->add_option("--tol", panel_opt.tol, "iteration tolerance");
  central_cmd->add_option("--out", centrality_out, "output JSON path");

  // correlate
  CorrelateCmd corr_cmd;
  auto* corr_sub = app.add_subcommand("correlate", "Spearman matrix of rank vectors");
  corr_cmd.graph.attach(corr_sub);
  corr_sub->add_option("--columns", corr_cmd.columns,
                       "comma-separated external rank columns from nodes.csv");
  corr_sub->add_option("--rank-json", corr_cmd.rank_json,
                       "LABEL=PATH of a rank output to include");
  corr_sub->add_option("--out", corr_cmd.out, "output JSON path");

  // ergm fit|gof
  auto* ergm_cmd = app.add_subcommand("ergm", "latent-distance Poisson graph model");
  ergm_cmd->require_subcommand(1);
  ErgmFitCmd fit_cmd;
  auto* fit_sub = ergm_cmd->add_subcommand("fit", "MCMC fit");
  fit_cmd.graph.attach(fit_sub);
  fit_sub->add_option("--covariates", fit_cmd.covariates_path,
                      "CSV id,value of MVS2-style indices")->required();
  fit_sub->add_option("--d", fit_cmd.cfg.d, "latent dimension");
  fit_sub->add_option("--G", fit_cmd.cfg.G, "mixture components");
  fit_sub->add_option("--warmup", fit_cmd.cfg.schedule.warmup, "warmup sweeps");
  fit_sub->add_option("--iters", fit_cmd.cfg.schedule.iterations, "main sweeps");
  fit_sub->add_option("--thin", fit_cmd.cfg.schedule.thin, "thinning interval");
  fit_sub->add_option("--window", fit_cmd.cfg.schedule.window,
                      "sample window at the end of the run");
  fit_sub->add_flag("--desk", fit_cmd.desk, "desk-scale schedule preset");
  fit_sub->add_option("--beta-var", fit_cmd.cfg.priors.beta_var,
                      "prior variance of the coefficients");
  fit_sub->add_option("--mu-var", fit_cmd.cfg.priors.mu_var,
                      "prior variance of the mixture means");
  fit_sub->add_option("--sigma2-df", fit_cmd.cfg.priors.sigma2_df,
                      "scaled-inv-chi2 df of the mixture variances");
  fit_sub->add_option("--sigma2-scale", fit_cmd.cfg.priors.sigma2_scale,
                      "scaled-inv-chi2 scale of the mixture variances");
  fit_sub->add_option("--alpha", fit_cmd.cfg.priors.dirichlet_alpha,
                      "Dirichlet concentration of the mixture weights");
  fit_sub->add_option("--z-scale", fit_cmd.cfg.z_proposal,
                      "random-walk scale for latent positions");
  fit_sub->add_option("--beta-scale", fit_cmd.cfg.beta_proposal,
                      "random-walk scale for coefficients");
  fit_sub->add_flag("!--no-adapt", fit_cmd.cfg.adapt_proposals,
                    "freeze proposal scales instead of tuning during warmup");
  fit_sub->add_flag("--prior-only", fit_cmd.cfg.prior_only,
                    "drop the data term and sample the prior");
  fit_sub->add_option("--seed", fit_cmd.cfg.seed, "master seed");
  fit_sub->add_option("--out", fit_cmd.out, "summary JSON path");
  fit_sub->add_option("--store", fit_cmd.store_path, "posterior store JSONL path");
  fit_sub->add_option("--trace-csv", fit_cmd.trace_csv, "trace CSV path");

  ErgmGofCmd gof_cmd;
  auto* gof_sub = ergm_cmd->add_subcommand("gof", "posterior-predictive checks");
  gof_cmd.graph.attach(gof_sub);
  gof_sub->add_option("--store", gof_cmd.store_path, "posterior store JSONL")->required();
  gof_sub->add_option("--samples", gof_cmd.samples, "simulated networks");
  gof_sub->add_option("--seed", gof_cmd.seed, "master seed");
  gof_sub->add_option("--threads", gof_cmd.threads, "worker threads");
  gof_sub->add_option("--out", gof_cmd.out, "output JSON path");
  gof_sub->add_option("--csv", gof_cmd.csv, "long-format CSV for boxplots");

  // cluster
  ClusterCmd cluster_cmd;
  auto* cluster_sub = app.add_subcommand("cluster", "PAM + gap statistic on latent means");
  cluster_sub->add_option("--fit", cluster_cmd.fit_path, "ergm fit summary JSON")
      ->required();
  cluster_sub->add_option("--kmax", cluster_cmd.kmax, "largest k scanned");
  cluster_sub->add_option("--bref", cluster_cmd.bref, "reference draws (>= 10)");
  cluster_sub->add_option("--k", cluster_cmd.force_k, "override the one-SE rule");
  cluster_sub->add_option("--seed", cluster_cmd.seed, "master seed");
  cluster_sub->add_option("--threads", cluster_cmd.threads, "worker threads");
  cluster_sub->add_option("--out", cluster_cmd.out, "output JSON path");
  cluster_sub->add_option("--nodes", cluster_cmd.nodes_path,
                          "node table to receive group labels");
  cluster_sub->add_option("--nodes-out", cluster_cmd.nodes_out,
                          "labeled node table destination (default: in place)");

  // aggregate
  AggregateCmd agg_cmd;
  auto* agg_sub = app.add_subcommand("aggregate", "group-level flow matrix");
  agg_cmd.graph.attach(agg_sub);
  agg_sub->add_option("--labels", agg_cmd.labels_path, "cluster output JSON");
  agg_sub->add_option("--out", agg_cmd.out, "output JSON path");

  // generate
  GenerateCmd gen_cmd;
  auto* gen_sub = app.add_subcommand("generate", "synthetic network generator");
  gen_sub->add_option("--kind", gen_cmd.kind, "planted|ergm");
  gen_sub->add_option("--n", gen_cmd.n, "node count (planted)");
  gen_sub->add_option("--intensity", gen_cmd.intensity, "downhill Poisson mean");
  gen_sub->add_option("--noise", gen_cmd.noise, "uphill intensity fraction");
  gen_sub->add_option("--state", gen_cmd.state_path, "ergm state JSON");
  gen_sub->add_option("--seed", gen_cmd.seed, "master seed");
  gen_sub->add_option("--outdir", gen_cmd.outdir, "output directory")->required();

  // pipeline
  PipelineCmd pipe_cmd;
  auto* pipe_sub = app.add_subcommand("pipeline", "full analysis bundle");
  pipe_cmd.graph.attach(pipe_sub);
  pipe_sub->add_option("--outdir", pipe_cmd.outdir, "bundle directory")->required();
  pipe_sub->add_option("--seed", pipe_cmd.seed, "master seed");
  pipe_sub->add_option("--threads", pipe_cmd.threads, "worker threads");
  pipe_sub->add_flag("--desk", pipe_cmd.desk, "CI-scale presets everywhere");
  pipe_sub->add_option("--test-m", pipe_cmd.test_m, "test replicates");
  pipe_sub->add_option("--bootstrap", pipe_cmd.rank_cfg.B, "rank bootstrap replicates");
  pipe_sub->add_option("--ergm-d", pipe_cmd.ergm_d, "latent dimension");
  pipe_sub->add_option("--ergm-G", pipe_cmd.ergm_G, "mixture components");
  pipe_sub->add_option("--gof-samples", pipe_cmd.gof_samples, "gof simulations");
  pipe_sub->add_option("--kmax", pipe_cmd.kmax, "largest k scanned");
  pipe_sub->add_option("--k", pipe_cmd.force_k, "override cluster count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (stats_cmd->parsed()) {
      RunManifest manifest;
      manifest.command = "stats";
      auto g = stats_graph.load(manifest);
      emit(stats_out, io::to_json(describe(g)), manifest);
    } else if (test_cmd->parsed()) {
      rc = test_cmd->get_subcommands()[0]->get_name() == "steepness"
               ? stp_cmd.run()
               : lin_cmd.run();
    } else if (rank_sub->parsed()) {
      rc = rank_cmd.run();
    } else if (central_cmd->parsed()) {
      RunManifest manifest;
      manifest.command = "centrality";
      auto g = centrality_graph.load(manifest);
      emit(centrality_out, io::to_json(centrality::centrality_panel(g, panel_opt)),
           manifest);
    } else if (corr_sub->parsed()) {
      rc = corr_cmd.run();
    } else if (ergm_cmd->parsed()) {
      rc = ergm_cmd->get_subcommands()[0]->get_name() == "fit" ? fit_cmd.run()
                                                               : gof_cmd.run();
    } else if (cluster_sub->parsed()) {
      rc = cluster_cmd.run();
    } else if (agg_sub->parsed()) {
      rc = agg_cmd.run();
    } else if (gen_sub->parsed()) {
      rc = gen_cmd.run();
    } else if (pipe_sub->parsed()) {
      rc = pipe_cmd.run();
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  std::cerr << "[hirenet] finished in " << elapsed.count() << " s\n";
  return rc;
}
