#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"

#include "hirenet/centrality.hpp"
#include "hirenet/cluster.hpp"
#include "hirenet/ergm.hpp"
#include "hirenet/error.hpp"
#include "hirenet/hierarchy.hpp"
#include "hirenet/manifest.hpp"
#include "hirenet/ranking.hpp"
#include "hirenet/stats.hpp"

namespace hirenet::io {

using nlohmann::json;

inline json to_json(const RunManifest& m) {
  json cfg = json::object();
  for (const auto& [k, v] : m.config) cfg[k] = v;
  json inputs = json::object();
  for (const auto& [k, v] : m.input_digests) inputs[k] = v;
  return json{{"tool", kToolName},
              {"version", m.version},
              {"command", m.command},
              {"config", cfg},
              {"seed", m.seed},
              {"inputs", inputs}};
}

inline json to_json(const DescriptiveStats& d) {
  json attr = json::object();
  for (const auto& [k, v] : d.attr_assortativity) attr[k] = v;
  json curve = json::array();
  for (const auto& [x, y] : d.lorenz_curve) curve.push_back(json::array({x, y}));
  json out{{"n", d.n},
           {"total_weight", d.total_weight},
           {"density", d.density},
           {"self_edge_fraction", d.self_edge_fraction},
           {"self_hiring_node_count", d.self_hiring_node_count},
           {"reciprocity", d.reciprocity},
           {"attr_assortativity", attr},
           {"gini", d.gini},
           {"lorenz_curve", curve}};
  if (d.degree_assortativity)
    out["degree_assortativity"] = *d.degree_assortativity;
  else
    out["degree_assortativity"] = nullptr;
  return out;
}

inline json histogram_json(const std::vector<double>& values, int bins = 30) {
  double lo = values.front(), hi = values.front();
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) hi = lo + 1.0;
  std::vector<long> counts(bins, 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    counts[std::clamp(b, 0, bins - 1)]++;
  }
  json edges = json::array();
  for (int b = 0; b <= bins; ++b) edges.push_back(lo + (hi - lo) * b / bins);
  return json{{"bin_edges", edges}, {"counts", counts}};
}

inline json to_json(const hierarchy::TestResult& t, const std::string& statistic) {
  return json{{"statistic", statistic},
              {"observed", t.observed},
              {"replicates", t.replicates.size()},
              {"p_value", t.p_value},
              {"replicate_histogram", histogram_json(t.replicates)}};
}

inline json to_json(const ranking::BootstrapEnsemble& e,
                    const std::vector<NodeRecord>& nodes) {
  json per_node = json::array();
  for (std::size_t u = 0; u < e.rank_samples.size(); ++u) {
    const auto& samples = e.rank_samples[u];
    per_node.push_back(json{{"id", u},
                            {"name", nodes[u].name},
                            {"mean_rank", e.mean_rank[u]},
                            {"q025", ranking::quantile(samples, 0.025)},
                            {"q25", ranking::quantile(samples, 0.25)},
                            {"q50", ranking::quantile(samples, 0.50)},
                            {"q75", ranking::quantile(samples, 0.75)},
                            {"q975", ranking::quantile(samples, 0.975)}});
  }
  return json{{"replicates", e.B}, {"nodes", per_node}, {"order", e.order}};
}

inline json to_json(const centrality::CentralityPanel& p) {
  json out{{"in_strength", p.in_strength},   {"out_strength", p.out_strength},
           {"eigenvector", p.eigenvector},   {"pagerank", p.pagerank},
           {"betweenness", p.betweenness},   {"hub", p.hub},
           {"authority", p.authority}};
  json ranks = json::object();
  for (const auto& [k, v] : p.ranks) ranks[k] = v;
  out["ranks"] = ranks;
  return out;
}

inline json to_json(const centrality::CorrelationMatrix& m) {
  json r = json::array();
  for (const auto& row : m.r) {
    json jr = json::array();
    for (double v : row) {
      if (std::isnan(v))
        jr.push_back(nullptr);
      else
        jr.push_back(v);
    }
    r.push_back(jr);
  }
  return json{{"names", m.names}, {"spearman", r}, {"pair_counts", m.pair_count}};
}

inline json to_json(const grouping::GapCurve& c) {
  json entries = json::array();
  for (const auto& e : c.entries)
    entries.push_back(json{{"k", e.k},
                           {"gap", e.gap},
                           {"se", e.se},
                           {"dispersion", e.dispersion}});
  return json{{"curve", entries}, {"selected_k", c.selected_k}};
}

inline json to_json(const grouping::GroupAssignment& a) {
  return json{{"k", a.k},
              {"labels", a.labels},
              {"medoids", a.medoids},
              {"dispersion", a.dispersion}};
}

inline json to_json(const grouping::AggregateNetwork& a) {
  json rows = json::array();
  for (int i = 0; i < a.k; ++i) {
    json row = json::array();
    for (int j = 0; j < a.k; ++j) row.push_back(a.at(i, j));
    rows.push_back(row);
  }
  return json{{"k", a.k}, {"flow", rows}, {"within_fraction", a.within_fraction}};
}

inline json points_json(const ergm::Points& p) {
  json rows = json::array();
  for (int i = 0; i < p.n; ++i) {
    json row = json::array();
    for (int k = 0; k < p.d; ++k) row.push_back(p.coord(i, k));
    rows.push_back(row);
  }
  return rows;
}

inline ergm::Points points_from_json(const json& j) {
  ergm::Points p;
  p.n = static_cast<int>(j.size());
  p.d = p.n > 0 ? static_cast<int>(j[0].size()) : 0;
  p.x.reserve(static_cast<std::size_t>(p.n) * p.d);
  for (const auto& row : j)
    for (const auto& v : row) p.x.push_back(v.get<double>());
  return p;
}

inline json to_json(const ergm::PosteriorSummary& s) {
  json trace = json::array();
  for (const auto& t : s.trace)
    trace.push_back(json{{"iteration", t.iteration},
                         {"loglik", t.loglik},
                         {"beta", t.beta}});
  return json{{"beta_mean", s.beta_mean},
              {"beta_ci_low", s.beta_lo},
              {"beta_ci_high", s.beta_hi},
              {"z_mean", points_json(s.z_mean)},
              {"lambda_mean", s.lambda_mean},
              {"mu_mean", s.mu_mean},
              {"sigma2_mean", s.sigma2_mean},
              {"bic", s.bic},
              {"n_samples", s.n_samples},
              {"loglik_per_sample", s.loglik_per_sample},
              {"accept_rate_z", s.accept_rate_z},
              {"accept_rate_beta", s.accept_rate_beta},
              {"warnings", s.warnings},
              {"trace", trace}};
}

inline json to_json(const ergm::GofStats& s) {
  return json{{"in_degree_hist", s.in_degree_hist},
              {"out_degree_hist", s.out_degree_hist},
              {"geodesic_hist", s.geodesic_hist},
              {"esp_hist", s.esp_hist},
              {"density", s.density},
              {"self_hiring_nodes", s.self_hiring_nodes},
              {"self_hire_fraction", s.self_hire_fraction}};
}

inline json to_json(const ergm::GofReport& r) {
  json sims = json::array();
  for (const auto& s : r.simulated) sims.push_back(to_json(s));
  return json{{"observed", to_json(r.observed)}, {"simulated", sims}};
}

// ---- posterior sample store: JSON lines, one header record then samples ----

inline void save_store(const ergm::SampleStore& store, std::ostream& out) {
  json header{{"record", "header"},
              {"n", store.n},
              {"d", store.d},
              {"G", store.G},
              {"covariate", store.covariate}};
  out << header.dump() << "\n";
  for (const auto& smp : store.samples) {
    json j{{"record", "sample"},
           {"beta", smp.state.beta},
           {"z", points_json(smp.state.z)},
           {"lambda", smp.state.lambda},
           {"mu", smp.state.mu},
           {"sigma2", smp.state.sigma2},
           {"labels", smp.state.labels},
           {"loglik", smp.loglik}};
    out << j.dump() << "\n";
  }
}

inline ergm::SampleStore load_store(std::istream& in) {
  ergm::SampleStore store;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw InputError("sample store: malformed JSON line");
    std::string kind = j.value("record", "");
    if (kind == "header") {
      store.n = j.at("n").get<int>();
      store.d = j.at("d").get<int>();
      store.G = j.at("G").get<int>();
      store.covariate = j.at("covariate").get<std::vector<double>>();
      have_header = true;
    } else if (kind == "sample") {
      ergm::ErgmSample smp;
      smp.state.beta = j.at("beta").get<std::vector<double>>();
      smp.state.z = points_from_json(j.at("z"));
      smp.state.lambda = j.at("lambda").get<std::vector<double>>();
      smp.state.mu = j.at("mu").get<std::vector<double>>();
      smp.state.sigma2 = j.at("sigma2").get<std::vector<double>>();
      smp.state.labels = j.at("labels").get<std::vector<int>>();
      smp.loglik = j.at("loglik").get<double>();
      store.samples.push_back(std::move(smp));
    } else {
      throw InputError("sample store: unknown record kind");
    }
  }
  if (!have_header) throw InputError("sample store: missing header record");
  return store;
}

/// Emits `doc` with the manifest attached, trailing newline included so the
/// file is a complete text document.
inline void write_document(std::ostream& out, json doc, const RunManifest& m) {
  doc["manifest"] = to_json(m);
  out << doc.dump(2) << "\n";
}

}  // namespace hirenet::io
