#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "hirenet/ergm.hpp"
#include "hirenet/json_io.hpp"
#include "hirenet/synth.hpp"
#include "oracles.hpp"

using namespace hirenet;
using namespace hirenet::ergm;

namespace {

Points random_points(int n, int d, std::uint64_t seed, double sd = 1.0) {
  Points z;
  z.n = n;
  z.d = d;
  z.x.resize(static_cast<std::size_t>(n) * d);
  Rng rng = make_rng(seed, 0);
  std::normal_distribution<double> nd(0.0, sd);
  for (auto& v : z.x) v = nd(rng);
  return z;
}

std::vector<double> rank_covariate(int n) {
  std::vector<double> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = i + 1.0;  // MVS2-style index 1..n
  return raw;
}

ErgmConfig basic_config(int n, int d, int G, std::uint64_t seed) {
  ErgmConfig cfg;
  cfg.d = d;
  cfg.G = G;
  cfg.seed = seed;
  cfg.set_covariate_index(rank_covariate(n));
  return cfg;
}

// rigid motion: random rotation (QR-less Gram-Schmidt), then a shift
Points apply_rigid(const Points& z, std::uint64_t seed) {
  int d = z.d;
  std::vector<double> basis(static_cast<std::size_t>(d) * d);
  Rng rng = make_rng(seed, 3);
  std::normal_distribution<double> nd(0, 1);
  for (int col = 0; col < d; ++col) {
    std::vector<double> v(d);
    for (auto& x : v) x = nd(rng);
    for (int prev = 0; prev < col; ++prev) {
      double dot = 0;
      for (int r = 0; r < d; ++r) dot += v[r] * basis[static_cast<std::size_t>(r) * d + prev];
      for (int r = 0; r < d; ++r) v[r] -= dot * basis[static_cast<std::size_t>(r) * d + prev];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (int r = 0; r < d; ++r) basis[static_cast<std::size_t>(r) * d + col] = v[r] / norm;
  }
  std::vector<double> shift(d);
  for (auto& s : shift) s = nd(rng);
  Points out = z;
  for (int i = 0; i < z.n; ++i)
    for (int k = 0; k < d; ++k) {
      double s = shift[k];
      for (int l = 0; l < d; ++l)
        s += z.coord(i, l) * basis[static_cast<std::size_t>(l) * d + k];
      out.x[static_cast<std::size_t>(i) * d + k] = s;
    }
  return out;
}

}  // namespace

TEST_CASE("single empty dyad at unit mean contributes -1") {
  WeightedDigraph g(1);  // y_00 = 0
  ErgmState st;
  st.beta = {0, 0, 0, 0};
  st.z = random_points(1, 2, 1);
  ErgmConfig cfg = basic_config(1, 2, 1, 0);  // covariate index 1 -> log = 0
  CHECK(log_likelihood(g, st, cfg) == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("printed coefficients predict the top department's self-hires") {
  // top-ranked department: MVS2 index 1, so every covariate term vanishes
  std::vector<double> beta{2.8363, 0.1722, -1.1190, 0.2828};
  Points z = random_points(1, 3, 2);
  double mu11 = std::exp(eta(beta, z, {0.0}, 0, 0));
  CHECK(std::abs(mu11 - 16.94) / 16.94 < 0.02);
}

TEST_CASE("off-diagonal means shrink when distances grow") {
  int n = 6;
  Points z = random_points(n, 3, 4);
  Points z2 = z;
  for (auto& v : z2.x) v *= 2.0;  // doubles every pairwise distance
  std::vector<double> beta{0.5, 0.1, -0.2, 0.3};
  std::vector<double> x(n, 0.7);
  auto mu = mean_matrix(beta, z, x);
  auto mu2 = mean_matrix(beta, z2, x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        CHECK(mu2[i * n + j] == Catch::Approx(mu[i * n + j]));
      else
        CHECK(mu2[i * n + j] <= mu[i * n + j] + 1e-15);
    }
}

TEST_CASE("log likelihood is invariant under rigid motions of Z") {
  int n = 12;
  auto g = oracle::random_graph(n, 1.0, 31);
  ErgmConfig cfg = basic_config(n, 3, 1, 0);
  ErgmState st;
  st.beta = {0.3, 0.05, -0.2, 0.1};
  st.z = random_points(n, 3, 8);
  double base = log_likelihood(g, st, cfg);
  for (std::uint64_t s = 0; s < 5; ++s) {
    ErgmState moved = st;
    moved.z = apply_rigid(st.z, s);
    CHECK(log_likelihood(g, moved, cfg) == Catch::Approx(base).margin(1e-10));
  }
}

TEST_CASE("procrustes alignment undoes a rigid motion") {
  Points z = random_points(15, 3, 5);
  Points moved = apply_rigid(z, 9);
  Points back = procrustes::align(z, moved);
  for (std::size_t i = 0; i < z.x.size(); ++i)
    CHECK(back.x[i] == Catch::Approx(z.x[i]).margin(1e-9));
}

TEST_CASE("alignment never changes the likelihood of a sample") {
  int n = 10;
  auto g = oracle::random_graph(n, 0.8, 13);
  ErgmConfig cfg = basic_config(n, 2, 1, 0);
  ErgmState st;
  st.beta = {0.2, 0.0, -0.1, 0.1};
  st.z = random_points(n, 2, 6);
  Points ref = random_points(n, 2, 7);
  ErgmState aligned = st;
  aligned.z = procrustes::align(ref, st.z);
  CHECK(log_likelihood(g, aligned, cfg) ==
        Catch::Approx(log_likelihood(g, st, cfg)).margin(1e-10));
}

TEST_CASE("nonpositive covariate indices are rejected at config build") {
  ErgmConfig cfg;
  CHECK_THROWS_AS(cfg.set_covariate_index({1.0, 0.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(cfg.set_covariate_index({1.0, -3.0}), ConfigError);
}

TEST_CASE("zero-iteration schedule reports the initialization state") {
  int n = 8;
  auto g = oracle::random_graph(n, 0.8, 3);
  ErgmConfig cfg = basic_config(n, 2, 2, 5);
  cfg.schedule = {0, 0, 1, 0};
  auto fitres = fit(g, cfg);
  CHECK(fitres.summary.n_samples == 1);
  for (int k = 0; k < 4; ++k) CHECK(fitres.summary.beta_mean[k] == 0.0);
  CHECK(fitres.store.samples.size() == 1);
  CHECK(fitres.summary.z_mean.x == fitres.store.samples[0].state.z.x);
}

TEST_CASE("desk schedule preset") {
  Schedule desk = Schedule::desk();
  CHECK(desk.warmup == 5000);
  CHECK(desk.iterations == 50000);
  CHECK(desk.thin == 10);
  CHECK(desk.window == 5000);
  Schedule paper = Schedule::paper();
  CHECK(paper.warmup == 50000);
  CHECK(paper.iterations == 5000000);
  CHECK(paper.thin == 100);
  CHECK(paper.window == 50000);
}

TEST_CASE("prior-only chain reproduces the beta prior (detailed balance)") {
  WeightedDigraph g(3);
  g.at(0, 1) = 1;
  ErgmConfig cfg = basic_config(3, 2, 1, 99);
  cfg.prior_only = true;
  cfg.schedule = {2000, 40000, 10, 40000};
  auto fitres = fit(g, cfg);
  const auto& samples = fitres.store.samples;
  REQUIRE(samples.size() == 4000);
  for (int k = 0; k < 4; ++k) {
    std::vector<double> draws;
    draws.reserve(samples.size());
    for (const auto& s : samples) draws.push_back(s.state.beta[k]);
    double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    // batch-means standard error over 40 batches
    int nb = 40, bs = static_cast<int>(draws.size()) / nb;
    std::vector<double> bm(nb, 0.0);
    for (int b = 0; b < nb; ++b) {
      for (int t = 0; t < bs; ++t) bm[b] += draws[b * bs + t];
      bm[b] /= bs;
    }
    double var = 0;
    for (double v : bm) var += (v - mean) * (v - mean);
    var /= (nb - 1);
    double se = std::sqrt(var / nb);
    INFO("component " << k << " mean " << mean << " se " << se);
    CHECK(std::abs(mean - 0.0) <= 3.0 * se);
    double sd = 0;
    for (double v : draws) sd += (v - mean) * (v - mean);
    sd = std::sqrt(sd / draws.size());
    CHECK(sd > 2.0);  // prior sd is 3
    CHECK(sd < 4.0);
  }
}

TEST_CASE("fit recovers generating coefficients on simulated data") {
  int n = 25;
  synth::ErgmSampleSpec spec;
  spec.beta = {1.0, 0.3, -0.6, 0.4};
  spec.z = random_points(n, 2, 21, 1.0);
  std::vector<double> raw = rank_covariate(n);
  spec.covariate.resize(n);
  for (int i = 0; i < n; ++i) spec.covariate[i] = std::log(raw[i]);
  auto g = synth::generate_ergm(spec, 77);

  ErgmConfig cfg = basic_config(n, 2, 1, 2024);
  cfg.schedule = {2000, 20000, 10, 10000};
  auto fitres = fit(g, cfg);
  const auto& s = fitres.summary;
  for (int k = 0; k < 4; ++k) {
    INFO("beta[" << k << "] true " << spec.beta[k] << " mean " << s.beta_mean[k]
                 << " ci [" << s.beta_lo[k] << ", " << s.beta_hi[k] << "]");
    CHECK(s.beta_lo[k] <= s.beta_mean[k]);
    CHECK(s.beta_mean[k] <= s.beta_hi[k]);
    bool covered = spec.beta[k] >= s.beta_lo[k] && spec.beta[k] <= s.beta_hi[k];
    bool close = std::abs(spec.beta[k] - s.beta_mean[k]) < 0.35;
    CHECK((covered || close));
  }
  CHECK(s.accept_rate_z > 0.05);
  CHECK(s.accept_rate_z < 0.8);
  CHECK(std::isfinite(s.bic));
}

TEST_CASE("mcmc is bit-reproducible for a fixed seed") {
  int n = 10;
  auto g = oracle::random_graph(n, 0.9, 51);
  ErgmConfig cfg = basic_config(n, 2, 2, 31);
  cfg.schedule = {200, 800, 10, 400};
  auto a = fit(g, cfg);
  auto b = fit(g, cfg);
  REQUIRE(a.store.samples.size() == b.store.samples.size());
  for (std::size_t i = 0; i < a.store.samples.size(); ++i) {
    CHECK(a.store.samples[i].state.beta == b.store.samples[i].state.beta);
    CHECK(a.store.samples[i].state.z.x == b.store.samples[i].state.z.x);
    CHECK(a.store.samples[i].loglik == b.store.samples[i].loglik);
  }
  CHECK(a.summary.bic == b.summary.bic);
}

TEST_CASE("useless extra latent dimensions raise the BIC") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    int n = 16;
    synth::ErgmSampleSpec spec;
    spec.beta = {0.8, 0.2, -0.4, 0.3};
    spec.z = random_points(n, 1, 60 + seed, 0.8);
    std::vector<double> raw = rank_covariate(n);
    spec.covariate.resize(n);
    for (int i = 0; i < n; ++i) spec.covariate[i] = std::log(raw[i]);
    auto g = synth::generate_ergm(spec, 600 + seed);

    ErgmConfig lean = basic_config(n, 1, 1, 900 + seed);
    lean.schedule = {1000, 6000, 10, 3000};
    ErgmConfig fat = lean;
    fat.d = 3;
    double bic_lean = fit(g, lean).summary.bic;
    double bic_fat = fit(g, fat).summary.bic;
    if (bic_fat > bic_lean) ++wins;
  }
  CHECK(wins >= 2);
}

TEST_CASE("posterior predictive draws obey the Poisson mean identity") {
  int n = 12;
  SampleStore store;
  store.n = n;
  store.d = 2;
  store.G = 1;
  std::vector<double> raw = rank_covariate(n);
  store.covariate.resize(n);
  for (int i = 0; i < n; ++i) store.covariate[i] = std::log(raw[i]);
  ErgmSample smp;
  smp.state.beta = {0.8, 0.1, -0.5, 0.4};
  smp.state.z = random_points(n, 2, 33);
  smp.state.lambda = {1.0};
  smp.state.mu = {0.0, 0.0};
  smp.state.sigma2 = {1.0};
  smp.state.labels.assign(n, 0);
  store.samples.push_back(smp);

  auto mu = mean_matrix(smp.state.beta, smp.state.z, store.covariate);
  double mu_total = std::accumulate(mu.begin(), mu.end(), 0.0);

  int S = 400;
  auto sims = posterior_predictive(store, S, 7);
  REQUIRE(static_cast<int>(sims.size()) == S);
  double mean_total = 0;
  for (const auto& net : sims) {
    mean_total += static_cast<double>(net.total_weight()) / S;
    CHECK(net.n() == n);
  }
  double se = std::sqrt(mu_total / S);  // var of the mean of Poisson totals
  CHECK(std::abs(mean_total - mu_total) <= 3 * se);
}

TEST_CASE("posterior predictive is deterministic and thread-invariant") {
  int n = 6;
  SampleStore store;
  store.n = n;
  store.d = 2;
  store.G = 1;
  store.covariate.assign(n, 0.0);
  for (int rep = 0; rep < 2; ++rep) {
    ErgmSample smp;
    smp.state.beta = {0.4, 0.0, -0.1, 0.2};
    smp.state.z = random_points(n, 2, 40 + rep);
    smp.state.lambda = {1.0};
    smp.state.mu = {0.0, 0.0};
    smp.state.sigma2 = {1.0};
    smp.state.labels.assign(n, 0);
    store.samples.push_back(smp);
  }
  auto a = posterior_predictive(store, 9, 5, 1);
  auto b = posterior_predictive(store, 9, 5, 4);
  for (int s = 0; s < 9; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(a[s].at(i, j) == b[s].at(i, j));
}

TEST_CASE("gof statistics on a complete digraph") {
  int n = 7;
  WeightedDigraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g.at(i, j) = 2;
  auto s = gof_stats(g);
  CHECK(s.density == Catch::Approx(1.0));
  // every arc's endpoints share all other n-2 nodes
  CHECK(s.esp_hist[n - 2] == static_cast<std::int64_t>(n) * (n - 1));
  CHECK(s.in_degree_hist[n - 1] == n);
  CHECK(s.out_degree_hist[n - 1] == n);
  CHECK(s.geodesic_hist[0] == static_cast<std::int64_t>(n) * (n - 1));
  CHECK(s.self_hiring_nodes == 0);
  CHECK(s.self_hire_fraction == Catch::Approx(0.0));
}

TEST_CASE("gof histogram totals and unreachable binning") {
  WeightedDigraph g(5);  // two components: {0,1,2} chain and {3,4} arc
  g.at(0, 1) = 1;
  g.at(1, 2) = 3;
  g.at(3, 4) = 1;
  g.at(0, 0) = 2;
  auto s = gof_stats(g);
  auto total = [](const std::vector<std::int64_t>& h) {
    std::int64_t t = 0;
    for (auto v : h) t += v;
    return t;
  };
  CHECK(total(s.in_degree_hist) == 5);
  CHECK(total(s.out_degree_hist) == 5);
  CHECK(total(s.geodesic_hist) == 5 * 4);
  CHECK(total(s.esp_hist) == 3);  // three off-diagonal arcs
  CHECK(s.geodesic_hist[4] == 16);  // unreachable ordered pairs
  CHECK(s.geodesic_hist[0] == 3);
  CHECK(s.geodesic_hist[1] == 1);  // 0 -> 2
  CHECK(s.self_hiring_nodes == 1);
  CHECK(s.self_hire_fraction == Catch::Approx(2.0 / 7.0));
}

TEST_CASE("sample store round-trips through JSON lines") {
  int n = 5;
  SampleStore store;
  store.n = n;
  store.d = 2;
  store.G = 2;
  store.covariate = {0.0, 0.1, 0.2, 0.3, 0.4};
  for (int rep = 0; rep < 3; ++rep) {
    ErgmSample smp;
    smp.state.beta = {0.1 * rep, 0.2, -0.3, 0.4};
    smp.state.z = random_points(n, 2, 70 + rep);
    smp.state.lambda = {0.4, 0.6};
    smp.state.mu = {0.0, 0.1, 0.2, 0.3};
    smp.state.sigma2 = {1.0, 2.0};
    smp.state.labels = {0, 1, 0, 1, 0};
    smp.loglik = -12.5 + rep;
    store.samples.push_back(smp);
  }
  std::ostringstream out;
  io::save_store(store, out);
  std::istringstream in(out.str());
  auto loaded = io::load_store(in);
  CHECK(loaded.n == store.n);
  CHECK(loaded.covariate == store.covariate);
  REQUIRE(loaded.samples.size() == 3);
  for (int rep = 0; rep < 3; ++rep) {
    CHECK(loaded.samples[rep].state.beta == store.samples[rep].state.beta);
    CHECK(loaded.samples[rep].state.z.x == store.samples[rep].state.z.x);
    CHECK(loaded.samples[rep].state.labels == store.samples[rep].state.labels);
    CHECK(loaded.samples[rep].loglik == store.samples[rep].loglik);
  }
}

TEST_CASE("bic parameter count follows the stated decomposition") {
  CHECK(bic_parameter_count(83, 3, 3) == 4 + 83 * 3 + 2 + 3 * 4);
  CHECK(bic_parameter_count(30, 1, 1) == 4 + 30 + 0 + 2);
}
