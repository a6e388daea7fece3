#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hirenet/cluster.hpp"  // Points
#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/procrustes.hpp"
#include "hirenet/rng.hpp"

namespace hirenet::ergm {

using grouping::Points;

struct Priors {
  double beta_var = 9.0;       // beta_k ~ N(0, beta_var)
  double mu_var = 4.0;         // mu_g ~ N(0, mu_var * I_d)
  double sigma2_df = 2.0;      // sigma2_g ~ scaled-inv-chi2(df, scale)
  double sigma2_scale = 1.0;
  double dirichlet_alpha = 1.0;
};

struct Schedule {
  long warmup = 50000;
  long iterations = 5000000;
  long thin = 100;
  long window = 50000;  // samples come from the last `window` iterations

  static Schedule paper() { return {}; }
  static Schedule desk() { return {5000, 50000, 10, 5000}; }
};

struct ErgmConfig {
  int d = 3;
  int G = 3;
  /// Per-node covariate on the log scale (natural log of the MVS2 index);
  /// feeds the loop, sender and receiver terms alike.
  std::vector<double> covariate;
  Priors priors;
  Schedule schedule;
  double z_proposal = 0.5;
  double beta_proposal = 0.1;
  bool adapt_proposals = true;  // warmup-only tuning, frozen afterwards
  bool prior_only = false;      // drop the data term (prior sampling)
  std::uint64_t seed = 0;

  /// Builds the covariate from raw MVS2-style indices (must be positive).
  void set_covariate_index(const std::vector<double>& raw) {
    covariate.clear();
    covariate.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!(raw[i] > 0))
        throw ConfigError("ergm covariate: nonpositive index at node " +
                          std::to_string(i));
      covariate.push_back(std::log(raw[i]));
    }
  }

  void validate(int n) const {
    if (d < 1 || G < 1) throw ConfigError("ergm config: d >= 1 and G >= 1 required");
    if (static_cast<int>(covariate.size()) != n)
      throw ConfigError("ergm config: covariate size must match node count");
    if (!(priors.beta_var > 0) || !(priors.mu_var > 0) ||
        !(priors.sigma2_scale > 0) || !(priors.sigma2_df > 0) ||
        !(priors.dirichlet_alpha > 0))
      throw ConfigError("ergm config: prior hyperparameters must be positive");
    if (schedule.warmup < 0 || schedule.iterations < 0 || schedule.thin < 1 ||
        schedule.window < 0)
      throw ConfigError("ergm config: invalid schedule");
  }
};

/// One point of the Markov chain: coefficients, latent positions and the
/// normal-mixture block. Labels are 0-based internally.
struct ErgmState {
  std::vector<double> beta;  // (intercept, loop, sender, receiver)
  Points z;
  std::vector<double> lambda;  // G
  std::vector<double> mu;      // row-major G x d
  std::vector<double> sigma2;  // G
  std::vector<int> labels;     // n, in 0..G-1
};

struct ErgmSample {
  ErgmState state;
  double loglik = 0.0;
};

struct SampleStore {
  int n = 0, d = 0, G = 0;
  std::vector<double> covariate;
  std::vector<ErgmSample> samples;
};

struct TracePoint {
  long iteration = 0;  // negative during warmup
  double loglik = 0.0;
  std::array<double, 4> beta{};
};

struct PosteriorSummary {
  std::array<double, 4> beta_mean{};
  std::array<double, 4> beta_lo{};  // 2.5% quantile
  std::array<double, 4> beta_hi{};  // 97.5% quantile
  Points z_mean;
  std::vector<double> lambda_mean, sigma2_mean;
  std::vector<double> mu_mean;  // G x d
  std::vector<double> loglik_per_sample;
  std::vector<TracePoint> trace;
  double bic = 0.0;
  double accept_rate_z = 0.0;
  std::array<double, 4> accept_rate_beta{};
  std::vector<std::string> warnings;
  int n_samples = 0;
};

namespace detail {

inline double sq(double v) { return v * v; }

inline double point_dist(const Points& z, int i, int j) {
  double s = 0;
  for (int k = 0; k < z.d; ++k) s += sq(z.coord(i, k) - z.coord(j, k));
  return std::sqrt(s);
}

inline double quantile_sorted(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  double pos = q * (xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  double f = pos - lo;
  return xs[lo] * (1 - f) + xs[lo + 1] * f;
}

}  // namespace detail

/// Poisson log mean for the ordered pair (i, j); the latent-distance term
/// vanishes on the diagonal and the loop covariate applies only there.
inline double eta(const std::vector<double>& beta, const Points& z,
                  const std::vector<double>& x, int i, int j) {
  double v = beta[0] + beta[2] * x[i] + beta[3] * x[j];
  if (i == j)
    v += beta[1] * x[i];
  else
    v -= detail::point_dist(z, i, j);
  return v;
}

/// Row-major n x n matrix of Poisson means exp(eta).
inline std::vector<double> mean_matrix(const std::vector<double>& beta,
                                       const Points& z,
                                       const std::vector<double>& x) {
  int n = z.n;
  std::vector<double> mu(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mu[static_cast<std::size_t>(i) * n + j] = std::exp(eta(beta, z, x, i, j));
  return mu;
}

/// Full Poisson log likelihood over every ordered pair, diagonal included.
inline double log_likelihood(const WeightedDigraph& g, const ErgmState& state,
                             const ErgmConfig& config) {
  int n = g.n();
  if (state.z.n != n || static_cast<int>(config.covariate.size()) != n)
    throw ConfigError("log_likelihood: state/config dimensions do not match graph");
  double ll = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double e = eta(state.beta, state.z, config.covariate, i, j);
      double y = static_cast<double>(g.at(i, j));
      ll += y * e - std::exp(e) - std::lgamma(y + 1.0);
    }
  return ll;
}

namespace detail {

class Sampler {
public:
  Sampler(const WeightedDigraph& g, const ErgmConfig& cfg)
      : g_(g), cfg_(cfg), n_(g.n()), rng_(make_rng(cfg.seed, 0)) {
    cfg_.validate(n_);
    x_ = cfg_.covariate;
    // sufficient statistics for the beta updates
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double y = static_cast<double>(g_.at(i, j));
        sy_[0] += y;
        sy_[2] += y * x_[i];
        sy_[3] += y * x_[j];
        if (i == j) sy_[1] += y * x_[i];
      }
    init_state();
    beta_scale_.fill(cfg_.beta_proposal);
    z_scale_ = cfg_.z_proposal;
  }

  ErgmState& state() { return st_; }

  void run(SampleStore& store, PosteriorSummary& summary) {
    const Schedule& sc = cfg_.schedule;
    long trace_stride = std::max<long>(1, sc.iterations / 1000);
    for (long it = 1; it <= sc.warmup; ++it) {
      sweep();
      if (cfg_.adapt_proposals && it % adapt_window_ == 0) adapt();
    }
    reset_counters();
    long record_from = sc.iterations - std::min(sc.window, sc.iterations);
    for (long it = 1; it <= sc.iterations; ++it) {
      sweep();
      if (it % trace_stride == 0)
        summary.trace.push_back({it, current_loglik(), {st_.beta[0], st_.beta[1],
                                                        st_.beta[2], st_.beta[3]}});
      if (it > record_from && (it - record_from) % sc.thin == 0) record(store);
    }
    if (store.samples.empty()) record(store);  // degenerate schedules
    finalize(store, summary);
  }

private:
  static constexpr long adapt_window_ = 100;

  void init_state() {
    st_.beta.assign(4, 0.0);
    st_.z.n = n_;
    st_.z.d = cfg_.d;
    st_.z.x.resize(static_cast<std::size_t>(n_) * cfg_.d);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (auto& v : st_.z.x) v = nd(rng_);
    st_.lambda.assign(cfg_.G, 1.0 / cfg_.G);
    st_.mu.assign(static_cast<std::size_t>(cfg_.G) * cfg_.d, 0.0);
    st_.sigma2.assign(cfg_.G, 1.0);
    st_.labels.resize(n_);
    for (int i = 0; i < n_; ++i)
      st_.labels[i] = static_cast<int>(rng_() % cfg_.G);
  }

  double eta_ij(int i, int j) const { return eta(st_.beta, st_.z, x_, i, j); }

  // log-likelihood delta from moving node i to zprop (distances dnew vs dold)
  double z_loglik_delta(int i, const std::vector<double>& dold,
                        const std::vector<double>& dnew) const {
    if (cfg_.prior_only) return 0.0;
    double delta = 0;
    for (int j = 0; j < n_; ++j) {
      if (j == i) continue;
      double base_ij = st_.beta[0] + st_.beta[2] * x_[i] + st_.beta[3] * x_[j];
      double base_ji = st_.beta[0] + st_.beta[2] * x_[j] + st_.beta[3] * x_[i];
      double dd = dnew[j] - dold[j];
      delta += -static_cast<double>(g_.at(i, j)) * dd -
               (std::exp(base_ij - dnew[j]) - std::exp(base_ij - dold[j]));
      delta += -static_cast<double>(g_.at(j, i)) * dd -
               (std::exp(base_ji - dnew[j]) - std::exp(base_ji - dold[j]));
    }
    return delta;
  }

  void update_z() {
    std::normal_distribution<double> nd(0.0, z_scale_);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> zprop(cfg_.d), dold(n_), dnew(n_);
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < cfg_.d; ++k)
        zprop[k] = st_.z.coord(i, k) + nd(rng_);
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        dold[j] = point_dist(st_.z, i, j);
        double s = 0;
        for (int k = 0; k < cfg_.d; ++k) s += sq(zprop[k] - st_.z.coord(j, k));
        dnew[j] = std::sqrt(s);
      }
      int gi = st_.labels[i];
      double dprior = 0;
      for (int k = 0; k < cfg_.d; ++k) {
        double m = st_.mu[static_cast<std::size_t>(gi) * cfg_.d + k];
        dprior += (sq(st_.z.coord(i, k) - m) - sq(zprop[k] - m)) /
                  (2.0 * st_.sigma2[gi]);
      }
      double logr = z_loglik_delta(i, dold, dnew) + dprior;
      ++z_proposals_;
      if (logr >= 0 || std::log(unif(rng_)) < logr) {
        ++z_accepts_;
        for (int k = 0; k < cfg_.d; ++k)
          st_.z.x[static_cast<std::size_t>(i) * cfg_.d + k] = zprop[k];
      }
    }
  }

  // likelihood delta for beta[k] += step; phi_k is 1, x_i (diag only), x_i, x_j
  double beta_loglik_delta(int k, double step) const {
    if (cfg_.prior_only) return 0.0;
    double delta = step * sy_[k];
    if (k == 1) {
      for (int i = 0; i < n_; ++i) {
        double e = eta_ij(i, i);
        delta -= std::exp(e + step * x_[i]) - std::exp(e);
      }
      return delta;
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double e = eta_ij(i, j);
        double phi = k == 0 ? 1.0 : (k == 2 ? x_[i] : x_[j]);
        delta -= std::exp(e + step * phi) - std::exp(e);
      }
    return delta;
  }

  void update_beta() {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 4; ++k) {
      std::normal_distribution<double> nd(0.0, beta_scale_[k]);
      double step = nd(rng_);
      double bnew = st_.beta[k] + step;
      double logr = beta_loglik_delta(k, step) +
                    (sq(st_.beta[k]) - sq(bnew)) / (2.0 * cfg_.priors.beta_var);
      ++beta_proposals_[k];
      if (logr >= 0 || std::log(unif(rng_)) < logr) {
        ++beta_accepts_[k];
        st_.beta[k] = bnew;
      }
    }
  }

  void update_mixture() {
    int G = cfg_.G, d = cfg_.d;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // labels
    std::vector<double> logp(G);
    for (int i = 0; i < n_; ++i) {
      for (int gidx = 0; gidx < G; ++gidx) {
        double s2 = st_.sigma2[gidx];
        double lp = std::log(st_.lambda[gidx]) - 0.5 * d * std::log(2 * M_PI * s2);
        for (int k = 0; k < d; ++k)
          lp -= sq(st_.z.coord(i, k) - st_.mu[static_cast<std::size_t>(gidx) * d + k]) /
                (2.0 * s2);
        logp[gidx] = lp;
      }
      double mx = *std::max_element(logp.begin(), logp.end());
      double tot = 0;
      for (double& v : logp) {
        v = std::exp(v - mx);
        tot += v;
      }
      double r = unif(rng_) * tot, cum = 0;
      int pick = G - 1;
      for (int gidx = 0; gidx < G; ++gidx) {
        cum += logp[gidx];
        if (r <= cum) {
          pick = gidx;
          break;
        }
      }
      st_.labels[i] = pick;
    }
    // counts and per-group sums
    std::vector<int> cnt(G, 0);
    std::vector<double> sum(static_cast<std::size_t>(G) * d, 0.0);
    for (int i = 0; i < n_; ++i) {
      int gi = st_.labels[i];
      ++cnt[gi];
      for (int k = 0; k < d; ++k)
        sum[static_cast<std::size_t>(gi) * d + k] += st_.z.coord(i, k);
    }
    // lambda ~ Dirichlet(alpha + counts)
    double lam_tot = 0;
    for (int gidx = 0; gidx < G; ++gidx) {
      std::gamma_distribution<double> gd(cfg_.priors.dirichlet_alpha + cnt[gidx], 1.0);
      st_.lambda[gidx] = gd(rng_);
      lam_tot += st_.lambda[gidx];
    }
    for (double& l : st_.lambda) l /= lam_tot;
    // mu_g | z, sigma2 (conjugate normal, spherical)
    for (int gidx = 0; gidx < G; ++gidx) {
      double prec = 1.0 / cfg_.priors.mu_var + cnt[gidx] / st_.sigma2[gidx];
      double sd = std::sqrt(1.0 / prec);
      for (int k = 0; k < d; ++k) {
        double mean = (sum[static_cast<std::size_t>(gidx) * d + k] / st_.sigma2[gidx]) / prec;
        std::normal_distribution<double> nd(mean, sd);
        st_.mu[static_cast<std::size_t>(gidx) * d + k] = nd(rng_);
      }
    }
    // sigma2_g | z, mu (scaled inverse chi-squared)
    for (int gidx = 0; gidx < G; ++gidx) {
      double ss = 0;
      for (int i = 0; i < n_; ++i) {
        if (st_.labels[i] != gidx) continue;
        for (int k = 0; k < d; ++k)
          ss += sq(st_.z.coord(i, k) - st_.mu[static_cast<std::size_t>(gidx) * d + k]);
      }
      double dof = cfg_.priors.sigma2_df + cnt[gidx] * d;
      double scale_sum = cfg_.priors.sigma2_df * cfg_.priors.sigma2_scale + ss;
      std::chi_squared_distribution<double> chi(dof);
      st_.sigma2[gidx] = scale_sum / chi(rng_);
    }
  }

  void sweep() {
    update_z();
    update_beta();
    update_mixture();
  }

  void adapt() {
    auto tune = [](double rate, double target, double& scale) {
      scale *= std::exp(1.2 * (rate - target));
      scale = std::clamp(scale, 1e-4, 50.0);
    };
    if (z_proposals_ > 0)
      tune(static_cast<double>(z_accepts_) / z_proposals_, 0.3, z_scale_);
    for (int k = 0; k < 4; ++k)
      if (beta_proposals_[k] > 0)
        tune(static_cast<double>(beta_accepts_[k]) / beta_proposals_[k], 0.35,
             beta_scale_[k]);
    reset_counters();
  }

  void reset_counters() {
    z_proposals_ = z_accepts_ = 0;
    beta_proposals_.fill(0);
    beta_accepts_.fill(0);
  }

  double current_loglik() const {
    return cfg_.prior_only ? 0.0 : log_likelihood(g_, st_, cfg_);
  }

  void record(SampleStore& store) {
    ErgmSample smp;
    smp.state = st_;
    smp.loglik = current_loglik();
    if (!std::isfinite(smp.loglik))
      throw NumericError("ergm fit aborted: divergent log-likelihood");
    if (!store.samples.empty()) {
      const ErgmState& ref = store.samples.front().state;
      procrustes::RigidTransform t = procrustes::fit_transform(ref.z, smp.state.z);
      Points aligned = smp.state.z;
      std::vector<double> tmp(cfg_.d);
      for (int i = 0; i < n_; ++i) {
        t.apply(&smp.state.z.x[static_cast<std::size_t>(i) * cfg_.d], tmp.data());
        for (int k = 0; k < cfg_.d; ++k)
          aligned.x[static_cast<std::size_t>(i) * cfg_.d + k] = tmp[k];
      }
      smp.state.z = std::move(aligned);
      std::vector<double> mu_aligned(smp.state.mu.size());
      for (int gidx = 0; gidx < cfg_.G; ++gidx)
        t.apply(&smp.state.mu[static_cast<std::size_t>(gidx) * cfg_.d],
                &mu_aligned[static_cast<std::size_t>(gidx) * cfg_.d]);
      smp.state.mu = std::move(mu_aligned);
      relabel_to(ref.labels, smp.state);
    }
    store.samples.push_back(std::move(smp));
  }

  // permute mixture labels to best agree with the reference assignment
  void relabel_to(const std::vector<int>& ref, ErgmState& s) const {
    int G = cfg_.G;
    if (G == 1 || G > 7) return;  // 7! comparisons is already past useful
    std::vector<int> perm(G), best(G);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    int best_agree = -1;
    std::vector<int> p = perm;
    std::sort(p.begin(), p.end());
    do {
      int agree = 0;
      for (int i = 0; i < n_; ++i)
        if (p[s.labels[i]] == ref[i]) ++agree;
      if (agree > best_agree) {
        best_agree = agree;
        best = p;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    // apply: new index of group gidx is best[gidx]
    ErgmState t = s;
    for (int i = 0; i < n_; ++i) t.labels[i] = best[s.labels[i]];
    for (int gidx = 0; gidx < G; ++gidx) {
      int to = best[gidx];
      t.lambda[to] = s.lambda[gidx];
      t.sigma2[to] = s.sigma2[gidx];
      for (int k = 0; k < cfg_.d; ++k)
        t.mu[static_cast<std::size_t>(to) * cfg_.d + k] =
            s.mu[static_cast<std::size_t>(gidx) * cfg_.d + k];
    }
    s = std::move(t);
  }

  void finalize(SampleStore& store, PosteriorSummary& summary) {
    store.n = n_;
    store.d = cfg_.d;
    store.G = cfg_.G;
    store.covariate = x_;
    int S = static_cast<int>(store.samples.size());
    summary.n_samples = S;
    std::array<std::vector<double>, 4> beta_draws;
    for (auto& v : beta_draws) v.reserve(S);
    summary.z_mean.n = n_;
    summary.z_mean.d = cfg_.d;
    summary.z_mean.x.assign(static_cast<std::size_t>(n_) * cfg_.d, 0.0);
    summary.lambda_mean.assign(cfg_.G, 0.0);
    summary.sigma2_mean.assign(cfg_.G, 0.0);
    summary.mu_mean.assign(static_cast<std::size_t>(cfg_.G) * cfg_.d, 0.0);
    for (const auto& smp : store.samples) {
      for (int k = 0; k < 4; ++k) beta_draws[k].push_back(smp.state.beta[k]);
      for (std::size_t i = 0; i < smp.state.z.x.size(); ++i)
        summary.z_mean.x[i] += smp.state.z.x[i] / S;
      for (int gidx = 0; gidx < cfg_.G; ++gidx) {
        summary.lambda_mean[gidx] += smp.state.lambda[gidx] / S;
        summary.sigma2_mean[gidx] += smp.state.sigma2[gidx] / S;
      }
      for (std::size_t i = 0; i < smp.state.mu.size(); ++i)
        summary.mu_mean[i] += smp.state.mu[i] / S;
      summary.loglik_per_sample.push_back(smp.loglik);
    }
    for (int k = 0; k < 4; ++k) {
      double m = std::accumulate(beta_draws[k].begin(), beta_draws[k].end(), 0.0) / S;
      summary.beta_mean[k] = m;
      summary.beta_lo[k] = quantile_sorted(beta_draws[k], 0.025);
      summary.beta_hi[k] = quantile_sorted(beta_draws[k], 0.975);
    }
    summary.accept_rate_z =
        z_proposals_ ? static_cast<double>(z_accepts_) / z_proposals_ : 0.0;
    for (int k = 0; k < 4; ++k)
      summary.accept_rate_beta[k] =
          beta_proposals_[k]
              ? static_cast<double>(beta_accepts_[k]) / beta_proposals_[k]
              : 0.0;
    auto check_rate = [&summary](const std::string& what, double r) {
      if (r < 0.05 || r > 0.8)
        summary.warnings.push_back(what + " acceptance rate " +
                                   std::to_string(r) + " outside [0.05, 0.8]");
    };
    if (cfg_.schedule.iterations > 0) {
      check_rate("latent position", summary.accept_rate_z);
      for (int k = 0; k < 4; ++k)
        check_rate("beta[" + std::to_string(k) + "]", summary.accept_rate_beta[k]);
    }
  }

  const WeightedDigraph& g_;
  ErgmConfig cfg_;
  int n_;
  Rng rng_;
  std::vector<double> x_;
  std::array<double, 4> sy_{};  // sum of y * phi_k
  ErgmState st_;
  double z_scale_ = 0.5;
  std::array<double, 4> beta_scale_{};
  long z_proposals_ = 0, z_accepts_ = 0;
  std::array<long, 4> beta_proposals_{}, beta_accepts_{};
};

}  // namespace detail

/// Free-parameter count behind the BIC: 4 coefficients, n*d latent
/// coordinates, G-1 mixture weights and G means-plus-variance blocks.
inline int bic_parameter_count(int n, int d, int G) {
  return 4 + n * d + (G - 1) + G * (d + 1);
}

inline double bic(const WeightedDigraph& g, const PosteriorSummary& summary,
                  const ErgmConfig& config) {
  ErgmState mean_state;
  mean_state.beta.assign(summary.beta_mean.begin(), summary.beta_mean.end());
  mean_state.z = summary.z_mean;
  mean_state.lambda = summary.lambda_mean;
  mean_state.mu = summary.mu_mean;
  mean_state.sigma2 = summary.sigma2_mean;
  double ll = log_likelihood(g, mean_state, config);
  int p = bic_parameter_count(g.n(), config.d, config.G);
  return -2.0 * ll + p * std::log(static_cast<double>(g.n()) * g.n());
}

struct FitResult {
  PosteriorSummary summary;
  SampleStore store;
};

/// Metropolis-within-Gibbs fit: random-walk MH on each latent position and
/// each coefficient (the Poisson likelihood admits no conjugate beta draw),
/// conjugate Gibbs for the mixture block. Stored samples are aligned to the
/// first one by a rigid motion and label-matched to it.
inline FitResult fit(const WeightedDigraph& g, const ErgmConfig& config) {
  detail::Sampler sampler(g, config);
  FitResult out;
  sampler.run(out.store, out.summary);
  out.summary.bic = bic(g, out.summary, config);
  return out;
}

/// Networks simulated from stored posterior samples (cycled in order);
/// every ordered pair, diagonal included, is an independent Poisson draw.
inline std::vector<WeightedDigraph> posterior_predictive(const SampleStore& store,
                                                         int S, std::uint64_t seed,
                                                         unsigned threads = 1) {
  if (store.samples.empty())
    throw InputError("posterior_predictive: empty sample store");
  if (S < 1) throw ConfigError("posterior_predictive: S >= 1 required");
  int n = store.n;
  std::vector<WeightedDigraph> sims(S, WeightedDigraph(n));
  parallel_for(S, threads, [&](std::size_t s) {
    const ErgmSample& smp = store.samples[s % store.samples.size()];
    std::vector<double> mu = mean_matrix(smp.state.beta, smp.state.z, store.covariate);
    Rng rng = make_rng(seed, s);
    WeightedDigraph& g = sims[s];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double m = mu[static_cast<std::size_t>(i) * n + j];
        if (!(m < 1e12))
          throw NumericError("posterior_predictive: divergent Poisson mean");
        std::poisson_distribution<std::int64_t> pois(m);
        g.at(i, j) = pois(rng);
      }
  });
  return sims;
}

// ---- posterior-predictive goodness of fit ----

/// The seven Fig-7..9-style statistics of one network.
struct GofStats {
  std::vector<std::int64_t> in_degree_hist;   // index = degree 0..n-1
  std::vector<std::int64_t> out_degree_hist;  // index = degree 0..n-1
  std::vector<std::int64_t> geodesic_hist;    // index k = distance k+1; last = unreachable
  std::vector<std::int64_t> esp_hist;         // index = shared partners 0..n-2
  double density = 0.0;
  int self_hiring_nodes = 0;
  double self_hire_fraction = 0.0;
};

struct GofReport {
  GofStats observed;
  std::vector<GofStats> simulated;
};

inline GofStats gof_stats(const WeightedDigraph& g) {
  int n = g.n();
  GofStats s;
  s.in_degree_hist.assign(n, 0);
  s.out_degree_hist.assign(n, 0);
  s.geodesic_hist.assign(n, 0);
  s.esp_hist.assign(std::max(n - 1, 1), 0);

  std::vector<std::vector<int>> out_adj(n);
  std::vector<std::vector<bool>> nbr(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    int din = 0, dout = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (g.at(i, j) > 0) {
        ++dout;
        out_adj[i].push_back(j);
        nbr[i][j] = nbr[j][i] = true;
      }
      if (g.at(j, i) > 0) ++din;
    }
    ++s.in_degree_hist[din];
    ++s.out_degree_hist[dout];
  }
  // directed unweighted geodesics; unreachable pairs in the last bin
  for (int src = 0; src < n; ++src) {
    std::vector<int> dist(n, -1);
    std::vector<int> queue{src};
    dist[src] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int v = queue[q];
      for (int w : out_adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    for (int j = 0; j < n; ++j) {
      if (j == src) continue;
      if (dist[j] < 0)
        ++s.geodesic_hist[n - 1];
      else
        ++s.geodesic_hist[dist[j] - 1];
    }
  }
  // edgewise shared partners over the undirected neighbor sets
  for (int i = 0; i < n; ++i)
    for (int j : out_adj[i]) {
      int k = 0;
      for (int v = 0; v < n; ++v)
        if (v != i && v != j && nbr[i][v] && nbr[j][v]) ++k;
      ++s.esp_hist[k];
    }
  if (n >= 2)
    s.density = static_cast<double>(g.offdiag_edge_count()) /
                (static_cast<double>(n) * (n - 1));
  std::int64_t total = g.total_weight(), diag = 0;
  for (int i = 0; i < n; ++i) {
    if (g.at(i, i) > 0) ++s.self_hiring_nodes;
    diag += g.at(i, i);
  }
  s.self_hire_fraction = total > 0 ? static_cast<double>(diag) / total : 0.0;
  return s;
}

inline GofReport gof(const WeightedDigraph& observed,
                     const std::vector<WeightedDigraph>& simulated,
                     unsigned threads = 1) {
  if (simulated.empty()) throw InputError("gof: need at least one simulated network");
  GofReport rep;
  rep.observed = gof_stats(observed);
  rep.simulated.resize(simulated.size());
  parallel_for(simulated.size(), threads,
               [&](std::size_t i) { rep.simulated[i] = gof_stats(simulated[i]); });
  return rep;
}

}  // namespace hirenet::ergm
