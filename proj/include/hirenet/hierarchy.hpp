#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/rng.hpp"

namespace hirenet::hierarchy {

struct DominanceSummary {
  std::vector<double> w;  // dominated count per node, ties contribute 1/2
  double h = 0.0;         // Landau index in [0,1]
};

struct DavidsScores {
  std::vector<double> P;  // dyadic win proportions, row-major n*n, P_ii = 0
  std::vector<double> w, w2, l, l2;
  std::vector<double> D;  // normalized score, sums to n(n-1)/2
};

struct TestResult {
  double observed = 0.0;
  std::vector<double> replicates;  // length m
  double p_value = 1.0;            // (1 + #extreme) / (m + 1)
};

struct SteepnessFit {
  double slope = 0.0;      // <= 0: response sorted descending
  double intercept = 0.0;
  std::vector<double> sorted_scores;  // David's scores, descending
  std::vector<int> ranks;             // 1..n
};

namespace detail {

inline double landau_from_scores(const std::vector<double>& w) {
  std::size_t n = w.size();
  double mid = (static_cast<double>(n) - 1.0) / 2.0;
  double ss = 0;
  for (double wi : w) ss += (wi - mid) * (wi - mid);
  return 12.0 / (static_cast<double>(n) * (static_cast<double>(n) * n - 1.0)) * ss;
}

inline double ols_slope_desc(const std::vector<double>& d, double* intercept) {
  // response already sorted descending, regressor is rank 1..n
  std::size_t n = d.size();
  double mx = (n + 1.0) / 2.0;
  double my = 0;
  for (double v : d) my += v;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double dx = (k + 1.0) - mx;
    sxy += dx * (d[k] - my);
    sxx += dx * dx;
  }
  double slope = sxy / sxx;
  if (intercept) *intercept = my - slope * mx;
  return slope;
}

}  // namespace detail

/// Landau's hierarchy index. Node i dominates j when it places more faculty
/// at j than it hires from j; undecided dyads (ties and double zeroes) add
/// 1/2 to both scores. h = 1 on a strict linear order, 0 when egalitarian.
inline DominanceSummary landau_h(const WeightedDigraph& g) {
  int n = g.n();
  if (n < 3) throw NumericError("landau_h undefined for n < 3");
  DominanceSummary s;
  s.w.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::int64_t yij = g.at(i, j), yji = g.at(j, i);
      if (yij > yji)
        s.w[i] += 1.0;
      else if (yji > yij)
        s.w[j] += 1.0;
      else {
        s.w[i] += 0.5;
        s.w[j] += 0.5;
      }
    }
  s.h = detail::landau_from_scores(s.w);
  return s;
}

/// Randomization test for the existence of a linear hierarchy. Every
/// replicate re-orients each dyad by an independent fair coin and the upper
/// tail of Landau's h is evaluated with the add-one estimator.
inline TestResult linearity_test(const WeightedDigraph& g, int m,
                                 std::uint64_t seed, unsigned threads = 1) {
  if (m < 100) throw ConfigError("linearity test requires m >= 100");
  int n = g.n();
  TestResult res;
  res.observed = landau_h(g).h;
  res.replicates.assign(m, 0.0);
  parallel_for(m, threads, [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (rng() & 1ULL)
          w[i] += 1.0;
        else
          w[j] += 1.0;
      }
    res.replicates[r] = detail::landau_from_scores(w);
  });
  int extreme = 0;
  for (double h : res.replicates)
    if (h >= res.observed) ++extreme;
  res.p_value = (1.0 + extreme) / (m + 1.0);
  return res;
}

inline DavidsScores davids_scores(const WeightedDigraph& g) {
  int n = g.n();
  if (n < 2) throw NumericError("David's scores undefined for n < 2");
  DavidsScores s;
  s.P.assign(static_cast<std::size_t>(n) * n, 0.0);
  auto P = [&](int i, int j) -> double& {
    return s.P[static_cast<std::size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::int64_t nij = g.at(i, j) + g.at(j, i);
      // non-interacting dyads keep P = 0 (plain-P convention)
      if (nij > 0) P(i, j) = static_cast<double>(g.at(i, j)) / nij;
    }
  s.w.assign(n, 0.0);
  s.l.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s.w[i] += P(i, j);
      s.l[i] += P(j, i);
    }
  s.w2.assign(n, 0.0);
  s.l2.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s.w2[i] += s.w[j] * P(i, j);
      s.l2[i] += s.l[j] * P(j, i);
    }
  s.D.resize(n);
  double shift = static_cast<double>(n) * (n - 1) / 2.0;
  for (int i = 0; i < n; ++i)
    s.D[i] = (s.w[i] + s.w2[i] - s.l[i] - s.l2[i] + shift) / n;
  return s;
}

/// OLS fit of descending-sorted David's scores against ranks 1..n.
/// The slope magnitude is the steepness of the hierarchy.
inline SteepnessFit steepness(const WeightedDigraph& g) {
  if (g.n() < 3) throw NumericError("steepness undefined for n < 3");
  SteepnessFit fit;
  fit.sorted_scores = davids_scores(g).D;
  std::sort(fit.sorted_scores.begin(), fit.sorted_scores.end(),
            std::greater<double>());
  fit.ranks.resize(g.n());
  for (int k = 0; k < g.n(); ++k) fit.ranks[k] = k + 1;
  fit.slope = detail::ols_slope_desc(fit.sorted_scores, &fit.intercept);
  return fit;
}

/// Permutation test for steepness: each replicate keeps every dyad's
/// interaction total fixed and splits it Binomial(n_ij, 1/2), so the null
/// preserves the interaction structure the statistic depends on.
inline TestResult steepness_test(const WeightedDigraph& g, int m,
                                 std::uint64_t seed, unsigned threads = 1) {
  if (m < 100) throw ConfigError("steepness test requires m >= 100");
  int n = g.n();
  TestResult res;
  res.observed = steepness(g).slope;
  res.replicates.assign(m, 0.0);

  std::vector<std::int64_t> totals;  // interaction totals per dyad i<j
  totals.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) totals.push_back(g.at(i, j) + g.at(j, i));

  parallel_for(m, threads, [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    WeightedDigraph rep(n);
    std::size_t t = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++t) {
        std::int64_t nij = totals[t];
        if (nij == 0) continue;
        std::binomial_distribution<std::int64_t> bin(nij, 0.5);
        std::int64_t up = bin(rng);
        rep.at(i, j) = up;
        rep.at(j, i) = nij - up;
      }
    res.replicates[r] = steepness(rep).slope;
  });
  int extreme = 0;
  for (double sl : res.replicates)
    if (std::abs(sl) >= std::abs(res.observed)) ++extreme;
  res.p_value = (1.0 + extreme) / (m + 1.0);
  return res;
}

}  // namespace hirenet::hierarchy
