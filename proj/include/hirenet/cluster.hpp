#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/rng.hpp"

namespace hirenet::grouping {

/// Row-major n x d point cloud.
struct Points {
  int n = 0, d = 0;
  std::vector<double> x;

  double coord(int i, int k) const { return x[static_cast<std::size_t>(i) * d + k]; }
  double dist(int i, int j) const {
    double s = 0;
    for (int k = 0; k < d; ++k) {
      double t = coord(i, k) - coord(j, k);
      s += t * t;
    }
    return std::sqrt(s);
  }
};

struct GroupAssignment {
  int k = 0;
  std::vector<int> labels;   // node -> 1..k
  std::vector<int> medoids;  // point index per cluster
  double dispersion = 0.0;   // sum of distances to the assigned medoid
};

struct GapCurve {
  struct Entry {
    int k = 0;
    double gap = 0.0;
    double se = 0.0;        // sd * sqrt(1 + 1/B)
    double dispersion = 0;  // W_k on the data
  };
  std::vector<Entry> entries;
  int selected_k = 1;
};

struct AggregateNetwork {
  int k = 0;
  std::vector<std::int64_t> flow;  // row-major k x k
  double within_fraction = 0.0;

  std::int64_t at(int a, int b) const { return flow[static_cast<std::size_t>(a) * k + b]; }
};

namespace detail {

inline void assign_to_medoids(const Points& pts, const std::vector<int>& med,
                              std::vector<int>& labels, double& cost) {
  cost = 0;
  for (int i = 0; i < pts.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (std::size_t m = 0; m < med.size(); ++m) {
      double d = pts.dist(i, med[m]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(m);
      }
    }
    labels[i] = arg + 1;
    cost += best;
  }
}

}  // namespace detail

/// Classic PAM: greedy BUILD then steepest-descent SWAP under Euclidean
/// distance. The seed only shuffles the candidate scan order, which breaks
/// exact cost ties; everything else is deterministic.
inline GroupAssignment pam(const Points& pts, int k, std::uint64_t seed) {
  if (k < 1 || k > pts.n) throw ConfigError("pam requires 1 <= k <= n");
  int n = pts.n;
  std::vector<int> scan(n);
  std::iota(scan.begin(), scan.end(), 0);
  Rng rng = Rng(derive_seed(seed, 0));
  std::shuffle(scan.begin(), scan.end(), rng);

  // BUILD: first medoid minimizes total distance, the rest maximize gain
  std::vector<int> medoids;
  std::vector<double> dnear(n, std::numeric_limits<double>::infinity());
  {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int c : scan) {
      double tot = 0;
      for (int i = 0; i < n; ++i) tot += pts.dist(i, c);
      if (tot < best) {
        best = tot;
        arg = c;
      }
    }
    medoids.push_back(arg);
    for (int i = 0; i < n; ++i) dnear[i] = pts.dist(i, arg);
  }
  while (static_cast<int>(medoids.size()) < k) {
    double best_gain = -1;
    int arg = -1;
    for (int c : scan) {
      if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
      double gain = 0;
      for (int i = 0; i < n; ++i)
        gain += std::max(0.0, dnear[i] - pts.dist(i, c));
      if (gain > best_gain) {
        best_gain = gain;
        arg = c;
      }
    }
    medoids.push_back(arg);
    for (int i = 0; i < n; ++i) dnear[i] = std::min(dnear[i], pts.dist(i, arg));
  }

  GroupAssignment ga;
  ga.k = k;
  ga.labels.assign(n, 0);
  double cost;
  detail::assign_to_medoids(pts, medoids, ga.labels, cost);

  // SWAP: apply the best strictly improving (medoid, candidate) exchange
  // until none exists
  for (;;) {
    double best_cost = cost;
    int best_m = -1, best_c = -1;
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      for (int c : scan) {
        if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
        std::vector<int> trial = medoids;
        trial[m] = c;
        std::vector<int> lbl(n);
        double tc;
        detail::assign_to_medoids(pts, trial, lbl, tc);
        if (tc < best_cost - 1e-15) {
          best_cost = tc;
          best_m = static_cast<int>(m);
          best_c = c;
        }
      }
    }
    if (best_m < 0) break;
    medoids[best_m] = best_c;
    detail::assign_to_medoids(pts, medoids, ga.labels, cost);
  }
  ga.medoids = medoids;
  ga.dispersion = cost;
  return ga;
}

/// Tibshirani gap statistic with a uniform reference over the data's
/// axis-aligned bounding box and the one-standard-error selection rule.
inline GapCurve gap_statistic(const Points& pts, int kmax, int b_ref,
                              std::uint64_t seed, unsigned threads = 1) {
  if (kmax < 1) throw ConfigError("gap_statistic requires kmax >= 1");
  if (b_ref < 10) throw ConfigError("gap_statistic requires B_ref >= 10");
  if (kmax > pts.n) throw ConfigError("gap_statistic requires kmax <= n");

  std::vector<double> lo(pts.d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(pts.d, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < pts.n; ++i)
    for (int c = 0; c < pts.d; ++c) {
      lo[c] = std::min(lo[c], pts.coord(i, c));
      hi[c] = std::max(hi[c], pts.coord(i, c));
    }

  std::vector<double> log_w_data(kmax);
  for (int k = 1; k <= kmax; ++k) {
    double w = pam(pts, k, derive_seed(seed, 1000 + k)).dispersion;
    if (!(w > 0))
      throw NumericError("gap statistic undefined: zero dispersion at k=" +
                         std::to_string(k));
    log_w_data[k - 1] = std::log(w);
  }

  // log W_k over reference draws; [b][k-1]
  std::vector<std::vector<double>> log_w_ref(b_ref, std::vector<double>(kmax));
  parallel_for(b_ref, threads, [&](std::size_t b) {
    Rng rng = make_rng(seed, b);
    Points ref;
    ref.n = pts.n;
    ref.d = pts.d;
    ref.x.resize(pts.x.size());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < ref.n; ++i)
      for (int c = 0; c < ref.d; ++c)
        ref.x[static_cast<std::size_t>(i) * ref.d + c] =
            lo[c] + u(rng) * (hi[c] - lo[c]);
    for (int k = 1; k <= kmax; ++k)
      log_w_ref[b][k - 1] =
          std::log(pam(ref, k, derive_seed(seed, 2000 + b * kmax + k)).dispersion);
  });

  GapCurve curve;
  curve.entries.resize(kmax);
  for (int k = 1; k <= kmax; ++k) {
    double mean = 0;
    for (int b = 0; b < b_ref; ++b) mean += log_w_ref[b][k - 1];
    mean /= b_ref;
    double var = 0;
    for (int b = 0; b < b_ref; ++b) {
      double d = log_w_ref[b][k - 1] - mean;
      var += d * d;
    }
    var /= b_ref;
    auto& e = curve.entries[k - 1];
    e.k = k;
    e.dispersion = std::exp(log_w_data[k - 1]);
    e.gap = mean - log_w_data[k - 1];
    e.se = std::sqrt(var) * std::sqrt(1.0 + 1.0 / b_ref);
  }
  curve.selected_k = kmax;
  for (int k = 1; k < kmax; ++k) {
    if (curve.entries[k - 1].gap >=
        curve.entries[k].gap - curve.entries[k].se) {
      curve.selected_k = k;
      break;
    }
  }
  return curve;
}

/// Collapses the hiring network onto cluster labels: flow[a][b] sums all
/// hires from group a producers into group b departments, self-hires
/// landing on the within-group diagonal. Total weight is conserved.
inline AggregateNetwork aggregate(const WeightedDigraph& g,
                                  const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != g.n())
    throw InputError("aggregate: labels must cover all nodes");
  int k = 0;
  for (int l : labels) {
    if (l < 1) throw InputError("aggregate: labels must be 1-based");
    k = std::max(k, l);
  }
  AggregateNetwork agg;
  agg.k = k;
  agg.flow.assign(static_cast<std::size_t>(k) * k, 0);
  std::int64_t total = 0, within = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      std::int64_t w = g.at(i, j);
      if (w == 0) continue;
      int a = labels[i] - 1, b = labels[j] - 1;
      agg.flow[static_cast<std::size_t>(a) * k + b] += w;
      total += w;
      if (a == b) within += w;
    }
  agg.within_fraction = total > 0 ? static_cast<double>(within) / total : 0.0;
  return agg;
}

}  // namespace hirenet::grouping
