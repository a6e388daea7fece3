#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"

namespace hirenet::centrality {

struct PanelOptions {
  double damping = 0.85;
  double tol = 1e-10;
  long max_iter = 1000000;
};

/// Importance scores per node plus their competition ranks (1 = most
/// important). Eigenvector, PageRank and HITS orientations reward placing
/// faculty into important departments; see the README notes on Table-3
/// style comparisons. Self-loops are excluded from every eigen/path
/// computation; strengths count them.
struct CentralityPanel {
  std::vector<double> in_strength, out_strength;
  std::vector<double> eigenvector, pagerank, betweenness, hub, authority;
  std::map<std::string, std::vector<int>> ranks;
};

/// 1 + number of strictly better scores; ties share the better rank.
inline std::vector<int> competition_ranks(const std::vector<double>& score) {
  int n = static_cast<int>(score.size());
  std::vector<int> rank(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (score[j] > score[i]) ++rank[i];
  return rank;
}

namespace detail {

inline void normalize_l1(std::vector<double>& x, const char* what) {
  double s = 0;
  for (double v : x) s += v;
  if (!(s > 0)) throw NumericError(std::string(what) + " undefined: zero vector");
  for (double& v : x) v /= s;
}

inline double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

[[noreturn]] inline void no_convergence(const char* what, long iters) {
  throw NumericError(std::string(what) + " did not converge after " +
                     std::to_string(iters) + " iterations");
}

}  // namespace detail

/// Perron vector under the placement orientation: x_i proportional to
/// sum_j Y_ij x_j. The +x shift keeps the iteration aperiodic without
/// moving the dominant eigenvector.
inline std::vector<double> eigenvector_centrality(const WeightedDigraph& g,
                                                  const PanelOptions& opt = {}) {
  int n = g.n();
  std::vector<double> x(n, 1.0 / n), y(n);
  for (long it = 0; it < opt.max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = x[i];
      for (int j = 0; j < n; ++j)
        if (j != i) s += static_cast<double>(g.at(i, j)) * x[j];
      y[i] = s;
    }
    detail::normalize_l1(y, "eigenvector centrality");
    if (detail::l1_diff(x, y) < opt.tol) return y;
    x = y;
  }
  detail::no_convergence("eigenvector centrality", opt.max_iter);
}

/// PageRank on the reversed weighted graph, so score flows from hirers back
/// to the departments that trained their faculty. Dangling mass (nodes that
/// never hire from others) is spread uniformly.
inline std::vector<double> pagerank_reversed(const WeightedDigraph& g,
                                             const PanelOptions& opt = {}) {
  int n = g.n();
  // reversed out-strength of node a = weight of hires a made from others
  std::vector<double> rout(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) rout[a] += static_cast<double>(g.at(b, a));
  std::vector<double> pr(n, 1.0 / n), next(n);
  for (long it = 0; it < opt.max_iter; ++it) {
    double dangling = 0;
    for (int a = 0; a < n; ++a)
      if (rout[a] == 0) dangling += pr[a];
    for (int b = 0; b < n; ++b) {
      double in = 0;
      for (int a = 0; a < n; ++a) {
        if (a == b || rout[a] == 0) continue;
        double w = static_cast<double>(g.at(b, a));  // reversed arc a -> b
        if (w > 0) in += pr[a] * w / rout[a];
      }
      next[b] = (1.0 - opt.damping) / n + opt.damping * (in + dangling / n);
    }
    if (detail::l1_diff(pr, next) < opt.tol) return next;
    pr = next;
  }
  detail::no_convergence("pagerank", opt.max_iter);
}

struct HitsScores {
  std::vector<double> hub, authority;
};

/// Alternating power iteration on Y / Y^T: hubs place faculty into strong
/// authorities, authorities hire from strong hubs.
inline HitsScores hits(const WeightedDigraph& g, const PanelOptions& opt = {}) {
  int n = g.n();
  HitsScores s;
  s.hub.assign(n, 1.0 / n);
  s.authority.assign(n, 1.0 / n);
  std::vector<double> h(n), a(n);
  for (long it = 0; it < opt.max_iter; ++it) {
    for (int j = 0; j < n; ++j) {
      double v = 0;
      for (int i = 0; i < n; ++i)
        if (i != j) v += static_cast<double>(g.at(i, j)) * s.hub[i];
      a[j] = v;
    }
    detail::normalize_l1(a, "authority");
    for (int i = 0; i < n; ++i) {
      double v = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) v += static_cast<double>(g.at(i, j)) * a[j];
      h[i] = v;
    }
    detail::normalize_l1(h, "hub");
    double d = detail::l1_diff(h, s.hub) + detail::l1_diff(a, s.authority);
    s.hub = h;
    s.authority = a;
    if (d < opt.tol) return s;
  }
  detail::no_convergence("hits", opt.max_iter);
}

/// Brandes' betweenness on the directed unweighted skeleton (multi-weight
/// arcs count as a single arc; hire counts are not traversal costs).
inline std::vector<double> betweenness(const WeightedDigraph& g) {
  int n = g.n();
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.at(i, j) > 0) adj[i].push_back(j);

  std::vector<double> bc(n, 0.0);
  std::vector<int> dist(n), stack_order;
  std::vector<double> sigma(n), delta(n);
  std::vector<std::vector<int>> pred(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    stack_order.clear();
    dist[s] = 0;
    sigma[s] = 1;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      stack_order.push_back(v);
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = stack_order.rbegin(); it != stack_order.rend(); ++it) {
      int w = *it;
      for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

inline CentralityPanel centrality_panel(const WeightedDigraph& g,
                                        const PanelOptions& opt = {}) {
  if (g.n() < 1) throw InputError("centrality panel requires a nonempty graph");
  CentralityPanel p;
  int n = g.n();
  p.in_strength.resize(n);
  p.out_strength.resize(n);
  for (int i = 0; i < n; ++i) {
    p.in_strength[i] = static_cast<double>(g.in_strength(i));
    p.out_strength[i] = static_cast<double>(g.out_strength(i));
  }
  p.eigenvector = eigenvector_centrality(g, opt);
  p.pagerank = pagerank_reversed(g, opt);
  HitsScores hs = hits(g, opt);
  p.hub = std::move(hs.hub);
  p.authority = std::move(hs.authority);
  p.betweenness = betweenness(g);
  p.ranks["in_strength"] = competition_ranks(p.in_strength);
  p.ranks["out_strength"] = competition_ranks(p.out_strength);
  p.ranks["eigenvector"] = competition_ranks(p.eigenvector);
  p.ranks["pagerank"] = competition_ranks(p.pagerank);
  p.ranks["betweenness"] = competition_ranks(p.betweenness);
  p.ranks["hub"] = competition_ranks(p.hub);
  p.ranks["authority"] = competition_ranks(p.authority);
  return p;
}

// ---- Spearman correlations over rank vectors with missing entries ----

using MaybeVec = std::vector<std::optional<double>>;

struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> r;      // NaN where undefined
  std::vector<std::vector<int>> pair_count;
};

namespace detail {

inline std::vector<double> fractional_ranks(const std::vector<double>& v) {
  int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> rank(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    double avg = (i + j) / 2.0 + 1.0;
    for (int k = i; k <= j; ++k) rank[idx[k]] = avg;
    i = j + 1;
  }
  return rank;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0)
    throw NumericError("correlation undefined: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

/// Spearman coefficient with average-rank ties over jointly observed entries.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw NumericError("spearman requires >= 3 paired observations");
  return detail::pearson(detail::fractional_ranks(x), detail::fractional_ranks(y));
}

/// Pairwise-complete Spearman matrix. Pairs with fewer than 3 jointly
/// observed entries (or zero variance) are flagged as missing via NaN.
inline CorrelationMatrix spearman_matrix(const std::vector<std::string>& names,
                                         const std::vector<MaybeVec>& columns) {
  std::size_t k = columns.size();
  CorrelationMatrix m;
  m.names = names;
  m.r.assign(k, std::vector<double>(k, std::numeric_limits<double>::quiet_NaN()));
  m.pair_count.assign(k, std::vector<int>(k, 0));
  for (std::size_t a = 0; a < k; ++a) {
    m.r[a][a] = 1.0;
    int cnt = 0;
    for (const auto& v : columns[a])
      if (v) ++cnt;
    m.pair_count[a][a] = cnt;
    for (std::size_t b = a + 1; b < k; ++b) {
      std::vector<double> xs, ys;
      for (std::size_t i = 0; i < columns[a].size(); ++i)
        if (columns[a][i] && columns[b][i]) {
          xs.push_back(*columns[a][i]);
          ys.push_back(*columns[b][i]);
        }
      m.pair_count[a][b] = m.pair_count[b][a] = static_cast<int>(xs.size());
      if (xs.size() < 3) continue;
      try {
        m.r[a][b] = m.r[b][a] = spearman(xs, ys);
      } catch (const NumericError&) {
      }
    }
  }
  return m;
}

}  // namespace hirenet::centrality
