// Independent reference implementations used only by tests. Each oracle
// recomputes its target through a different route than the library:
// objectives go through the explicitly permuted matrix, eigen-style scores
// through long-double iterations with their own normalization, betweenness
// through Floyd-Warshall path counting.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "hirenet/graph.hpp"
#include "hirenet/ranking.hpp"
#include "hirenet/rng.hpp"

namespace oracle {

using hirenet::WeightedDigraph;

// Pearson correlation over weight-expanded edge endpoint pairs, built by
// materializing one (x, y) pair per unit of weight.
inline double assortativity(const WeightedDigraph& g,
                            const std::vector<double>& values) {
  std::vector<double> xs, ys;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      if (i == j) continue;
      for (std::int64_t w = 0; w < g.at(i, j); ++w) {
        xs.push_back(values[i]);
        ys.push_back(values[j]);
      }
    }
  double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

struct Objectives {
  std::int64_t violations = 0, s1 = 0, s2 = 0;
};

// Objectives evaluated on the rank-permuted matrix: below-diagonal mass is
// a violation, the row/column index gap is its strength.
inline Objectives objectives(const WeightedDigraph& g,
                             const hirenet::ranking::RankPermutation& pi) {
  int n = g.n();
  std::vector<int> node_at(n);
  for (int u = 0; u < n; ++u) node_at[pi.rank[u] - 1] = u;
  Objectives o;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r <= c) continue;  // above/diagonal cells are not violations
      std::int64_t below = g.at(node_at[r], node_at[c]);
      std::int64_t above = g.at(node_at[c], node_at[r]);
      o.violations += below;
      o.s1 += static_cast<std::int64_t>(r - c) * below;
      o.s2 += static_cast<std::int64_t>(r - c) * (below + above);
    }
  return o;
}

// Global optimum of the violation weight by enumerating all n! rankings.
inline std::int64_t exhaustive_min_violations(const WeightedDigraph& g) {
  int n = g.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    hirenet::ranking::RankPermutation pi;
    pi.rank.resize(n);
    for (int r = 0; r < n; ++r) pi.rank[order[r]] = r + 1;
    best = std::min(best, objectives(g, pi).violations);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline std::vector<double> to_unit_sum(std::vector<long double> v) {
  long double s = 0;
  for (long double x : v) s += x;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<double>(v[i] / s);
  return out;
}

// Dominant eigenvector of (Y + I) with the diagonal of Y dropped, iterated
// in long double under L2 normalization.
inline std::vector<double> eigenvector(const WeightedDigraph& g) {
  int n = g.n();
  std::vector<long double> x(n, 1.0), y(n);
  for (int it = 0; it < 2000000; ++it) {
    for (int i = 0; i < n; ++i) {
      long double s = x[i];
      for (int j = 0; j < n; ++j)
        if (j != i) s += static_cast<long double>(g.at(i, j)) * x[j];
      y[i] = s;
    }
    long double norm = 0;
    for (long double v : y) norm += v * v;
    norm = std::sqrt(norm);
    long double diff = 0;
    for (int i = 0; i < n; ++i) {
      y[i] /= norm;
      diff += std::abs(y[i] - x[i]);
    }
    x = y;
    if (diff < 1e-16L) break;
  }
  return to_unit_sum(x);
}

inline std::vector<double> pagerank_reversed(const WeightedDigraph& g,
                                             double damping) {
  int n = g.n();
  std::vector<long double> out_rev(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) out_rev[a] += static_cast<long double>(g.at(b, a));
  std::vector<long double> pr(n, 1.0L / n), next(n);
  for (int it = 0; it < 2000000; ++it) {
    long double dangle = 0;
    for (int a = 0; a < n; ++a)
      if (out_rev[a] == 0) dangle += pr[a];
    long double diff = 0;
    for (int b = 0; b < n; ++b) {
      long double in = 0;
      for (int a = 0; a < n; ++a)
        if (a != b && out_rev[a] > 0 && g.at(b, a) > 0)
          in += pr[a] * static_cast<long double>(g.at(b, a)) / out_rev[a];
      next[b] = (1.0L - damping) / n + damping * (in + dangle / n);
      diff += std::abs(next[b] - pr[b]);
    }
    pr = next;
    if (diff < 1e-16L) break;
  }
  return to_unit_sum(pr);
}

struct HitsOracle {
  std::vector<double> hub, authority;
};

inline HitsOracle hits(const WeightedDigraph& g) {
  int n = g.n();
  std::vector<long double> h(n, 1.0), a(n, 1.0), nh(n), na(n);
  for (int it = 0; it < 2000000; ++it) {
    for (int j = 0; j < n; ++j) {
      na[j] = 0;
      for (int i = 0; i < n; ++i)
        if (i != j) na[j] += static_cast<long double>(g.at(i, j)) * h[i];
    }
    long double norm = 0;
    for (long double v : na) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : na) v /= norm;
    for (int i = 0; i < n; ++i) {
      nh[i] = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) nh[i] += static_cast<long double>(g.at(i, j)) * na[j];
    }
    norm = 0;
    for (long double v : nh) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : nh) v /= norm;
    long double diff = 0;
    for (int i = 0; i < n; ++i)
      diff += std::abs(nh[i] - h[i]) + std::abs(na[i] - a[i]);
    h = nh;
    a = na;
    if (diff < 1e-16L) break;
  }
  return {to_unit_sum(h), to_unit_sum(a)};
}

// Betweenness via Floyd-Warshall distances plus shortest-path counting:
// bc(v) = sum over s,t of sigma_sv * sigma_vt / sigma_st when v lies on a
// shortest s-t path.
inline std::vector<double> betweenness(const WeightedDigraph& g) {
  int n = g.n();
  const double INF = 1e18;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, INF));
  std::vector<std::vector<double>> cnt(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    dist[i][i] = 0;
    cnt[i][i] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.at(i, j) > 0) {
        dist[i][j] = 1;
        cnt[i][j] = 1;
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == k || j == k || dist[i][k] >= INF || dist[k][j] >= INF) continue;
        double via = dist[i][k] + dist[k][j];
        if (via < dist[i][j] - 0.5) {
          dist[i][j] = via;
          cnt[i][j] = cnt[i][k] * cnt[k][j];
        } else if (std::abs(via - dist[i][j]) < 0.5) {
          cnt[i][j] += cnt[i][k] * cnt[k][j];
        }
      }
  std::vector<double> bc(n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || dist[s][t] >= INF) continue;
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t] && cnt[s][t] > 0)
          bc[v] += cnt[s][v] * cnt[v][t] / cnt[s][t];
      }
    }
  return bc;
}

// Spearman with average ranks, everything done the slow O(n^2) way.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] < v[i]) ++less;
        if (v[j] == v[i]) ++equal;
      }
      r[i] = less + (equal + 1) / 2.0;
    }
    return r;
  };
  std::vector<double> rx = ranks(x), ry = ranks(y);
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// ---- shared test fixtures ----

inline WeightedDigraph strict_hierarchy(int n, std::int64_t weight = 1) {
  WeightedDigraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.at(i, j) = weight;
  return g;
}

inline WeightedDigraph random_graph(int n, double lambda, std::uint64_t seed,
                                    bool loops = true) {
  WeightedDigraph g(n);
  hirenet::Rng rng = hirenet::make_rng(seed, 0);
  std::poisson_distribution<std::int64_t> pois(lambda);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && !loops) continue;
      g.at(i, j) = pois(rng);
    }
  return g;
}

inline hirenet::ranking::RankPermutation random_permutation(int n,
                                                            std::uint64_t seed) {
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1);
  hirenet::Rng rng = hirenet::make_rng(seed, 1);
  std::shuffle(ranks.begin(), ranks.end(), rng);
  hirenet::ranking::RankPermutation pi;
  pi.rank = ranks;
  return pi;
}

}  // namespace oracle
