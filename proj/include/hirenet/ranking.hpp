#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/rng.hpp"

namespace hirenet::ranking {

/// Bijection node -> rank; rank 1 is the top of the hierarchy.
struct RankPermutation {
  std::vector<int> rank;

  int n() const { return static_cast<int>(rank.size()); }
  static RankPermutation identity(int n) {
    RankPermutation p;
    p.rank.resize(n);
    std::iota(p.rank.begin(), p.rank.end(), 1);
    return p;
  }
  /// Nodes listed from rank 1 down.
  std::vector<int> order() const {
    std::vector<int> o(rank.size());
    for (std::size_t u = 0; u < rank.size(); ++u) o[rank[u] - 1] = static_cast<int>(u);
    return o;
  }
  bool valid() const {
    std::vector<bool> seen(rank.size(), false);
    for (int r : rank) {
      if (r < 1 || r > n() || seen[r - 1]) return false;
      seen[r - 1] = true;
    }
    return true;
  }
};

enum class Objective { mvr, mvs1, mvs2 };

inline std::string objective_name(Objective o) {
  switch (o) {
    case Objective::mvr: return "mvr";
    case Objective::mvs1: return "mvs1";
    default: return "mvs2";
  }
}

inline Objective parse_objective(const std::string& s) {
  if (s == "mvr") return Objective::mvr;
  if (s == "mvs1") return Objective::mvs1;
  if (s == "mvs2") return Objective::mvs2;
  throw ConfigError("unknown objective '" + s + "' (expected mvr|mvs1|mvs2)");
}

struct ObjectiveValue {
  std::int64_t violation_weight = 0;
  std::int64_t mvs1_strength = 0;
  std::int64_t mvs2_strength = 0;

  std::int64_t strength_for(Objective o) const {
    // MVR breaks plateau ties by MVS1 strength
    return o == Objective::mvs2 ? mvs2_strength : mvs1_strength;
  }
};

namespace detail {

// Contribution of the ordered pair (u,v) to all three objectives.
struct Contrib {
  std::int64_t viol = 0, s1 = 0, s2 = 0;
};

inline Contrib pair_contrib(std::int64_t yuv, std::int64_t yvu, int ru, int rv) {
  Contrib c;
  if (ru > rv) {
    std::int64_t d = ru - rv;
    c.viol = yuv;
    c.s1 = d * yuv;
    c.s2 = d * (yuv + yvu);
  }
  return c;
}

}  // namespace detail

/// All three objectives for (Y, pi) in one pass. Self-loops never count:
/// a department cannot violate a hierarchy with itself.
inline ObjectiveValue evaluate(const WeightedDigraph& g,
                               const RankPermutation& pi) {
  int n = g.n();
  ObjectiveValue v;
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      if (u == w) continue;
      auto c = detail::pair_contrib(g.at(u, w), g.at(w, u), pi.rank[u], pi.rank[w]);
      v.violation_weight += c.viol;
      v.mvs1_strength += c.s1;
      v.mvs2_strength += c.s2;
    }
  return v;
}

/// Total weight on arcs pointing up the hierarchy (Eq-1 reading).
inline std::int64_t violation_weight(const WeightedDigraph& g,
                                     const RankPermutation& pi) {
  return evaluate(g, pi).violation_weight;
}

/// Rank-distance-weighted strength of unexpected hires.
inline std::int64_t mvs1_strength(const WeightedDigraph& g,
                                  const RankPermutation& pi) {
  return evaluate(g, pi).mvs1_strength;
}

/// MVS1 plus the strength of unexpected placements (above-diagonal mass).
inline std::int64_t mvs2_strength(const WeightedDigraph& g,
                                  const RankPermutation& pi) {
  return evaluate(g, pi).mvs2_strength;
}

struct HillsideViolations {
  std::int64_t row_violations = 0;
  std::int64_t col_violations = 0;
};

/// Index pairs breaking monotone descent along the rows and columns of the
/// rank-permuted matrix (the modified hillside form: both rows and columns
/// should descend away from the top-ranked corner).
inline HillsideViolations hillside_violations(const WeightedDigraph& g,
                                              const RankPermutation& pi) {
  int n = g.n();
  std::vector<int> at = pi.order();
  HillsideViolations hv;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (g.at(at[i], at[j]) < g.at(at[i], at[k])) ++hv.row_violations;
        if (g.at(at[j], at[i]) < g.at(at[k], at[i])) ++hv.col_violations;
      }
  return hv;
}

namespace detail {

// Objective change from swapping the ranks of nodes a and b: only ordered
// pairs touching a or b change, so the swap evaluates in O(n).
inline Contrib swap_delta(const WeightedDigraph& g, const std::vector<int>& rank,
                          int a, int b) {
  int n = g.n();
  int ra = rank[a], rb = rank[b];
  Contrib d;
  auto add = [&](const Contrib& c, int sign) {
    d.viol += sign * c.viol;
    d.s1 += sign * c.s1;
    d.s2 += sign * c.s2;
  };
  for (int v = 0; v < n; ++v) {
    if (v == a || v == b) continue;
    int rv = rank[v];
    std::int64_t yav = g.at(a, v), yva = g.at(v, a);
    std::int64_t ybv = g.at(b, v), yvb = g.at(v, b);
    add(pair_contrib(yav, yva, ra, rv), -1);
    add(pair_contrib(yva, yav, rv, ra), -1);
    add(pair_contrib(ybv, yvb, rb, rv), -1);
    add(pair_contrib(yvb, ybv, rv, rb), -1);
    add(pair_contrib(yav, yva, rb, rv), +1);
    add(pair_contrib(yva, yav, rv, rb), +1);
    add(pair_contrib(ybv, yvb, ra, rv), +1);
    add(pair_contrib(yvb, ybv, rv, ra), +1);
  }
  std::int64_t yab = g.at(a, b), yba = g.at(b, a);
  add(pair_contrib(yab, yba, ra, rb), -1);
  add(pair_contrib(yba, yab, rb, ra), -1);
  add(pair_contrib(yab, yba, rb, ra), +1);
  add(pair_contrib(yba, yab, ra, rb), +1);
  return d;
}

}  // namespace detail

/// Initial ranking: descending placement counts into other departments
/// (out-strength excluding self-hires), ties broken by node id.
inline RankPermutation out_strength_ranking(const WeightedDigraph& g) {
  int n = g.n();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return g.out_strength(a, false) > g.out_strength(b, false);
  });
  RankPermutation pi;
  pi.rank.resize(n);
  for (int r = 0; r < n; ++r) pi.rank[idx[r]] = r + 1;
  return pi;
}

struct SwapSearchConfig {
  Objective objective = Objective::mvs2;
  std::int64_t burnin = 100000;
  std::int64_t iterations = 100000;
  std::int64_t interval = 100;
  std::uint64_t seed = 0;
  /// Accept exact ties so the sampler averages over co-optimal rankings.
  bool allow_plateau = true;
};

struct SwapSearchResult {
  std::vector<std::vector<int>> samples;  // rank arrays, one per record point
  RankPermutation final_ranking;
  ObjectiveValue best;
};

/// Stochastic pairwise swapping. A proposed swap is accepted when the
/// violation weight strictly drops, or stays equal while the objective's
/// strength does not increase, so accepted moves are lexicographically
/// monotone in (violations, strength).
inline SwapSearchResult swap_search(const WeightedDigraph& g,
                                    const SwapSearchConfig& cfg) {
  if (cfg.burnin < 0 || cfg.iterations < 0 || cfg.interval < 1)
    throw ConfigError("swap_search: burnin/iterations must be >= 0, interval >= 1");
  int n = g.n();
  SwapSearchResult out;
  RankPermutation pi = out_strength_ranking(g);
  ObjectiveValue cur = evaluate(g, pi);
  Rng rng = Rng(cfg.seed);

  auto step = [&]() {
    if (n < 2) return;
    int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    auto d = detail::swap_delta(g, pi.rank, a, b);
    std::int64_t viol = cur.violation_weight + d.viol;
    std::int64_t s1 = cur.mvs1_strength + d.s1;
    std::int64_t s2 = cur.mvs2_strength + d.s2;
    std::int64_t cand = cfg.objective == Objective::mvs2 ? s2 : s1;
    std::int64_t have = cur.strength_for(cfg.objective);
    bool accept = viol < cur.violation_weight ||
                  (viol == cur.violation_weight &&
                   (cfg.allow_plateau ? cand <= have : cand < have));
    if (accept) {
      std::swap(pi.rank[a], pi.rank[b]);
      cur.violation_weight = viol;
      cur.mvs1_strength = s1;
      cur.mvs2_strength = s2;
    }
  };

  for (std::int64_t k = 1; k <= cfg.burnin; ++k) step();
  for (std::int64_t k = 1; k <= cfg.iterations; ++k) {
    step();
    if (k % cfg.interval == 0) out.samples.push_back(pi.rank);
  }
  out.final_ranking = pi;
  out.best = cur;
  return out;
}

/// Multinomial edge resampling: total_weight unit hires are redrawn i.i.d.
/// with probability proportional to Y, keeping the node set and the total
/// weight fixed.
inline WeightedDigraph bootstrap_network(const WeightedDigraph& g,
                                         std::uint64_t seed) {
  std::int64_t total = g.total_weight();
  if (total < 1) throw NumericError("bootstrap undefined on zero-weight graph");
  int n = g.n();
  std::vector<std::pair<std::int64_t, int>> cells;  // cumulative weight, flat index
  std::int64_t cum = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.at(i, j) > 0) {
        cum += g.at(i, j);
        cells.emplace_back(cum, i * n + j);
      }
  WeightedDigraph b(n, g.nodes());
  Rng rng = Rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, total - 1);
  for (std::int64_t t = 0; t < total; ++t) {
    std::int64_t r = pick(rng);
    auto it = std::upper_bound(cells.begin(), cells.end(),
                               std::make_pair(r, std::numeric_limits<int>::max()));
    int flat = it->second;
    ++b.at(flat / n, flat % n);
  }
  return b;
}

struct MvsIndexConfig {
  Objective objective = Objective::mvs2;
  int B = 1000;
  std::int64_t burnin = 100000;
  std::int64_t iterations = 100000;
  std::int64_t interval = 100;
  std::uint64_t seed = 0;
  bool allow_plateau = true;
  unsigned threads = 1;
};

struct BootstrapEnsemble {
  int B = 0;
  /// rank_samples[node][b]: node's mean sampled rank in bootstrap replicate b.
  std::vector<std::vector<double>> rank_samples;
  std::vector<double> mean_rank;
  /// Nodes ordered by ensemble mean rank, ties broken by node id.
  std::vector<int> order;
};

/// Bootstrapped MVS index: each replicate resamples the network, restarts
/// the swap search from the out-strength ranking and averages its sampled
/// permutations; the index is the ensemble mean of those averages.
inline BootstrapEnsemble mvs_index(const WeightedDigraph& g,
                                   const MvsIndexConfig& cfg) {
  if (cfg.B < 1) throw ConfigError("mvs_index requires B >= 1");
  int n = g.n();
  BootstrapEnsemble ens;
  ens.B = cfg.B;
  ens.rank_samples.assign(n, std::vector<double>(cfg.B, 0.0));

  parallel_for(cfg.B, cfg.threads, [&](std::size_t b) {
    WeightedDigraph yb = bootstrap_network(g, derive_seed(cfg.seed, 2 * b));
    SwapSearchConfig sc;
    sc.objective = cfg.objective;
    sc.burnin = cfg.burnin;
    sc.iterations = cfg.iterations;
    sc.interval = cfg.interval;
    sc.allow_plateau = cfg.allow_plateau;
    sc.seed = derive_seed(cfg.seed, 2 * b + 1);
    SwapSearchResult r = swap_search(yb, sc);
    if (r.samples.empty()) r.samples.push_back(r.final_ranking.rank);
    for (int u = 0; u < n; ++u) {
      double s = 0;
      for (const auto& smp : r.samples) s += smp[u];
      ens.rank_samples[u][b] = s / r.samples.size();
    }
  });

  ens.mean_rank.resize(n);
  for (int u = 0; u < n; ++u) {
    double s = 0;
    for (double v : ens.rank_samples[u]) s += v;
    ens.mean_rank[u] = s / cfg.B;
  }
  ens.order.resize(n);
  std::iota(ens.order.begin(), ens.order.end(), 0);
  std::stable_sort(ens.order.begin(), ens.order.end(), [&](int a, int b) {
    return ens.mean_rank[a] < ens.mean_rank[b];
  });
  return ens;
}

/// Interpolated sample quantile over an unsorted copy of xs.
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw NumericError("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  double pos = q * (xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  double frac = pos - lo;
  return xs[lo] * (1 - frac) + xs[lo + 1] * frac;
}

}  // namespace hirenet::ranking
