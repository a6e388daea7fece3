#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"

namespace hirenet {

struct SelfEdgeStats {
  double weight_fraction = 0.0;          // self-hires / all hires
  int self_hiring_node_count = 0;        // nodes with at least one self-hire
  std::vector<double> per_node_fraction; // self-hires / in-strength (incl loop)
};

struct DescriptiveStats {
  int n = 0;
  std::int64_t total_weight = 0;
  double density = 0.0;
  double self_edge_fraction = 0.0;
  int self_hiring_node_count = 0;
  double reciprocity = 0.0;
  std::optional<double> degree_assortativity;
  std::map<std::string, double> attr_assortativity;
  double gini = 0.0;
  std::vector<std::pair<double, double>> lorenz_curve;
};

/// Fraction of realized off-diagonal arcs. Self-loops are excluded from
/// numerator and denominator and reported separately.
inline double density(const WeightedDigraph& g) {
  int n = g.n();
  if (n < 2) throw NumericError("density undefined for n < 2");
  return static_cast<double>(g.offdiag_edge_count()) /
         (static_cast<double>(n) * (n - 1));
}

/// Ordered-pair reciprocity: among realized off-diagonal arcs (i,j), the
/// fraction whose reverse arc (j,i) is also realized.
inline double reciprocity(const WeightedDigraph& g) {
  int n = g.n();
  std::int64_t arcs = 0, mutual = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || g.at(i, j) == 0) continue;
      ++arcs;
      if (g.at(j, i) > 0) ++mutual;
    }
  if (arcs == 0) throw NumericError("reciprocity undefined: no off-diagonal edges");
  return static_cast<double>(mutual) / static_cast<double>(arcs);
}

inline SelfEdgeStats self_edge_stats(const WeightedDigraph& g) {
  std::int64_t total = g.total_weight();
  if (total == 0) throw NumericError("self-edge stats undefined: empty graph");
  SelfEdgeStats s;
  s.per_node_fraction.resize(g.n(), 0.0);
  std::int64_t diag = 0;
  for (int i = 0; i < g.n(); ++i) {
    std::int64_t self = g.at(i, i);
    diag += self;
    if (self > 0) ++s.self_hiring_node_count;
    std::int64_t in = g.in_strength(i, true);
    s.per_node_fraction[i] = in > 0 ? static_cast<double>(self) / in : 0.0;
  }
  s.weight_fraction = static_cast<double>(diag) / static_cast<double>(total);
  return s;
}

/// Pearson correlation of a per-node scalar across the endpoints of every
/// off-diagonal arc, with each unit of weight counted as one endpoint pair
/// (each hire is an event). values[i] must be finite.
inline double assortativity(const WeightedDigraph& g,
                            const std::vector<double>& values) {
  int n = g.n();
  if (static_cast<int>(values.size()) != n)
    throw InputError("assortativity: values size mismatch");
  double sw = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  std::int64_t distinct = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::int64_t w = g.at(i, j);
      if (w == 0) continue;
      ++distinct;
      double x = values[i], y = values[j];
      sw += w;
      sx += w * x;
      sy += w * y;
      sxx += w * x * x;
      syy += w * y * y;
      sxy += w * x * y;
    }
  if (distinct < 2)
    throw NumericError("assortativity undefined: fewer than 2 distinct edges");
  double mx = sx / sw, my = sy / sw;
  double vx = sxx / sw - mx * mx;
  double vy = syy / sw - my * my;
  double cov = sxy / sw - mx * my;
  if (vx <= 0 || vy <= 0)
    throw NumericError("assortativity undefined: zero endpoint variance");
  return cov / std::sqrt(vx * vy);
}

/// Total-degree assortativity; the scalar is in-strength + out-strength.
inline double degree_assortativity(const WeightedDigraph& g) {
  std::vector<double> deg(g.n());
  for (int i = 0; i < g.n(); ++i)
    deg[i] = static_cast<double>(g.in_strength(i) + g.out_strength(i));
  return assortativity(g, deg);
}

struct LorenzResult {
  // Points (k/n, cumulative production share), producers sorted descending,
  // from (0,0) to (1,1). Lies on or above the diagonal.
  std::vector<std::pair<double, double>> curve;
  double gini = 0.0;
};

/// Inequality of Ph.D. production (row sums including self-hires).
inline LorenzResult lorenz_gini(const WeightedDigraph& g) {
  int n = g.n();
  std::vector<double> prod(n);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    prod[i] = static_cast<double>(g.out_strength(i, true));
    total += prod[i];
  }
  if (total <= 0) throw NumericError("lorenz undefined: zero total production");
  std::sort(prod.begin(), prod.end(), std::greater<double>());

  LorenzResult r;
  r.curve.reserve(n + 1);
  r.curve.emplace_back(0.0, 0.0);
  double cum = 0;
  for (int k = 0; k < n; ++k) {
    cum += prod[k];
    r.curve.emplace_back(static_cast<double>(k + 1) / n, cum / total);
  }
  // trapezoid area under the curve; gini = twice the area above the diagonal
  double area = 0;
  for (int k = 1; k <= n; ++k) {
    double dx = r.curve[k].first - r.curve[k - 1].first;
    area += dx * (r.curve[k].second + r.curve[k - 1].second) / 2.0;
  }
  r.gini = 2.0 * (area - 0.5);
  return r;
}

/// Full descriptive panel. Assortativity entries that are undefined on the
/// given graph (zero variance) are simply left unset.
inline DescriptiveStats describe(const WeightedDigraph& g) {
  DescriptiveStats d;
  d.n = g.n();
  d.total_weight = g.total_weight();
  d.density = density(g);
  SelfEdgeStats se = self_edge_stats(g);
  d.self_edge_fraction = se.weight_fraction;
  d.self_hiring_node_count = se.self_hiring_node_count;
  d.reciprocity = reciprocity(g);
  try {
    d.degree_assortativity = degree_assortativity(g);
  } catch (const NumericError&) {
  }
  // attribute assortativity over every numeric column observed on all nodes
  std::map<std::string, int> counts;
  for (const auto& rec : g.nodes())
    for (const auto& [k, v] : rec.attrs) counts[k]++;
  for (const auto& [name, c] : counts) {
    if (c != g.n()) continue;  // pairwise-missing handling is correlate's job
    std::vector<double> vals(g.n());
    for (int i = 0; i < g.n(); ++i) vals[i] = g.nodes()[i].attrs.at(name);
    try {
      d.attr_assortativity[name] = assortativity(g, vals);
    } catch (const NumericError&) {
    }
  }
  LorenzResult lz = lorenz_gini(g);
  d.gini = lz.gini;
  d.lorenz_curve = std::move(lz.curve);
  return d;
}

}  // namespace hirenet
