#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hirenet/ergm.hpp"
#include "hirenet/error.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/rng.hpp"

namespace hirenet::synth {

/// Planted linear hierarchy: node i holds rank i+1. Downhill cells (producer
/// ranked above hirer) draw Poisson(intensity); every other cell, diagonal
/// included, draws Poisson(intensity * noise). noise = 0 gives a strictly
/// upper-triangular matrix.
struct PlantedSpec {
  int n = 20;
  double intensity = 2.0;
  double noise = 0.1;
};

inline WeightedDigraph generate_planted(const PlantedSpec& spec, std::uint64_t seed) {
  if (spec.n < 2) throw ConfigError("planted generator requires n >= 2");
  if (spec.intensity < 0 || spec.noise < 0)
    throw ConfigError("planted generator requires nonnegative intensities");
  WeightedDigraph g(spec.n);
  Rng rng = make_rng(seed, 0);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j) {
      double lambda = i < j ? spec.intensity : spec.intensity * spec.noise;
      if (lambda <= 0) continue;
      std::poisson_distribution<std::int64_t> pois(lambda);
      g.at(i, j) = pois(rng);
    }
  return g;
}

/// Exact draw from the latent-distance Poisson model at a given state.
struct ErgmSampleSpec {
  std::vector<double> beta;       // 4 coefficients
  ergm::Points z;                 // n x d latent positions
  std::vector<double> covariate;  // log-scale, one per node
};

inline WeightedDigraph generate_ergm(const ErgmSampleSpec& spec, std::uint64_t seed) {
  int n = spec.z.n;
  if (n < 2) throw ConfigError("ergm generator requires n >= 2");
  if (spec.beta.size() != 4)
    throw ConfigError("ergm generator requires 4 coefficients");
  if (static_cast<int>(spec.covariate.size()) != n)
    throw ConfigError("ergm generator: covariate size mismatch");
  std::vector<double> mu = ergm::mean_matrix(spec.beta, spec.z, spec.covariate);
  WeightedDigraph g(n);
  Rng rng = make_rng(seed, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double m = mu[static_cast<std::size_t>(i) * n + j];
      if (!(m < 1e12))
        throw NumericError("ergm generator: divergent Poisson mean");
      std::poisson_distribution<std::int64_t> pois(m);
      g.at(i, j) = pois(rng);
    }
  return g;
}

}  // namespace hirenet::synth
