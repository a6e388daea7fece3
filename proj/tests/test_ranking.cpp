#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "hirenet/ranking.hpp"
#include "hirenet/synth.hpp"
#include "oracles.hpp"

using namespace hirenet;
using namespace hirenet::ranking;

TEST_CASE("objective hand values") {
  auto id3 = RankPermutation::identity(3);

  WeightedDigraph up(3);  // strictly upper triangular: no violations
  up.at(0, 1) = 4;
  up.at(0, 2) = 1;
  up.at(1, 2) = 2;
  CHECK(violation_weight(up, id3) == 0);
  CHECK(mvs1_strength(up, id3) == 0);

  WeightedDigraph below(3);
  below.at(2, 0) = 2;
  CHECK(violation_weight(below, id3) == 2);
  CHECK(mvs1_strength(below, id3) == 4);  // strength (3-1) * 2

  WeightedDigraph above(3);
  above.at(0, 2) = 1;  // unexpected placement only
  CHECK(mvs1_strength(above, id3) == 0);
  CHECK(mvs2_strength(above, id3) == 2);
}

TEST_CASE("reversing the optimum of a strict hierarchy violates everything") {
  auto g = oracle::strict_hierarchy(6, 2);
  RankPermutation reversed;
  reversed.rank = {6, 5, 4, 3, 2, 1};
  CHECK(violation_weight(g, reversed) == g.total_weight());
}

TEST_CASE("symmetric matrices double mvs1 into mvs2") {
  auto g = oracle::random_graph(7, 0.8, 12);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) g.at(j, i) = g.at(i, j);
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto pi = oracle::random_permutation(7, s);
    CHECK(mvs2_strength(g, pi) == 2 * mvs1_strength(g, pi));
  }
}

TEST_CASE("transpose identity for mvs2") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = oracle::random_graph(8, 0.7, seed);
    WeightedDigraph gt(8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) gt.at(j, i) = g.at(i, j);
    auto pi = oracle::random_permutation(8, seed + 50);
    CHECK(mvs2_strength(g, pi) == mvs1_strength(g, pi) + mvs1_strength(gt, pi));
  }
}

TEST_CASE("objectives agree with the permuted-matrix oracle") {
  for (std::uint64_t seed = 0; seed < 140; ++seed) {
    int n = 2 + static_cast<int>(seed % 7);  // every size up to 8
    auto g = oracle::random_graph(n, 0.9, seed);
    auto pi = oracle::random_permutation(n, seed * 3 + 1);
    auto ref = oracle::objectives(g, pi);
    auto got = evaluate(g, pi);
    CHECK(got.violation_weight == ref.violations);
    CHECK(got.mvs1_strength == ref.s1);
    CHECK(got.mvs2_strength == ref.s2);
  }
}

TEST_CASE("objectives are invariant under consistent relabeling") {
  auto g = oracle::random_graph(9, 0.6, 77);
  auto pi = oracle::random_permutation(9, 80);
  auto base = evaluate(g, pi);
  std::vector<int> perm{3, 1, 8, 0, 5, 7, 2, 6, 4};
  auto g2 = g.relabeled(perm);
  RankPermutation pi2;
  pi2.rank.resize(9);
  for (int u = 0; u < 9; ++u) pi2.rank[perm[u]] = pi.rank[u];
  auto moved = evaluate(g2, pi2);
  CHECK(moved.violation_weight == base.violation_weight);
  CHECK(moved.mvs1_strength == base.mvs1_strength);
  CHECK(moved.mvs2_strength == base.mvs2_strength);
}

TEST_CASE("swap deltas equal full re-evaluation") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    int n = 4 + static_cast<int>(seed % 6);
    auto g = oracle::random_graph(n, 0.8, 500 + seed);
    auto pi = oracle::random_permutation(n, 520 + seed);
    Rng rng = make_rng(seed, 9);
    int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    auto before = evaluate(g, pi);
    auto d = hirenet::ranking::detail::swap_delta(g, pi.rank, a, b);
    std::swap(pi.rank[a], pi.rank[b]);
    auto after = evaluate(g, pi);
    CHECK(after.violation_weight == before.violation_weight + d.viol);
    CHECK(after.mvs1_strength == before.mvs1_strength + d.s1);
    CHECK(after.mvs2_strength == before.mvs2_strength + d.s2);
  }
}

TEST_CASE("hillside violation counting") {
  WeightedDigraph flat(3);  // constant rows and columns
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) flat.at(i, j) = 2;
  auto hv = hillside_violations(flat, RankPermutation::identity(3));
  CHECK(hv.row_violations == 0);
  CHECK(hv.col_violations == 0);

  WeightedDigraph g(2);
  g.at(1, 0) = 3;  // column 0 ascends: one violation
  auto hv2 = hillside_violations(g, RankPermutation::identity(2));
  CHECK(hv2.col_violations == 1);
  CHECK(hv2.row_violations == 0);
}

TEST_CASE("swap search recovers a planted hierarchy") {
  auto g = oracle::strict_hierarchy(20, 3);
  SwapSearchConfig cfg;
  cfg.objective = Objective::mvs2;
  cfg.burnin = 2000;
  cfg.iterations = 4000;
  cfg.interval = 100;
  cfg.seed = 5;
  auto res = swap_search(g, cfg);
  CHECK(res.best.violation_weight == 0);
  // strict matrix with equal weights: out-strength init is already planted
  for (int u = 0; u < 20; ++u) CHECK(res.final_ranking.rank[u] == u + 1);
}

TEST_CASE("swap search finds the exhaustive optimum on sparse instances") {
  // hiring networks are sparse; on dense tiny matrices the plateau walk can
  // freeze one violation above the optimum (a property of the acceptance
  // rule, measured, not of this implementation)
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    int n = 5 + static_cast<int>(seed % 3);
    auto g = oracle::random_graph(n, 0.15, seed + 200);
    SwapSearchConfig cfg;
    cfg.objective = Objective::mvr;
    cfg.burnin = 0;
    cfg.iterations = 20000;
    cfg.interval = 20000;
    cfg.seed = seed;
    auto res = swap_search(g, cfg);
    CHECK(res.best.violation_weight == oracle::exhaustive_min_violations(g));
  }
}

TEST_CASE("swap acceptance is lexicographically monotone") {
  auto g = oracle::random_graph(10, 0.8, 31);
  SwapSearchConfig cfg;
  cfg.burnin = 0;
  cfg.iterations = 3000;
  cfg.interval = 25;
  cfg.seed = 3;
  auto res = swap_search(g, cfg);
  ObjectiveValue prev;
  bool first = true;
  for (const auto& sample : res.samples) {
    RankPermutation pi{sample};
    REQUIRE(pi.valid());
    auto v = evaluate(g, pi);
    if (!first) {
      bool ok = v.violation_weight < prev.violation_weight ||
                (v.violation_weight == prev.violation_weight &&
                 v.mvs2_strength <= prev.mvs2_strength);
      CHECK(ok);
    }
    prev = v;
    first = false;
  }
  // running totals match a from-scratch evaluation at the end
  auto full = evaluate(g, res.final_ranking);
  CHECK(full.violation_weight == res.best.violation_weight);
  CHECK(full.mvs1_strength == res.best.mvs1_strength);
  CHECK(full.mvs2_strength == res.best.mvs2_strength);
}

TEST_CASE("single-node graph degenerates to the identity ranking") {
  WeightedDigraph g(1);
  g.at(0, 0) = 3;
  SwapSearchConfig cfg;
  cfg.burnin = 10;
  cfg.iterations = 10;
  cfg.interval = 5;
  auto res = swap_search(g, cfg);
  CHECK(res.final_ranking.rank == std::vector<int>{1});
  CHECK(res.best.violation_weight == 0);
}

TEST_CASE("bootstrap keeps the node set and total weight") {
  auto g = oracle::random_graph(8, 1.0, 9);
  auto b = bootstrap_network(g, 123);
  CHECK(b.n() == g.n());
  CHECK(b.total_weight() == g.total_weight());
}

TEST_CASE("bootstrap of a single-edge graph is the graph itself") {
  WeightedDigraph g(3);
  g.at(1, 2) = 1;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto b = bootstrap_network(g, s);
    CHECK(b.at(1, 2) == 1);
    CHECK(b.total_weight() == 1);
  }
}

TEST_CASE("bootstrap cell means match the source weights") {
  WeightedDigraph g(3);
  g.at(0, 1) = 6;
  g.at(1, 2) = 3;
  g.at(2, 2) = 1;
  const int reps = 4000;
  double sum01 = 0;
  for (int r = 0; r < reps; ++r) sum01 += bootstrap_network(g, r).at(0, 1);
  double mean = sum01 / reps;
  // Binomial(10, 0.6) cell: sd of the mean over reps
  double se = std::sqrt(10 * 0.6 * 0.4 / reps);
  CHECK(std::abs(mean - 6.0) <= 3 * se);
}

TEST_CASE("bootstrap of an empty graph fails") {
  CHECK_THROWS_AS(bootstrap_network(WeightedDigraph(4), 1), NumericError);
}

TEST_CASE("mvs index on a noiseless planted matrix reproduces the ranks") {
  synth::PlantedSpec spec;
  spec.n = 12;
  spec.intensity = 25;
  spec.noise = 0;
  auto g = synth::generate_planted(spec, 4);
  MvsIndexConfig cfg;
  cfg.B = 1;
  cfg.burnin = 500;
  cfg.iterations = 1000;
  cfg.interval = 50;
  cfg.seed = 8;
  auto ens = mvs_index(g, cfg);
  for (int u = 0; u < 12; ++u) CHECK(ens.mean_rank[u] == u + 1);
  for (int r = 0; r < 12; ++r) CHECK(ens.order[r] == r);
}

TEST_CASE("mean ranks always sum to n(n+1)/2") {
  auto g = oracle::random_graph(9, 0.9, 55);
  MvsIndexConfig cfg;
  cfg.B = 6;
  cfg.burnin = 200;
  cfg.iterations = 400;
  cfg.interval = 20;
  cfg.seed = 10;
  auto ens = mvs_index(g, cfg);
  double sum = std::accumulate(ens.mean_rank.begin(), ens.mean_rank.end(), 0.0);
  CHECK(sum == Catch::Approx(9 * 10 / 2.0).margin(1e-9));
}

TEST_CASE("ensembles are bit-identical across seeds and thread counts") {
  auto g = oracle::random_graph(8, 1.0, 66);
  MvsIndexConfig cfg;
  cfg.B = 8;
  cfg.burnin = 100;
  cfg.iterations = 300;
  cfg.interval = 30;
  cfg.seed = 77;
  cfg.threads = 1;
  auto a = mvs_index(g, cfg);
  cfg.threads = 4;
  auto b = mvs_index(g, cfg);
  CHECK(a.rank_samples == b.rank_samples);
  CHECK(a.mean_rank == b.mean_rank);
  CHECK(a.order == b.order);
}

TEST_CASE("mid-hierarchy ranks are more uncertain than the extremes") {
  synth::PlantedSpec spec;
  spec.n = 24;
  spec.intensity = 2.0;
  spec.noise = 0.25;
  auto g = synth::generate_planted(spec, 41);
  MvsIndexConfig cfg;
  cfg.B = 30;
  cfg.burnin = 3000;
  cfg.iterations = 3000;
  cfg.interval = 30;
  cfg.seed = 1;
  auto ens = mvs_index(g, cfg);
  auto iqr = [](const std::vector<double>& v) {
    return quantile(v, 0.75) - quantile(v, 0.25);
  };
  std::vector<double> extreme, middle;
  int n = spec.n;
  for (int pos = 0; pos < n; ++pos) {
    double spread = iqr(ens.rank_samples[ens.order[pos]]);
    (pos < n / 4 || pos >= n - n / 4 ? extreme : middle).push_back(spread);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  CHECK(median(middle) > median(extreme));
}

TEST_CASE("quantile helper interpolates") {
  std::vector<double> xs{4, 1, 3, 2};
  CHECK(quantile(xs, 0.0) == 1.0);
  CHECK(quantile(xs, 1.0) == 4.0);
  CHECK(quantile(xs, 0.5) == Catch::Approx(2.5));
}
