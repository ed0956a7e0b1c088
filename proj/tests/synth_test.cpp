#include <catch2/catch.hpp>

#include <cmath>

#include "dcs/synth.hpp"
#include "test_support.hpp"

using namespace dcs;

TEST_CASE("default instance matches the closed-form counts", "[synth]") {
  SynthConfig cfg;
  cfg.rng_seed = 42;
  PlantedInstance inst = generate(cfg);

  CHECK(inst.graph.node_count() == 250);
  REQUIRE(inst.truth.size() == 5);
  for (const NodeSet& clique : inst.truth) {
    CHECK(clique.size() == 30);
    WeightedGraph sub = induced_subgraph(inst.graph, clique);
    CHECK(sub.edge_count() == 435);  // 30 * 29 / 2
    for (const auto& e : sub.edges()) {
      CHECK(e.weight >= 0.8);
      CHECK(e.weight <= 1.0);
    }
  }
  // truth sets are pairwise disjoint
  for (std::size_t i = 0; i < inst.truth.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.truth.size(); ++j) {
      CHECK(intersection_size(inst.truth[i], inst.truth[j]) == 0);
    }
  }
}

TEST_CASE("weight discipline at zero noise", "[synth]") {
  SynthConfig cfg;
  cfg.rng_seed = 7;
  PlantedInstance inst = generate(cfg);
  std::vector<std::int64_t> clique_of(inst.graph.node_count(), -1);
  for (std::size_t c = 0; c < inst.truth.size(); ++c) {
    for (NodeId v : inst.truth[c]) clique_of[v] = static_cast<std::int64_t>(c);
  }
  for (const auto& e : inst.graph.edges()) {
    bool intra = clique_of[e.u] >= 0 && clique_of[e.u] == clique_of[e.v];
    if (intra) {
      CHECK(e.weight >= 0.8);
      CHECK(e.weight <= 1.0);
    } else {
      CHECK(e.weight >= 0.0);
      CHECK(e.weight <= 0.5);
    }
  }
}

TEST_CASE("generation is reproducible per seed", "[synth]") {
  SynthConfig cfg;
  cfg.rng_seed = 99;
  cfg.noise = 0.05;
  PlantedInstance a = generate(cfg);
  PlantedInstance b = generate(cfg);
  CHECK(a.graph.nodes() == b.graph.nodes());
  auto ea = a.graph.edges();
  auto eb = b.graph.edges();
  REQUIRE(ea.size() == eb.size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    CHECK(ea[i].u == eb[i].u);
    CHECK(ea[i].v == eb[i].v);
    CHECK(ea[i].weight == eb[i].weight);  // bit identical
  }

  cfg.rng_seed = 100;
  PlantedInstance c = generate(cfg);
  CHECK(c.graph.total_weight() != a.graph.total_weight());
}

TEST_CASE("erdos-renyi background edge count is near expectation", "[synth][property]") {
  SynthConfig cfg;
  cfg.er_p = 0.2;
  cfg.extra_edges = 0;  // isolate the background contribution
  const double pairs = 100.0 * 99.0 / 2.0;
  const double expected = cfg.er_p * pairs;
  const double sigma = std::sqrt(pairs * cfg.er_p * (1.0 - cfg.er_p));
  const int seeds = 20;
  double mean = 0.0;
  for (int s = 0; s < seeds; ++s) {
    cfg.rng_seed = 1000 + s;
    PlantedInstance inst = generate(cfg);
    double background_edges =
        static_cast<double>(inst.graph.edge_count()) - 5.0 * 435.0;
    mean += background_edges;
  }
  mean /= seeds;
  CHECK(std::abs(mean - expected) <= 3.0 * sigma / std::sqrt(seeds));
}

TEST_CASE("barabasi-albert background has the preferential attachment edge count",
          "[synth]") {
  SynthConfig cfg;
  cfg.background_kind = BackgroundKind::kBarabasiAlbert;
  cfg.ba_m = 10;
  cfg.extra_edges = 0;
  cfg.rng_seed = 3;
  PlantedInstance inst = generate(cfg);
  // seed clique C(10,2) plus 10 edges per later node
  std::size_t expected_background = 45 + (100 - 10) * 10;
  CHECK(inst.graph.edge_count() == 5 * 435 + expected_background);
}

TEST_CASE("barabasi-albert works down to m=1", "[synth]") {
  SynthConfig cfg;
  cfg.background_kind = BackgroundKind::kBarabasiAlbert;
  cfg.ba_m = 1;
  cfg.background_nodes = 20;
  cfg.extra_edges = 0;
  cfg.rng_seed = 8;
  PlantedInstance inst = generate(cfg);
  // tree over the background: one edge per attached node
  CHECK(inst.graph.edge_count() == 5 * 435 + 19);
}

TEST_CASE("noise resamples the expected number of pairs", "[synth]") {
  SynthConfig cfg;
  cfg.rng_seed = 11;
  PlantedInstance base = generate(cfg);
  std::size_t base_edges = base.graph.edge_count();

  PlantedInstance unchanged = apply_noise(base, 0.0, 5);
  CHECK(unchanged.graph.edge_count() == base_edges);
  CHECK(unchanged.graph.total_weight() == base.graph.total_weight());

  PlantedInstance noised = apply_noise(base, 0.05, 5);
  // truth sets never change
  REQUIRE(noised.truth.size() == base.truth.size());
  for (std::size_t i = 0; i < base.truth.size(); ++i) {
    CHECK(noised.truth[i] == base.truth[i]);
  }
  // sampled count = floor(0.05 * |E|); every sampled pair either rewrites an
  // existing weight or adds one edge, so growth is bounded by the sample size
  std::size_t sample = static_cast<std::size_t>(0.05 * static_cast<double>(base_edges));
  CHECK(noised.graph.edge_count() >= base_edges);
  CHECK(noised.graph.edge_count() <= base_edges + sample);

  // intra-clique pairs that changed moved into the background weight range
  std::size_t moved = 0;
  for (const NodeSet& clique : noised.truth) {
    for (const auto& e : induced_subgraph(noised.graph, clique).edges()) {
      if (e.weight < 0.8) {
        CHECK(e.weight <= 0.5);
        ++moved;
      }
    }
  }
  CHECK(moved > 0);

  CHECK_THROWS_AS(apply_noise(base, 1.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(apply_noise(base, -0.1, 5), std::invalid_argument);

  // standalone noise is reproducible per seed
  PlantedInstance again = apply_noise(base, 0.05, 5);
  auto ea = noised.graph.edges();
  auto eb = again.graph.edges();
  REQUIRE(ea.size() == eb.size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    CHECK(ea[i].weight == eb[i].weight);
  }
  PlantedInstance other_seed = apply_noise(base, 0.05, 6);
  CHECK(other_seed.graph.total_weight() != noised.graph.total_weight());
}

TEST_CASE("noise inside generate matches the config echo", "[synth]") {
  SynthConfig cfg;
  cfg.rng_seed = 21;
  cfg.noise = 0.1;
  PlantedInstance inst = generate(cfg);
  CHECK(inst.config_echo.noise == 0.1);
  for (std::size_t i = 0; i < inst.truth.size(); ++i) {
    CHECK(inst.truth[i].size() == cfg.clique_size);
  }
}

TEST_CASE("generator config validation", "[synth]") {
  SynthConfig cfg;
  cfg.clique_weight_range = {0.9, 0.8};
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = SynthConfig{};
  cfg.noise = 2.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = SynthConfig{};
  cfg.er_p = 1.5;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = SynthConfig{};
  cfg.num_cliques = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = SynthConfig{};
  cfg.background_kind = BackgroundKind::kBarabasiAlbert;
  cfg.ba_m = 200;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}
