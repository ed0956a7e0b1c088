#include <catch2/catch.hpp>

#include <random>

#include "dcs/alignment.hpp"
#include "test_support.hpp"

using namespace dcs;
namespace ts = test_support;

namespace {

// E_c = {(a,b,0.9),(b,c,0.8),(a,c,0.7)}, E_p = {(a,b),(b,c)} with a=0,b=1,c=2.
DualNetwork triangle_dual() {
  WeightedGraph conceptual({0, 1, 2}, {{0, 1, 0.9}, {1, 2, 0.8}, {0, 2, 0.7}});
  UnweightedGraph physical({0, 1, 2}, {{0, 1}, {1, 2}});
  return DualNetwork(std::move(conceptual), std::move(physical));
}

}  // namespace

TEST_CASE("alignment with delta 1 keeps only doubly adjacent pairs", "[alignment]") {
  WeightedGraph conceptual({0, 1, 2}, {{0, 1, 0.9}, {1, 2, 0.8}});
  UnweightedGraph physical({0, 1, 2}, {{0, 1}, {1, 2}});
  DualNetwork dn(std::move(conceptual), std::move(physical));

  WeightedGraph aligned = build_alignment_graph(dn, AlignmentConfig{1});
  auto edges = aligned.edges();
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].weight == Approx(0.9));
  CHECK(edges[1].weight == Approx(0.8));
  CHECK(aligned.nodes() == dn.nodes());
}

TEST_CASE("path-average weight for conceptual edges within delta", "[alignment]") {
  DualNetwork dn = triangle_dual();

  WeightedGraph d2 = build_alignment_graph(dn, AlignmentConfig{2});
  REQUIRE(d2.edge_count() == 3);
  // (a,c) goes through the physical path a-b-c whose conceptual weights
  // average to (0.9 + 0.8) / 2
  CHECK(d2.edge_weight(0, 2).value() == Approx(0.85));
  CHECK(d2.edge_weight(0, 1).value() == Approx(0.9));
  CHECK(d2.edge_weight(1, 2).value() == Approx(0.8));

  WeightedGraph d1 = build_alignment_graph(dn, AlignmentConfig{1});
  CHECK(d1.edge_count() == 2);
  CHECK_FALSE(d1.edge_weight(0, 2).has_value());
}

TEST_CASE("physical path edges missing from the conceptual layer use the direct weight",
          "[alignment]") {
  // conceptual: (0,2) only; physical path 0-1-2 where (0,1) and (1,2) have no
  // conceptual counterpart, so both stand in with w_c(0,2) = 0.6.
  WeightedGraph conceptual({0, 1, 2}, {{0, 2, 0.6}});
  UnweightedGraph physical({0, 1, 2}, {{0, 1}, {1, 2}});
  DualNetwork dn(std::move(conceptual), std::move(physical));

  WeightedGraph aligned = build_alignment_graph(dn, AlignmentConfig{2});
  REQUIRE(aligned.edge_count() == 1);
  CHECK(aligned.edge_weight(0, 2).value() == Approx(0.6));
}

TEST_CASE("tied shortest paths resolve toward ascending node ids", "[alignment]") {
  // two physical paths 0-1-3 and 0-2-3; BFS visits neighbor 1 before 2
  WeightedGraph conceptual({0, 1, 2, 3},
                           {{0, 3, 0.5}, {0, 1, 1.0}, {1, 3, 0.8}, {0, 2, 0.1}, {2, 3, 0.1}});
  UnweightedGraph physical({0, 1, 2, 3}, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  DualNetwork dn(std::move(conceptual), std::move(physical));

  WeightedGraph aligned = build_alignment_graph(dn, AlignmentConfig{2});
  CHECK(aligned.edge_weight(0, 3).value() == Approx(0.9));  // mean(1.0, 0.8), not mean(0.1, 0.1)
}

TEST_CASE("alignment validation errors", "[alignment]") {
  DualNetwork dn = triangle_dual();
  CHECK_THROWS_AS(build_alignment_graph(dn, AlignmentConfig{0}), std::invalid_argument);

  SeedPairs bad_seed;
  bad_seed.pairs = {{0, 0}, {1, 1}, {9, 2}};
  CHECK_THROWS_AS(build_alignment_graph(dn, bad_seed, AlignmentConfig{1}), std::invalid_argument);

  SeedPairs dup;
  dup.pairs = {{0, 0}, {0, 1}};
  CHECK_THROWS_AS(build_alignment_graph(dn, dup, AlignmentConfig{1}), std::invalid_argument);
}

TEST_CASE("subset of seed pairs restricts the alignment node set", "[alignment]") {
  DualNetwork dn = triangle_dual();
  SeedPairs seeds;
  seeds.pairs = {{0, 0}, {1, 1}};
  WeightedGraph aligned = build_alignment_graph(dn, seeds, AlignmentConfig{2});
  CHECK(aligned.nodes() == std::vector<NodeId>{0, 1});
  CHECK(aligned.edge_count() == 1);
}

TEST_CASE("delta monotonicity and delta-1 equality", "[alignment][property]") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    DualNetwork dn = ts::random_dual_network(rng, 8 + rng() % 15, 0.35, 0.3);

    // delta = 1: alignment edges are exactly E_c intersect E_p, conceptual weights
    WeightedGraph base = build_alignment_graph(dn, AlignmentConfig{1});
    std::size_t expected = 0;
    for (const auto& e : dn.conceptual.edges()) {
      if (dn.physical.has_edge(e.u, e.v)) {
        ++expected;
        CHECK(base.edge_weight(e.u, e.v).value() == e.weight);
      }
    }
    CHECK(base.edge_count() == expected);

    // growing delta only adds edges
    WeightedGraph prev = base;
    for (std::uint32_t delta = 2; delta <= 4; ++delta) {
      WeightedGraph next = build_alignment_graph(dn, AlignmentConfig{delta});
      for (const auto& e : prev.edges()) {
        CHECK(next.edge_weight(e.u, e.v).has_value());
      }
      prev = next;
    }
  }
}

TEST_CASE("alignment edge weights stay within the conceptual weight range",
          "[alignment][property]") {
  std::mt19937_64 rng(913);
  for (int trial = 0; trial < 15; ++trial) {
    DualNetwork dn = ts::random_dual_network(rng, 12, 0.4, 0.35);
    if (dn.conceptual.edge_count() == 0) continue;
    double lo = 1e300, hi = -1e300;
    for (const auto& e : dn.conceptual.edges()) {
      lo = std::min(lo, e.weight);
      hi = std::max(hi, e.weight);
    }
    WeightedGraph aligned = build_alignment_graph(dn, AlignmentConfig{3});
    for (const auto& e : aligned.edges()) {
      CHECK(e.weight >= lo - 1e-12);
      CHECK(e.weight <= hi + 1e-12);
    }
  }
}

TEST_CASE("physical distances within delta", "[alignment]") {
  // path 0-1-2-3
  WeightedGraph conceptual({0, 1, 2, 3});
  UnweightedGraph physical({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}});
  DualNetwork dn(std::move(conceptual), std::move(physical));

  PairDistances d2 = physical_distances_within(dn, 2);
  CHECK(d2.size() == 5);
  CHECK(d2.at(0, 1) == 1);
  CHECK(d2.at(1, 2) == 1);
  CHECK(d2.at(2, 3) == 1);
  CHECK(d2.at(0, 2) == 2);
  CHECK(d2.at(1, 3) == 2);
  CHECK_FALSE(d2.contains(0, 3));
  CHECK(d2.at(2, 0) == 2);  // symmetric lookup

  PairDistances d1 = physical_distances_within(dn, 1);
  CHECK(d1.size() == dn.physical.edge_count());

  // disconnected pair is absent
  WeightedGraph c2({0, 1});
  UnweightedGraph p2({0, 1});
  DualNetwork split(std::move(c2), std::move(p2));
  CHECK(physical_distances_within(split, 3).size() == 0);
}

TEST_CASE("verify physical connectivity", "[alignment]") {
  DualNetwork dn = triangle_dual();
  CHECK(verify_physical_connectivity(dn, NodeSet({1})));
  CHECK(verify_physical_connectivity(dn, NodeSet({0, 1})));
  // 0 and 2 are not physically adjacent
  CHECK_FALSE(verify_physical_connectivity(dn, NodeSet({0, 2})));
  CHECK(verify_physical_connectivity(dn, NodeSet({0, 1, 2})));
  CHECK_THROWS_AS(verify_physical_connectivity(dn, NodeSet({0, 7})), std::invalid_argument);
}

TEST_CASE("connected alignment subgraphs at delta 1 are physically connected",
          "[alignment][property]") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    DualNetwork dn = ts::random_dual_network(rng, 14, 0.4, 0.35);
    WeightedGraph aligned = build_alignment_graph(dn, AlignmentConfig{1});
    for (const NodeSet& component : connected_components(aligned)) {
      CHECK(verify_physical_connectivity(dn, component));
    }
  }
}
