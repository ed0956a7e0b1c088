#pragma once

// Iterative mining of the top-k overlapping densest connected subgraphs of a
// weighted graph. Iteration 1 takes the V-Greedy subgraph; each later
// iteration re-peels a copy of the original graph from which most already
// covered nodes have been dropped, keeping only the covered nodes of highest
// weighted degree so that hubs may be shared between subgraphs. The objective
// balances total density against pairwise set distance, weighted by lambda.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dcs/alignment.hpp"
#include "dcs/graph.hpp"
#include "dcs/peeling.hpp"

namespace dcs {

struct MiningConfig {
  std::size_t k = 1;          // number of subgraphs
  double lambda = 1.0;        // distance weight in the objective
  double alpha = 0.1;         // fraction of covered nodes retained between iterations
  double f = 0.5;             // coverage threshold switching removal cases
  std::uint64_t tie_seed = 0; // reserved for randomized tie-breaks; unused by default

  void validate() const {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("lambda must be positive");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
    if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("f must be in (0,1]");
  }
};

struct SubgraphSet {
  std::vector<NodeSet> subgraphs;
  std::vector<double> densities;            // density of the mined graph induced on each set
  NodeSet covered;                          // union of all subgraphs
  double objective = 0.0;
  std::vector<bool> physical_connected;     // per subgraph; empty when no dual network given
  bool partial = false;                     // true when fewer than k subgraphs could be found
};

// Distance between two node sets: 0 when equal, otherwise
// 2 - |a n b|^2 / (|a| * |b|), which lies in (1, 2].
inline double pair_distance(const NodeSet& a, const NodeSet& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("pair_distance is undefined for empty sets");
  }
  if (a == b) return 0.0;
  double common = static_cast<double>(intersection_size(a, b));
  return 2.0 - common * common / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

// Sum of per-subgraph densities plus lambda times the sum of pairwise
// distances.
inline double objective(std::span<const NodeSet> subgraphs, const WeightedGraph& g_c,
                        double lambda) {
  if (subgraphs.empty()) throw std::invalid_argument("objective of an empty subgraph list");
  double value = 0.0;
  for (const NodeSet& x : subgraphs) {
    value += density(induced_subgraph(g_c, x));
  }
  for (std::size_t i = 0; i < subgraphs.size(); ++i) {
    for (std::size_t j = i + 1; j < subgraphs.size(); ++j) {
      value += lambda * pair_distance(subgraphs[i], subgraphs[j]);
    }
  }
  return value;
}

inline NodeSet coverage(const SubgraphSet& x) {
  NodeSet covered;
  for (const NodeSet& s : x.subgraphs) covered = node_set_union(covered, s);
  return covered;
}

namespace detail {

// ceil(fraction * count) / floor(fraction * count) with a small slack so that
// decimal fractions whose product is an exact integer are not pushed over by
// floating-point representation (e.g. 0.1 * 30).
inline std::size_t ceil_fraction(double fraction, std::size_t count) {
  double scaled = fraction * static_cast<double>(count);
  return static_cast<std::size_t>(std::ceil(scaled - 1e-9));
}

inline std::size_t floor_fraction(double fraction, std::size_t count) {
  double scaled = fraction * static_cast<double>(count);
  return static_cast<std::size_t>(std::floor(scaled + 1e-9));
}

// Covered nodes ordered by volume in the original graph, descending, ties
// toward the lower id. The retained prefix keeps its high-degree nodes.
inline std::vector<NodeId> order_by_volume(const WeightedGraph& g, const NodeSet& covered) {
  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(covered.size());
  for (NodeId v : covered) ranked.push_back({vol(g, v), v});
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<NodeId> order;
  order.reserve(ranked.size());
  for (auto& [volume, v] : ranked) order.push_back(v);
  return order;
}

inline WeightedGraph remove_nodes(const WeightedGraph& g, std::span<const NodeId> removed) {
  if (removed.empty()) return g;
  NodeSet removed_set(std::vector<NodeId>(removed.begin(), removed.end()));
  std::vector<NodeId> keep;
  keep.reserve(g.node_count() - removed_set.size());
  for (NodeId v : g.nodes()) {
    if (!removed_set.contains(v)) keep.push_back(v);
  }
  return induced_subgraph(g, NodeSet(std::move(keep)));
}

}  // namespace detail

// Mines k subgraphs of g. When a dual network is supplied, each subgraph is
// additionally checked for connectivity in the physical layer (reported, not
// repaired). If an iteration exhausts all candidates, removed nodes are
// restored one at a time (highest volume first); if that still fails the
// partial result is returned with the `partial` flag set.
inline SubgraphSet iwds_mine(const WeightedGraph& g, const MiningConfig& cfg,
                             const DualNetwork* dual = nullptr) {
  if (g.node_count() == 0) throw std::invalid_argument("cannot mine an empty graph");
  cfg.validate();
  if (dual) {
    for (NodeId v : g.nodes()) {
      if (!dual->conceptual.has_node(v)) {
        throw std::invalid_argument("mined graph node " + std::to_string(v) +
                                    " is missing from the dual network");
      }
    }
  }

  SubgraphSet result;
  for (std::size_t iteration = 1; iteration <= cfg.k; ++iteration) {
    std::optional<PeelCandidate> winner;
    if (iteration == 1) {
      winner = v_greedy(g);
    } else {
      NodeSet covered = coverage(result);
      std::vector<NodeId> ranked = detail::order_by_volume(g, covered);
      std::size_t retained;
      if (static_cast<double>(covered.size()) <=
          cfg.f * static_cast<double>(g.node_count()) + 1e-9) {
        // Case 1: coverage still small; retain the top alpha fraction.
        retained = detail::ceil_fraction(cfg.alpha, covered.size());
      } else {
        // Case 2: coverage large; remove the bottom (1 - alpha) fraction.
        retained = covered.size() - detail::floor_fraction(1.0 - cfg.alpha, covered.size());
      }
      std::span<const NodeId> removable(ranked.begin() + static_cast<std::ptrdiff_t>(retained),
                                        ranked.end());
      // Restore loop: removable[restore..] are dropped; restoring proceeds
      // highest volume first.
      for (std::size_t restore = 0; restore <= removable.size(); ++restore) {
        std::span<const NodeId> removed = removable.subspan(restore);
        if (removed.size() == g.node_count()) continue;
        WeightedGraph pruned = detail::remove_nodes(g, removed);
        try {
          winner = v_greedy_ranked(pruned, result.subgraphs);
          break;
        } catch (const ExhaustedError&) {
          continue;
        }
      }
      if (!winner) {
        result.partial = true;
        break;
      }
    }
    result.subgraphs.push_back(std::move(winner->nodes));
  }

  result.covered = coverage(result);
  result.densities.reserve(result.subgraphs.size());
  for (const NodeSet& x : result.subgraphs) {
    result.densities.push_back(density(induced_subgraph(g, x)));
  }
  result.objective = objective(result.subgraphs, g, cfg.lambda);
  if (dual) {
    result.physical_connected.reserve(result.subgraphs.size());
    for (const NodeSet& x : result.subgraphs) {
      result.physical_connected.push_back(verify_physical_connectivity(*dual, x));
    }
  }
  return result;
}

}  // namespace dcs
