#pragma once

// Greedy peeling: iteratively remove the node of minimum weighted degree,
// recording the surviving node set and its density before each removal. The
// sequence of snapshots feeds two selectors: plain density (Greedy) and the
// size-corrected score rho + 2*rho/|V_i| (V-Greedy), which prefers a single
// dense core over two dense cores joined by a stray edge.

#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dcs/graph.hpp"

namespace dcs {

// Thrown when every snapshot of a peeling sequence is ruled out by an
// exclusion list.
struct ExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PeelCandidate {
  NodeSet nodes;
  double rho = 0.0;
  double score = 0.0;
  std::size_t step_index = 0;  // 1-based position in the peeling sequence
};

// Result of one peeling run. Snapshots are stored implicitly: the node set at
// step i (1-based) is everything removed at steps >= i, so a sequence over n
// nodes costs O(n) memory. Densities are maintained incrementally with a long
// double running weight; selectors recompute the winner's density exactly.
class PeelSequence {
 public:
  struct Counters {
    std::size_t heap_pushes = 0;
    std::size_t heap_pops = 0;
  };

  std::size_t size() const { return removal_order_.size(); }

  double rho_at(std::size_t step) const { return rho_[check_step(step) - 1]; }
  double score_at(std::size_t step) const { return score_[check_step(step) - 1]; }

  // Nodes removed at this step and later, i.e. the surviving set when the
  // step's density was recorded.
  NodeSet nodes_at(std::size_t step) const {
    check_step(step);
    std::vector<NodeId> nodes(removal_order_.begin() + static_cast<std::ptrdiff_t>(step) - 1,
                              removal_order_.end());
    return NodeSet(std::move(nodes));
  }

  PeelCandidate candidate(std::size_t step) const {
    return {nodes_at(step), rho_at(step), score_at(step), step};
  }

  // Order nodes were peeled in; position of a node is its removal step.
  const std::vector<NodeId>& removal_order() const { return removal_order_; }

  const Counters& heap_counters() const { return counters_; }

 private:
  friend PeelSequence peel_sequence(const WeightedGraph& g);

  std::size_t check_step(std::size_t step) const {
    if (step < 1 || step > removal_order_.size()) {
      throw std::invalid_argument("peeling step out of range");
    }
    return step;
  }

  std::vector<NodeId> removal_order_;
  std::vector<double> rho_;
  std::vector<double> score_;
  Counters counters_;
};

// Peels g down to a single node. Ties on minimum volume are broken toward the
// lowest node id. Lazy-deletion min-heap; stale entries are skipped when their
// recorded key no longer matches the node's current volume.
inline PeelSequence peel_sequence(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("cannot peel an empty graph");

  const std::size_t capacity =
      static_cast<std::size_t>(g.nodes().back()) + 1;
  std::vector<long double> volume(capacity, 0.0L);
  std::vector<std::uint8_t> alive(capacity, 0);
  long double total = 0.0L;
  for (NodeId v : g.nodes()) {
    alive[v] = 1;
    long double sum = 0.0L;
    for (const Neighbor& nb : g.neighbors(v)) sum += nb.weight;
    volume[v] = sum;
    total += sum;
  }
  total /= 2.0L;

  using HeapEntry = std::pair<double, NodeId>;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  PeelSequence seq;
  seq.removal_order_.reserve(n);
  seq.rho_.reserve(n);
  seq.score_.reserve(n);
  for (NodeId v : g.nodes()) {
    heap.push({static_cast<double>(volume[v]), v});
    ++seq.counters_.heap_pushes;
  }

  for (std::size_t step = 1; step <= n; ++step) {
    const auto survivors = static_cast<long double>(n - step + 1);
    long double rho = 2.0L * (total > 0.0L ? total : 0.0L) / survivors;
    seq.rho_.push_back(static_cast<double>(rho));
    seq.score_.push_back(static_cast<double>(rho + 2.0L * rho / survivors));

    NodeId victim = 0;
    for (;;) {
      auto [key, v] = heap.top();
      heap.pop();
      ++seq.counters_.heap_pops;
      if (alive[v] && key == static_cast<double>(volume[v])) {
        victim = v;
        break;
      }
    }
    alive[victim] = 0;
    seq.removal_order_.push_back(victim);
    total -= volume[victim];
    for (const Neighbor& nb : g.neighbors(victim)) {
      if (!alive[nb.id]) continue;
      volume[nb.id] -= nb.weight;
      heap.push({static_cast<double>(volume[nb.id]), nb.id});
      ++seq.counters_.heap_pushes;
    }
    volume[victim] = 0.0L;
  }
  return seq;
}

namespace detail {

// Exact density of the subgraph induced by sorted `members`.
inline double subset_density(const WeightedGraph& g, std::span<const NodeId> members) {
  if (members.empty()) throw std::invalid_argument("density is undefined for the empty set");
  NodeId max_id = members.back();
  std::vector<std::uint8_t> in_subset(static_cast<std::size_t>(max_id) + 1, 0);
  for (NodeId v : members) in_subset[v] = 1;
  double weight = 0.0;
  for (NodeId v : members) {
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.id > v && nb.id <= max_id && in_subset[nb.id]) weight += nb.weight;
    }
  }
  return 2.0 * weight / static_cast<double>(members.size());
}

inline double v_greedy_score(double rho, std::size_t node_count) {
  return rho + 2.0 * rho / static_cast<double>(node_count);
}

inline bool set_in_list(const NodeSet& s, std::span<const NodeSet> list) {
  for (const NodeSet& other : list) {
    if (other == s) return true;
  }
  return false;
}

// Shared walk for v_greedy and v_greedy_ranked: visit snapshots in descending
// score order (ties toward the earlier step), replace a disconnected snapshot
// by its best-scoring connected component, and return the first result not in
// the exclusion list. rho and score of the returned candidate are recomputed
// exactly.
inline PeelCandidate best_connected_candidate(const WeightedGraph& g, const PeelSequence& seq,
                                              std::span<const NodeSet> exclude) {
  std::vector<std::size_t> order(seq.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i + 1;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return seq.score_at(a) > seq.score_at(b);
  });

  for (std::size_t step : order) {
    NodeSet snapshot = seq.nodes_at(step);
    auto components = components_in_subset(g, std::span<const NodeId>(snapshot.members()));
    NodeSet pick;
    double pick_rho = 0.0;
    if (components.size() == 1) {
      pick = std::move(snapshot);
      pick_rho = subset_density(g, std::span<const NodeId>(pick.members()));
    } else {
      double best_score = -1.0;
      for (auto& component : components) {
        double rho = subset_density(g, std::span<const NodeId>(component));
        double score = v_greedy_score(rho, component.size());
        if (score > best_score) {
          best_score = score;
          pick = NodeSet(std::move(component));
          pick_rho = rho;
        }
      }
    }
    if (!set_in_list(pick, exclude)) {
      double pick_score = v_greedy_score(pick_rho, pick.size());
      return {std::move(pick), pick_rho, pick_score, step};
    }
  }
  throw ExhaustedError("all peeling snapshots are excluded");
}

}  // namespace detail

// Densest snapshot of the peeling sequence (ties toward the earlier step).
// This is the classic 1/2-approximation of the densest subgraph; the snapshot
// is returned as-is and may be disconnected.
inline PeelCandidate greedy_densest(const WeightedGraph& g) {
  PeelSequence seq = peel_sequence(g);
  std::size_t best = 1;
  for (std::size_t step = 2; step <= seq.size(); ++step) {
    if (seq.rho_at(step) > seq.rho_at(best)) best = step;
  }
  NodeSet nodes = seq.nodes_at(best);
  double rho = detail::subset_density(g, std::span<const NodeId>(nodes.members()));
  return {std::move(nodes), rho, rho, best};
}

// Snapshot maximizing rho + 2*rho/|V_i|. A disconnected winner is replaced by
// its best-scoring connected component.
inline PeelCandidate v_greedy(const WeightedGraph& g) {
  PeelSequence seq = peel_sequence(g);
  return detail::best_connected_candidate(g, seq, {});
}

// Like v_greedy, but skipping any candidate whose node set appears in
// `exclude`. Throws ExhaustedError when nothing remains.
inline PeelCandidate v_greedy_ranked(const WeightedGraph& g, std::span<const NodeSet> exclude) {
  PeelSequence seq = peel_sequence(g);
  return detail::best_connected_candidate(g, seq, exclude);
}

}  // namespace dcs
