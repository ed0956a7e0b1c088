#pragma once

// Core graph types for dual-network mining: an edge-weighted undirected graph,
// an unweighted one, the dual network pairing them over a shared vertex set,
// and node-set utilities. Node ids are dense non-negative integers; string
// labels are resolved at the I/O boundary (see io.hpp).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dcs {

using NodeId = std::uint32_t;

// Hop-count marker for unreachable nodes in BFS results.
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct Neighbor {
  NodeId id;
  double weight;
};

struct WeightedEdge {
  NodeId u;
  NodeId v;
  double weight;
};

struct Edge {
  NodeId u;
  NodeId v;
};

inline std::vector<NodeId> contiguous_nodes(std::size_t n) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
  return ids;
}

// A set of node ids stored as a sorted unique vector. Cheap to intersect,
// deterministic to iterate.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids) : members_(ids) { normalize(); }
  explicit NodeSet(std::vector<NodeId> ids) : members_(std::move(ids)) { normalize(); }

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<NodeId>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(NodeId v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  bool operator==(const NodeSet& other) const = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<NodeId> members_;
};

inline std::size_t intersection_size(const NodeSet& a, const NodeSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

inline NodeSet node_set_union(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> merged;
  merged.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  return NodeSet(std::move(merged));
}

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace detail

// Undirected graph with non-negative edge weights. Immutable after
// construction; adjacency is stored as per-node neighbor lists sorted by id.
// The node id space may be sparse (induced subgraphs keep original ids).
class WeightedGraph {
 public:
  WeightedGraph() = default;

  explicit WeightedGraph(std::vector<NodeId> nodes, std::vector<WeightedEdge> edges = {}) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    nodes_ = std::move(nodes);
    std::size_t capacity = nodes_.empty() ? 0 : static_cast<std::size_t>(nodes_.back()) + 1;
    present_.assign(capacity, 0);
    for (NodeId v : nodes_) present_[v] = 1;
    adj_.assign(capacity, {});
    for (const WeightedEdge& e : edges) add_edge_unchecked(e);
    finalize();
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  bool has_node(NodeId v) const {
    return v < present_.size() && present_[v];
  }

  std::span<const Neighbor> neighbors(NodeId v) const {
    check_node(v);
    return adj_[v];
  }

  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  bool has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    return find_neighbor(u, v) != nullptr;
  }

  std::optional<double> edge_weight(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const Neighbor* nb = find_neighbor(u, v);
    if (!nb) return std::nullopt;
    return nb->weight;
  }

  // Sum of all edge weights, accumulated once at construction.
  double total_weight() const { return total_weight_; }

  // Edges in canonical order: u < v, sorted lexicographically.
  std::vector<WeightedEdge> edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count_);
    for (NodeId u : nodes_) {
      for (const Neighbor& nb : adj_[u]) {
        if (nb.id > u) out.push_back({u, nb.id, nb.weight});
      }
    }
    return out;
  }

 private:
  void add_edge_unchecked(const WeightedEdge& e) {
    detail::require(has_node(e.u) && has_node(e.v),
                    "edge endpoint not in node set: (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + ")");
    detail::require(e.u != e.v, "self-loop rejected at node " + std::to_string(e.u));
    detail::require(e.weight >= 0.0 && std::isfinite(e.weight),
                    "edge weight must be finite and non-negative");
    adj_[e.u].push_back({e.v, e.weight});
    adj_[e.v].push_back({e.u, e.weight});
  }

  void finalize() {
    total_weight_ = 0.0;
    edge_count_ = 0;
    for (NodeId v : nodes_) {
      auto& list = adj_[v];
      std::sort(list.begin(), list.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
      for (std::size_t i = 1; i < list.size(); ++i) {
        detail::require(list[i].id != list[i - 1].id,
                        "parallel edge rejected: (" + std::to_string(v) + "," +
                            std::to_string(list[i].id) + ")");
      }
      for (const Neighbor& nb : list) {
        if (nb.id > v) {
          total_weight_ += nb.weight;
          ++edge_count_;
        }
      }
    }
  }

  const Neighbor* find_neighbor(NodeId u, NodeId v) const {
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& nb, NodeId id) { return nb.id < id; });
    if (it == list.end() || it->id != v) return nullptr;
    return &*it;
  }

  void check_node(NodeId v) const {
    if (!has_node(v)) {
      throw std::invalid_argument("unknown node id " + std::to_string(v));
    }
  }

  std::vector<NodeId> nodes_;
  std::vector<std::uint8_t> present_;
  std::vector<std::vector<Neighbor>> adj_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
};

// Undirected unweighted graph, same storage discipline as WeightedGraph.
class UnweightedGraph {
 public:
  UnweightedGraph() = default;

  explicit UnweightedGraph(std::vector<NodeId> nodes, std::vector<Edge> edges = {}) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    nodes_ = std::move(nodes);
    std::size_t capacity = nodes_.empty() ? 0 : static_cast<std::size_t>(nodes_.back()) + 1;
    present_.assign(capacity, 0);
    for (NodeId v : nodes_) present_[v] = 1;
    adj_.assign(capacity, {});
    for (const Edge& e : edges) {
      detail::require(has_node(e.u) && has_node(e.v),
                      "edge endpoint not in node set: (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ")");
      detail::require(e.u != e.v, "self-loop rejected at node " + std::to_string(e.u));
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    edge_count_ = 0;
    for (NodeId v : nodes_) {
      auto& list = adj_[v];
      std::sort(list.begin(), list.end());
      for (std::size_t i = 1; i < list.size(); ++i) {
        detail::require(list[i] != list[i - 1], "parallel edge rejected: (" +
                                                    std::to_string(v) + "," +
                                                    std::to_string(list[i]) + ")");
      }
      for (NodeId nb : list) {
        if (nb > v) ++edge_count_;
      }
    }
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  bool has_node(NodeId v) const { return v < present_.size() && present_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    if (!has_node(v)) throw std::invalid_argument("unknown node id " + std::to_string(v));
    return adj_[v];
  }

  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  bool has_edge(NodeId u, NodeId v) const {
    auto list = neighbors(u);
    if (!has_node(v)) throw std::invalid_argument("unknown node id " + std::to_string(v));
    return std::binary_search(list.begin(), list.end(), v);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u : nodes_) {
      for (NodeId v : adj_[u]) {
        if (v > u) out.push_back({u, v});
      }
    }
    return out;
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::uint8_t> present_;
  std::vector<std::vector<NodeId>> adj_;
  std::size_t edge_count_ = 0;
};

// A pair of graphs over the same vertex set: weighted conceptual layer plus
// unweighted physical layer.
struct DualNetwork {
  WeightedGraph conceptual;
  UnweightedGraph physical;

  DualNetwork(WeightedGraph conceptual_graph, UnweightedGraph physical_graph)
      : conceptual(std::move(conceptual_graph)), physical(std::move(physical_graph)) {
    detail::require(conceptual.nodes() == physical.nodes(),
                    "dual network layers must share the same vertex set");
  }

  const std::vector<NodeId>& nodes() const { return conceptual.nodes(); }
};

namespace detail {

inline void for_each_neighbor_id(const WeightedGraph& g, NodeId v, auto&& fn) {
  for (const Neighbor& nb : g.neighbors(v)) fn(nb.id);
}

inline void for_each_neighbor_id(const UnweightedGraph& g, NodeId v, auto&& fn) {
  for (NodeId nb : g.neighbors(v)) fn(nb);
}

// Connected components of the subgraph induced by `members` (sorted unique,
// all present in g), without materializing the subgraph. Components come out
// ordered by their smallest node id; nodes within a component are sorted.
template <typename GraphT>
std::vector<std::vector<NodeId>> components_in_subset(const GraphT& g,
                                                      std::span<const NodeId> members) {
  std::vector<std::vector<NodeId>> components;
  if (members.empty()) return components;
  NodeId max_id = members.back();
  std::vector<std::uint8_t> in_subset(static_cast<std::size_t>(max_id) + 1, 0);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(max_id) + 1, 0);
  for (NodeId v : members) in_subset[v] = 1;
  std::vector<NodeId> queue;
  for (NodeId start : members) {
    if (visited[start]) continue;
    visited[start] = 1;
    queue.clear();
    queue.push_back(start);
    std::size_t head = 0;
    while (head < queue.size()) {
      NodeId v = queue[head++];
      for_each_neighbor_id(g, v, [&](NodeId nb) {
        if (nb <= max_id && in_subset[nb] && !visited[nb]) {
          visited[nb] = 1;
          queue.push_back(nb);
        }
      });
    }
    std::sort(queue.begin(), queue.end());
    components.push_back(queue);
  }
  return components;
}

template <typename GraphT>
bool subset_is_connected(const GraphT& g, std::span<const NodeId> members) {
  if (members.empty()) return true;
  return components_in_subset(g, members).front().size() == members.size();
}

}  // namespace detail

// Weighted degree of v: the sum of weights of its incident edges.
inline double vol(const WeightedGraph& g, NodeId v) {
  double sum = 0.0;
  for (const Neighbor& nb : g.neighbors(v)) sum += nb.weight;
  return sum;
}

// Density of a weighted graph: sum of node volumes over the node count,
// i.e. twice the total edge weight divided by |V|. Undefined on the empty
// graph.
inline double density(const WeightedGraph& g) {
  if (g.node_count() == 0) {
    throw std::invalid_argument("density is undefined for the empty graph");
  }
  return 2.0 * g.total_weight() / static_cast<double>(g.node_count());
}

inline WeightedGraph induced_subgraph(const WeightedGraph& g, const NodeSet& s) {
  std::vector<WeightedEdge> edges;
  for (NodeId v : s) {
    if (!g.has_node(v)) {
      throw std::invalid_argument("induced subgraph member " + std::to_string(v) +
                                  " is not in the graph");
    }
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.id > v && s.contains(nb.id)) edges.push_back({v, nb.id, nb.weight});
    }
  }
  return WeightedGraph(s.members(), std::move(edges));
}

inline UnweightedGraph induced_subgraph(const UnweightedGraph& g, const NodeSet& s) {
  std::vector<Edge> edges;
  for (NodeId v : s) {
    if (!g.has_node(v)) {
      throw std::invalid_argument("induced subgraph member " + std::to_string(v) +
                                  " is not in the graph");
    }
    for (NodeId nb : g.neighbors(v)) {
      if (nb > v && s.contains(nb)) edges.push_back({v, nb});
    }
  }
  return UnweightedGraph(s.members(), std::move(edges));
}

// Empty graphs are vacuously connected.
template <typename GraphT>
bool is_connected(const GraphT& g) {
  return detail::subset_is_connected(g, std::span<const NodeId>(g.nodes()));
}

template <typename GraphT>
std::vector<NodeSet> connected_components(const GraphT& g) {
  std::vector<NodeSet> out;
  for (auto& component : detail::components_in_subset(g, std::span<const NodeId>(g.nodes()))) {
    out.push_back(NodeSet(std::move(component)));
  }
  return out;
}

// Exact hop counts from `source`; every node of g gets an entry, with
// kUnreachable marking nodes in other components. Neighbors are explored in
// ascending id order.
inline std::unordered_map<NodeId, std::uint32_t> bfs_distances(const UnweightedGraph& g,
                                                               NodeId source) {
  if (!g.has_node(source)) {
    throw std::invalid_argument("unknown BFS source " + std::to_string(source));
  }
  std::unordered_map<NodeId, std::uint32_t> dist;
  dist.reserve(g.node_count());
  for (NodeId v : g.nodes()) dist[v] = kUnreachable;
  dist[source] = 0;
  std::vector<NodeId> queue{source};
  std::size_t head = 0;
  while (head < queue.size()) {
    NodeId v = queue[head++];
    std::uint32_t next = dist[v] + 1;
    for (NodeId nb : g.neighbors(v)) {
      auto& d = dist[nb];
      if (d == kUnreachable) {
        d = next;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

}  // namespace dcs
