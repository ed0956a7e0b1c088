#pragma once

// Alignment-graph construction: merge the two layers of a dual network into a
// single weighted graph. Two seed nodes become adjacent when they are adjacent
// in the conceptual layer and either directly adjacent in the physical layer
// (keeping the conceptual weight) or within `delta` physical hops (averaging
// the conceptual weights of the edges along one physical shortest path, with
// the direct conceptual weight standing in for path edges that have no
// conceptual counterpart). With delta = 1 the alignment edge set is exactly
// the intersection of the two layers.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dcs/graph.hpp"

namespace dcs {

// Correspondences between conceptual and physical nodes. Both sides must be
// duplicate-free; the default is the identity mapping since the two layers
// share their vertex set.
struct SeedPairs {
  std::vector<std::pair<NodeId, NodeId>> pairs;  // (conceptual id, physical id)

  static SeedPairs identity(const DualNetwork& dn) {
    SeedPairs seeds;
    seeds.pairs.reserve(dn.nodes().size());
    for (NodeId v : dn.nodes()) seeds.pairs.push_back({v, v});
    return seeds;
  }
};

struct AlignmentConfig {
  std::uint32_t delta = 1;  // maximum physical hop distance
};

// Hop counts for all physical node pairs within a bounded distance. Pairs are
// stored once with symmetric lookup.
class PairDistances {
 public:
  void insert(NodeId u, NodeId v, std::uint32_t hops) { map_[key(u, v)] = hops; }

  bool contains(NodeId u, NodeId v) const { return map_.find(key(u, v)) != map_.end(); }

  std::uint32_t at(NodeId u, NodeId v) const {
    auto it = map_.find(key(u, v));
    if (it == map_.end()) throw std::invalid_argument("pair distance not recorded");
    return it->second;
  }

  std::size_t size() const { return map_.size(); }

 private:
  static std::uint64_t key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::unordered_map<std::uint64_t, std::uint32_t> map_;
};

namespace detail {

// Depth-bounded BFS over the physical layer recording parents; neighbors are
// explored in ascending id order so tied shortest paths resolve
// deterministically to the first one found.
struct BoundedBfs {
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> parent;
  std::vector<NodeId> touched;

  void run(const UnweightedGraph& g, NodeId source, std::uint32_t limit) {
    if (dist.size() < g.nodes().back() + 1u) {
      dist.assign(g.nodes().back() + 1u, kUnreachable);
      parent.assign(g.nodes().back() + 1u, 0);
    } else {
      for (NodeId v : touched) dist[v] = kUnreachable;
    }
    touched.clear();
    dist[source] = 0;
    touched.push_back(source);
    std::size_t head = 0;
    while (head < touched.size()) {
      NodeId v = touched[head++];
      if (dist[v] == limit) continue;
      for (NodeId nb : g.neighbors(v)) {
        if (dist[nb] == kUnreachable) {
          dist[nb] = dist[v] + 1;
          parent[nb] = v;
          touched.push_back(nb);
        }
      }
    }
  }

  // Path from source to v, inclusive, in source-to-v order.
  std::vector<NodeId> path_to(NodeId v) const {
    std::vector<NodeId> path;
    for (NodeId cur = v;; cur = parent[cur]) {
      path.push_back(cur);
      if (dist[cur] == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }
};

}  // namespace detail

// Delta-bounded BFS from every physical node; the result holds exactly the
// unordered pairs at hop distance in [1, delta].
inline PairDistances physical_distances_within(const DualNetwork& dn, std::uint32_t delta) {
  if (delta < 1) throw std::invalid_argument("delta must be at least 1");
  PairDistances out;
  if (dn.nodes().empty()) return out;
  detail::BoundedBfs bfs;
  for (NodeId source : dn.nodes()) {
    bfs.run(dn.physical, source, delta);
    for (NodeId v : bfs.touched) {
      if (v > source) out.insert(source, v, bfs.dist[v]);
    }
  }
  return out;
}

// True iff the physical subgraph induced by s is connected.
inline bool verify_physical_connectivity(const DualNetwork& dn, const NodeSet& s) {
  for (NodeId v : s) {
    if (!dn.physical.has_node(v)) {
      throw std::invalid_argument("node " + std::to_string(v) + " is not in the dual network");
    }
  }
  return detail::subset_is_connected(dn.physical, std::span<const NodeId>(s.members()));
}

inline WeightedGraph build_alignment_graph(const DualNetwork& dn, const SeedPairs& seeds,
                                           const AlignmentConfig& cfg) {
  if (cfg.delta < 1) throw std::invalid_argument("delta must be at least 1");

  // Alignment nodes are identified by the conceptual id of their seed pair.
  std::unordered_map<NodeId, NodeId> phys_of;     // conceptual -> physical
  std::unordered_map<NodeId, NodeId> conc_of;     // physical -> conceptual
  std::vector<NodeId> align_nodes;
  phys_of.reserve(seeds.pairs.size());
  conc_of.reserve(seeds.pairs.size());
  align_nodes.reserve(seeds.pairs.size());
  for (auto [c, p] : seeds.pairs) {
    if (!dn.conceptual.has_node(c)) {
      throw std::invalid_argument("seed pair references unknown conceptual node " +
                                  std::to_string(c));
    }
    if (!dn.physical.has_node(p)) {
      throw std::invalid_argument("seed pair references unknown physical node " +
                                  std::to_string(p));
    }
    if (!phys_of.emplace(c, p).second) {
      throw std::invalid_argument("duplicate conceptual node in seed pairs: " +
                                  std::to_string(c));
    }
    if (!conc_of.emplace(p, c).second) {
      throw std::invalid_argument("duplicate physical node in seed pairs: " + std::to_string(p));
    }
    align_nodes.push_back(c);
  }

  // Conceptual weight of a physical edge (x, y), if both endpoints are seeded
  // and their conceptual counterparts are adjacent.
  auto conceptual_weight_of = [&](NodeId x, NodeId y) -> std::optional<double> {
    auto cx = conc_of.find(x);
    auto cy = conc_of.find(y);
    if (cx == conc_of.end() || cy == conc_of.end()) return std::nullopt;
    return dn.conceptual.edge_weight(cx->second, cy->second);
  };

  std::vector<WeightedEdge> edges;
  detail::BoundedBfs bfs;
  std::vector<NodeId> sorted_nodes = align_nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());

  for (NodeId u : sorted_nodes) {
    NodeId pu = phys_of.at(u);
    bool bfs_ready = false;
    for (const Neighbor& nb : dn.conceptual.neighbors(u)) {
      NodeId v = nb.id;
      if (v <= u) continue;  // handle each conceptual edge once
      auto pv_it = phys_of.find(v);
      if (pv_it == phys_of.end()) continue;
      NodeId pv = pv_it->second;
      if (dn.physical.has_edge(pu, pv)) {
        edges.push_back({u, v, nb.weight});
        continue;
      }
      if (!bfs_ready) {
        bfs.run(dn.physical, pu, cfg.delta);
        bfs_ready = true;
      }
      if (bfs.dist[pv] == kUnreachable) continue;  // beyond delta or disconnected
      std::vector<NodeId> path = bfs.path_to(pv);
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        sum += conceptual_weight_of(path[i], path[i + 1]).value_or(nb.weight);
      }
      edges.push_back({u, v, sum / static_cast<double>(path.size() - 1)});
    }
  }
  return WeightedGraph(std::move(align_nodes), std::move(edges));
}

// Identity seeds: every shared vertex aligns with itself.
inline WeightedGraph build_alignment_graph(const DualNetwork& dn, const AlignmentConfig& cfg) {
  return build_alignment_graph(dn, SeedPairs::identity(dn), cfg);
}

}  // namespace dcs
