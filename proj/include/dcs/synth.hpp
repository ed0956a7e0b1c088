#pragma once

// Planted-clique benchmark generator: a configurable number of disjoint
// cliques with heavy weights over a random background (Erdos-Renyi or
// Barabasi-Albert) with light weights, joined by a batch of random extra
// edges. Optional noise reweights random intra-clique pairs down into the
// background range and adds heavy edges between random outside pairs.
//
// All randomness comes from a single std::mt19937_64 stream seeded from the
// config, with draws in a fixed documented order, so identical configs yield
// bit-identical instances.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dcs/graph.hpp"

namespace dcs {

enum class BackgroundKind { kErdosRenyi, kBarabasiAlbert };

struct WeightInterval {
  double lo = 0.0;
  double hi = 1.0;
};

struct SynthConfig {
  BackgroundKind background_kind = BackgroundKind::kErdosRenyi;
  double er_p = 0.1;                 // edge probability, Erdos-Renyi only
  std::size_t ba_m = 10;             // edges per attached node, Barabasi-Albert only
  std::size_t background_nodes = 100;
  std::size_t num_cliques = 5;
  std::size_t clique_size = 30;
  WeightInterval clique_weight_range{0.8, 1.0};
  WeightInterval background_weight_range{0.0, 0.5};
  std::size_t extra_edges = 50;
  double noise = 0.0;
  std::uint64_t rng_seed = 0;

  std::size_t total_nodes() const { return num_cliques * clique_size + background_nodes; }

  void validate() const {
    auto check_interval = [](const WeightInterval& r, const char* name) {
      if (!(0.0 <= r.lo && r.lo <= r.hi && r.hi <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must satisfy 0 <= lo <= hi <= 1");
      }
    };
    check_interval(clique_weight_range, "clique_weight_range");
    check_interval(background_weight_range, "background_weight_range");
    if (num_cliques < 1) throw std::invalid_argument("num_cliques must be positive");
    if (clique_size < 1) throw std::invalid_argument("clique_size must be positive");
    if (background_nodes < 1) throw std::invalid_argument("background_nodes must be positive");
    if (background_kind == BackgroundKind::kErdosRenyi) {
      if (!(er_p >= 0.0 && er_p <= 1.0)) throw std::invalid_argument("er_p must be in [0,1]");
    } else {
      if (ba_m < 1) throw std::invalid_argument("ba_m must be positive");
      if (background_nodes < ba_m) {
        throw std::invalid_argument("background_nodes must be at least ba_m");
      }
    }
    if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("noise must be in [0,1]");
  }
};

struct PlantedInstance {
  WeightedGraph graph;
  std::vector<NodeSet> truth;
  SynthConfig config_echo;
};

namespace detail {

inline std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

struct EdgeAccumulator {
  std::vector<WeightedEdge> edges;
  std::unordered_map<std::uint64_t, std::size_t> index_of;

  bool has(NodeId u, NodeId v) const { return index_of.count(pair_key(u, v)) > 0; }

  void add(NodeId u, NodeId v, double w) {
    index_of.emplace(pair_key(u, v), edges.size());
    edges.push_back({u, v, w});
  }

  void set_weight(NodeId u, NodeId v, double w) {
    auto it = index_of.find(pair_key(u, v));
    if (it == index_of.end()) {
      add(u, v, w);
    } else {
      edges[it->second].weight = w;
    }
  }
};

inline double draw_weight(std::mt19937_64& rng, const WeightInterval& range) {
  return std::uniform_real_distribution<double>(range.lo, range.hi)(rng);
}

// Noise pass shared by generate() and apply_noise(): floor(noise * |E|)
// distinct node pairs drawn uniformly; intra-clique pairs are reweighted into
// the background range, other pairs gain a clique-range edge when absent.
inline void noise_pass(EdgeAccumulator& acc, const SynthConfig& cfg,
                       const std::vector<NodeSet>& truth, double noise, std::mt19937_64& rng) {
  const std::size_t n = cfg.total_nodes();
  std::vector<std::int64_t> clique_of(n, -1);
  for (std::size_t c = 0; c < truth.size(); ++c) {
    for (NodeId v : truth[c]) clique_of[v] = static_cast<std::int64_t>(c);
  }
  auto count = static_cast<std::size_t>(noise * static_cast<double>(acc.edges.size()));
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::unordered_set<std::uint64_t> sampled;
  while (sampled.size() < count) {
    NodeId a = pick(rng);
    NodeId b = pick(rng);
    if (a == b) continue;
    if (!sampled.insert(pair_key(a, b)).second) continue;
    bool same_clique = clique_of[a] >= 0 && clique_of[a] == clique_of[b];
    if (same_clique) {
      acc.set_weight(a, b, draw_weight(rng, cfg.background_weight_range));
    } else if (!acc.has(a, b)) {
      acc.add(a, b, draw_weight(rng, cfg.clique_weight_range));
    }
  }
}

}  // namespace detail

// Node layout: clique c occupies ids [c * clique_size, (c+1) * clique_size);
// background nodes follow. Draw order: clique weights (cliques in order,
// pairs lexicographic), background edges, extra edges, then the noise pass.
inline PlantedInstance generate(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_seed);
  const std::size_t n = cfg.total_nodes();
  const NodeId background_start = static_cast<NodeId>(cfg.num_cliques * cfg.clique_size);

  detail::EdgeAccumulator acc;
  std::vector<NodeSet> truth;
  truth.reserve(cfg.num_cliques);
  for (std::size_t c = 0; c < cfg.num_cliques; ++c) {
    NodeId base = static_cast<NodeId>(c * cfg.clique_size);
    std::vector<NodeId> members;
    members.reserve(cfg.clique_size);
    for (std::size_t i = 0; i < cfg.clique_size; ++i) {
      members.push_back(base + static_cast<NodeId>(i));
    }
    for (std::size_t i = 0; i < cfg.clique_size; ++i) {
      for (std::size_t j = i + 1; j < cfg.clique_size; ++j) {
        acc.add(members[i], members[j], detail::draw_weight(rng, cfg.clique_weight_range));
      }
    }
    truth.push_back(NodeSet(std::move(members)));
  }

  if (cfg.background_kind == BackgroundKind::kErdosRenyi) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (NodeId i = background_start; i < static_cast<NodeId>(n); ++i) {
      for (NodeId j = i + 1; j < static_cast<NodeId>(n); ++j) {
        if (coin(rng) < cfg.er_p) {
          acc.add(i, j, detail::draw_weight(rng, cfg.background_weight_range));
        }
      }
    }
  } else {
    // Preferential attachment from an m-node seed clique; each later node
    // attaches m edges to distinct targets drawn proportionally to degree.
    std::vector<Edge> ba_edges;
    std::vector<NodeId> endpoint_pool;  // node repeated once per incident edge
    NodeId seed_end = background_start + static_cast<NodeId>(cfg.ba_m);
    for (NodeId i = background_start; i < seed_end; ++i) {
      for (NodeId j = i + 1; j < seed_end; ++j) {
        ba_edges.push_back({i, j});
        endpoint_pool.push_back(i);
        endpoint_pool.push_back(j);
      }
    }
    for (NodeId v = seed_end; v < static_cast<NodeId>(n); ++v) {
      std::unordered_set<NodeId> target_set;
      if (endpoint_pool.empty()) {
        // m = 1 seed has no edges yet; first attachment is uniform
        std::uniform_int_distribution<NodeId> any(background_start, v - 1);
        while (target_set.size() < cfg.ba_m) target_set.insert(any(rng));
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, endpoint_pool.size() - 1);
        while (target_set.size() < cfg.ba_m) {
          target_set.insert(endpoint_pool[pick(rng)]);
        }
      }
      std::vector<NodeId> targets(target_set.begin(), target_set.end());
      std::sort(targets.begin(), targets.end());
      for (NodeId t : targets) {
        ba_edges.push_back({v, t});
        endpoint_pool.push_back(v);
        endpoint_pool.push_back(t);
      }
    }
    std::sort(ba_edges.begin(), ba_edges.end(), [](const Edge& a, const Edge& b) {
      NodeId au = std::min(a.u, a.v), av = std::max(a.u, a.v);
      NodeId bu = std::min(b.u, b.v), bv = std::max(b.u, b.v);
      return au != bu ? au < bu : av < bv;
    });
    for (const Edge& e : ba_edges) {
      acc.add(e.u, e.v, detail::draw_weight(rng, cfg.background_weight_range));
    }
  }

  // Extra random edges over pairs not already adjacent, anywhere in the graph.
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::size_t added = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * (cfg.extra_edges + 1);
  while (added < cfg.extra_edges) {
    if (++attempts > max_attempts) {
      throw std::invalid_argument("graph too dense to place the requested extra edges");
    }
    NodeId a = pick(rng);
    NodeId b = pick(rng);
    if (a == b || acc.has(a, b)) continue;
    acc.add(a, b, detail::draw_weight(rng, cfg.background_weight_range));
    ++added;
  }

  if (cfg.noise > 0.0) detail::noise_pass(acc, cfg, truth, cfg.noise, rng);

  return {WeightedGraph(contiguous_nodes(n), std::move(acc.edges)), std::move(truth), cfg};
}

// Standalone noise application with a fresh RNG stream. Truth sets are
// untouched; the config echo keeps the original generation parameters with
// the noise level updated.
inline PlantedInstance apply_noise(const PlantedInstance& inst, double noise,
                                   std::uint64_t rng_seed) {
  if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("noise must be in [0,1]");
  if (noise == 0.0) return inst;
  std::mt19937_64 rng(rng_seed);
  detail::EdgeAccumulator acc;
  for (const WeightedEdge& e : inst.graph.edges()) acc.add(e.u, e.v, e.weight);
  detail::noise_pass(acc, inst.config_echo, inst.truth, noise, rng);
  SynthConfig echo = inst.config_echo;
  echo.noise = noise;
  return {WeightedGraph(inst.graph.nodes(), std::move(acc.edges)), inst.truth, echo};
}

}  // namespace dcs
