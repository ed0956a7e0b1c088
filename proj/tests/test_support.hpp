#pragma once

// Shared fixtures for the test suites: seeded random graph generators and
// small brute-force oracles kept independent of the library's algorithm
// implementations.

#include <sys/wait.h>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dcs/graph.hpp"

namespace test_support {

using dcs::Edge;
using dcs::NodeId;
using dcs::NodeSet;
using dcs::UnweightedGraph;
using dcs::WeightedEdge;
using dcs::WeightedGraph;

inline WeightedGraph random_weighted_graph(std::mt19937_64& rng, std::size_t n, double edge_prob,
                                           double w_lo = 0.0, double w_hi = 1.0) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> weight(w_lo, w_hi);
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng) < edge_prob) edges.push_back({u, v, weight(rng)});
    }
  }
  return WeightedGraph(dcs::contiguous_nodes(n), std::move(edges));
}

inline UnweightedGraph random_unweighted_graph(std::mt19937_64& rng, std::size_t n,
                                               double edge_prob) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng) < edge_prob) edges.push_back({u, v});
    }
  }
  return UnweightedGraph(dcs::contiguous_nodes(n), std::move(edges));
}

inline dcs::DualNetwork random_dual_network(std::mt19937_64& rng, std::size_t n,
                                            double conceptual_prob, double physical_prob) {
  WeightedGraph conceptual = random_weighted_graph(rng, n, conceptual_prob);
  UnweightedGraph physical = random_unweighted_graph(rng, n, physical_prob);
  return dcs::DualNetwork(std::move(conceptual), std::move(physical));
}

inline WeightedGraph clique_graph(std::size_t n, double weight, NodeId base = 0) {
  std::vector<NodeId> nodes;
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(base + static_cast<NodeId>(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({nodes[i], nodes[j], weight});
    }
  }
  return WeightedGraph(std::move(nodes), std::move(edges));
}

// --- Oracles ---------------------------------------------------------------

// Exact maximum density over every non-empty subset, by enumeration. Only
// sensible for n <= ~20.
inline double oracle_max_density(const WeightedGraph& g) {
  const auto& nodes = g.nodes();
  const std::size_t n = nodes.size();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double weight = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      ++count;
      for (const auto& nb : g.neighbors(nodes[i])) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if ((mask & (1u << j)) && nodes[j] == nb.id) weight += nb.weight;
        }
      }
    }
    best = std::max(best, 2.0 * weight / count);
  }
  return best;
}

// All-pairs hop counts via Floyd-Warshall, independent of the BFS kernel.
inline std::vector<std::vector<std::uint32_t>> oracle_all_pairs_hops(const UnweightedGraph& g) {
  const auto& nodes = g.nodes();
  const std::size_t n = nodes.size();
  const std::uint32_t inf = dcs::kUnreachable;
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.has_edge(nodes[i], nodes[j])) dist[i][j] = dist[j][i] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i][k] == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[k][j] == inf) continue;
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  return dist;
}

namespace detail {

inline bool mask_connected(const WeightedGraph& g, std::uint32_t mask,
                           const std::vector<NodeId>& nodes) {
  if (mask == 0) return false;
  std::size_t n = nodes.size();
  std::uint32_t start = 0;
  while (!(mask & (1u << start))) ++start;
  std::uint32_t visited = 1u << start;
  std::vector<std::size_t> stack{start};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(nodes[i])) {
      for (std::size_t j = 0; j < n; ++j) {
        if (nodes[j] == nb.id && (mask & (1u << j)) && !(visited & (1u << j))) {
          visited |= 1u << j;
          stack.push_back(j);
        }
      }
    }
  }
  return visited == mask;
}

inline double mask_density(const WeightedGraph& g, std::uint32_t mask,
                           const std::vector<NodeId>& nodes) {
  double weight = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    ++count;
    for (const auto& nb : g.neighbors(nodes[i])) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if ((mask & (1u << j)) && nodes[j] == nb.id) weight += nb.weight;
      }
    }
  }
  return 2.0 * weight / count;
}

}  // namespace detail

// Exact optimum of the mining objective over unordered pairs of distinct
// connected non-empty subsets. Exponential; keep n <= 9.
inline double oracle_best_pair_objective(const WeightedGraph& g, double lambda) {
  const auto& nodes = g.nodes();
  const std::size_t n = nodes.size();
  std::vector<std::uint32_t> connected;
  std::vector<double> rho;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (detail::mask_connected(g, mask, nodes)) {
      connected.push_back(mask);
      rho.push_back(detail::mask_density(g, mask, nodes));
    }
  }
  double best = 0.0;
  for (std::size_t a = 0; a < connected.size(); ++a) {
    for (std::size_t b = a + 1; b < connected.size(); ++b) {
      std::uint32_t ma = connected[a];
      std::uint32_t mb = connected[b];
      double inter = static_cast<double>(std::popcount(ma & mb));
      double size_a = static_cast<double>(std::popcount(ma));
      double size_b = static_cast<double>(std::popcount(mb));
      double distance = 2.0 - inter * inter / (size_a * size_b);
      best = std::max(best, rho[a] + rho[b] + lambda * distance);
    }
  }
  return best;
}

// --- Process helpers (CLI and acceptance suites) ----------------------------

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline RunResult run_command(const std::string& command, const std::filesystem::path& work_dir) {
  std::filesystem::path out_path = work_dir / "cmd_stdout.txt";
  std::filesystem::path err_path = work_dir / "cmd_stderr.txt";
  std::string full =
      command + " >" + out_path.string() + " 2>" + err_path.string();
  int status = std::system(full.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

inline std::string cli_binary() {
  const char* env = std::getenv("DCSMINE_BIN");
  return env ? std::string(env) : std::string();
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("dcs_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace test_support
