#pragma once

// File formats. Graphs travel as TSV edge lists: `u<TAB>v<TAB>w` (weighted)
// or `u<TAB>v` (unweighted), one edge per line, `#` comments, plus bare
// single-token lines declaring isolated nodes. Node tokens may be
// non-negative integers or arbitrary string labels; either way they are
// mapped to dense internal ids (numeric tokens sort numerically, everything
// else lexicographically) and the mapping is written alongside saved graphs
// as a `.labels` sidecar. Mining results are JSON documents with canonical
// key order and shortest round-trip float formatting, so identical runs
// produce byte-identical files.

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dcs/graph.hpp"
#include "dcs/iwds.hpp"

namespace dcs {

struct LabeledWeightedGraph {
  WeightedGraph graph;
  std::vector<std::string> labels;  // indexed by dense node id
};

struct LabeledUnweightedGraph {
  UnweightedGraph graph;
  std::vector<std::string> labels;
};

struct LabeledDualNetwork {
  DualNetwork dual;
  std::vector<std::string> labels;
};

namespace detail {

inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

inline std::runtime_error file_error(const std::filesystem::path& path, std::size_t line,
                                     const std::string& message) {
  return std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + message);
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

// Canonical decimal: "0" or digits without a leading zero. Tokens that are
// not canonical integers force the whole file into string-label mode, which
// avoids aliasing "007" with "7".
inline bool is_canonical_uint(const std::string& token) {
  if (token.empty() || token.size() > 18) return false;
  if (token[0] == '0') return token.size() == 1;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline double parse_weight(const std::string& token, const std::filesystem::path& path,
                           std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw file_error(path, line, "cannot parse edge weight '" + token + "'");
  }
  if (!(value >= 0.0)) throw file_error(path, line, "edge weight must be non-negative");
  return value;
}

struct RawEdgeList {
  struct Entry {
    std::size_t line;
    std::string a;
    std::string b;
    double weight;
  };
  std::vector<Entry> edges;
  std::vector<std::string> isolated;  // single-token node declarations
};

inline RawEdgeList read_edge_lines(const std::filesystem::path& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  RawEdgeList raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.size() == 1) {
      raw.isolated.push_back(tokens[0]);
      continue;
    }
    const std::size_t expected = weighted ? 3 : 2;
    if (tokens.size() != expected) {
      throw file_error(path, line_no,
                       weighted ? "expected 'u v w' on a weighted edge line"
                                : "expected 'u v' on an unweighted edge line");
    }
    double w = weighted ? parse_weight(tokens[2], path, line_no) : 0.0;
    raw.edges.push_back({line_no, std::move(tokens[0]), std::move(tokens[1]), w});
  }
  return raw;
}

struct LabelTable {
  std::vector<std::string> labels;                    // dense id -> label
  std::unordered_map<std::string, NodeId> id_of;      // label -> dense id
};

inline LabelTable build_label_table(const RawEdgeList& raw) {
  std::vector<std::string> tokens;
  tokens.reserve(raw.edges.size() * 2 + raw.isolated.size());
  for (const auto& e : raw.edges) {
    tokens.push_back(e.a);
    tokens.push_back(e.b);
  }
  for (const auto& t : raw.isolated) tokens.push_back(t);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());

  bool numeric = !tokens.empty();
  for (const auto& t : tokens) {
    if (!is_canonical_uint(t)) {
      numeric = false;
      break;
    }
  }
  if (numeric) {
    std::sort(tokens.begin(), tokens.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }
  LabelTable table;
  table.labels = std::move(tokens);
  table.id_of.reserve(table.labels.size());
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    table.id_of[table.labels[i]] = static_cast<NodeId>(i);
  }
  return table;
}

template <typename EdgeT, typename MakeEdge>
std::vector<EdgeT> map_edges(const RawEdgeList& raw, const LabelTable& table,
                             const std::filesystem::path& path, MakeEdge make_edge) {
  std::vector<EdgeT> edges;
  edges.reserve(raw.edges.size());
  std::unordered_map<std::uint64_t, std::size_t> first_line;
  for (const auto& e : raw.edges) {
    NodeId u = table.id_of.at(e.a);
    NodeId v = table.id_of.at(e.b);
    if (u == v) throw file_error(path, e.line, "self-loop on node '" + e.a + "'");
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    auto [it, inserted] = first_line.emplace(key, e.line);
    if (!inserted) {
      throw file_error(path, e.line,
                       "duplicate edge '" + e.a + " " + e.b + "' (first seen on line " +
                           std::to_string(it->second) + ")");
    }
    edges.push_back(make_edge(u, v, e.weight));
  }
  return edges;
}

inline std::string label_or_id(std::span<const std::string> labels, NodeId v) {
  return v < labels.size() ? labels[v] : std::to_string(v);
}

inline void write_labels_sidecar(const std::filesystem::path& path,
                                 std::span<const std::string> labels,
                                 std::span<const NodeId> nodes) {
  std::filesystem::path sidecar = path;
  sidecar += ".labels";
  std::ofstream out(sidecar);
  if (!out) throw std::runtime_error("cannot write " + sidecar.string());
  for (NodeId v : nodes) {
    out << v << '\t' << label_or_id(labels, v) << '\n';
  }
}

}  // namespace detail

inline LabeledWeightedGraph load_weighted(const std::filesystem::path& path) {
  detail::RawEdgeList raw = detail::read_edge_lines(path, true);
  detail::LabelTable table = detail::build_label_table(raw);
  auto edges = detail::map_edges<WeightedEdge>(
      raw, table, path, [](NodeId u, NodeId v, double w) { return WeightedEdge{u, v, w}; });
  WeightedGraph graph(contiguous_nodes(table.labels.size()), std::move(edges));
  return {std::move(graph), std::move(table.labels)};
}

inline LabeledUnweightedGraph load_unweighted(const std::filesystem::path& path) {
  detail::RawEdgeList raw = detail::read_edge_lines(path, false);
  detail::LabelTable table = detail::build_label_table(raw);
  auto edges = detail::map_edges<Edge>(raw, table, path,
                                       [](NodeId u, NodeId v, double) { return Edge{u, v}; });
  UnweightedGraph graph(contiguous_nodes(table.labels.size()), std::move(edges));
  return {std::move(graph), std::move(table.labels)};
}

// Loads the two layers of a dual network and checks that they cover the same
// labels.
inline LabeledDualNetwork load_dual(const std::filesystem::path& conceptual_path,
                                    const std::filesystem::path& physical_path) {
  LabeledWeightedGraph conceptual = load_weighted(conceptual_path);
  LabeledUnweightedGraph physical = load_unweighted(physical_path);
  if (conceptual.labels != physical.labels) {
    auto describe = [](const std::vector<std::string>& have,
                       const std::vector<std::string>& other) -> std::string {
      std::unordered_map<std::string, bool> in_other;
      for (const auto& label : other) in_other[label] = true;
      for (const auto& label : have) {
        if (!in_other.count(label)) return label;
      }
      return {};
    };
    std::string only_conceptual = describe(conceptual.labels, physical.labels);
    std::string only_physical = describe(physical.labels, conceptual.labels);
    std::string offender = !only_conceptual.empty() ? only_conceptual : only_physical;
    throw std::runtime_error("vertex-set mismatch between " + conceptual_path.string() + " and " +
                             physical_path.string() + ": node '" + offender +
                             "' appears in only one layer");
  }
  return {DualNetwork(std::move(conceptual.graph), std::move(physical.graph)),
          std::move(conceptual.labels)};
}

// Canonical save: isolated nodes first, then edges sorted by (u, v) id pairs,
// all tab separated. A `<path>.labels` sidecar records the id-to-label map.
inline void save_weighted(const WeightedGraph& g, std::span<const std::string> labels,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (NodeId v : g.nodes()) {
    if (g.degree(v) == 0) out << detail::label_or_id(labels, v) << '\n';
  }
  for (const WeightedEdge& e : g.edges()) {
    out << detail::label_or_id(labels, e.u) << '\t' << detail::label_or_id(labels, e.v) << '\t'
        << detail::format_double(e.weight) << '\n';
  }
  detail::write_labels_sidecar(path, labels, g.nodes());
}

inline void save_weighted(const WeightedGraph& g, const std::filesystem::path& path) {
  save_weighted(g, {}, path);
}

inline void save_unweighted(const UnweightedGraph& g, std::span<const std::string> labels,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (NodeId v : g.nodes()) {
    if (g.degree(v) == 0) out << detail::label_or_id(labels, v) << '\n';
  }
  for (const Edge& e : g.edges()) {
    out << detail::label_or_id(labels, e.u) << '\t' << detail::label_or_id(labels, e.v) << '\n';
  }
  detail::write_labels_sidecar(path, labels, g.nodes());
}

inline void save_unweighted(const UnweightedGraph& g, const std::filesystem::path& path) {
  save_unweighted(g, {}, path);
}

// One node set per line, labels tab separated. Used for ground-truth files.
inline std::vector<std::vector<std::string>> load_label_sets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> sets;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> tokens = detail::split_tokens(line);
    if (!tokens.empty()) sets.push_back(std::move(tokens));
  }
  return sets;
}

inline void save_label_sets(const std::vector<std::vector<std::string>>& sets,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& set : sets) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out << '\t';
      out << set[i];
    }
    out << '\n';
  }
}

// Seed-pair file: `conceptual_label<TAB>physical_label` per line.
inline std::vector<std::pair<std::string, std::string>> load_seed_pairs(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> tokens = detail::split_tokens(line);
    if (tokens.size() != 2) {
      throw detail::file_error(path, line_no, "expected 'conceptual physical' seed pair");
    }
    pairs.push_back({std::move(tokens[0]), std::move(tokens[1])});
  }
  return pairs;
}

struct ResultSubgraph {
  std::vector<std::string> nodes;  // labels, sorted by internal id
  double rho = 0.0;
  std::optional<bool> physical_connected;
};

struct ResultDocument {
  MiningConfig config;
  std::optional<std::uint32_t> delta;  // alignment threshold when known
  std::vector<ResultSubgraph> subgraphs;
  std::vector<std::vector<double>> distance_matrix;  // k x k, present when k >= 2
  double objective = 0.0;
  bool partial = false;
  std::optional<double> duration_seconds;
};

inline ResultDocument make_result_document(const SubgraphSet& mined, const MiningConfig& cfg,
                                           std::span<const std::string> labels,
                                           std::optional<std::uint32_t> delta = std::nullopt,
                                           std::optional<double> duration_seconds = std::nullopt) {
  ResultDocument doc;
  doc.config = cfg;
  doc.delta = delta;
  doc.objective = mined.objective;
  doc.partial = mined.partial;
  doc.duration_seconds = duration_seconds;
  for (std::size_t i = 0; i < mined.subgraphs.size(); ++i) {
    ResultSubgraph entry;
    for (NodeId v : mined.subgraphs[i]) entry.nodes.push_back(detail::label_or_id(labels, v));
    entry.rho = mined.densities[i];
    if (!mined.physical_connected.empty()) {
      entry.physical_connected = mined.physical_connected[i];
    }
    doc.subgraphs.push_back(std::move(entry));
  }
  if (mined.subgraphs.size() >= 2) {
    std::size_t k = mined.subgraphs.size();
    doc.distance_matrix.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        double d = pair_distance(mined.subgraphs[i], mined.subgraphs[j]);
        doc.distance_matrix[i][j] = d;
        doc.distance_matrix[j][i] = d;
      }
    }
  }
  return doc;
}

inline void save_result(const ResultDocument& doc, const std::filesystem::path& path) {
  nlohmann::ordered_json out;
  out["config"] = {{"k", doc.config.k},         {"lambda", doc.config.lambda},
                   {"alpha", doc.config.alpha}, {"f", doc.config.f},
                   {"delta", nullptr},          {"tie_seed", doc.config.tie_seed}};
  if (doc.delta) out["config"]["delta"] = *doc.delta;
  out["objective"] = doc.objective;
  out["partial"] = doc.partial;
  out["subgraphs"] = nlohmann::ordered_json::array();
  for (const ResultSubgraph& sg : doc.subgraphs) {
    nlohmann::ordered_json entry;
    entry["nodes"] = sg.nodes;
    entry["rho"] = sg.rho;
    entry["physical_connected"] =
        sg.physical_connected ? nlohmann::ordered_json(*sg.physical_connected)
                              : nlohmann::ordered_json(nullptr);
    out["subgraphs"].push_back(std::move(entry));
  }
  out["distance_matrix"] = doc.distance_matrix;
  if (doc.duration_seconds) out["duration_seconds"] = *doc.duration_seconds;
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << out.dump(2) << '\n';
}

inline ResultDocument load_result(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  nlohmann::ordered_json in;
  try {
    file >> in;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  try {
    ResultDocument doc;
    const auto& cfg = in.at("config");
    doc.config.k = cfg.at("k").get<std::size_t>();
    doc.config.lambda = cfg.at("lambda").get<double>();
    doc.config.alpha = cfg.at("alpha").get<double>();
    doc.config.f = cfg.at("f").get<double>();
    doc.config.tie_seed = cfg.at("tie_seed").get<std::uint64_t>();
    if (!cfg.at("delta").is_null()) doc.delta = cfg.at("delta").get<std::uint32_t>();
    doc.objective = in.at("objective").get<double>();
    doc.partial = in.at("partial").get<bool>();
    for (const auto& entry : in.at("subgraphs")) {
      ResultSubgraph sg;
      sg.nodes = entry.at("nodes").get<std::vector<std::string>>();
      sg.rho = entry.at("rho").get<double>();
      if (!entry.at("physical_connected").is_null()) {
        sg.physical_connected = entry.at("physical_connected").get<bool>();
      }
      doc.subgraphs.push_back(std::move(sg));
    }
    doc.distance_matrix = in.at("distance_matrix").get<std::vector<std::vector<double>>>();
    if (in.contains("duration_seconds")) {
      doc.duration_seconds = in.at("duration_seconds").get<double>();
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": malformed result file: " + e.what());
  }
}

}  // namespace dcs
