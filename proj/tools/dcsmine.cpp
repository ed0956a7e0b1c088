// dcsmine: mine top-k overlapping densest connected subgraphs from dual
// networks. Subcommands cover the full pipeline: synthetic benchmark
// generation, alignment-graph construction, mining, F1 evaluation, result
// verification, and the benchmark sweep. Machine-readable output goes to
// stdout or files; logs and config echoes go to stderr.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/alignment.hpp"
#include "dcs/eval.hpp"
#include "dcs/graph.hpp"
#include "dcs/io.hpp"
#include "dcs/iwds.hpp"
#include "dcs/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitVerificationFailure = 3;

void echo_config(const std::string& subcommand,
                 const std::vector<std::pair<std::string, std::string>>& entries) {
  std::cerr << "config[" << subcommand << "]:";
  for (const auto& [key, value] : entries) std::cerr << ' ' << key << '=' << value;
  std::cerr << '\n';
}

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::string fmt4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

dcs::SynthConfig background_preset(const std::string& name) {
  dcs::SynthConfig cfg;
  if (name == "er01") {
    cfg.background_kind = dcs::BackgroundKind::kErdosRenyi;
    cfg.er_p = 0.1;
  } else if (name == "er02") {
    cfg.background_kind = dcs::BackgroundKind::kErdosRenyi;
    cfg.er_p = 0.2;
  } else if (name == "ba10") {
    cfg.background_kind = dcs::BackgroundKind::kBarabasiAlbert;
    cfg.ba_m = 10;
  } else {
    throw CLI::ValidationError("--background", "unknown background '" + name + "'");
  }
  return cfg;
}

std::vector<std::string> identity_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("DCSMINE_JOBS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) return static_cast<unsigned>(parsed);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// --- generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string background = "er01";
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int run_generate(const GenerateArgs& args) {
  dcs::SynthConfig cfg = background_preset(args.background);
  cfg.noise = args.noise;
  cfg.rng_seed = args.seed;
  echo_config("generate", {{"background", args.background},
                           {"noise", fmt(cfg.noise)},
                           {"seed", std::to_string(cfg.rng_seed)},
                           {"nodes", std::to_string(cfg.total_nodes())},
                           {"cliques", std::to_string(cfg.num_cliques)},
                           {"clique_size", std::to_string(cfg.clique_size)},
                           {"extra_edges", std::to_string(cfg.extra_edges)},
                           {"out", args.out_dir}});
  dcs::PlantedInstance inst = dcs::generate(cfg);

  fs::create_directories(args.out_dir);
  std::vector<std::string> labels = identity_labels(inst.graph.node_count());
  dcs::save_weighted(inst.graph, labels, fs::path(args.out_dir) / "instance.tsv");
  std::vector<std::vector<std::string>> truth;
  for (const dcs::NodeSet& clique : inst.truth) {
    std::vector<std::string> row;
    for (dcs::NodeId v : clique) row.push_back(labels[v]);
    truth.push_back(std::move(row));
  }
  dcs::save_label_sets(truth, fs::path(args.out_dir) / "truth.tsv");
  std::cerr << "generated " << inst.graph.node_count() << " nodes, "
            << inst.graph.edge_count() << " edges\n";
  return 0;
}

// --- align ------------------------------------------------------------------

struct AlignArgs {
  std::string conceptual;
  std::string physical;
  std::uint32_t delta = 1;
  std::string seeds_path;
  std::string out;
};

int run_align(const AlignArgs& args) {
  echo_config("align", {{"conceptual", args.conceptual},
                        {"physical", args.physical},
                        {"delta", std::to_string(args.delta)},
                        {"seeds", args.seeds_path.empty() ? "identity" : args.seeds_path},
                        {"out", args.out}});
  dcs::LabeledDualNetwork dn = dcs::load_dual(args.conceptual, args.physical);

  dcs::SeedPairs seeds;
  if (args.seeds_path.empty()) {
    seeds = dcs::SeedPairs::identity(dn.dual);
  } else {
    std::unordered_map<std::string, dcs::NodeId> id_of;
    for (std::size_t i = 0; i < dn.labels.size(); ++i) {
      id_of[dn.labels[i]] = static_cast<dcs::NodeId>(i);
    }
    for (const auto& [c, p] : dcs::load_seed_pairs(args.seeds_path)) {
      auto ci = id_of.find(c);
      auto pi = id_of.find(p);
      if (ci == id_of.end() || pi == id_of.end()) {
        throw std::runtime_error("seed pair (" + c + ", " + p + ") references unknown nodes");
      }
      seeds.pairs.push_back({ci->second, pi->second});
    }
  }
  dcs::WeightedGraph aligned =
      dcs::build_alignment_graph(dn.dual, seeds, dcs::AlignmentConfig{args.delta});
  dcs::save_weighted(aligned, dn.labels, args.out);
  std::cerr << "alignment graph: " << aligned.node_count() << " nodes, "
            << aligned.edge_count() << " edges\n";
  return 0;
}

// --- mine -------------------------------------------------------------------

struct MineArgs {
  std::string graph;
  std::size_t k = 1;
  double lambda = 1.0;
  double alpha = 0.1;
  double f = 0.5;
  std::string out;
  std::string physical;
  bool timing = false;
};

int run_mine(const MineArgs& args) {
  dcs::MiningConfig cfg;
  cfg.k = args.k;
  cfg.lambda = args.lambda;
  cfg.alpha = args.alpha;
  cfg.f = args.f;
  cfg.validate();
  echo_config("mine", {{"graph", args.graph},
                       {"k", std::to_string(cfg.k)},
                       {"lambda", fmt(cfg.lambda)},
                       {"alpha", fmt(cfg.alpha)},
                       {"f", fmt(cfg.f)},
                       {"physical", args.physical.empty() ? "none" : args.physical},
                       {"out", args.out}});

  dcs::LabeledWeightedGraph loaded = dcs::load_weighted(args.graph);

  // Optional physical layer for post-hoc connectivity checks; it must cover
  // every node of the mined graph, extra physical nodes are ignored.
  std::optional<dcs::DualNetwork> dual;
  if (!args.physical.empty()) {
    dcs::LabeledUnweightedGraph physical = dcs::load_unweighted(args.physical);
    std::unordered_map<std::string, dcs::NodeId> physical_id;
    for (std::size_t i = 0; i < physical.labels.size(); ++i) {
      physical_id[physical.labels[i]] = static_cast<dcs::NodeId>(i);
    }
    std::vector<dcs::Edge> edges;
    std::vector<dcs::NodeId> to_graph(physical.labels.size(), 0);
    std::vector<bool> in_graph(physical.labels.size(), false);
    std::unordered_map<std::string, dcs::NodeId> graph_id;
    for (std::size_t i = 0; i < loaded.labels.size(); ++i) {
      graph_id[loaded.labels[i]] = static_cast<dcs::NodeId>(i);
    }
    for (const auto& label : loaded.labels) {
      auto it = physical_id.find(label);
      if (it == physical_id.end()) {
        throw std::runtime_error("physical layer is missing node '" + label + "'");
      }
      to_graph[it->second] = graph_id[label];
      in_graph[it->second] = true;
    }
    for (const dcs::Edge& e : physical.graph.edges()) {
      if (in_graph[e.u] && in_graph[e.v]) edges.push_back({to_graph[e.u], to_graph[e.v]});
    }
    dcs::UnweightedGraph reindexed(loaded.graph.nodes(), std::move(edges));
    dual.emplace(loaded.graph, std::move(reindexed));
  }

  auto start = std::chrono::steady_clock::now();
  dcs::SubgraphSet mined = dcs::iwds_mine(loaded.graph, cfg, dual ? &*dual : nullptr);
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  std::optional<double> duration;
  if (args.timing) duration = elapsed.count();
  dcs::ResultDocument doc =
      dcs::make_result_document(mined, cfg, loaded.labels, std::nullopt, duration);
  dcs::save_result(doc, args.out);

  double total_density = 0.0;
  for (double rho : mined.densities) total_density += rho;
  double total_distance = 0.0;
  for (std::size_t i = 0; i < mined.subgraphs.size(); ++i) {
    for (std::size_t j = i + 1; j < mined.subgraphs.size(); ++j) {
      total_distance += dcs::pair_distance(mined.subgraphs[i], mined.subgraphs[j]);
    }
  }
  std::cerr << "mined " << mined.subgraphs.size() << " subgraphs, objective " << mined.objective
            << ", density " << total_density << ", distance " << total_distance << ", took "
            << fmt4(elapsed.count()) << "s";
  if (mined.partial) std::cerr << " (partial: candidates exhausted)";
  std::cerr << '\n';
  return 0;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
  std::string truth;
  std::string result;
  std::string out_json;
};

int run_evaluate(const EvaluateArgs& args) {
  echo_config("evaluate", {{"truth", args.truth}, {"result", args.result}});
  std::vector<std::vector<std::string>> truth_labels = dcs::load_label_sets(args.truth);
  dcs::ResultDocument doc = dcs::load_result(args.result);

  std::unordered_map<std::string, dcs::NodeId> id_of;
  auto intern = [&id_of](const std::string& label) {
    auto [it, inserted] = id_of.emplace(label, static_cast<dcs::NodeId>(id_of.size()));
    return it->second;
  };
  std::vector<dcs::NodeSet> truth;
  for (const auto& row : truth_labels) {
    std::vector<dcs::NodeId> ids;
    for (const auto& label : row) ids.push_back(intern(label));
    truth.push_back(dcs::NodeSet(std::move(ids)));
  }
  std::vector<dcs::NodeSet> detected;
  for (const auto& sg : doc.subgraphs) {
    std::vector<dcs::NodeId> ids;
    for (const auto& label : sg.nodes) ids.push_back(intern(label));
    detected.push_back(dcs::NodeSet(std::move(ids)));
  }
  dcs::EvalReport report = dcs::evaluate(truth, detected);
  std::cout << "F1[t/d]=" << fmt4(report.f1_truth_to_detected)
            << " F1[d/t]=" << fmt4(report.f1_detected_to_truth) << '\n';

  if (!args.out_json.empty()) {
    auto round4 = [](double x) { return std::round(x * 1e4) / 1e4; };
    nlohmann::ordered_json out;
    out["f1_truth_to_detected"] = round4(report.f1_truth_to_detected);
    out["f1_detected_to_truth"] = round4(report.f1_detected_to_truth);
    out["per_pair"] = nlohmann::ordered_json::array();
    for (const auto& row : report.per_pair) {
      nlohmann::ordered_json json_row = nlohmann::ordered_json::array();
      for (double v : row) json_row.push_back(round4(v));
      out["per_pair"].push_back(std::move(json_row));
    }
    std::ofstream file(args.out_json);
    if (!file) throw std::runtime_error("cannot write " + args.out_json);
    file << out.dump(2) << '\n';
  }
  return 0;
}

// --- score -------------------------------------------------------------------

struct ScoreArgs {
  std::string result;
  std::string graph;
};

int run_score(const ScoreArgs& args) {
  echo_config("score", {{"result", args.result}, {"graph", args.graph}});
  dcs::ResultDocument doc = dcs::load_result(args.result);
  dcs::LabeledWeightedGraph loaded = dcs::load_weighted(args.graph);
  if (doc.subgraphs.empty()) throw std::runtime_error("result file contains no subgraphs");

  std::unordered_map<std::string, dcs::NodeId> id_of;
  for (std::size_t i = 0; i < loaded.labels.size(); ++i) {
    id_of[loaded.labels[i]] = static_cast<dcs::NodeId>(i);
  }
  std::vector<dcs::NodeSet> subgraphs;
  for (const auto& sg : doc.subgraphs) {
    std::vector<dcs::NodeId> ids;
    for (const auto& label : sg.nodes) {
      auto it = id_of.find(label);
      if (it == id_of.end()) {
        throw std::runtime_error("result node '" + label + "' is not in the graph");
      }
      ids.push_back(it->second);
    }
    subgraphs.push_back(dcs::NodeSet(std::move(ids)));
  }

  constexpr double kTol = 1e-9;
  bool ok = true;
  for (std::size_t i = 0; i < subgraphs.size(); ++i) {
    double rho = dcs::density(dcs::induced_subgraph(loaded.graph, subgraphs[i]));
    if (std::abs(rho - doc.subgraphs[i].rho) > kTol) {
      std::cout << "subgraph " << i << ": rho mismatch, stored " << doc.subgraphs[i].rho
                << " recomputed " << rho << '\n';
      ok = false;
    }
  }
  if (!doc.distance_matrix.empty()) {
    for (std::size_t i = 0; i < subgraphs.size() && ok; ++i) {
      for (std::size_t j = 0; j < subgraphs.size(); ++j) {
        double d = i == j ? 0.0 : dcs::pair_distance(subgraphs[i], subgraphs[j]);
        if (std::abs(d - doc.distance_matrix[i][j]) > kTol) {
          std::cout << "distance[" << i << "][" << j << "] mismatch, stored "
                    << doc.distance_matrix[i][j] << " recomputed " << d << '\n';
          ok = false;
          break;
        }
      }
    }
  }
  double objective = dcs::objective(subgraphs, loaded.graph, doc.config.lambda);
  if (std::abs(objective - doc.objective) > kTol) {
    std::cout << "objective mismatch, stored " << doc.objective << " recomputed " << objective
              << '\n';
    ok = false;
  }
  if (!ok) {
    std::cout << "verification FAILED\n";
    return kExitVerificationFailure;
  }
  std::cout << "verification OK: objective " << objective << " over " << subgraphs.size()
            << " subgraphs\n";
  return 0;
}

// --- experiment ----------------------------------------------------------------

struct ExperimentArgs {
  std::string suite = "synthetic1";
  std::string alphas = "0.05,0.1,0.25";
  std::size_t seeds = 20;
  std::string out_dir;
  unsigned jobs = 0;
  std::size_t k = 5;
  double lambda = 1.0;
  double f = 0.5;
};

struct ExperimentCell {
  std::string background;
  double noise;
  double alpha;
  double mean_f1_td = 0.0;
  double mean_f1_dt = 0.0;
};

int run_experiment(const ExperimentArgs& args) {
  if (args.seeds < 1) throw std::runtime_error("--seeds must be at least 1");
  std::vector<double> alphas;
  {
    std::stringstream stream(args.alphas);
    std::string item;
    while (std::getline(stream, item, ',')) {
      if (item.empty()) continue;
      double a = std::stod(item);
      if (!(a > 0.0 && a <= 1.0)) throw std::runtime_error("alpha must be in (0,1]");
      alphas.push_back(a);
    }
    if (alphas.empty()) throw std::runtime_error("--alphas list is empty");
  }
  std::vector<double> noises;
  if (args.suite == "synthetic1") {
    noises = {0.0};
  } else if (args.suite == "synthetic2") {
    noises = {0.05, 0.10};
  } else {
    throw std::runtime_error("unknown suite '" + args.suite + "'");
  }
  const std::vector<std::string> backgrounds{"er01", "er02", "ba10"};
  unsigned jobs = args.jobs > 0 ? args.jobs : default_jobs();
  echo_config("experiment", {{"suite", args.suite},
                             {"alphas", args.alphas},
                             {"seeds", std::to_string(args.seeds)},
                             {"jobs", std::to_string(jobs)},
                             {"k", std::to_string(args.k)},
                             {"lambda", fmt(args.lambda)},
                             {"f", fmt(args.f)},
                             {"out", args.out_dir}});

  struct Task {
    std::size_t cell;
    std::uint64_t seed;
  };
  std::vector<ExperimentCell> cells;
  for (const auto& bg : backgrounds) {
    for (double noise : noises) {
      for (double alpha : alphas) {
        cells.push_back({bg, noise, alpha});
      }
    }
  }
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::uint64_t s = 0; s < args.seeds; ++s) tasks.push_back({c, s});
  }
  std::vector<std::pair<double, double>> outcomes(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      const Task& task = tasks[index];
      const ExperimentCell& cell = cells[task.cell];
      dcs::SynthConfig synth_cfg = background_preset(cell.background);
      synth_cfg.noise = cell.noise;
      synth_cfg.rng_seed = task.seed;
      dcs::PlantedInstance inst = dcs::generate(synth_cfg);
      dcs::MiningConfig mine_cfg;
      mine_cfg.k = args.k;
      mine_cfg.lambda = args.lambda;
      mine_cfg.alpha = cell.alpha;
      mine_cfg.f = args.f;
      dcs::SubgraphSet mined = dcs::iwds_mine(inst.graph, mine_cfg);
      dcs::EvalReport report = dcs::evaluate(inst.truth, mined.subgraphs);
      outcomes[index] = {report.f1_truth_to_detected, report.f1_detected_to_truth};
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, tasks.size()); ++t) {
    pool.emplace_back(worker);
  }
  for (auto& thread : pool) thread.join();

  // fixed-order aggregation keeps the output independent of scheduling
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    cells[tasks[i].cell].mean_f1_td += outcomes[i].first;
    cells[tasks[i].cell].mean_f1_dt += outcomes[i].second;
  }
  for (auto& cell : cells) {
    cell.mean_f1_td /= static_cast<double>(args.seeds);
    cell.mean_f1_dt /= static_cast<double>(args.seeds);
  }

  std::ostringstream table;
  table << "suite=" << args.suite << " k=" << args.k << " lambda=" << args.lambda
        << " f=" << args.f << " seeds=" << args.seeds << "\n";
  table << "background  noise  metric   ";
  for (double a : alphas) table << "  alpha=" << fmt(a);
  table << '\n';
  for (const auto& bg : backgrounds) {
    for (double noise : noises) {
      for (const char* metric : {"F1[t/d]", "F1[d/t]"}) {
        char row[64];
        std::snprintf(row, sizeof(row), "%-10s  %.2f   %-8s", bg.c_str(), noise, metric);
        table << row;
        for (double a : alphas) {
          for (const auto& cell : cells) {
            if (cell.background == bg && cell.noise == noise && cell.alpha == a) {
              bool td = std::string(metric) == "F1[t/d]";
              table << "  " << fmt4(td ? cell.mean_f1_td : cell.mean_f1_dt) << "    ";
            }
          }
        }
        table << '\n';
      }
    }
  }
  std::cout << table.str();

  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    std::ofstream table_file(fs::path(args.out_dir) / "table.txt");
    table_file << table.str();

    nlohmann::ordered_json out;
    out["suite"] = args.suite;
    out["k"] = args.k;
    out["lambda"] = args.lambda;
    out["f"] = args.f;
    out["seeds"] = args.seeds;
    out["alphas"] = alphas;
    out["cells"] = nlohmann::ordered_json::array();
    for (const auto& cell : cells) {
      out["cells"].push_back({{"background", cell.background},
                              {"noise", cell.noise},
                              {"alpha", cell.alpha},
                              {"f1_truth_to_detected", cell.mean_f1_td},
                              {"f1_detected_to_truth", cell.mean_f1_dt}});
    }
    std::ofstream json_file(fs::path(args.out_dir) / "results.json");
    json_file << out.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"top-k overlapping densest connected subgraph mining in dual networks"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand("generate", "generate a planted benchmark instance");
  generate->add_option("--background", generate_args.background, "er01, er02, or ba10")
      ->check(CLI::IsMember({"er01", "er02", "ba10"}));
  generate->add_option("--noise", generate_args.noise, "fraction of node pairs to perturb");
  generate->add_option("--seed", generate_args.seed, "RNG seed");
  generate->add_option("--out", generate_args.out_dir, "output directory")->required();

  AlignArgs align_args;
  CLI::App* align = app.add_subcommand("align", "build the alignment graph of a dual network");
  align->add_option("--conceptual", align_args.conceptual, "weighted edge list")->required();
  align->add_option("--physical", align_args.physical, "unweighted edge list")->required();
  align->add_option("--delta", align_args.delta, "physical hop threshold (default 1)");
  align->add_option("--seeds", align_args.seeds_path, "seed-pair file (default identity)");
  align->add_option("--out", align_args.out, "output alignment graph path")->required();

  MineArgs mine_args;
  CLI::App* mine = app.add_subcommand("mine", "mine top-k overlapping densest subgraphs");
  mine->add_option("--graph", mine_args.graph, "weighted edge list to mine")->required();
  mine->add_option("--k", mine_args.k, "number of subgraphs")->required();
  mine->add_option("--lambda", mine_args.lambda, "distance weight (default 1)");
  mine->add_option("--alpha", mine_args.alpha, "covered-node retention fraction (default 0.1)");
  mine->add_option("--f", mine_args.f, "coverage threshold (default 0.5)");
  mine->add_option("--out", mine_args.out, "result JSON path")->required();
  mine->add_option("--physical", mine_args.physical,
                   "physical edge list for connectivity verification");
  mine->add_flag("--timing", mine_args.timing, "record wall-clock duration in the result file");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "F1 against a ground-truth file");
  evaluate->add_option("--truth", evaluate_args.truth, "ground-truth node sets")->required();
  evaluate->add_option("--result", evaluate_args.result, "mining result JSON")->required();
  evaluate->add_option("--out", evaluate_args.out_json, "optional JSON report path");

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score", "recompute and verify a result file");
  score->add_option("--result", score_args.result, "mining result JSON")->required();
  score->add_option("--graph", score_args.graph, "graph the result was mined from")->required();

  ExperimentArgs experiment_args;
  CLI::App* experiment = app.add_subcommand("experiment", "benchmark sweep with mean F1 table");
  experiment->add_option("--suite", experiment_args.suite, "synthetic1 or synthetic2")
      ->check(CLI::IsMember({"synthetic1", "synthetic2"}));
  experiment->add_option("--alphas", experiment_args.alphas, "comma-separated alpha list");
  experiment->add_option("--seeds", experiment_args.seeds, "number of seeds per cell");
  experiment->add_option("--out", experiment_args.out_dir, "output directory");
  experiment->add_option("--jobs", experiment_args.jobs,
                         "parallel workers (default: DCSMINE_JOBS or hardware)");
  experiment->add_option("--k", experiment_args.k, "subgraphs per instance (default 5)");
  experiment->add_option("--lambda", experiment_args.lambda, "distance weight (default 1)");
  experiment->add_option("--f", experiment_args.f, "coverage threshold (default 0.5)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(generate_args);
    if (*align) return run_align(align_args);
    if (*mine) return run_mine(mine_args);
    if (*evaluate) return run_evaluate(evaluate_args);
    if (*score) return run_score(score_args);
    if (*experiment) return run_experiment(experiment_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
