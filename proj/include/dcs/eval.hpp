#pragma once

// F1 scoring of detected subgraphs against planted ground truth. Matching is
// best-match per row/column, not one-to-one assignment: a single detected
// subgraph may be the best match of several truth sets.

#include <stdexcept>
#include <vector>

#include "dcs/graph.hpp"

namespace dcs {

struct EvalReport {
  double f1_truth_to_detected = 0.0;  // mean over detected of the best truth match
  double f1_detected_to_truth = 0.0;  // mean over truth of the best detected match
  std::vector<std::vector<double>> per_pair;  // [truth index][detected index]
};

// Harmonic mean of precision |a n b| / |a| and recall |a n b| / |b|; zero for
// disjoint sets.
inline double f1(const NodeSet& a, const NodeSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("f1 is undefined for empty sets");
  double common = static_cast<double>(intersection_size(a, b));
  if (common == 0.0) return 0.0;
  double precision = common / static_cast<double>(a.size());
  double recall = common / static_cast<double>(b.size());
  return 2.0 * precision * recall / (precision + recall);
}

inline EvalReport evaluate(const std::vector<NodeSet>& truth,
                           const std::vector<NodeSet>& detected) {
  if (truth.empty() || detected.empty()) {
    throw std::invalid_argument("evaluate requires non-empty truth and detected lists");
  }
  EvalReport report;
  report.per_pair.assign(truth.size(), std::vector<double>(detected.size(), 0.0));
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t d = 0; d < detected.size(); ++d) {
      report.per_pair[t][d] = f1(truth[t], detected[d]);
    }
  }
  double sum_over_detected = 0.0;
  for (std::size_t d = 0; d < detected.size(); ++d) {
    double best = 0.0;
    for (std::size_t t = 0; t < truth.size(); ++t) best = std::max(best, report.per_pair[t][d]);
    sum_over_detected += best;
  }
  report.f1_truth_to_detected = sum_over_detected / static_cast<double>(detected.size());

  double sum_over_truth = 0.0;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    double best = 0.0;
    for (std::size_t d = 0; d < detected.size(); ++d) best = std::max(best, report.per_pair[t][d]);
    sum_over_truth += best;
  }
  report.f1_detected_to_truth = sum_over_truth / static_cast<double>(truth.size());
  return report;
}

}  // namespace dcs
