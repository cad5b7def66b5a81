#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cwilab/errors.hpp"
#include "cwilab/types.hpp"

namespace cwilab {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold instances of this class

  bool operator==(const ClassMetrics&) const = default;
};

struct EvaluationReport {
  std::array<ClassMetrics, 2> per_class;  // index 0 = non-complex, 1 = complex
  double accuracy = 0.0;

  const ClassMetrics& for_class(Label c) const { return per_class[to_int(c)]; }

  bool operator==(const EvaluationReport&) const = default;
};

namespace detail {

// Single place where counts turn into rates. Precision (recall) is 0 when its
// denominator is 0, and F1 is 0 when P+R = 0.
inline ClassMetrics make_class_metrics(std::size_t tp, std::size_t predicted,
                                       std::size_t actual) {
  ClassMetrics m;
  m.support = actual;
  m.precision = predicted ? static_cast<double>(tp) / predicted : 0.0;
  m.recall = actual ? static_cast<double>(tp) / actual : 0.0;
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

}  // namespace detail

// Per-class precision/recall/F1 plus accuracy. Counts are accumulated as
// integers and divided once.
inline EvaluationReport evaluate(std::span<const Label> predictions,
                                 std::span<const Label> gold) {
  if (predictions.size() != gold.size())
    throw ShapeError("evaluate: " + std::to_string(predictions.size()) +
                     " predictions vs " + std::to_string(gold.size()) + " gold labels");
  if (gold.empty()) throw EmptyInputError("evaluate: empty input");

  std::array<std::size_t, 2> tp{0, 0}, predicted{0, 0}, actual{0, 0};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int p = to_int(predictions[i]);
    const int g = to_int(gold[i]);
    ++predicted[p];
    ++actual[g];
    if (p == g) ++tp[p];
  }

  EvaluationReport report;
  for (int c = 0; c < 2; ++c)
    report.per_class[c] = detail::make_class_metrics(tp[c], predicted[c], actual[c]);
  report.accuracy = static_cast<double>(tp[0] + tp[1]) / gold.size();
  return report;
}

// Column indices ordered by descending F1 on the target class. Ties keep the
// original column order.
inline std::vector<std::size_t> rank_columns(const PredictionMatrix& matrix,
                                             std::span<const Label> gold,
                                             Label target_class) {
  if (matrix.cols() == 0 || matrix.rows() == 0)
    throw EmptyInputError("rank_columns: empty prediction matrix");
  matrix.check_paired(gold);

  std::vector<double> f1(matrix.cols());
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    const std::vector<Label> column = matrix.column(c);
    f1[c] = evaluate(column, gold).for_class(target_class).f1;
  }
  std::vector<std::size_t> order(matrix.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f1[a] > f1[b]; });
  return order;
}

inline std::vector<std::string> rank_systems(const PredictionMatrix& matrix,
                                             std::span<const Label> gold,
                                             Label target_class) {
  std::vector<std::string> names;
  for (std::size_t c : rank_columns(matrix, gold, target_class))
    names.push_back(matrix.name(c));
  return names;
}

}  // namespace cwilab
