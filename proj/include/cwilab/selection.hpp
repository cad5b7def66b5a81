#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwilab/ensemble.hpp"
#include "cwilab/errors.hpp"
#include "cwilab/metrics.hpp"
#include "cwilab/types.hpp"

namespace cwilab {

struct SweepPoint {
  std::size_t n = 0;       // ensemble size
  ClassMetrics metrics;    // plurality metrics for the target class
};

// How the system to remove is picked at each backward step:
//   ensemble_impact  — remove the system whose absence maximizes ensemble F1
//   individual_score — remove the system with the lowest individual F1
enum class RemovalStrategy { ensemble_impact, individual_score };

struct RemovalStep {
  std::string removed;
  ClassMetrics remaining;  // ensemble metrics after this removal
};

struct SelectionTrace {
  ClassMetrics initial;            // full ensemble, before any removal
  std::vector<RemovalStep> steps;  // exactly N-1 entries
  std::vector<std::string> best_subset;
  double best_f1 = 0.0;
  std::size_t candidate_evaluations = 0;  // ensembles scored while searching
};

struct SubsetResult {
  std::vector<std::size_t> subset;  // ascending column indices
  double f1 = 0.0;
};

// Plurality metrics of the top-n ranked systems for each requested n.
inline std::vector<SweepPoint> sweep_top_n(const PredictionMatrix& matrix,
                                           std::span<const Label> gold,
                                           Label target_class,
                                           std::span<const std::size_t> sizes,
                                           TieBreak tie_break = TieBreak::prefer_complex) {
  const std::vector<std::size_t> ranked = rank_columns(matrix, gold, target_class);
  std::vector<SweepPoint> points;
  points.reserve(sizes.size());
  for (std::size_t n : sizes) {
    if (n < 1 || n > matrix.cols())
      throw ConfigError("sweep size " + std::to_string(n) + " outside 1.." +
                        std::to_string(matrix.cols()));
    EnsembleConfig cfg;
    cfg.selected.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n));
    cfg.tie_break = tie_break;
    const std::vector<Label> voted = plurality_vote(matrix, cfg);
    points.push_back({n, evaluate(voted, gold).for_class(target_class)});
  }
  return points;
}

// Backward elimination without a stopping criterion: one system removed per
// step until a single system remains. Removal ties go to the system with the
// lowest individual F1, then the lowest column index. best_subset is the
// argmax over all visited ensembles (full set included); equal F1 prefers the
// smaller, later ensemble.
inline SelectionTrace greedy_backward(const PredictionMatrix& matrix,
                                      std::span<const Label> gold,
                                      Label target_class,
                                      TieBreak tie_break = TieBreak::prefer_complex,
                                      RemovalStrategy strategy = RemovalStrategy::ensemble_impact) {
  if (matrix.cols() < 2)
    throw ConfigError("greedy_backward needs at least 2 systems, got " +
                      std::to_string(matrix.cols()));
  matrix.check_paired(gold);
  if (matrix.rows() == 0) throw EmptyInputError("greedy_backward: empty gold stream");

  const std::size_t n_rows = matrix.rows();

  std::vector<double> individual(matrix.cols());
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    const std::vector<Label> column = matrix.column(c);
    individual[c] = evaluate(column, gold).for_class(target_class).f1;
  }

  std::vector<std::size_t> current(matrix.cols());
  std::iota(current.begin(), current.end(), 0);

  // complex-vote counts per row over the current set; candidates subtract one column
  std::vector<std::size_t> votes(n_rows, 0);
  for (std::size_t r = 0; r < n_rows; ++r)
    for (std::size_t c : current)
      if (matrix.at(r, c) == Label::complex) ++votes[r];

  auto metrics_without = [&](std::optional<std::size_t> excluded) -> ClassMetrics {
    const std::size_t voters = current.size() - (excluded ? 1 : 0);
    std::size_t tp[2] = {0, 0}, predicted[2] = {0, 0}, actual[2] = {0, 0};
    for (std::size_t r = 0; r < n_rows; ++r) {
      std::size_t cv = votes[r];
      if (excluded && matrix.at(r, *excluded) == Label::complex) --cv;
      const int p = to_int(detail::vote_decision(cv, voters, tie_break));
      const int g = to_int(gold[r]);
      ++predicted[p];
      ++actual[g];
      if (p == g) ++tp[p];
    }
    const int t = to_int(target_class);
    return detail::make_class_metrics(tp[t], predicted[t], actual[t]);
  };

  SelectionTrace trace;
  trace.initial = metrics_without(std::nullopt);

  double best_f1 = trace.initial.f1;
  std::vector<std::size_t> best_subset = current;

  while (current.size() > 1) {
    std::size_t remove_pos = 0;
    ClassMetrics after;

    if (strategy == RemovalStrategy::ensemble_impact) {
      bool first = true;
      for (std::size_t pos = 0; pos < current.size(); ++pos) {
        const ClassMetrics cand = metrics_without(current[pos]);
        ++trace.candidate_evaluations;
        const bool better =
            first || cand.f1 > after.f1 ||
            (cand.f1 == after.f1 && individual[current[pos]] < individual[current[remove_pos]]);
        if (better) {
          remove_pos = pos;
          after = cand;
          first = false;
        }
      }
    } else {
      for (std::size_t pos = 1; pos < current.size(); ++pos)
        if (individual[current[pos]] < individual[current[remove_pos]]) remove_pos = pos;
      after = metrics_without(current[remove_pos]);
      ++trace.candidate_evaluations;
    }

    const std::size_t col = current[remove_pos];
    for (std::size_t r = 0; r < n_rows; ++r)
      if (matrix.at(r, col) == Label::complex) --votes[r];
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(remove_pos));

    trace.steps.push_back({matrix.name(col), after});
    if (after.f1 >= best_f1) {
      best_f1 = after.f1;
      best_subset = current;
    }
  }

  trace.best_f1 = best_f1;
  for (std::size_t c : best_subset) trace.best_subset.push_back(matrix.name(c));
  return trace;
}

// Brute-force verifier: scores every non-empty subset. Ties prefer the smaller
// subset, then the lexicographically smaller index sequence. Guarded by
// max_systems (2^N subsets).
inline SubsetResult exhaustive_best_subset(const PredictionMatrix& matrix,
                                           std::span<const Label> gold,
                                           Label target_class,
                                           TieBreak tie_break = TieBreak::prefer_complex,
                                           std::size_t max_systems = 12) {
  const std::size_t n = matrix.cols();
  if (n == 0) throw EmptyInputError("exhaustive_best_subset: empty prediction matrix");
  if (n > max_systems || n > 62)
    throw ResourceError("exhaustive search over " + std::to_string(n) +
                        " systems exceeds the cap of " +
                        std::to_string(std::min<std::size_t>(max_systems, 62)));
  matrix.check_paired(gold);

  SubsetResult best;
  bool have_best = false;
  EnsembleConfig cfg;
  cfg.tie_break = tie_break;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    cfg.selected.clear();
    for (std::size_t c = 0; c < n; ++c)
      if (mask & (std::size_t{1} << c)) cfg.selected.push_back(c);

    const std::vector<Label> voted = plurality_vote(matrix, cfg);
    const double f1 = evaluate(voted, gold).for_class(target_class).f1;

    const bool better =
        !have_best || f1 > best.f1 ||
        (f1 == best.f1 &&
         (cfg.selected.size() < best.subset.size() ||
          (cfg.selected.size() == best.subset.size() &&
           std::lexicographical_compare(cfg.selected.begin(), cfg.selected.end(),
                                        best.subset.begin(), best.subset.end()))));
    if (better) {
      best.subset = cfg.selected;
      best.f1 = f1;
      have_best = true;
    }
  }
  return best;
}

}  // namespace cwilab
