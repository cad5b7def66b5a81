#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cwilab/errors.hpp"
#include "cwilab/types.hpp"

namespace cwilab {

// Resolution for exact vote ties, which can occur whenever the selection has
// even size. The default favors the rare class.
enum class TieBreak { prefer_complex, prefer_noncomplex };

inline void validate_selection(const PredictionMatrix& matrix,
                               std::span<const std::size_t> selected) {
  if (selected.empty()) throw ConfigError("system selection must not be empty");
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (selected[i] >= matrix.cols())
      throw ConfigError("selected column " + std::to_string(selected[i]) +
                        " out of range, matrix has " + std::to_string(matrix.cols()) +
                        " systems");
    for (std::size_t j = i + 1; j < selected.size(); ++j)
      if (selected[i] == selected[j])
        throw ConfigError("selected column " + std::to_string(selected[i]) + " repeated");
  }
}

struct EnsembleConfig {
  std::vector<std::size_t> selected;  // unique column indices, non-empty
  TieBreak tie_break = TieBreak::prefer_complex;
};

namespace detail {

inline Label vote_decision(std::size_t complex_votes, std::size_t voters, TieBreak tb) {
  if (2 * complex_votes > voters) return Label::complex;
  if (2 * complex_votes < voters) return Label::non_complex;
  return tb == TieBreak::prefer_complex ? Label::complex : Label::non_complex;
}

}  // namespace detail

// Per row, the label with the most votes among the selected columns; exact
// ties fall to the tie-break policy.
inline std::vector<Label> plurality_vote(const PredictionMatrix& matrix,
                                         const EnsembleConfig& config) {
  validate_selection(matrix, config.selected);
  std::vector<Label> out;
  out.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::size_t complex_votes = 0;
    for (std::size_t c : config.selected)
      if (matrix.at(r, c) == Label::complex) ++complex_votes;
    out.push_back(detail::vote_decision(complex_votes, config.selected.size(),
                                        config.tie_break));
  }
  return out;
}

// Upper-bound combiner: row i yields gold_i whenever at least one selected
// column is correct there; otherwise every selected column carries the same
// wrong label, which is emitted. Well-defined for binary labels only.
inline std::vector<Label> oracle_labels(const PredictionMatrix& matrix,
                                        std::span<const std::size_t> selected,
                                        std::span<const Label> gold) {
  validate_selection(matrix, selected);
  matrix.check_paired(gold);
  std::vector<Label> out;
  out.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    bool any_correct = false;
    for (std::size_t c : selected) {
      if (matrix.at(r, c) == gold[r]) {
        any_correct = true;
        break;
      }
    }
    out.push_back(any_correct ? gold[r] : flip(gold[r]));
  }
  return out;
}

}  // namespace cwilab
