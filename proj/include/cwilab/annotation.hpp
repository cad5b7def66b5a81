#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwilab/ensemble.hpp"
#include "cwilab/errors.hpp"
#include "cwilab/types.hpp"

namespace cwilab {

// Distribution of annotator agreement over the complex words of a split.
struct AnnotationHistogram {
  std::map<int, std::size_t> bins;  // annotator count (>= 1) -> number of words
  int num_annotators = 0;           // K, kept for rendering the full axis

  std::size_t total() const {
    std::size_t sum = 0;
    for (const auto& [count, words] : bins) sum += words;
    return sum;
  }
};

// Inclusive annotator-count range.
struct CountInterval {
  int lo = 0;
  int hi = 0;

  bool contains(int c) const { return c >= lo && c <= hi; }
  bool operator==(const CountInterval&) const = default;
};

struct AwlBin {
  CountInterval interval;
  std::size_t word_count = 0;
  double awl = 0.0;                 // mean target length in characters
  std::size_t multiword_count = 0;  // targets containing whitespace
};

struct ConsistencyRow {
  std::string word;  // case-folded surface form
  int human_count = 0;
  int system_count = 0;
  Label train_label = Label::non_complex;
  double test_label_agreement = 0.0;  // fraction of test occurrences matching train_label
};

struct ConsistencyReport {
  std::vector<ConsistencyRow> rows;  // human_count descending, then word ascending
  // Fraction of rows whose word received its training label on at least one
  // test occurrence.
  double label_agreement = 0.0;
};

namespace detail {

inline int require_count(const Instance& ins, int num_annotators) {
  if (!ins.annotator_count)
    throw DataError("instance " + std::to_string(ins.id) +
                    " ('" + ins.word + "') has no annotator_count");
  const int c = *ins.annotator_count;
  if (c < 0 || c > num_annotators)
    throw DataError("instance " + std::to_string(ins.id) + " has annotator_count " +
                    std::to_string(c) + " outside 0.." + std::to_string(num_annotators));
  return c;
}

}  // namespace detail

// bins[c] = number of words flagged by exactly c annotators, c >= 1.
inline AnnotationHistogram annotation_histogram(const Dataset& dataset) {
  AnnotationHistogram hist;
  hist.num_annotators = dataset.num_annotators;
  for (const Instance& ins : dataset.instances) {
    const int c = detail::require_count(ins, dataset.num_annotators);
    if (c >= 1) ++hist.bins[c];
  }
  return hist;
}

// Word count and average word length per annotator-count interval. Intervals
// may overlap (a summary interval spanning sub-bins is normal usage); each bin
// is computed independently. Lengths are code points, whitespace included.
inline std::vector<AwlBin> awl_report(const Dataset& dataset,
                                      std::span<const CountInterval> intervals) {
  for (const CountInterval& iv : intervals) {
    if (iv.lo > iv.hi)
      throw ConfigError("interval " + std::to_string(iv.lo) + "-" + std::to_string(iv.hi) +
                        " is inverted");
    if (iv.lo < 0 || iv.hi > dataset.num_annotators)
      throw ConfigError("interval " + std::to_string(iv.lo) + "-" + std::to_string(iv.hi) +
                        " outside 0.." + std::to_string(dataset.num_annotators));
  }

  std::vector<AwlBin> bins;
  bins.reserve(intervals.size());
  for (const CountInterval& iv : intervals) {
    AwlBin bin;
    bin.interval = iv;
    std::size_t char_sum = 0;
    for (const Instance& ins : dataset.instances) {
      const int c = detail::require_count(ins, dataset.num_annotators);
      if (!iv.contains(c)) continue;
      ++bin.word_count;
      char_sum += utf8_length(ins.word);
      if (ins.word.find(' ') != std::string::npos) ++bin.multiword_count;
    }
    bin.awl = bin.word_count ? static_cast<double>(char_sum) / bin.word_count : 0.0;
    bins.push_back(bin);
  }
  return bins;
}

// For every training word flagged by at least min_annotators that also occurs
// in the test split (case-folded surface match): how often humans flagged it,
// how many of the selected systems flag it anywhere in the test set, and how
// its test occurrences agree with the training label. Words occurring several
// times in training keep their highest annotator count; a system counts as
// flagging a word if it labels any test occurrence complex.
inline ConsistencyReport consistency_report(const Dataset& train, const Dataset& test,
                                            const PredictionMatrix& matrix,
                                            std::span<const std::size_t> top_systems,
                                            int min_annotators) {
  if (matrix.rows() != test.size())
    throw ShapeError("prediction matrix has " + std::to_string(matrix.rows()) +
                     " rows but the test split has " + std::to_string(test.size()));
  validate_selection(matrix, top_systems);
  if (min_annotators < 1 || min_annotators > train.num_annotators)
    throw ConfigError("min_annotators " + std::to_string(min_annotators) + " outside 1.." +
                      std::to_string(train.num_annotators));

  std::map<std::string, int> human_count;  // folded word -> max train count
  for (const Instance& ins : train.instances) {
    const int c = detail::require_count(ins, train.num_annotators);
    auto [it, inserted] = human_count.emplace(fold_word(ins.word), c);
    if (!inserted) it->second = std::max(it->second, c);
  }

  std::map<std::string, std::vector<std::size_t>> test_rows;  // folded word -> row indices
  for (std::size_t r = 0; r < test.size(); ++r)
    test_rows[fold_word(test.instances[r].word)].push_back(r);

  ConsistencyReport report;
  for (const auto& [word, count] : human_count) {
    if (count < min_annotators) continue;
    const auto occ = test_rows.find(word);
    if (occ == test_rows.end()) continue;

    ConsistencyRow row;
    row.word = word;
    row.human_count = count;
    row.train_label = count >= 1 ? Label::complex : Label::non_complex;

    for (std::size_t sys : top_systems) {
      const bool flagged = std::any_of(occ->second.begin(), occ->second.end(),
                                       [&](std::size_t r) {
                                         return matrix.at(r, sys) == Label::complex;
                                       });
      if (flagged) ++row.system_count;
    }

    std::size_t matching = 0;
    for (std::size_t r : occ->second)
      if (test.instances[r].gold == row.train_label) ++matching;
    row.test_label_agreement = static_cast<double>(matching) / occ->second.size();

    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const ConsistencyRow& a, const ConsistencyRow& b) {
              if (a.human_count != b.human_count) return a.human_count > b.human_count;
              return a.word < b.word;
            });

  if (!report.rows.empty()) {
    std::size_t agreeing = 0;
    for (const ConsistencyRow& row : report.rows)
      if (row.test_label_agreement > 0.0) ++agreeing;
    report.label_agreement = static_cast<double>(agreeing) / report.rows.size();
  }
  return report;
}

}  // namespace cwilab
