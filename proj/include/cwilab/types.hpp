#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwilab/errors.hpp"

namespace cwilab {

// Binary word label: 0 = non-complex, 1 = complex.
enum class Label : std::uint8_t { non_complex = 0, complex = 1 };

constexpr int to_int(Label l) { return l == Label::complex ? 1 : 0; }

constexpr Label flip(Label l) {
  return l == Label::complex ? Label::non_complex : Label::complex;
}

inline Label label_from_int(int v) {
  if (v == 0) return Label::non_complex;
  if (v == 1) return Label::complex;
  throw DataError("label must be 0 or 1, got " + std::to_string(v));
}

enum class Split { train, test };

inline const char* split_name(Split s) { return s == Split::train ? "train" : "test"; }

// ASCII case fold used for all word-identity comparisons (overlap, frequency
// lookups). The corpus is English; no Unicode folding is attempted.
inline std::string fold_word(std::string_view w) {
  std::string out(w);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Characters of a UTF-8 string counted as code points. Equals byte length for ASCII.
inline std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

// One target word in a sentence. annotator_count is absent on the test split,
// where gold is the judgment of a single annotator.
struct Instance {
  std::size_t id = 0;
  std::string sentence;
  std::string word;
  std::size_t offset = 0;  // 0-based token position of the word in the sentence
  Label gold = Label::non_complex;
  std::optional<int> annotator_count;

  bool operator==(const Instance&) const = default;
};

struct Dataset {
  std::vector<Instance> instances;
  Split split = Split::train;
  int num_annotators = 20;  // K; 20 for the train split, 1 for test

  std::size_t size() const { return instances.size(); }

  // ids must be 0..n-1, counts within 0..K and coherent with gold.
  void validate() const {
    if (num_annotators < 1) throw DataError("num_annotators must be positive");
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const Instance& ins = instances[i];
      if (ins.id != i)
        throw DataError("instance ids must be 0..n-1 in order, found id " +
                        std::to_string(ins.id) + " at position " + std::to_string(i));
      if (ins.annotator_count) {
        const int c = *ins.annotator_count;
        if (c < 0 || c > num_annotators)
          throw DataError("annotator_count " + std::to_string(c) + " outside 0.." +
                          std::to_string(num_annotators));
        if (ins.gold == Label::complex && c < 1)
          throw DataError("complex instance " + std::to_string(i) + " has annotator_count 0");
        if (ins.gold == Label::non_complex && c != 0)
          throw DataError("non-complex instance " + std::to_string(i) +
                          " has annotator_count " + std::to_string(c));
      }
    }
  }

  bool operator==(const Dataset&) const = default;
};

inline std::vector<Label> gold_labels(const Dataset& d) {
  std::vector<Label> out;
  out.reserve(d.size());
  for (const Instance& ins : d.instances) out.push_back(ins.gold);
  return out;
}

// Dense per-instance labels from N named systems. Rows follow dataset order.
class PredictionMatrix {
 public:
  PredictionMatrix() = default;

  PredictionMatrix(std::vector<std::string> system_names, std::size_t rows)
      : names_(std::move(system_names)), rows_(rows),
        cells_(rows * names_.size(), Label::non_complex) {
    check_names();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }

  Label at(std::size_t row, std::size_t col) const { return cells_[row * cols() + col]; }
  void set(std::size_t row, std::size_t col, Label v) { cells_[row * cols() + col] = v; }

  const std::vector<std::string>& system_names() const { return names_; }
  const std::string& name(std::size_t col) const { return names_[col]; }

  std::vector<Label> column(std::size_t col) const {
    std::vector<Label> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, col));
    return out;
  }

  // Rows must align one-to-one with the gold stream they are scored against.
  void check_paired(std::span<const Label> gold) const {
    if (gold.size() != rows_)
      throw ShapeError("prediction matrix has " + std::to_string(rows_) +
                       " rows but gold has " + std::to_string(gold.size()));
  }

  bool operator==(const PredictionMatrix&) const = default;

 private:
  void check_names() const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw DataError("system name must not be empty");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw DataError("duplicate system name '" + names_[i] + "'");
    }
  }

  std::vector<std::string> names_;
  std::size_t rows_ = 0;
  std::vector<Label> cells_;
};

}  // namespace cwilab
