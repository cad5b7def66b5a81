#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cwilab/ensemble.hpp"
#include "cwilab/metrics.hpp"
#include "test_support.hpp"

using namespace cwilab;
using testsupport::labels;
using testsupport::matrix_from_columns;
using testsupport::random_labels;
using testsupport::random_matrix;

namespace {

std::vector<std::size_t> all_columns(const PredictionMatrix& m) {
  std::vector<std::size_t> out(m.cols());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = c;
  return out;
}

}  // namespace

TEST_CASE("plurality_vote: single voter is the identity") {
  const auto m = matrix_from_columns(
      {"a", "b"}, {labels({1, 0, 1}), labels({0, 1, 1})});
  CHECK(plurality_vote(m, {{1}, TieBreak::prefer_complex}) == labels({0, 1, 1}));
}

TEST_CASE("plurality_vote: hand-counted rows") {
  // row votes [1,1,0] and [0,0,1]
  const auto m = matrix_from_columns(
      {"a", "b", "c"},
      {labels({1, 0}), labels({1, 0}), labels({0, 1})});
  CHECK(plurality_vote(m, {{0, 1, 2}, TieBreak::prefer_complex}) == labels({1, 0}));
}

TEST_CASE("plurality_vote: tie-break policy decides even splits") {
  const auto m = matrix_from_columns({"a", "b"}, {labels({1}), labels({0})});
  CHECK(plurality_vote(m, {{0, 1}, TieBreak::prefer_complex}) == labels({1}));
  CHECK(plurality_vote(m, {{0, 1}, TieBreak::prefer_noncomplex}) == labels({0}));
}

TEST_CASE("plurality_vote: selection validation") {
  const auto m = matrix_from_columns({"a"}, {labels({1, 0})});
  CHECK_THROWS_AS(plurality_vote(m, {{}, TieBreak::prefer_complex}), ConfigError);
  CHECK_THROWS_AS(plurality_vote(m, {{3}, TieBreak::prefer_complex}), ConfigError);
  CHECK_THROWS_AS(plurality_vote(m, {{0, 0}, TieBreak::prefer_complex}), ConfigError);
}

TEST_CASE("oracle_labels: a perfect member makes the oracle perfect") {
  const auto gold = labels({1, 0, 1, 0});
  const auto m = matrix_from_columns(
      {"perfect", "noise"}, {gold, labels({0, 1, 0, 1})});
  const auto out = oracle_labels(m, std::vector<std::size_t>{0, 1}, gold);
  CHECK(out == gold);
  CHECK(evaluate(out, gold).accuracy == 1.0);
}

TEST_CASE("oracle_labels: unanimous wrong row stays wrong") {
  const auto gold = labels({1, 1});
  const auto m = matrix_from_columns({"a", "b"}, {labels({0, 1}), labels({0, 1})});
  CHECK(oracle_labels(m, std::vector<std::size_t>{0, 1}, gold) == labels({0, 1}));
}

TEST_CASE("oracle_labels: validation") {
  const auto gold = labels({1, 0});
  const auto m = matrix_from_columns({"a"}, {labels({1, 0})});
  CHECK_THROWS_AS(oracle_labels(m, std::vector<std::size_t>{}, gold), ConfigError);
  CHECK_THROWS_AS(oracle_labels(m, std::vector<std::size_t>{0}, labels({1})), ShapeError);
}

TEST_CASE("oracle properties on random matrices") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 20 + rng() % 40;
    const std::size_t systems = 2 + rng() % 6;
    const auto m = random_matrix(rng, rows, systems);
    const auto gold = random_labels(rng, rows, 0.35);
    const auto selected = all_columns(m);

    const auto oracle = oracle_labels(m, selected, gold);
    const EvaluationReport oracle_report = evaluate(oracle, gold);

    // literal per-row disjunction: correct iff some member is correct
    for (std::size_t r = 0; r < rows; ++r) {
      bool any = false;
      for (std::size_t c : selected) any = any || m.at(r, c) == gold[r];
      REQUIRE((oracle[r] == gold[r]) == any);
    }

    const EnsembleConfig cfg{selected, TieBreak::prefer_complex};
    const EvaluationReport vote_report = evaluate(plurality_vote(m, cfg), gold);
    REQUIRE(oracle_report.accuracy >= vote_report.accuracy);

    for (std::size_t c : selected) {
      const std::vector<Label> column = m.column(c);
      const EvaluationReport member = evaluate(column, gold);
      REQUIRE(oracle_report.accuracy >= member.accuracy);
      for (int cls = 0; cls < 2; ++cls)
        REQUIRE(oracle_report.per_class[cls].recall >= member.per_class[cls].recall);
    }
  }
}

TEST_CASE("oracle accuracy is monotone in the selection") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 30;
    const auto m = random_matrix(rng, rows, 6);
    const auto gold = random_labels(rng, rows, 0.4);
    std::vector<std::size_t> selected{0};
    double last = evaluate(oracle_labels(m, selected, gold), gold).accuracy;
    for (std::size_t c = 1; c < m.cols(); ++c) {
      selected.push_back(c);
      const double acc = evaluate(oracle_labels(m, selected, gold), gold).accuracy;
      REQUIRE(acc >= last);
      last = acc;
    }
  }
}

TEST_CASE("voting and oracle ignore the order of selected columns") {
  std::mt19937 rng(4321);
  const auto m = random_matrix(rng, 40, 5);
  const auto gold = random_labels(rng, 40, 0.3);
  std::vector<std::size_t> selected{0, 1, 2, 3, 4};
  const auto voted = plurality_vote(m, {selected, TieBreak::prefer_complex});
  const auto oracle = oracle_labels(m, selected, gold);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(selected.begin(), selected.end(), rng);
    CHECK(plurality_vote(m, {selected, TieBreak::prefer_complex}) == voted);
    CHECK(oracle_labels(m, selected, gold) == oracle);
  }
}

TEST_CASE("odd replication of one system votes like that system") {
  std::mt19937 rng(55);
  const auto column = random_labels(rng, 25, 0.5);
  for (std::size_t copies : {std::size_t{3}, std::size_t{5}}) {
    std::vector<std::string> names;
    std::vector<std::vector<Label>> cols;
    for (std::size_t i = 0; i < copies; ++i) {
      names.push_back("copy" + std::to_string(i));
      cols.push_back(column);
    }
    const auto m = matrix_from_columns(names, cols);
    EnsembleConfig cfg;
    for (std::size_t i = 0; i < copies; ++i) cfg.selected.push_back(i);
    cfg.tie_break = TieBreak::prefer_noncomplex;  // irrelevant: no ties possible
    CHECK(plurality_vote(m, cfg) == column);
  }
}
