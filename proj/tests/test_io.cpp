#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "cwilab/io.hpp"
#include "test_support.hpp"

using namespace cwilab;
using testsupport::labels;
using testsupport::matrix_from_columns;

namespace {

Dataset parse_native(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in, "test.tsv", DatasetFormat::native_tsv);
}

Dataset parse_semeval(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in, "test.tsv", DatasetFormat::semeval_tsv);
}

}  // namespace

TEST_CASE("native dataset: header and row parsing") {
  const Dataset d = parse_native(
      "sentence\tword\toffset\tgold\tannotator_count\n"
      "A frenulum is a small fold of tissue.\tfrenulum\t1\t1\t14\n"
      "The motion of a mobile organ.\tmotion\t1\t0\t0\n");
  REQUIRE(d.size() == 2);
  CHECK(d.instances[0].word == "frenulum");
  CHECK(d.instances[0].offset == 1);
  CHECK(d.instances[0].gold == Label::complex);
  CHECK(d.instances[0].annotator_count == 14);
  CHECK(d.instances[1].id == 1);
  CHECK(d.split == Split::train);
  CHECK(d.num_annotators == 20);
}

TEST_CASE("native dataset: pragma line sets split and K") {
  const Dataset d = parse_native(
      "# split=test annotators=7\n"
      "sentence\tword\toffset\tgold\n"
      "a b c\tb\t1\t1\n");
  CHECK(d.split == Split::test);
  CHECK(d.num_annotators == 7);
  CHECK(d.instances[0].annotator_count == std::nullopt);
}

TEST_CASE("native dataset: without counts the file reads as a test split") {
  const Dataset d = parse_native(
      "sentence\tword\toffset\tgold\n"
      "a b\ta\t0\t0\n");
  CHECK(d.split == Split::test);
  CHECK(d.num_annotators == 1);
}

TEST_CASE("native dataset: parse errors carry 1-based line numbers") {
  const std::string header = "sentence\tword\toffset\tgold\tannotator_count\n";
  try {
    parse_native(header + "s\tw\t0\t2\t1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("test.tsv:2") != std::string::npos);
    CHECK(std::string(e.what()).find("non-binary label '2'") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_native(header + "s\tw\tx\t1\t1\n"), ParseError);
  CHECK_THROWS_AS(parse_native(header + "s\t\t0\t1\t1\n"), ParseError);    // empty word
  CHECK_THROWS_AS(parse_native(header + "s\tw\t0\t1\n"), ParseError);       // missing cell
  CHECK_THROWS_AS(parse_native(header + "s\tw\t0\t1\t25\n"), ParseError);   // count > K
  CHECK_THROWS_AS(parse_native(header + "s\tw\t0\t1\t0\n"), ParseError);    // gold 1, count 0
  CHECK_THROWS_AS(parse_native(header + "s\tw\t0\t0\t3\n"), ParseError);    // gold 0, count 3
  CHECK_THROWS_AS(parse_native("bad\theader\n"), ParseError);
}

TEST_CASE("native dataset: empty inputs") {
  CHECK_THROWS_AS(parse_native(""), EmptyInputError);
  CHECK_THROWS_AS(parse_native("sentence\tword\toffset\tgold\n"), EmptyInputError);
}

TEST_CASE("semeval dataset: judgments are summed") {
  const Dataset d = parse_semeval(
      "a b c\tb\t1\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\n"
      "a b c\tc\t2\t1\t0\t1\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t1\n");
  REQUIRE(d.size() == 2);
  CHECK(d.num_annotators == 20);
  CHECK(d.split == Split::train);
  CHECK(d.instances[0].gold == Label::non_complex);
  CHECK(d.instances[0].annotator_count == 0);
  CHECK(d.instances[1].gold == Label::complex);
  CHECK(d.instances[1].annotator_count == 3);
}

TEST_CASE("semeval dataset: single judgment column reads as a test split") {
  const Dataset d = parse_semeval("a b\ta\t0\t1\n");
  CHECK(d.split == Split::test);
  CHECK(d.num_annotators == 1);
  CHECK(d.instances[0].gold == Label::complex);
}

TEST_CASE("semeval dataset: ragged or invalid rows are rejected") {
  CHECK_THROWS_AS(parse_semeval("a\tb\t0\t1\na\tb\t0\t1\t0\n"), ParseError);
  CHECK_THROWS_AS(parse_semeval("a\tb\t0\t2\n"), ParseError);
  CHECK_THROWS_AS(parse_semeval("a\tb\t0\n"), ParseError);
  CHECK_THROWS_AS(parse_semeval(""), EmptyInputError);
}

TEST_CASE("predictions: header plus aligned rows") {
  const Dataset d = parse_native(
      "sentence\tword\toffset\tgold\n"
      "x\ta\t0\t1\nx\tb\t0\t0\nx\tc\t0\t1\n");
  std::istringstream in("sysA\tsysB\n1\t0\n0\t0\n1\t1\n");
  const PredictionMatrix m = parse_predictions(in, "preds.tsv", d);
  CHECK(m.cols() == 2);
  CHECK(m.rows() == 3);
  CHECK(m.system_names() == std::vector<std::string>{"sysA", "sysB"});
  CHECK(m.column(0) == labels({1, 0, 1}));
}

TEST_CASE("predictions: alignment and schema errors") {
  const Dataset d = parse_native(
      "sentence\tword\toffset\tgold\n"
      "x\ta\t0\t1\nx\tb\t0\t0\nx\tc\t0\t1\n");

  std::istringstream two_rows("sysA\tsysB\n1\t0\n0\t0\n");
  CHECK_THROWS_AS(parse_predictions(two_rows, "preds.tsv", d), ShapeError);

  std::istringstream dup("sysA\tsysA\n1\t0\n0\t0\n1\t1\n");
  CHECK_THROWS_AS(parse_predictions(dup, "preds.tsv", d), ParseError);

  std::istringstream missing_cell("sysA\tsysB\n1\t0\n0\n1\t1\n");
  try {
    parse_predictions(missing_cell, "preds.tsv", d);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream bad_value("sysA\tsysB\n1\t0\n0\tx\n1\t1\n");
  CHECK_THROWS_AS(parse_predictions(bad_value, "preds.tsv", d), ParseError);

  std::istringstream empty("");
  CHECK_THROWS_AS(parse_predictions(empty, "preds.tsv", d), EmptyInputError);
}

TEST_CASE("round-trip: datasets and matrices written by synth") {
  SynthConfig cfg;
  cfg.num_words = 60;
  cfg.num_annotators = 13;
  cfg.systems = {{0.1, 0.2}, {0.0, 0.5}, {0.4, 0.1}};
  cfg.seed = 7;
  const SynthData data = generate(cfg);

  const Dataset train = parse_native(dataset_to_tsv(data.train));
  CHECK(train == data.train);
  const Dataset test = parse_native(dataset_to_tsv(data.test));
  CHECK(test == data.test);

  std::istringstream in(predictions_to_tsv(data.predictions));
  const PredictionMatrix m = parse_predictions(in, "preds.tsv", test);
  CHECK(m == data.predictions);
}

TEST_CASE("writers reject values that cannot live in a TSV") {
  Dataset d = testsupport::train_dataset({{"ok", 1}});
  d.instances[0].sentence = "has\ttab";
  CHECK_THROWS_AS(dataset_to_tsv(d), DataError);

  Dataset mixed = testsupport::train_dataset({{"a", 1}, {"b", 2}});
  mixed.instances[1].annotator_count.reset();
  CHECK_THROWS_AS(dataset_to_tsv(mixed), DataError);
}

TEST_CASE("Dataset::validate enforces the id and count invariants") {
  Dataset d = testsupport::train_dataset({{"aa", 2}, {"bb", 0}});
  CHECK_NOTHROW(d.validate());

  Dataset bad_ids = d;
  bad_ids.instances[1].id = 7;
  CHECK_THROWS_AS(bad_ids.validate(), DataError);

  Dataset count_over_k = d;
  count_over_k.num_annotators = 1;
  CHECK_THROWS_AS(count_over_k.validate(), DataError);

  Dataset complex_without_flag = d;
  complex_without_flag.instances[0].annotator_count = 0;
  CHECK_THROWS_AS(complex_without_flag.validate(), DataError);

  Dataset noncomplex_with_flag = d;
  noncomplex_with_flag.instances[1].annotator_count = 3;
  CHECK_THROWS_AS(noncomplex_with_flag.validate(), DataError);
}

TEST_CASE("PredictionMatrix rejects bad system names") {
  CHECK_THROWS_AS(PredictionMatrix({"a", "a"}, 1), DataError);
  CHECK_THROWS_AS(PredictionMatrix({""}, 1), DataError);
}

TEST_CASE("frequency table parsing") {
  std::istringstream in("word\tcount\nThe\t10\nthe\t5\ngharial\t2\n");
  const FrequencyTable t = parse_frequency_table(in, "freq.tsv");
  CHECK(t.lookup("the") == 15);  // case-folded keys accumulate
  CHECK(t.lookup("gharial") == 2);
  CHECK(t.lookup("absent") == 0);

  std::istringstream zero("word\tcount\nx\t0\n");
  CHECK_THROWS_AS(parse_frequency_table(zero, "freq.tsv"), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_frequency_table(empty, "freq.tsv"), EmptyInputError);
}

TEST_CASE("report rendering: fixed CSV schemas") {
  const EvaluationReport er = evaluate(labels({1, 0, 1, 0}), labels({1, 1, 0, 0}));
  const std::string metrics_csv = render_report({er, ReportFormat::csv});
  CHECK(metrics_csv ==
        "class,precision,recall,f1,support,accuracy\n"
        "0,0.5000,0.5000,0.5000,2,0.5000\n"
        "1,0.5000,0.5000,0.5000,2,0.5000\n");

  std::vector<SweepPoint> sweep{{1, {0.25, 0.5, 1.0 / 3.0, 4}}};
  const std::string sweep_csv = render_report({sweep, ReportFormat::csv});
  CHECK(sweep_csv == "n,precision,recall,f1\n1,0.2500,0.5000,0.3333\n");

  SelectionTrace trace;
  trace.initial = {0.5, 0.5, 0.5, 2};
  trace.steps = {{"sysB", {1.0, 1.0, 1.0, 2}}};
  trace.best_f1 = 1.0;
  trace.best_subset = {"sysA"};
  const std::string trace_csv = render_report({trace, ReportFormat::csv});
  CHECK(trace_csv ==
        "step,precision,recall,f1\n"
        "0,0.5000,0.5000,0.5000\n"
        "1,1.0000,1.0000,1.0000\n");

  AnnotationHistogram hist;
  hist.num_annotators = 3;
  hist.bins = {{1, 2}, {3, 1}};
  CHECK(render_report({hist, ReportFormat::csv}) ==
        "annotators,words\n1,2\n2,0\n3,1\n");

  std::vector<AwlBin> bins{{{1, 9}, 2, 3.0, 1}};
  CHECK(render_report({bins, ReportFormat::csv}) ==
        "min_annotators,max_annotators,words,awl,multiword\n1,9,2,3.0000,1\n");

  ConsistencyReport cons;
  cons.rows = {{"a,b", 12, 3, Label::complex, 0.5}};
  cons.label_agreement = 1.0;
  CHECK(render_report({cons, ReportFormat::csv}) ==
        "word,human_count,system_count,train_label,test_agreement,agrees\n"
        "\"a,b\",12,3,1,0.5000,1\n");
}

TEST_CASE("report rendering: JSON is stable and rounded to 4 decimals") {
  const EvaluationReport er = evaluate(labels({1, 0, 1}), labels({1, 1, 0}));
  const Report report{er, ReportFormat::json};
  const std::string a = render_report(report);
  CHECK(a == render_report(report));

  const auto doc = nlohmann::json::parse(a);
  CHECK(doc["accuracy"] == 0.3333);
  CHECK(doc["classes"][1]["f1"] == 0.5);
  CHECK(doc["classes"][1]["support"] == 2);

  BestSubsetReport subset{{"sysA", "sysB"}, 2.0 / 3.0};
  const auto sj = nlohmann::json::parse(render_report({subset, ReportFormat::json}));
  CHECK(sj["systems"].size() == 2);
  CHECK(sj["f1"] == 0.6667);
}

TEST_CASE("report rendering: SVG charts") {
  std::vector<SweepPoint> sweep;
  for (std::size_t n = 1; n <= 5; ++n)
    sweep.push_back({n, {0.1 * n, 0.2, 0.15, 10}});
  const std::string svg = render_report({sweep, ReportFormat::svg});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg == render_report({sweep, ReportFormat::svg}));

  AnnotationHistogram hist;
  hist.num_annotators = 5;
  hist.bins = {{1, 10}, {5, 1}};
  const std::string bars = render_report({hist, ReportFormat::svg});
  CHECK(bars.find("<rect") != std::string::npos);

  const EvaluationReport er = evaluate(labels({1}), labels({1}));
  CHECK_THROWS_AS(render_report({er, ReportFormat::svg}), ConfigError);
}

TEST_CASE("parse_intervals") {
  const auto intervals = parse_intervals("10-20,1-9,0");
  REQUIRE(intervals.size() == 3);
  CHECK(intervals[0] == CountInterval{10, 20});
  CHECK(intervals[1] == CountInterval{1, 9});
  CHECK(intervals[2] == CountInterval{0, 0});
  CHECK_THROWS_AS(parse_intervals("abc"), ConfigError);
  CHECK_THROWS_AS(parse_intervals("1-"), ConfigError);
}

TEST_CASE("emit_report writes to files and returns the byte count") {
  const EvaluationReport er = evaluate(labels({1, 0}), labels({1, 0}));
  const Report report{er, ReportFormat::csv};
  const auto path = std::filesystem::temp_directory_path() / "cwilab_emit_test.csv";
  const std::size_t bytes = emit_report(report, path);
  CHECK(bytes == render_report(report).size());
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == render_report(report));
  std::filesystem::remove(path);

  CHECK_THROWS_AS(emit_report(report, std::filesystem::path("/nonexistent/dir/x.csv")),
                  IoError);
}
