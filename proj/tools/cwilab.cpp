// cwilab — ensemble analysis for binary word-labeling tasks.
//
// Subcommands: metrics, vote, oracle, sweep, select, annot, synth.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwilab/cwilab.hpp"

namespace {

using namespace cwilab;

struct OutputOptions {
  std::string format = "json";
  std::string out;  // empty = stdout
};

ReportFormat parse_format(const std::string& f) {
  if (f == "json") return ReportFormat::json;
  if (f == "csv") return ReportFormat::csv;
  return ReportFormat::svg;
}

void emit(ReportPayload payload, const OutputOptions& opts) {
  Report report{std::move(payload), parse_format(opts.format)};
  if (opts.out.empty())
    emit_report(report, std::cout);
  else
    emit_report(report, std::filesystem::path(opts.out));
}

DatasetFormat parse_input_format(const std::string& f) {
  return f == "semeval" ? DatasetFormat::semeval_tsv : DatasetFormat::native_tsv;
}

TieBreak parse_tie_break(const std::string& t) {
  return t == "noncomplex" ? TieBreak::prefer_noncomplex : TieBreak::prefer_complex;
}

// Top-n columns by class F1; n = 0 selects every column in file order.
std::vector<std::size_t> pick_top(const PredictionMatrix& matrix,
                                  std::span<const Label> gold, Label target,
                                  std::size_t top) {
  if (top == 0) {
    std::vector<std::size_t> all(matrix.cols());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
    return all;
  }
  if (top > matrix.cols())
    throw ConfigError("--top " + std::to_string(top) + " exceeds the " +
                      std::to_string(matrix.cols()) + " available systems");
  std::vector<std::size_t> ranked = rank_columns(matrix, gold, target);
  ranked.resize(top);
  return ranked;
}

void write_label_column(const std::string& path, const std::string& name,
                        std::span<const Label> labels) {
  PredictionMatrix single({name}, labels.size());
  for (std::size_t r = 0; r < labels.size(); ++r) single.set(r, 0, labels[r]);
  write_file(path, predictions_to_tsv(single));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ensemble voting, oracle bounds and annotation analysis "
               "for binary word-labeling datasets"};
  app.require_subcommand(1);

  // ---- metrics ----
  auto* metrics_cmd =
      app.add_subcommand("metrics", "Evaluate one system (or the frequency baseline)");
  struct {
    std::string gold, predictions, system, freq_table, input_format = "native";
    std::uint64_t threshold = 0;
    bool threshold_set = false;
    OutputOptions out;
  } mx;
  metrics_cmd->add_option("--gold", mx.gold, "dataset file")->required();
  metrics_cmd->add_option("--predictions", mx.predictions, "prediction matrix file");
  metrics_cmd->add_option("--system", mx.system, "system name to evaluate");
  metrics_cmd->add_option("--frequency-table", mx.freq_table,
                          "word frequency table for the threshold baseline");
  metrics_cmd->add_option("--threshold", mx.threshold, "frequency threshold")
      ->each([&mx](const std::string&) { mx.threshold_set = true; });
  metrics_cmd->add_option("--input-format", mx.input_format)
      ->check(CLI::IsMember({"native", "semeval"}));
  metrics_cmd->add_option("--format", mx.out.format)->check(CLI::IsMember({"json", "csv"}));
  metrics_cmd->add_option("--out", mx.out.out, "output path (default stdout)");
  metrics_cmd->callback([&mx] {
    const Dataset dataset = load_dataset(mx.gold, parse_input_format(mx.input_format));
    const std::vector<Label> gold = gold_labels(dataset);
    std::vector<Label> predicted;
    if (!mx.freq_table.empty()) {
      if (!mx.threshold_set)
        throw ConfigError("--frequency-table requires --threshold");
      predicted = frequency_baseline(dataset, load_frequency_table(mx.freq_table),
                                     mx.threshold);
    } else {
      if (mx.predictions.empty())
        throw ConfigError("either --predictions or --frequency-table is required");
      const PredictionMatrix matrix = load_predictions(mx.predictions, dataset);
      std::size_t column = 0;
      if (!mx.system.empty()) {
        const auto& names = matrix.system_names();
        const auto it = std::find(names.begin(), names.end(), mx.system);
        if (it == names.end()) throw ConfigError("unknown system '" + mx.system + "'");
        column = static_cast<std::size_t>(it - names.begin());
      } else if (matrix.cols() != 1) {
        throw ConfigError("prediction file has " + std::to_string(matrix.cols()) +
                          " systems, pick one with --system");
      }
      predicted = matrix.column(column);
    }
    emit(evaluate(predicted, gold), mx.out);
  });

  // ---- vote ----
  auto* vote_cmd = app.add_subcommand("vote", "Evaluate a plurality-voting ensemble");
  struct {
    std::string gold, predictions, tie_break = "complex", input_format = "native";
    std::string labels_out;
    std::size_t top = 0;
    int target = 1;
    OutputOptions out;
  } vx;
  vote_cmd->add_option("--gold", vx.gold)->required();
  vote_cmd->add_option("--predictions", vx.predictions)->required();
  vote_cmd->add_option("--top", vx.top, "use only the top-N systems (0 = all)");
  vote_cmd->add_option("--class", vx.target, "class used for ranking (default 1)")
      ->check(CLI::Range(0, 1));
  vote_cmd->add_option("--tie-break", vx.tie_break)
      ->check(CLI::IsMember({"complex", "noncomplex"}));
  vote_cmd->add_option("--input-format", vx.input_format)
      ->check(CLI::IsMember({"native", "semeval"}));
  vote_cmd->add_option("--labels-out", vx.labels_out, "also write the voted labels as TSV");
  vote_cmd->add_option("--format", vx.out.format)->check(CLI::IsMember({"json", "csv"}));
  vote_cmd->add_option("--out", vx.out.out);
  vote_cmd->callback([&vx] {
    const Dataset dataset = load_dataset(vx.gold, parse_input_format(vx.input_format));
    const std::vector<Label> gold = gold_labels(dataset);
    const PredictionMatrix matrix = load_predictions(vx.predictions, dataset);
    EnsembleConfig cfg;
    cfg.selected = pick_top(matrix, gold, label_from_int(vx.target), vx.top);
    cfg.tie_break = parse_tie_break(vx.tie_break);
    const std::vector<Label> voted = plurality_vote(matrix, cfg);
    if (!vx.labels_out.empty()) write_label_column(vx.labels_out, "plurality", voted);
    emit(evaluate(voted, gold), vx.out);
  });

  // ---- oracle ----
  auto* oracle_cmd = app.add_subcommand("oracle", "Evaluate the oracle upper bound");
  struct {
    std::string gold, predictions, input_format = "native";
    std::string labels_out;
    std::size_t top = 0;
    int target = 1;
    OutputOptions out;
  } ox;
  oracle_cmd->add_option("--gold", ox.gold)->required();
  oracle_cmd->add_option("--predictions", ox.predictions)->required();
  oracle_cmd->add_option("--top", ox.top, "use only the top-N systems (0 = all)");
  oracle_cmd->add_option("--class", ox.target)->check(CLI::Range(0, 1));
  oracle_cmd->add_option("--input-format", ox.input_format)
      ->check(CLI::IsMember({"native", "semeval"}));
  oracle_cmd->add_option("--labels-out", ox.labels_out);
  oracle_cmd->add_option("--format", ox.out.format)->check(CLI::IsMember({"json", "csv"}));
  oracle_cmd->add_option("--out", ox.out.out);
  oracle_cmd->callback([&ox] {
    const Dataset dataset = load_dataset(ox.gold, parse_input_format(ox.input_format));
    const std::vector<Label> gold = gold_labels(dataset);
    const PredictionMatrix matrix = load_predictions(ox.predictions, dataset);
    const std::vector<std::size_t> selected =
        pick_top(matrix, gold, label_from_int(ox.target), ox.top);
    const std::vector<Label> labels = oracle_labels(matrix, selected, gold);
    if (!ox.labels_out.empty()) write_label_column(ox.labels_out, "oracle", labels);
    emit(evaluate(labels, gold), ox.out);
  });

  // ---- sweep ----
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Plurality metrics for top-n ensembles over a range of n");
  struct {
    std::string gold, predictions, tie_break = "complex", input_format = "native";
    std::size_t min_n = 1, max_n = 0;
    int target = 1;
    OutputOptions out{"csv", ""};
  } sx;
  sweep_cmd->add_option("--gold", sx.gold)->required();
  sweep_cmd->add_option("--predictions", sx.predictions)->required();
  sweep_cmd->add_option("--class", sx.target)->check(CLI::Range(0, 1));
  sweep_cmd->add_option("--tie-break", sx.tie_break)
      ->check(CLI::IsMember({"complex", "noncomplex"}));
  sweep_cmd->add_option("--min-n", sx.min_n, "smallest ensemble size (default 1)");
  sweep_cmd->add_option("--max-n", sx.max_n, "largest ensemble size (default: all)");
  sweep_cmd->add_option("--input-format", sx.input_format)
      ->check(CLI::IsMember({"native", "semeval"}));
  sweep_cmd->add_option("--format", sx.out.format)
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  sweep_cmd->add_option("--out", sx.out.out);
  sweep_cmd->callback([&sx] {
    const Dataset dataset = load_dataset(sx.gold, parse_input_format(sx.input_format));
    const std::vector<Label> gold = gold_labels(dataset);
    const PredictionMatrix matrix = load_predictions(sx.predictions, dataset);
    const std::size_t hi = sx.max_n == 0 ? matrix.cols() : sx.max_n;
    if (sx.min_n < 1 || sx.min_n > hi)
      throw ConfigError("empty sweep range " + std::to_string(sx.min_n) + ".." +
                        std::to_string(hi));
    std::vector<std::size_t> sizes;
    for (std::size_t n = sx.min_n; n <= hi; ++n) sizes.push_back(n);
    emit(sweep_top_n(matrix, gold, label_from_int(sx.target), sizes,
                     parse_tie_break(sx.tie_break)),
         sx.out);
  });

  // ---- select ----
  auto* select_cmd =
      app.add_subcommand("select", "Greedy backward ensemble selection (or exhaustive search)");
  struct {
    std::string gold, predictions, tie_break = "complex", strategy = "impact";
    std::string input_format = "native";
    bool exhaustive = false;
    std::size_t max_systems = 12;
    int target = 1;
    OutputOptions out{"csv", ""};
  } gx;
  select_cmd->add_option("--gold", gx.gold)->required();
  select_cmd->add_option("--predictions", gx.predictions)->required();
  select_cmd->add_option("--class", gx.target)->check(CLI::Range(0, 1));
  select_cmd->add_option("--tie-break", gx.tie_break)
      ->check(CLI::IsMember({"complex", "noncomplex"}));
  select_cmd->add_option("--strategy", gx.strategy, "what counts as the worst system")
      ->check(CLI::IsMember({"impact", "individual"}));
  select_cmd->add_flag("--exhaustive", gx.exhaustive,
                       "score every subset instead of the greedy search");
  select_cmd->add_option("--max-systems", gx.max_systems,
                         "guard for --exhaustive (default 12)");
  select_cmd->add_option("--input-format", gx.input_format)
      ->check(CLI::IsMember({"native", "semeval"}));
  select_cmd->add_option("--format", gx.out.format)->check(CLI::IsMember({"json", "csv"}));
  select_cmd->add_option("--out", gx.out.out);
  select_cmd->callback([&gx] {
    const Dataset dataset = load_dataset(gx.gold, parse_input_format(gx.input_format));
    const std::vector<Label> gold = gold_labels(dataset);
    const PredictionMatrix matrix = load_predictions(gx.predictions, dataset);
    const Label target = label_from_int(gx.target);
    const TieBreak tb = parse_tie_break(gx.tie_break);
    if (gx.exhaustive) {
      const SubsetResult result =
          exhaustive_best_subset(matrix, gold, target, tb, gx.max_systems);
      BestSubsetReport report;
      report.f1 = result.f1;
      for (std::size_t c : result.subset) report.systems.push_back(matrix.name(c));
      emit(std::move(report), gx.out);
    } else {
      emit(greedy_backward(matrix, gold, target, tb,
                           gx.strategy == "individual" ? RemovalStrategy::individual_score
                                                       : RemovalStrategy::ensemble_impact),
           gx.out);
    }
  });

  // ---- annot ----
  auto* annot_cmd =
      app.add_subcommand("annot", "Annotation analyses: histogram, AWL bins, consistency");
  struct {
    std::string train, test, predictions, intervals, input_format = "native";
    bool histogram = false, consistency = false;
    int min_annotators = 10;
    std::size_t top = 0;
    int target = 1;
    OutputOptions out;
  } ax;
  annot_cmd->add_option("--train", ax.train, "training split")->required();
  annot_cmd->add_flag("--histogram", ax.histogram, "annotator-count histogram");
  annot_cmd->add_option("--awl-intervals", ax.intervals,
                        "average word length per interval, e.g. 10-20,1-9,1-20,0");
  annot_cmd->add_flag("--consistency", ax.consistency,
                      "train/test agreement for widely flagged words");
  annot_cmd->add_option("--test", ax.test, "test split (consistency only)");
  annot_cmd->add_option("--predictions", ax.predictions, "matrix on the test split");
  annot_cmd->add_option("--min-annotators", ax.min_annotators,
                        "count needed to enter the consistency report (default 10)");
  annot_cmd->add_option("--top", ax.top, "restrict to the top-N systems (0 = all)");
  annot_cmd->add_option("--class", ax.target)->check(CLI::Range(0, 1));
  annot_cmd->add_option("--input-format", ax.input_format)
      ->check(CLI::IsMember({"native", "semeval"}));
  annot_cmd->add_option("--format", ax.out.format)
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  annot_cmd->add_option("--out", ax.out.out);
  annot_cmd->callback([&ax] {
    const int chosen = int(ax.histogram) + int(!ax.intervals.empty()) + int(ax.consistency);
    if (chosen != 1)
      throw ConfigError("pick exactly one of --histogram, --awl-intervals, --consistency");
    const DatasetFormat fmt = parse_input_format(ax.input_format);
    const Dataset train = load_dataset(ax.train, fmt);
    if (ax.histogram) {
      emit(annotation_histogram(train), ax.out);
    } else if (!ax.intervals.empty()) {
      const std::vector<CountInterval> intervals = parse_intervals(ax.intervals);
      emit(awl_report(train, intervals), ax.out);
    } else {
      if (ax.test.empty() || ax.predictions.empty())
        throw ConfigError("--consistency requires --test and --predictions");
      const Dataset test = load_dataset(ax.test, fmt);
      const std::vector<Label> gold = gold_labels(test);
      const PredictionMatrix matrix = load_predictions(ax.predictions, test);
      const std::vector<std::size_t> selected =
          pick_top(matrix, gold, label_from_int(ax.target), ax.top);
      emit(consistency_report(train, test, matrix, selected, ax.min_annotators), ax.out);
    }
  });

  // ---- synth ----
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a seeded synthetic dataset and system outputs");
  struct {
    std::uint64_t seed = 0;
    std::size_t words = 200;
    int annotators = 20;
    std::string systems = "0.02:0.60,0.05:0.50,0.10:0.45,0.15:0.40,0.25:0.55";
    std::string law = "power:6";
    std::string out_dir = ".";
  } yx;
  synth_cmd->add_option("--seed", yx.seed, "PRNG seed (default 0)");
  synth_cmd->add_option("--words", yx.words, "number of words (default 200)");
  synth_cmd->add_option("--annotators", yx.annotators, "training annotators K (default 20)");
  synth_cmd->add_option("--systems", yx.systems, "system profiles as FP:FN,FP:FN,...");
  synth_cmd->add_option("--law", yx.law, "latent complexity law: power:A, const:P, uniform");
  synth_cmd->add_option("--out", yx.out_dir, "output directory (default .)");
  synth_cmd->callback([&yx] {
    SynthConfig cfg;
    cfg.seed = yx.seed;
    cfg.num_words = yx.words;
    cfg.num_annotators = yx.annotators;
    cfg.systems = parse_system_profiles(yx.systems);
    cfg.law = ComplexityLaw::from_string(yx.law);
    const SynthData data = generate(cfg);
    const std::filesystem::path dir(yx.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (const auto& [name, text] :
         {std::pair<const char*, std::string>{"train.tsv", dataset_to_tsv(data.train)},
          {"test.tsv", dataset_to_tsv(data.test)},
          {"predictions.tsv", predictions_to_tsv(data.predictions)}}) {
      const auto path = dir / name;
      write_file(path, text);
      std::cout << path.generic_string() << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
