#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cwilab/annotation.hpp"
#include "cwilab/errors.hpp"
#include "cwilab/metrics.hpp"
#include "cwilab/selection.hpp"
#include "cwilab/synth.hpp"
#include "cwilab/types.hpp"

namespace cwilab {

enum class DatasetFormat { native_tsv, semeval_tsv };

namespace detail {

inline std::vector<std::string> split_tabs(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(pos));
      break;
    }
    fields.emplace_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

template <typename Int>
inline bool parse_int(std::string_view field, Int& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !field.empty();
}

inline int parse_label_field(const std::string& field, const std::string& file,
                             std::size_t line) {
  int v = 0;
  if (!parse_int(field, v) || (v != 0 && v != 1))
    throw ParseError(file, line, "non-binary label '" + field + "'");
  return v;
}

// %.4f formatting; all rational values are serialized this way in CSV.
inline std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dataset files
//
// Native format: UTF-8 TSV, \n line endings, optional leading pragma line
//   # split=train annotators=20
// then a header `sentence word offset gold [annotator_count]` and one row per
// instance. Without the pragma, a file with an annotator_count column is
// treated as a train split with K=20, otherwise as a test split with K=1.
//
// SemEval layout: headerless TSV `sentence word offset j1 ... jK` with one
// binary judgment column per annotator; gold = (sum >= 1) and annotator_count
// = sum. K is taken from the first row.
// ---------------------------------------------------------------------------

inline Dataset parse_dataset(std::istream& in, const std::string& file,
                             DatasetFormat format = DatasetFormat::native_tsv) {
  Dataset dataset;
  std::string line;
  std::size_t line_no = 0;

  if (format == DatasetFormat::native_tsv) {
    bool saw_pragma = false;
    bool saw_header = false;
    bool has_count_column = false;
    std::optional<Split> pragma_split;
    std::optional<int> pragma_annotators;

    while (std::getline(in, line)) {
      ++line_no;
      if (!saw_header && !saw_pragma && line.rfind("#", 0) == 0) {
        saw_pragma = true;
        std::istringstream tokens(line.substr(1));
        std::string token;
        while (tokens >> token) {
          const auto eq = token.find('=');
          const std::string key = token.substr(0, eq);
          const std::string value = eq == std::string::npos ? "" : token.substr(eq + 1);
          if (key == "split" && value == "train")
            pragma_split = Split::train;
          else if (key == "split" && value == "test")
            pragma_split = Split::test;
          else if (key == "annotators") {
            int k = 0;
            if (!detail::parse_int(value, k) || k < 1)
              throw ParseError(file, line_no, "bad annotators value '" + value + "'");
            pragma_annotators = k;
          } else {
            throw ParseError(file, line_no, "unknown pragma token '" + token + "'");
          }
        }
        continue;
      }
      const std::vector<std::string> fields = detail::split_tabs(line);
      if (!saw_header) {
        if (fields.size() == 5 && fields[4] == "annotator_count")
          has_count_column = true;
        else if (fields.size() != 4)
          throw ParseError(file, line_no, "expected header with 4 or 5 columns");
        if (fields[0] != "sentence" || fields[1] != "word" || fields[2] != "offset" ||
            fields[3] != "gold")
          throw ParseError(file, line_no, "bad header, expected sentence/word/offset/gold");
        saw_header = true;
        dataset.split = pragma_split.value_or(has_count_column ? Split::train : Split::test);
        dataset.num_annotators =
            pragma_annotators.value_or(dataset.split == Split::train ? 20 : 1);
        continue;
      }
      if (line.empty()) continue;  // ignore trailing blank lines
      const std::size_t expected = has_count_column ? 5 : 4;
      if (fields.size() != expected)
        throw ParseError(file, line_no,
                         "expected " + std::to_string(expected) + " columns, got " +
                             std::to_string(fields.size()));
      Instance ins;
      ins.id = dataset.instances.size();
      ins.sentence = fields[0];
      if (fields[1].empty()) throw ParseError(file, line_no, "empty target word");
      ins.word = fields[1];
      std::size_t offset = 0;
      if (!detail::parse_int(fields[2], offset))
        throw ParseError(file, line_no, "bad offset '" + fields[2] + "'");
      ins.offset = offset;
      ins.gold = label_from_int(detail::parse_label_field(fields[3], file, line_no));
      if (has_count_column) {
        int count = 0;
        if (!detail::parse_int(fields[4], count) || count < 0)
          throw ParseError(file, line_no, "bad annotator_count '" + fields[4] + "'");
        if (count > dataset.num_annotators)
          throw ParseError(file, line_no,
                           "annotator_count " + fields[4] + " exceeds K=" +
                               std::to_string(dataset.num_annotators));
        if (ins.gold == Label::complex && count < 1)
          throw ParseError(file, line_no, "gold is 1 but annotator_count is 0");
        if (ins.gold == Label::non_complex && count != 0)
          throw ParseError(file, line_no, "gold is 0 but annotator_count is nonzero");
        ins.annotator_count = count;
      }
      dataset.instances.push_back(std::move(ins));
    }
    if (!saw_header || dataset.instances.empty())
      throw EmptyInputError(file + ": no instances");
    return dataset;
  }

  // SemEval layout
  std::size_t judgment_columns = 0;
  for (; std::getline(in, line);) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_tabs(line);
    if (fields.size() < 4)
      throw ParseError(file, line_no, "expected at least 4 columns, got " +
                                          std::to_string(fields.size()));
    if (judgment_columns == 0)
      judgment_columns = fields.size() - 3;
    else if (fields.size() - 3 != judgment_columns)
      throw ParseError(file, line_no,
                       "expected " + std::to_string(judgment_columns + 3) +
                           " columns, got " + std::to_string(fields.size()));
    Instance ins;
    ins.id = dataset.instances.size();
    ins.sentence = fields[0];
    if (fields[1].empty()) throw ParseError(file, line_no, "empty target word");
    ins.word = fields[1];
    std::size_t offset = 0;
    if (!detail::parse_int(fields[2], offset))
      throw ParseError(file, line_no, "bad offset '" + fields[2] + "'");
    ins.offset = offset;
    int sum = 0;
    for (std::size_t j = 3; j < fields.size(); ++j)
      sum += detail::parse_label_field(fields[j], file, line_no);
    ins.gold = sum >= 1 ? Label::complex : Label::non_complex;
    ins.annotator_count = sum;
    dataset.instances.push_back(std::move(ins));
  }
  if (dataset.instances.empty()) throw EmptyInputError(file + ": no instances");
  dataset.num_annotators = static_cast<int>(judgment_columns);
  dataset.split = judgment_columns == 1 ? Split::test : Split::train;
  return dataset;
}

inline Dataset load_dataset(const std::filesystem::path& path,
                            DatasetFormat format = DatasetFormat::native_tsv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_dataset(in, path.string(), format);
}

// ---------------------------------------------------------------------------
// Prediction files: TSV with a header row of unique system names and one
// binary row per dataset instance, in dataset order.
// ---------------------------------------------------------------------------

inline PredictionMatrix parse_predictions(std::istream& in, const std::string& file,
                                          const Dataset& dataset) {
  std::string line;
  if (!std::getline(in, line)) throw EmptyInputError(file + ": no header row");
  std::vector<std::string> names = detail::split_tabs(line);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw ParseError(file, 1, "empty system name in header");
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw ParseError(file, 1, "duplicate system name '" + names[i] + "'");
  }

  std::vector<Label> cells;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_tabs(line);
    if (fields.size() != names.size())
      throw ParseError(file, line_no,
                       "expected " + std::to_string(names.size()) + " cells, got " +
                           std::to_string(fields.size()));
    for (const std::string& f : fields)
      cells.push_back(label_from_int(detail::parse_label_field(f, file, line_no)));
    ++rows;
  }
  if (rows != dataset.size())
    throw ShapeError(file + ": " + std::to_string(rows) + " prediction rows vs " +
                     std::to_string(dataset.size()) + " dataset instances");

  PredictionMatrix matrix(std::move(names), rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      matrix.set(r, c, cells[r * matrix.cols() + c]);
  return matrix;
}

inline PredictionMatrix load_predictions(const std::filesystem::path& path,
                                         const Dataset& dataset) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_predictions(in, path.string(), dataset);
}

// ---------------------------------------------------------------------------
// Frequency tables: TSV `word count`, counts >= 1. Keys are case-folded;
// duplicate words accumulate.
// ---------------------------------------------------------------------------

inline FrequencyTable parse_frequency_table(std::istream& in, const std::string& file) {
  FrequencyTable table;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_tabs(line);
    if (fields.size() != 2)
      throw ParseError(file, line_no, "expected 2 columns, got " +
                                          std::to_string(fields.size()));
    if (!saw_header) {
      if (fields[0] != "word" || fields[1] != "count")
        throw ParseError(file, line_no, "bad header, expected word/count");
      saw_header = true;
      continue;
    }
    std::uint64_t count = 0;
    if (!detail::parse_int(fields[1], count) || count < 1)
      throw ParseError(file, line_no, "bad count '" + fields[1] + "'");
    table.counts[fold_word(fields[0])] += count;
  }
  if (!saw_header) throw EmptyInputError(file + ": no header row");
  return table;
}

inline FrequencyTable load_frequency_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_frequency_table(in, path.string());
}

// ---------------------------------------------------------------------------
// Writers for the native formats.
// ---------------------------------------------------------------------------

namespace detail {

inline void check_tsv_safe(const std::string& text, const char* what) {
  if (text.find('\t') != std::string::npos || text.find('\n') != std::string::npos ||
      text.find('\r') != std::string::npos)
    throw DataError(std::string(what) + " contains a tab or newline, not representable in TSV");
}

}  // namespace detail

inline std::string dataset_to_tsv(const Dataset& dataset) {
  bool any_count = false;
  bool all_count = true;
  for (const Instance& ins : dataset.instances) {
    if (ins.annotator_count)
      any_count = true;
    else
      all_count = false;
  }
  if (any_count && !all_count)
    throw DataError("dataset mixes instances with and without annotator_count");

  std::string out = "# split=";
  out += split_name(dataset.split);
  out += " annotators=" + std::to_string(dataset.num_annotators) + "\n";
  out += any_count ? "sentence\tword\toffset\tgold\tannotator_count\n"
                   : "sentence\tword\toffset\tgold\n";
  for (const Instance& ins : dataset.instances) {
    detail::check_tsv_safe(ins.sentence, "sentence");
    detail::check_tsv_safe(ins.word, "word");
    out += ins.sentence;
    out += '\t';
    out += ins.word;
    out += '\t';
    out += std::to_string(ins.offset);
    out += '\t';
    out += std::to_string(to_int(ins.gold));
    if (any_count) {
      out += '\t';
      out += std::to_string(*ins.annotator_count);
    }
    out += '\n';
  }
  return out;
}

inline std::string predictions_to_tsv(const PredictionMatrix& matrix) {
  std::string out;
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    if (c) out += '\t';
    out += matrix.name(c);
  }
  out += '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) out += '\t';
      out += std::to_string(to_int(matrix.at(r, c)));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class ReportKind { metrics, sweep, trace, histogram, awl, consistency, best_subset };
enum class ReportFormat { json, csv, svg };

// Exhaustive-search result with resolved system names.
struct BestSubsetReport {
  std::vector<std::string> systems;
  double f1 = 0.0;
};

using ReportPayload =
    std::variant<EvaluationReport, std::vector<SweepPoint>, SelectionTrace,
                 AnnotationHistogram, std::vector<AwlBin>, ConsistencyReport,
                 BestSubsetReport>;

struct Report {
  ReportPayload payload;
  ReportFormat format = ReportFormat::json;

  ReportKind kind() const { return static_cast<ReportKind>(payload.index()); }
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline void append_metrics(ojson& entry, const ClassMetrics& m) {
  entry["precision"] = round4(m.precision);
  entry["recall"] = round4(m.recall);
  entry["f1"] = round4(m.f1);
  entry["support"] = m.support;
}

inline std::string render_json(const Report& report) {
  ojson doc;
  switch (report.kind()) {
    case ReportKind::metrics: {
      const auto& r = std::get<EvaluationReport>(report.payload);
      doc["accuracy"] = round4(r.accuracy);
      doc["classes"] = ojson::array();
      for (int c = 0; c < 2; ++c) {
        ojson entry;
        entry["class"] = c;
        append_metrics(entry, r.per_class[c]);
        doc["classes"].push_back(std::move(entry));
      }
      break;
    }
    case ReportKind::sweep: {
      const auto& points = std::get<std::vector<SweepPoint>>(report.payload);
      doc["points"] = ojson::array();
      for (const SweepPoint& p : points) {
        ojson entry;
        entry["n"] = p.n;
        append_metrics(entry, p.metrics);
        doc["points"].push_back(std::move(entry));
      }
      break;
    }
    case ReportKind::trace: {
      const auto& t = std::get<SelectionTrace>(report.payload);
      doc["initial"] = ojson::object();
      append_metrics(doc["initial"], t.initial);
      doc["steps"] = ojson::array();
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        ojson entry;
        entry["step"] = i + 1;
        entry["removed"] = t.steps[i].removed;
        append_metrics(entry, t.steps[i].remaining);
        doc["steps"].push_back(std::move(entry));
      }
      doc["best_subset"] = t.best_subset;
      doc["best_f1"] = round4(t.best_f1);
      doc["candidate_evaluations"] = t.candidate_evaluations;
      break;
    }
    case ReportKind::histogram: {
      const auto& h = std::get<AnnotationHistogram>(report.payload);
      doc["num_annotators"] = h.num_annotators;
      doc["total"] = h.total();
      doc["bins"] = ojson::array();
      for (int c = 1; c <= h.num_annotators; ++c) {
        const auto it = h.bins.find(c);
        doc["bins"].push_back(
            ojson{{"annotators", c}, {"words", it == h.bins.end() ? 0 : it->second}});
      }
      break;
    }
    case ReportKind::awl: {
      const auto& bins = std::get<std::vector<AwlBin>>(report.payload);
      doc["bins"] = ojson::array();
      for (const AwlBin& b : bins)
        doc["bins"].push_back(ojson{{"min_annotators", b.interval.lo},
                                    {"max_annotators", b.interval.hi},
                                    {"words", b.word_count},
                                    {"awl", round4(b.awl)},
                                    {"multiword", b.multiword_count}});
      break;
    }
    case ReportKind::consistency: {
      const auto& r = std::get<ConsistencyReport>(report.payload);
      doc["label_agreement"] = round4(r.label_agreement);
      doc["rows"] = ojson::array();
      for (const ConsistencyRow& row : r.rows)
        doc["rows"].push_back(ojson{{"word", row.word},
                                    {"human_count", row.human_count},
                                    {"system_count", row.system_count},
                                    {"train_label", to_int(row.train_label)},
                                    {"test_agreement", round4(row.test_label_agreement)},
                                    {"agrees", row.test_label_agreement > 0.0}});
      break;
    }
    case ReportKind::best_subset: {
      const auto& r = std::get<BestSubsetReport>(report.payload);
      doc["systems"] = r.systems;
      doc["f1"] = round4(r.f1);
      break;
    }
  }
  return doc.dump(2) + "\n";
}

inline std::string render_csv(const Report& report) {
  std::string out;
  switch (report.kind()) {
    case ReportKind::metrics: {
      const auto& r = std::get<EvaluationReport>(report.payload);
      out = "class,precision,recall,f1,support,accuracy\n";
      for (int c = 0; c < 2; ++c) {
        const ClassMetrics& m = r.per_class[c];
        out += std::to_string(c) + "," + fmt4(m.precision) + "," + fmt4(m.recall) + "," +
               fmt4(m.f1) + "," + std::to_string(m.support) + "," + fmt4(r.accuracy) + "\n";
      }
      break;
    }
    case ReportKind::sweep: {
      out = "n,precision,recall,f1\n";
      for (const SweepPoint& p : std::get<std::vector<SweepPoint>>(report.payload))
        out += std::to_string(p.n) + "," + fmt4(p.metrics.precision) + "," +
               fmt4(p.metrics.recall) + "," + fmt4(p.metrics.f1) + "\n";
      break;
    }
    case ReportKind::trace: {
      // step 0 is the full ensemble before any removal
      const auto& t = std::get<SelectionTrace>(report.payload);
      out = "step,precision,recall,f1\n";
      out += "0," + fmt4(t.initial.precision) + "," + fmt4(t.initial.recall) + "," +
             fmt4(t.initial.f1) + "\n";
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const ClassMetrics& m = t.steps[i].remaining;
        out += std::to_string(i + 1) + "," + fmt4(m.precision) + "," + fmt4(m.recall) +
               "," + fmt4(m.f1) + "\n";
      }
      break;
    }
    case ReportKind::histogram: {
      const auto& h = std::get<AnnotationHistogram>(report.payload);
      out = "annotators,words\n";
      for (int c = 1; c <= h.num_annotators; ++c) {
        const auto it = h.bins.find(c);
        out += std::to_string(c) + "," +
               std::to_string(it == h.bins.end() ? std::size_t{0} : it->second) + "\n";
      }
      break;
    }
    case ReportKind::awl: {
      out = "min_annotators,max_annotators,words,awl,multiword\n";
      for (const AwlBin& b : std::get<std::vector<AwlBin>>(report.payload))
        out += std::to_string(b.interval.lo) + "," + std::to_string(b.interval.hi) + "," +
               std::to_string(b.word_count) + "," + fmt4(b.awl) + "," +
               std::to_string(b.multiword_count) + "\n";
      break;
    }
    case ReportKind::consistency: {
      const auto& r = std::get<ConsistencyReport>(report.payload);
      out = "word,human_count,system_count,train_label,test_agreement,agrees\n";
      for (const ConsistencyRow& row : r.rows)
        out += csv_field(row.word) + "," + std::to_string(row.human_count) + "," +
               std::to_string(row.system_count) + "," +
               std::to_string(to_int(row.train_label)) + "," +
               fmt4(row.test_label_agreement) + "," +
               (row.test_label_agreement > 0.0 ? "1" : "0") + "\n";
      break;
    }
    case ReportKind::best_subset: {
      const auto& r = std::get<BestSubsetReport>(report.payload);
      out = "system,f1\n";
      for (const std::string& name : r.systems)
        out += csv_field(name) + "," + fmt4(r.f1) + "\n";
      break;
    }
  }
  return out;
}

inline std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string render_svg(const Report& report) {
  constexpr double width = 640, height = 400;
  constexpr double left = 55, right = 615, top = 20, bottom = 360;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                    "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt_coord(width) + "\" height=\"" +
         fmt_coord(height) + "\" fill=\"white\"/>\n";

  if (report.kind() == ReportKind::sweep) {
    const auto& points = std::get<std::vector<SweepPoint>>(report.payload);
    if (points.empty()) throw ConfigError("cannot render an empty sweep as SVG");
    std::size_t min_n = points.front().n, max_n = points.front().n;
    for (const SweepPoint& p : points) {
      min_n = std::min(min_n, p.n);
      max_n = std::max(max_n, p.n);
    }
    const double span = max_n > min_n ? static_cast<double>(max_n - min_n) : 1.0;
    auto sx = [&](std::size_t n) {
      return left + (right - left) * (static_cast<double>(n - min_n) / span);
    };
    auto sy = [&](double v) { return bottom - (bottom - top) * v; };

    for (int g = 0; g <= 10; g += 2) {
      const double y = sy(g / 10.0);
      svg += "<line x1=\"" + fmt_coord(left) + "\" y1=\"" + fmt_coord(y) + "\" x2=\"" +
             fmt_coord(right) + "\" y2=\"" + fmt_coord(y) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + fmt_coord(left - 8) + "\" y=\"" + fmt_coord(y + 4) +
             "\" text-anchor=\"end\">" + fmt_coord(g / 10.0) + "</text>\n";
    }
    const std::size_t tick_step = std::max<std::size_t>(1, (max_n - min_n) / 10);
    for (std::size_t n = min_n; n <= max_n; n += tick_step) {
      svg += "<text x=\"" + fmt_coord(sx(n)) + "\" y=\"" + fmt_coord(bottom + 16) +
             "\" text-anchor=\"middle\">" + std::to_string(n) + "</text>\n";
    }
    svg += "<text x=\"" + fmt_coord((left + right) / 2) + "\" y=\"" +
           fmt_coord(bottom + 34) + "\" text-anchor=\"middle\">ensemble size n</text>\n";

    struct Series {
      const char* label;
      const char* color;
      double (*pick)(const ClassMetrics&);
    };
    const Series series[3] = {
        {"precision", "#1f77b4", [](const ClassMetrics& m) { return m.precision; }},
        {"recall", "#2ca02c", [](const ClassMetrics& m) { return m.recall; }},
        {"f1", "#d62728", [](const ClassMetrics& m) { return m.f1; }},
    };
    for (int s = 0; s < 3; ++s) {
      svg += "<polyline fill=\"none\" stroke=\"";
      svg += series[s].color;
      svg += "\" stroke-width=\"2\" points=\"";
      for (const SweepPoint& p : points) {
        svg += fmt_coord(sx(p.n)) + "," + fmt_coord(sy(series[s].pick(p.metrics))) + " ";
      }
      svg += "\"/>\n";
      const double ly = top + 14 * (s + 1);
      svg += "<line x1=\"" + fmt_coord(right - 90) + "\" y1=\"" + fmt_coord(ly - 4) +
             "\" x2=\"" + fmt_coord(right - 70) + "\" y2=\"" + fmt_coord(ly - 4) +
             "\" stroke=\"";
      svg += series[s].color;
      svg += "\" stroke-width=\"2\"/>\n";
      svg += "<text x=\"" + fmt_coord(right - 64) + "\" y=\"" + fmt_coord(ly) + "\">";
      svg += series[s].label;
      svg += "</text>\n";
    }
  } else if (report.kind() == ReportKind::histogram) {
    const auto& h = std::get<AnnotationHistogram>(report.payload);
    if (h.num_annotators < 1) throw ConfigError("cannot render an empty histogram as SVG");
    std::size_t max_words = 1;
    for (const auto& [count, words] : h.bins) max_words = std::max(max_words, words);
    const int k = h.num_annotators;
    const double slot = (right - left) / k;
    for (int c = 1; c <= k; ++c) {
      const auto it = h.bins.find(c);
      const std::size_t words = it == h.bins.end() ? 0 : it->second;
      const double bar_h = (bottom - top) * (static_cast<double>(words) / max_words);
      const double x = left + slot * (c - 1) + slot * 0.1;
      svg += "<rect x=\"" + fmt_coord(x) + "\" y=\"" + fmt_coord(bottom - bar_h) +
             "\" width=\"" + fmt_coord(slot * 0.8) + "\" height=\"" + fmt_coord(bar_h) +
             "\" fill=\"#1f77b4\"/>\n";
      svg += "<text x=\"" + fmt_coord(x + slot * 0.4) + "\" y=\"" + fmt_coord(bottom + 16) +
             "\" text-anchor=\"middle\">" + std::to_string(c) + "</text>\n";
      if (words > 0)
        svg += "<text x=\"" + fmt_coord(x + slot * 0.4) + "\" y=\"" +
               fmt_coord(bottom - bar_h - 4) + "\" text-anchor=\"middle\">" +
               std::to_string(words) + "</text>\n";
    }
    svg += "<text x=\"" + fmt_coord((left + right) / 2) + "\" y=\"" +
           fmt_coord(bottom + 34) + "\" text-anchor=\"middle\">annotators</text>\n";
  } else {
    throw ConfigError("svg output is only available for sweep and histogram reports");
  }

  svg += "<line x1=\"" + fmt_coord(left) + "\" y1=\"" + fmt_coord(top) + "\" x2=\"" +
         fmt_coord(left) + "\" y2=\"" + fmt_coord(bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_coord(left) + "\" y1=\"" + fmt_coord(bottom) + "\" x2=\"" +
         fmt_coord(right) + "\" y2=\"" + fmt_coord(bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace detail

inline std::string render_report(const Report& report) {
  switch (report.format) {
    case ReportFormat::json:
      return detail::render_json(report);
    case ReportFormat::csv:
      return detail::render_csv(report);
    case ReportFormat::svg:
      return detail::render_svg(report);
  }
  throw ConfigError("unknown report format");
}

inline std::size_t emit_report(const Report& report, std::ostream& out) {
  const std::string text = render_report(report);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed to write report");
  return text.size();
}

inline std::size_t emit_report(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return emit_report(report, out);
}

inline std::size_t write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed to write " + path.string());
  return text.size();
}

// Parses interval lists like "10-20,1-9,0".
inline std::vector<CountInterval> parse_intervals(std::string_view text) {
  std::vector<CountInterval> intervals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    CountInterval iv;
    const auto dash = item.find('-');
    bool ok = true;
    if (dash == std::string_view::npos) {
      ok = detail::parse_int(item, iv.lo);
      iv.hi = iv.lo;
    } else {
      ok = detail::parse_int(item.substr(0, dash), iv.lo) &&
           detail::parse_int(item.substr(dash + 1), iv.hi);
    }
    if (!ok)
      throw ConfigError("bad interval '" + std::string(item) + "', expected LO-HI or N");
    intervals.push_back(iv);
    pos = comma + 1;
  }
  return intervals;
}

}  // namespace cwilab
