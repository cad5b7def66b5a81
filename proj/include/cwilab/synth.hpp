#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cwilab/errors.hpp"
#include "cwilab/types.hpp"

namespace cwilab {

// Deterministic random source: std::mt19937_64 (an algorithm the standard
// pins bit-for-bit) with fixed mappings instead of the unspecified standard
// distributions. Identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform in [0, bound). Modulo mapping, fixed by definition.
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::mt19937_64 engine_;
};

// Distribution of the per-word latent flag probability. The default power law
// keeps most words at 0-1 flags with a thin tail of widely flagged words.
struct ComplexityLaw {
  enum class Kind { power_law, constant, uniform };

  Kind kind = Kind::power_law;
  double param = 6.0;  // exponent for power_law, probability for constant

  double sample(Rng& rng) const {
    switch (kind) {
      case Kind::power_law:
        return std::pow(rng.next_unit(), param);
      case Kind::constant:
        return param;
      case Kind::uniform:
        return rng.next_unit();
    }
    return 0.0;
  }

  void validate() const {
    if (kind == Kind::power_law && !(param > 0.0))
      throw ConfigError("power-law exponent must be positive");
    if (kind == Kind::constant && !(param >= 0.0 && param <= 1.0))
      throw ConfigError("constant flag probability must be in [0,1]");
  }

  // Accepted spellings: "power:A", "const:P", "uniform".
  static ComplexityLaw from_string(std::string_view text) {
    ComplexityLaw law;
    if (text == "uniform") {
      law.kind = Kind::uniform;
      return law;
    }
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    if (colon == std::string_view::npos || (head != "power" && head != "const"))
      throw ConfigError("bad complexity law '" + std::string(text) +
                        "', expected power:A, const:P or uniform");
    law.kind = head == "power" ? Kind::power_law : Kind::constant;
    try {
      law.param = std::stod(std::string(text.substr(colon + 1)));
    } catch (const std::exception&) {
      throw ConfigError("bad complexity law parameter in '" + std::string(text) + "'");
    }
    law.validate();
    return law;
  }
};

// Error profile of one synthetic system on the test gold.
struct SystemProfile {
  double fp_rate = 0.0;  // P(label 1 | gold 0)
  double fn_rate = 0.0;  // P(label 0 | gold 1)
};

// Parses "fp1:fn1,fp2:fn2,..." as used by the CLI.
inline std::vector<SystemProfile> parse_system_profiles(std::string_view text) {
  std::vector<SystemProfile> profiles;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ConfigError("bad system profile '" + std::string(item) + "', expected FP:FN");
    SystemProfile p;
    try {
      p.fp_rate = std::stod(std::string(item.substr(0, colon)));
      p.fn_rate = std::stod(std::string(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw ConfigError("bad system profile '" + std::string(item) + "', expected FP:FN");
    }
    profiles.push_back(p);
    pos = comma + 1;
  }
  return profiles;
}

struct SynthConfig {
  std::size_t num_words = 200;
  int num_annotators = 20;
  ComplexityLaw law;
  std::vector<SystemProfile> systems;
  std::uint64_t seed = 0;
};

struct SynthData {
  Dataset train;
  Dataset test;
  PredictionMatrix predictions;  // on the test split
};

namespace detail {

inline std::string padded_index(std::size_t i, std::size_t total) {
  std::size_t width = 1;
  for (std::size_t t = total; t >= 10; t /= 10) ++width;
  std::string digits = std::to_string(i);
  return std::string(width - digits.size(), '0') + digits;
}

}  // namespace detail

// Replicates the annotation protocol: each of K annotators flags a word
// independently with its latent probability; training gold is 1 iff at least
// one flag, with annotator_count = number of flags; test gold is one fresh
// draw per word. Each system then corrupts the test gold with its FP/FN
// rates. Draw order is fixed: per word (latent p, word letters, K train
// flags, test flag), then per system per word one corruption draw.
inline SynthData generate(const SynthConfig& config) {
  if (config.num_words == 0) throw ConfigError("num_words must be positive");
  if (config.num_annotators < 1) throw ConfigError("num_annotators must be positive");
  if (config.systems.empty()) throw ConfigError("at least one system profile required");
  config.law.validate();
  for (const SystemProfile& p : config.systems)
    if (!(p.fp_rate >= 0.0 && p.fp_rate <= 1.0 && p.fn_rate >= 0.0 && p.fn_rate <= 1.0))
      throw ConfigError("system error rates must be in [0,1]");

  Rng rng(config.seed);
  SynthData out;
  out.train.split = Split::train;
  out.train.num_annotators = config.num_annotators;
  out.test.split = Split::test;
  out.test.num_annotators = 1;

  std::set<std::string> seen;
  std::vector<Label> test_gold(config.num_words, Label::non_complex);

  for (std::size_t i = 0; i < config.num_words; ++i) {
    const double p = config.law.sample(rng);

    std::string word;
    do {
      word.clear();
      const std::size_t len = 3 + rng.below(8);
      for (std::size_t k = 0; k < len; ++k)
        word.push_back(static_cast<char>('a' + rng.below(26)));
    } while (!seen.insert(word).second);

    int flags = 0;
    for (int a = 0; a < config.num_annotators; ++a)
      if (rng.bernoulli(p)) ++flags;

    const Label judged = rng.bernoulli(p) ? Label::complex : Label::non_complex;
    test_gold[i] = judged;

    const std::string sentence = "the target word " + word + " appears here";

    Instance train_ins;
    train_ins.id = i;
    train_ins.sentence = sentence;
    train_ins.word = word;
    train_ins.offset = 3;
    train_ins.gold = flags >= 1 ? Label::complex : Label::non_complex;
    train_ins.annotator_count = flags;
    out.train.instances.push_back(std::move(train_ins));

    Instance test_ins;
    test_ins.id = i;
    test_ins.sentence = sentence;
    test_ins.word = word;
    test_ins.offset = 3;
    test_ins.gold = judged;
    out.test.instances.push_back(std::move(test_ins));
  }

  std::vector<std::string> names;
  names.reserve(config.systems.size());
  for (std::size_t s = 0; s < config.systems.size(); ++s)
    names.push_back("sys" + detail::padded_index(s + 1, config.systems.size()));

  out.predictions = PredictionMatrix(std::move(names), config.num_words);
  for (std::size_t s = 0; s < config.systems.size(); ++s) {
    const SystemProfile& profile = config.systems[s];
    for (std::size_t i = 0; i < config.num_words; ++i) {
      Label emitted;
      if (test_gold[i] == Label::complex)
        emitted = rng.bernoulli(profile.fn_rate) ? Label::non_complex : Label::complex;
      else
        emitted = rng.bernoulli(profile.fp_rate) ? Label::complex : Label::non_complex;
      out.predictions.set(i, s, emitted);
    }
  }
  return out;
}

// Corpus occurrence counts keyed by case-folded word.
struct FrequencyTable {
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t lookup(std::string_view word) const {
    const auto it = counts.find(fold_word(word));
    return it == counts.end() ? 0 : it->second;
  }
};

// Threshold baseline: a word is complex iff its corpus frequency (0 when
// absent) is strictly below the threshold.
inline std::vector<Label> frequency_baseline(const Dataset& dataset,
                                             const FrequencyTable& table,
                                             std::uint64_t threshold) {
  std::vector<Label> out;
  out.reserve(dataset.size());
  for (const Instance& ins : dataset.instances)
    out.push_back(table.lookup(ins.word) < threshold ? Label::complex
                                                     : Label::non_complex);
  return out;
}

}  // namespace cwilab
