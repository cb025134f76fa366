#ifndef JDDKB_SYNTH_H_
#define JDDKB_SYNTH_H_

// Seeded synthetic corpus with aligned parses and the features each
// document was built from, for oracle testing.
//
// Files written by write_synthetic():
//   corpus.jsonl          raw documents (corpus format, see corpus.h)
//   parses/synth.conllu   dependency parses of the action sentences
//   parses/synth.trees    constituency trees of the same sentences
//   truth.jsonl           one TruthRecord per document

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "jddkb/keyvalue.h"
#include "jddkb/model.h"
#include "json.hpp"

namespace jddkb {

struct SynthOptions {
  std::size_t size = 100;
  std::uint64_t seed = 1;
  // Relative weights of the generated crime types.
  std::vector<std::pair<std::string, double>> crimes = {
      {"故意伤害罪", 4}, {"盗窃罪", 3}, {"危险驾驶罪", 2}};
  double multi_crime_rate = 0.05;  // theft and battery in one case
  double defense_rate = 0.4;
  double forgiveness_rate = 0.5;
  double negated_forgiveness_rate = 0.15;
  double invalid_rate = 0.02;      // contradictory punishment
  double off_unit_rate = 0.05;     // term not a multiple of three months
  double extreme_rate = 0.02;      // life / death for battery

  // Reads the optional [synth] section (size and rates; crimes as
  // "name:weight" items). Throws ConfigError on bad values.
  static SynthOptions FromDocument(const KeyValueDocument& doc);
};

struct TruthAction {
  std::string trigger;
  std::vector<std::string> subject;
  std::vector<std::string> object;
  std::vector<std::string> modifier;
  bool subject_inherited = false;
  friend bool operator==(const TruthAction&, const TruthAction&) = default;
};

struct TruthConviction {
  std::string crime;
  PunishmentVector punishment;
  bool valid = true;
  friend bool operator==(const TruthConviction&, const TruthConviction&) = default;
};

struct TruthRecord {
  std::string case_id;
  bool defense = false;
  bool forgiveness = false;
  std::vector<std::string> charges;
  std::vector<TruthAction> actions;
  std::vector<DamageValue> damages;  // monetary first, injuries by severity
  std::vector<TruthConviction> convictions;
  friend bool operator==(const TruthRecord&, const TruthRecord&) = default;
};

struct SynthCorpus {
  std::vector<std::string> corpus_lines;  // header line first
  std::string conllu;
  std::string trees;
  std::vector<TruthRecord> truth;
};

SynthCorpus generate_synthetic(const SynthOptions& options);
void write_synthetic(const SynthCorpus& corpus, const std::filesystem::path& dir);

nlohmann::json to_json(const TruthRecord& t);
TruthRecord truth_from_json(const nlohmann::json& j);
std::vector<TruthRecord> read_truth(const std::filesystem::path& path);

}  // namespace jddkb

#endif  // JDDKB_SYNTH_H_
