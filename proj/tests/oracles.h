#ifndef JDDKB_TESTS_ORACLES_H_
#define JDDKB_TESTS_ORACLES_H_

// Reference computations written independently of the library, used to
// check it. Nothing here calls into the code under test except for plain
// data types and the synthetic generator's ground truth.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jddkb/action_extractor.h"
#include "jddkb/config.h"
#include "jddkb/landscape_kb.h"
#include "jddkb/model.h"
#include "jddkb/synth.h"

namespace oracle {

enum class NumeralStyle {
  kStandard,     // 一千零五
  kLiang,        // 两 before 千/百/万
  kFormalTen,    // 一十五
  kColloquial,   // 三百五, 一万五 (only when the value has that shape)
  kArabic,       // 1005
  kGrouped,      // 1,005
  kFullwidth,    // １００５
};
inline constexpr NumeralStyle kAllStyles[] = {
    NumeralStyle::kStandard,   NumeralStyle::kLiang,   NumeralStyle::kFormalTen,
    NumeralStyle::kColloquial, NumeralStyle::kArabic,  NumeralStyle::kGrouped,
    NumeralStyle::kFullwidth};
const char* style_name(NumeralStyle s);

// Renders 1..99999999 in the style; nullopt when the style does not apply to n.
std::optional<std::string> render(std::int64_t n, NumeralStyle style);

// Default punishment scale: 0 exemption, 1..76 three-month steps, 77 life,
// 78 death with probation, 79 death, 80 fine only, 81 supplementary only,
// 82 unspecified.
int punishment_bucket(const jddkb::PunishmentVector& v);
std::string punishment_label(int bucket);
// Default damage axis: 0 none, 1..6 injuries by severity, 7..11 money bands
// with upper bounds 1000, 5000, 20000, 100000.
int damage_coordinate(const jddkb::DamageValue& d);
std::string damage_label(int coordinate);

// Names of the default integrity rules the vector breaks.
std::vector<std::string> default_violations(const jddkb::PunishmentVector& v);

struct Tuple {
  std::string crime;
  std::string action;
  int damage = 0;
  int punishment = 0;
  std::string case_id;
};

struct Table {
  std::vector<Tuple> tuples;
  std::map<std::string, const jddkb::TruthRecord*> indexed;  // case id -> truth
  // crime -> months -> case ids, for convictions of indexed records
  std::map<std::string, std::map<std::int64_t, std::set<std::string>>> durations;
};

// Feature tuples from ground truth: records with an invalid conviction are
// dropped, triggers seen once across the corpus are removed, and each
// conviction pairs every action with every damage (or "none").
Table build_table(const std::vector<jddkb::TruthRecord>& truth);

// Perpendicular distance of each point to the first-last chord after min-max
// scaling both axes; argmax with ties to the smaller index; nullopt when the
// best distance is below 1e-6 or all values are equal.
std::vector<double> chord_distances(const std::vector<double>& values);
std::optional<std::size_t> elbow(const std::vector<double>& values);

}  // namespace oracle

namespace testing_support {

struct SyntheticRun {
  jddkb::SynthCorpus corpus;
  std::vector<jddkb::JddRecord> records;
  jddkb::KnowledgeBase kb;
  jddkb::Diagnostics diagnostics;
};

// generate -> extract -> prune -> build, all in memory.
SyntheticRun run_synthetic(const jddkb::SynthOptions& options,
                           const jddkb::EngineConfig& config = jddkb::EngineConfig::Defaults(),
                           int jobs = 1);

struct ActionFixture {
  std::string name;
  std::size_t douduan = 0;  // clauses across the fixture's sentences
  std::vector<jddkb::ActionRecord> expected;
  std::vector<jddkb::ActionRecord> actual;
};

// Every directory under fixtures/actions, extracted with default rules.
std::vector<ActionFixture> run_action_fixtures(const jddkb::ActionRules& rules = {});

std::filesystem::path fixtures_dir();
std::filesystem::path scratch_dir(const std::string& name);  // fresh, empty
std::string read_file(const std::filesystem::path& p);

}  // namespace testing_support

#endif  // JDDKB_TESTS_ORACLES_H_
