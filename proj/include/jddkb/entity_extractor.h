#ifndef JDDKB_ENTITY_EXTRACTOR_H_
#define JDDKB_ENTITY_EXTRACTOR_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jddkb/errors.h"
#include "jddkb/model.h"

namespace jddkb {

// Standard crime names (with the trailing 罪) and an alias map onto them.
class CrimeTable {
 public:
  CrimeTable() = default;

  // Starter subset of common names; the full statutory list is meant to be
  // loaded from a config file.
  static CrimeTable Defaults();

  // Throws ConfigError on a duplicate standard name, or an alias already
  // bound to a different standard name.
  void add(const std::string& standard, const std::vector<std::string>& aliases = {});

  // Exact lookup of a standard name or alias; a missing trailing 罪 is
  // tolerated. Standard names map to themselves.
  std::optional<std::string> normalize(std::string_view raw) const;

  bool contains(std::string_view standard) const;
  const std::vector<std::string>& names() const { return names_; }
  // Every standard name and alias, for longest-match scanning.
  const std::map<std::string, std::string, std::less<>>& lookup() const {
    return lookup_;
  }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::string, std::less<>> lookup_;
};

struct InjuryKeyword {
  std::string keyword;
  InjuryLevel level = InjuryLevel::kSlight;
};

class InjuryLexicon {
 public:
  InjuryLexicon() = default;
  explicit InjuryLexicon(std::vector<InjuryKeyword> keywords);
  static InjuryLexicon Defaults();

  const std::vector<InjuryKeyword>& keywords() const { return keywords_; }

  // Most severe level mentioned; overlapping keywords resolve to the
  // longest match at each position.
  std::optional<InjuryLevel> match(std::string_view text) const;

 private:
  std::vector<InjuryKeyword> keywords_;
};

// What follows a punishment keyword.
enum class PunishmentArgument { kNone, kDuration, kAmount };

struct PunishmentKeyword {
  std::string keyword;
  PunishmentComponent component = PunishmentComponent::kExemption;
  PunishmentArgument argument = PunishmentArgument::kNone;
};

class PunishmentKeywordTable {
 public:
  PunishmentKeywordTable() = default;
  explicit PunishmentKeywordTable(std::vector<PunishmentKeyword> keywords);
  static PunishmentKeywordTable Defaults();

  const std::vector<PunishmentKeyword>& keywords() const { return keywords_; }

 private:
  std::vector<PunishmentKeyword> keywords_;
};

std::string_view to_string(PunishmentArgument a);
std::optional<PunishmentArgument> parse_punishment_argument(std::string_view s);

struct EntityRules {
  CrimeTable crimes = CrimeTable::Defaults();
  InjuryLexicon injury = InjuryLexicon::Defaults();
  PunishmentKeywordTable punishments = PunishmentKeywordTable::Defaults();
  ConstraintTable constraints = ConstraintTable::Defaults();
  std::vector<std::string> total_cues = {"共计", "总计", "价值"};
  std::vector<std::string> conviction_markers = {"犯", "构成", "涉嫌"};
  // A decision dòuduàn containing one of these starts the combined
  // sentence, which is skipped in favour of the per-crime punishments.
  std::vector<std::string> combined_cues = {"决定执行", "数罪并罚", "合并执行"};
  // Classes searched for damages, most trusted first; the first class that
  // yields anything wins.
  std::vector<FactClass> damage_priority = {
      FactClass::kCourtFacts,         FactClass::kProsecutorArgument,
      FactClass::kCaseBackground,     FactClass::kProsecutorEvidence,
      FactClass::kProsecutorOpinion,  FactClass::kDefendantArgument,
      FactClass::kDefendantEvidence,  FactClass::kCourtEvidence,
      FactClass::kUnclassified};
};

// Amount in one dòuduàn: the first amount after a total cue when there is
// one, else the largest. Malformed numerals before 元 are reported.
std::optional<DamageValue> extract_monetary_damage(
    std::string_view douduan, const std::vector<std::string>& total_cues,
    Diagnostics& diagnostics, const std::string& where = "");
std::optional<DamageValue> extract_monetary_damage(std::string_view douduan);

std::optional<DamageValue> extract_injury_level(std::string_view douduan,
                                                const InjuryLexicon& lexicon);
std::optional<DamageValue> extract_injury_level(std::string_view douduan);

// Record damages: at most one monetary amount plus each distinct injury
// level, taken from the first class in `damage_priority` that has any.
std::vector<DamageValue> extract_record_damages(const JddRecord& record,
                                                const EntityRules& rules,
                                                Diagnostics& diagnostics);

// Raw crime names introduced by a conviction marker (犯X罪, 构成X罪), with
// chains like 犯盗窃罪、抢劫罪 split per name. Known names and aliases are
// matched longest first so names containing 犯罪 survive intact.
std::vector<std::string> find_crime_names(std::string_view text,
                                          const EntityRules& rules);

CrimeCharge normalize_charge(const std::string& raw, ChargeStage stage,
                             const CrimeTable& table);

// Charges named in the first dòuduàn of the first prosecutor_argument
// sentence.
std::vector<CrimeCharge> extract_charges(const JddRecord& record,
                                         const EntityRules& rules,
                                         Diagnostics& diagnostics);

// Components found in one conviction clause.
PunishmentVector extract_punishment(std::string_view clause,
                                    const PunishmentKeywordTable& table,
                                    Diagnostics& diagnostics,
                                    const std::string& where = "");

struct ConvictionResult {
  std::vector<CrimeCharge> convictions;
  std::vector<CrimePunishment> punishments;  // valid vectors only
  std::vector<std::string> flags;            // punishment-invalid:<crime>:<names>
};

// Splits the decision text into per-crime clauses and extracts each
// punishment. `charges` decides the unmatched flag.
ConvictionResult extract_convictions_and_punishments(
    std::string_view decision_text, const std::vector<CrimeCharge>& charges,
    const EntityRules& rules, Diagnostics& diagnostics,
    const std::string& where = "");

}  // namespace jddkb

#endif  // JDDKB_ENTITY_EXTRACTOR_H_
