#ifndef JDDKB_MODEL_H_
#define JDDKB_MODEL_H_

// Domain types for one judicial decision document (one row of the
// heterogeneous case relation) and everything extracted from it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace jddkb {

enum class CaseType { kCriminal, kAdministrative, kCivil, kOther };

enum class PartyRole { kPlaintiff, kProsecutor, kDefendant, kCounsel };

// The eight discourse classes of fact sentences, plus a catch-all.
enum class FactClass {
  kCaseBackground,       // 案件由来
  kProsecutorArgument,   // 原告诉称
  kProsecutorEvidence,   // 原告证据
  kProsecutorOpinion,    // 原告意见
  kDefendantArgument,    // 被告辩称
  kDefendantEvidence,    // 被告证据
  kCourtFacts,           // 事实认定
  kCourtEvidence,        // 认定证据
  kUnclassified,
};
inline constexpr std::size_t kFactClassCount = 8;

// Declared in ascending severity; comparisons on the enum follow severity.
enum class InjuryLevel {
  kSlight,
  kMinorSecond,
  kMinorFirst,
  kSeriousSecond,
  kSeriousFirst,
  kDeath,
};
inline constexpr std::array<InjuryLevel, 6> kInjuryLevels = {
    InjuryLevel::kSlight,        InjuryLevel::kMinorSecond,
    InjuryLevel::kMinorFirst,    InjuryLevel::kSeriousSecond,
    InjuryLevel::kSeriousFirst,  InjuryLevel::kDeath};

enum class DamageKind { kMonetary, kInjury };

enum class ChargeStage { kCharged, kConvicted };

std::string_view to_string(CaseType v);
std::string_view to_string(PartyRole v);
std::string_view to_string(FactClass v);
std::string_view to_string(InjuryLevel v);
std::string_view to_string(DamageKind v);
std::string_view to_string(ChargeStage v);

std::optional<CaseType> parse_case_type(std::string_view s);
std::optional<PartyRole> parse_party_role(std::string_view s);
std::optional<FactClass> parse_fact_class(std::string_view s);
std::optional<InjuryLevel> parse_injury_level(std::string_view s);
std::optional<ChargeStage> parse_charge_stage(std::string_view s);

// camelCase element name used in schema paths (JDD.prosecutorArgument...).
std::string_view schema_element(FactClass v);
std::optional<FactClass> parse_schema_element(std::string_view s);

struct Party {
  PartyRole role = PartyRole::kDefendant;
  std::string name;
  // Nested attribute tree, e.g. LawEnforcementActions with durations.
  nlohmann::json attributes = nlohmann::json::object();

  friend bool operator==(const Party&, const Party&) = default;
};

struct ClassifiedSentence {
  std::string text;
  std::vector<std::string> douduan;
  FactClass fact_class = FactClass::kUnclassified;
  // "<doc_id>#<sent_id>" keys into the annotation files, when parsed.
  std::optional<std::string> dependency_ref;
  std::optional<std::string> constituency_ref;

  friend bool operator==(const ClassifiedSentence&,
                         const ClassifiedSentence&) = default;
};

struct ActionSource {
  std::size_t sentence = 0;
  std::size_t douduan = 0;

  friend auto operator<=>(const ActionSource&, const ActionSource&) = default;
};

// [subject, action, object, action_modifier] for one trigger verb.
struct ActionRecord {
  std::vector<std::string> subject;
  std::string trigger;  // lemma, or surface form when no lemma is annotated
  std::vector<std::string> object;
  std::vector<std::string> modifier;
  ActionSource source;
  bool subject_inherited = false;

  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

class DamageValue {
 public:
  // Throws std::invalid_argument on a negative amount.
  static DamageValue Monetary(std::int64_t yuan);
  static DamageValue Injury(InjuryLevel level);

  DamageKind kind() const {
    return std::holds_alternative<std::int64_t>(value_) ? DamageKind::kMonetary
                                                        : DamageKind::kInjury;
  }
  std::optional<std::int64_t> amount_yuan() const;
  std::optional<InjuryLevel> injury_level() const;

  friend bool operator==(const DamageValue&, const DamageValue&) = default;

 private:
  explicit DamageValue(std::variant<std::int64_t, InjuryLevel> v) : value_(v) {}
  std::variant<std::int64_t, InjuryLevel> value_;
};

struct CrimeCharge {
  std::string raw_name;
  std::string standard_name;  // == raw_name when not normalized
  ChargeStage stage = ChargeStage::kCharged;
  bool normalized = true;     // false: name not found in the crime table

  friend bool operator==(const CrimeCharge&, const CrimeCharge&) = default;
};

// Confiscation is stated either as "all property" or as an amount.
struct Confiscation {
  bool imposed = false;
  std::int64_t amount_yuan = 0;  // 0 with imposed == flag-only form

  friend bool operator==(const Confiscation&, const Confiscation&) = default;
};

struct PunishmentVector {
  bool exemption = false;
  std::int64_t public_surveillance_months = 0;
  std::int64_t detention_months = 0;
  std::int64_t fixed_term_months = 0;
  std::int64_t probation_months = 0;
  std::int64_t fine_yuan = 0;
  std::int64_t political_rights_deprivation_months = 0;
  Confiscation confiscation;
  bool life_imprisonment = false;
  bool death = false;
  bool death_with_probation = false;
  bool political_rights_deprivation_for_life = false;

  friend bool operator==(const PunishmentVector&,
                         const PunishmentVector&) = default;
};

enum class PunishmentComponent {
  kExemption,
  kPublicSurveillance,
  kDetention,
  kFixedTerm,
  kProbation,
  kFine,
  kPoliticalRights,
  kConfiscation,
  kLife,
  kDeath,
  kDeathWithProbation,
  kPoliticalRightsForLife,
};
inline constexpr std::size_t kPunishmentComponentCount = 12;

// Field name of the component ("fixed_term_months", "death", ...).
std::string_view to_string(PunishmentComponent c);
std::optional<PunishmentComponent> parse_punishment_component(
    std::string_view s);

// Non-zero / set.
bool is_active(const PunishmentVector& v, PunishmentComponent c);

struct IntegrityConstraint {
  enum class Kind {
    kMutuallyExclusive,  // some of `left` active and some of `right` active
    kSole,               // some of `left` active and anything outside it active
  };
  std::string name;
  Kind kind = Kind::kMutuallyExclusive;
  std::vector<PunishmentComponent> left;
  std::vector<PunishmentComponent> right;

  bool violated_by(const PunishmentVector& v) const;
};

class ConstraintTable {
 public:
  ConstraintTable() = default;
  explicit ConstraintTable(std::vector<IntegrityConstraint> constraints)
      : constraints_(std::move(constraints)) {}

  // fixed-term×life, exemption-exclusivity, death×life, death×fixed-term,
  // death-with-probation-category.
  static ConstraintTable Defaults();

  // "exclusive a, b | c" or "sole a".
  static IntegrityConstraint ParseRule(std::string name, std::string_view rule);

  const std::vector<IntegrityConstraint>& constraints() const {
    return constraints_;
  }

 private:
  std::vector<IntegrityConstraint> constraints_;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate_punishment(const PunishmentVector& v,
                                     const ConstraintTable& table);
ValidationResult validate_punishment(const PunishmentVector& v);

struct CrimePunishment {
  std::string crime_name;  // standard name
  PunishmentVector punishment;
  bool unmatched = false;  // convicted crime not among the charges

  friend bool operator==(const CrimePunishment&,
                         const CrimePunishment&) = default;
};

struct JddRecord {
  std::string case_id;
  CaseType case_type = CaseType::kCriminal;
  std::string crime_type;  // partition key: first convicted crime
  std::vector<Party> parties;
  std::vector<ClassifiedSentence> fact_sentences;
  std::string decision_text;
  std::vector<ActionRecord> actions;
  std::vector<DamageValue> damages;
  std::vector<CrimeCharge> charges;
  std::vector<CrimePunishment> punishments;
  // Extraction flags; "punishment-invalid:..." excludes the record from the
  // matrix build.
  std::vector<std::string> flags;

  friend bool operator==(const JddRecord&, const JddRecord&) = default;
};

bool has_defense_argument(const JddRecord& r);
bool has_invalid_punishment(const JddRecord& r);

}  // namespace jddkb

#endif  // JDDKB_MODEL_H_
