#include "jddkb/model.h"

#include <algorithm>
#include <stdexcept>

#include "jddkb/errors.h"
#include "jddkb/utf8.h"

namespace jddkb {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>&
                            table,
                        std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(
    const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [value, name] : table) {
    if (value == v) return name;
  }
  return "?";
}

constexpr std::array<std::pair<CaseType, std::string_view>, 4> kCaseTypes = {{
    {CaseType::kCriminal, "criminal"},
    {CaseType::kAdministrative, "administrative"},
    {CaseType::kCivil, "civil"},
    {CaseType::kOther, "other"},
}};

constexpr std::array<std::pair<PartyRole, std::string_view>, 4> kRoles = {{
    {PartyRole::kPlaintiff, "plaintiff"},
    {PartyRole::kProsecutor, "prosecutor"},
    {PartyRole::kDefendant, "defendant"},
    {PartyRole::kCounsel, "counsel"},
}};

constexpr std::array<std::pair<FactClass, std::string_view>, 9> kClasses = {{
    {FactClass::kCaseBackground, "case_background"},
    {FactClass::kProsecutorArgument, "prosecutor_argument"},
    {FactClass::kProsecutorEvidence, "prosecutor_evidence"},
    {FactClass::kProsecutorOpinion, "prosecutor_opinion"},
    {FactClass::kDefendantArgument, "defendant_argument"},
    {FactClass::kDefendantEvidence, "defendant_evidence"},
    {FactClass::kCourtFacts, "court_facts"},
    {FactClass::kCourtEvidence, "court_evidence"},
    {FactClass::kUnclassified, "unclassified"},
}};

constexpr std::array<std::pair<FactClass, std::string_view>, 9>
    kSchemaElements = {{
        {FactClass::kCaseBackground, "caseBackground"},
        {FactClass::kProsecutorArgument, "prosecutorArgument"},
        {FactClass::kProsecutorEvidence, "prosecutorEvidence"},
        {FactClass::kProsecutorOpinion, "prosecutorOpinion"},
        {FactClass::kDefendantArgument, "defendantArgument"},
        {FactClass::kDefendantEvidence, "defendantEvidence"},
        {FactClass::kCourtFacts, "courtFacts"},
        {FactClass::kCourtEvidence, "courtEvidence"},
        {FactClass::kUnclassified, "unclassified"},
    }};

constexpr std::array<std::pair<InjuryLevel, std::string_view>, 6> kInjury = {{
    {InjuryLevel::kSlight, "slight"},
    {InjuryLevel::kMinorSecond, "minor_second"},
    {InjuryLevel::kMinorFirst, "minor_first"},
    {InjuryLevel::kSeriousSecond, "serious_second"},
    {InjuryLevel::kSeriousFirst, "serious_first"},
    {InjuryLevel::kDeath, "death"},
}};

constexpr std::array<std::pair<ChargeStage, std::string_view>, 2> kStages = {{
    {ChargeStage::kCharged, "charged"},
    {ChargeStage::kConvicted, "convicted"},
}};

constexpr std::array<std::pair<PunishmentComponent, std::string_view>, 12>
    kComponents = {{
        {PunishmentComponent::kExemption, "exemption"},
        {PunishmentComponent::kPublicSurveillance,
         "public_surveillance_months"},
        {PunishmentComponent::kDetention, "detention_months"},
        {PunishmentComponent::kFixedTerm, "fixed_term_months"},
        {PunishmentComponent::kProbation, "probation_months"},
        {PunishmentComponent::kFine, "fine_yuan"},
        {PunishmentComponent::kPoliticalRights,
         "political_rights_deprivation_months"},
        {PunishmentComponent::kConfiscation, "confiscation"},
        {PunishmentComponent::kLife, "life_imprisonment"},
        {PunishmentComponent::kDeath, "death"},
        {PunishmentComponent::kDeathWithProbation, "death_with_probation"},
        {PunishmentComponent::kPoliticalRightsForLife,
         "political_rights_deprivation_for_life"},
    }};

bool any_active(const PunishmentVector& v,
                const std::vector<PunishmentComponent>& cs) {
  return std::any_of(cs.begin(), cs.end(),
                     [&](PunishmentComponent c) { return is_active(v, c); });
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    auto item = utf8::trim(s.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

std::vector<PunishmentComponent> parse_components(std::string_view list,
                                                  const std::string& rule) {
  std::vector<PunishmentComponent> out;
  for (const auto& item : split_list(list, ',')) {
    auto c = parse_punishment_component(item);
    if (!c) {
      throw ConfigError("constraint '" + rule + "': unknown component '" +
                        item + "'");
    }
    out.push_back(*c);
  }
  if (out.empty()) {
    throw ConfigError("constraint '" + rule + "': empty component list");
  }
  return out;
}

}  // namespace

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::kDebug:
      return "debug";
    case Severity::kInfo:
      return "info";
    case Severity::kWarning:
      return "warn";
    case Severity::kError:
      return "error";
  }
  return "?";
}

std::string_view to_string(CaseType v) { return name_of(kCaseTypes, v); }
std::string_view to_string(PartyRole v) { return name_of(kRoles, v); }
std::string_view to_string(FactClass v) { return name_of(kClasses, v); }
std::string_view to_string(InjuryLevel v) { return name_of(kInjury, v); }
std::string_view to_string(ChargeStage v) { return name_of(kStages, v); }
std::string_view to_string(DamageKind v) {
  return v == DamageKind::kMonetary ? "monetary" : "injury";
}
std::string_view to_string(PunishmentComponent c) {
  return name_of(kComponents, c);
}
std::string_view schema_element(FactClass v) {
  return name_of(kSchemaElements, v);
}

std::optional<CaseType> parse_case_type(std::string_view s) {
  return lookup(kCaseTypes, s);
}
std::optional<PartyRole> parse_party_role(std::string_view s) {
  return lookup(kRoles, s);
}
std::optional<FactClass> parse_fact_class(std::string_view s) {
  return lookup(kClasses, s);
}
std::optional<InjuryLevel> parse_injury_level(std::string_view s) {
  return lookup(kInjury, s);
}
std::optional<ChargeStage> parse_charge_stage(std::string_view s) {
  return lookup(kStages, s);
}
std::optional<FactClass> parse_schema_element(std::string_view s) {
  return lookup(kSchemaElements, s);
}
std::optional<PunishmentComponent> parse_punishment_component(
    std::string_view s) {
  return lookup(kComponents, s);
}

DamageValue DamageValue::Monetary(std::int64_t yuan) {
  if (yuan < 0) throw std::invalid_argument("negative monetary damage");
  return DamageValue(yuan);
}

DamageValue DamageValue::Injury(InjuryLevel level) { return DamageValue(level); }

std::optional<std::int64_t> DamageValue::amount_yuan() const {
  if (const auto* v = std::get_if<std::int64_t>(&value_)) return *v;
  return std::nullopt;
}

std::optional<InjuryLevel> DamageValue::injury_level() const {
  if (const auto* v = std::get_if<InjuryLevel>(&value_)) return *v;
  return std::nullopt;
}

bool is_active(const PunishmentVector& v, PunishmentComponent c) {
  switch (c) {
    case PunishmentComponent::kExemption:
      return v.exemption;
    case PunishmentComponent::kPublicSurveillance:
      return v.public_surveillance_months > 0;
    case PunishmentComponent::kDetention:
      return v.detention_months > 0;
    case PunishmentComponent::kFixedTerm:
      return v.fixed_term_months > 0;
    case PunishmentComponent::kProbation:
      return v.probation_months > 0;
    case PunishmentComponent::kFine:
      return v.fine_yuan > 0;
    case PunishmentComponent::kPoliticalRights:
      return v.political_rights_deprivation_months > 0;
    case PunishmentComponent::kConfiscation:
      return v.confiscation.imposed || v.confiscation.amount_yuan > 0;
    case PunishmentComponent::kLife:
      return v.life_imprisonment;
    case PunishmentComponent::kDeath:
      return v.death;
    case PunishmentComponent::kDeathWithProbation:
      return v.death_with_probation;
    case PunishmentComponent::kPoliticalRightsForLife:
      return v.political_rights_deprivation_for_life;
  }
  return false;
}

bool IntegrityConstraint::violated_by(const PunishmentVector& v) const {
  if (!any_active(v, left)) return false;
  if (kind == Kind::kMutuallyExclusive) return any_active(v, right);
  for (const auto& [c, name] : kComponents) {
    if (std::find(left.begin(), left.end(), c) != left.end()) continue;
    if (is_active(v, c)) return true;
  }
  return false;
}

ConstraintTable ConstraintTable::Defaults() {
  using C = PunishmentComponent;
  using K = IntegrityConstraint::Kind;
  return ConstraintTable({
      {"fixed-term×life", K::kMutuallyExclusive, {C::kFixedTerm}, {C::kLife}},
      {"exemption-exclusivity", K::kSole, {C::kExemption}, {}},
      {"death×life",
       K::kMutuallyExclusive,
       {C::kDeath, C::kDeathWithProbation},
       {C::kLife}},
      {"death×fixed-term",
       K::kMutuallyExclusive,
       {C::kDeath, C::kDeathWithProbation},
       {C::kFixedTerm}},
      {"death-with-probation-category",
       K::kMutuallyExclusive,
       {C::kDeathWithProbation},
       {C::kDeath}},
  });
}

IntegrityConstraint ConstraintTable::ParseRule(std::string name,
                                               std::string_view rule) {
  rule = utf8::trim(rule);
  IntegrityConstraint c;
  c.name = std::move(name);
  if (rule.starts_with("exclusive ")) {
    auto body = rule.substr(10);
    auto bar = body.find('|');
    if (bar == std::string_view::npos) {
      throw ConfigError("constraint '" + c.name +
                        "': expected 'exclusive <a,...> | <b,...>'");
    }
    c.kind = IntegrityConstraint::Kind::kMutuallyExclusive;
    c.left = parse_components(body.substr(0, bar), c.name);
    c.right = parse_components(body.substr(bar + 1), c.name);
  } else if (rule.starts_with("sole ")) {
    c.kind = IntegrityConstraint::Kind::kSole;
    c.left = parse_components(rule.substr(5), c.name);
  } else {
    throw ConfigError("constraint '" + c.name +
                      "': rule must start with 'exclusive' or 'sole'");
  }
  return c;
}

ValidationResult validate_punishment(const PunishmentVector& v,
                                     const ConstraintTable& table) {
  ValidationResult result;
  for (const auto& c : table.constraints()) {
    if (c.violated_by(v)) result.violations.push_back(c.name);
  }
  return result;
}

ValidationResult validate_punishment(const PunishmentVector& v) {
  static const ConstraintTable kDefaults = ConstraintTable::Defaults();
  return validate_punishment(v, kDefaults);
}

bool has_defense_argument(const JddRecord& r) {
  return std::any_of(r.fact_sentences.begin(), r.fact_sentences.end(),
                     [](const ClassifiedSentence& s) {
                       return s.fact_class == FactClass::kDefendantArgument;
                     });
}

bool has_invalid_punishment(const JddRecord& r) {
  return std::any_of(r.flags.begin(), r.flags.end(), [](const std::string& f) {
    return f.starts_with("punishment-invalid");
  });
}

}  // namespace jddkb
