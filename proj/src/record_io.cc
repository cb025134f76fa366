#include "jddkb/record_io.h"

#include <fstream>
#include <set>

namespace jddkb {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string get_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t get_count(const json& j, const char* key) {
  if (!j.contains(key)) return 0;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(std::string("field '") + key +
                     "' must be a non-negative integer");
  }
  return v.get<std::int64_t>();
}

bool get_flag(const json& j, const char* key) {
  if (!j.contains(key)) return false;
  const json& v = j.at(key);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>() != 0;
  throw ParseError(std::string("field '") + key + "' must be 0/1");
}

std::vector<std::string> get_strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const json& v = j.at(key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  for (const auto& item : v) {
    if (!item.is_string()) throw ParseError(std::string("field '") + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

template <typename T, typename F>
T parse_enum(const json& j, const char* key, F parse, T fallback,
             bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ParseError(std::string("missing field '") + key + "'");
    return fallback;
  }
  auto s = get_string(j, key);
  auto v = parse(s);
  if (!v) throw ParseError(std::string("field '") + key + "': unknown value '" + s + "'");
  return *v;
}

}  // namespace

json to_json(const Party& p) {
  return json{{"role", to_string(p.role)},
              {"name", p.name},
              {"attributes", p.attributes}};
}

Party party_from_json(const json& j) {
  Party p;
  p.role = parse_enum(j, "role", parse_party_role, PartyRole::kDefendant, true);
  p.name = get_string(j, "name");
  if (p.name.empty()) throw ParseError("party name is empty");
  if (j.contains("attributes")) p.attributes = j.at("attributes");
  return p;
}

json to_json(const ActionRecord& a) {
  return json{{"subject", a.subject},
              {"trigger", a.trigger},
              {"object", a.object},
              {"action_modifier", a.modifier},
              {"source", json::array({a.source.sentence, a.source.douduan})},
              {"subject_inherited", a.subject_inherited}};
}

ActionRecord action_from_json(const json& j) {
  ActionRecord a;
  a.subject = get_strings(j, "subject");
  a.trigger = get_string(j, "trigger");
  if (a.trigger.empty()) throw ParseError("action trigger is empty");
  a.object = get_strings(j, "object");
  a.modifier = get_strings(j, "action_modifier");
  const json& src = require(j, "source");
  if (!src.is_array() || src.size() != 2 || !src[0].is_number_unsigned() ||
      !src[1].is_number_unsigned()) {
    throw ParseError("action source must be [sentence, douduan]");
  }
  a.source = {src[0].get<std::size_t>(), src[1].get<std::size_t>()};
  a.subject_inherited = get_flag(j, "subject_inherited");
  return a;
}

json to_json(const DamageValue& d) {
  if (d.kind() == DamageKind::kMonetary) {
    return json{{"kind", "monetary"}, {"amount_yuan", *d.amount_yuan()}};
  }
  return json{{"kind", "injury"}, {"injury_level", to_string(*d.injury_level())}};
}

DamageValue damage_from_json(const json& j) {
  const auto kind = get_string(j, "kind");
  if (kind == "monetary") {
    if (j.contains("injury_level")) throw ParseError("monetary damage with injury_level");
    return DamageValue::Monetary(get_count(j, "amount_yuan"));
  }
  if (kind == "injury") {
    if (j.contains("amount_yuan")) throw ParseError("injury damage with amount_yuan");
    return DamageValue::Injury(parse_enum(j, "injury_level", parse_injury_level,
                                          InjuryLevel::kSlight, true));
  }
  throw ParseError("unknown damage kind '" + kind + "'");
}

json to_json(const PunishmentVector& v) {
  json conf;
  if (v.confiscation.amount_yuan > 0) {
    conf = v.confiscation.amount_yuan;
  } else {
    conf = v.confiscation.imposed ? 1 : 0;
  }
  // Binary components as 0/1, matching the numeric-vector reading.
  return json{
      {"exemption", v.exemption ? 1 : 0},
      {"public_surveillance_months", v.public_surveillance_months},
      {"detention_months", v.detention_months},
      {"fixed_term_months", v.fixed_term_months},
      {"probation_months", v.probation_months},
      {"fine_yuan", v.fine_yuan},
      {"political_rights_deprivation_months",
       v.political_rights_deprivation_months},
      {"confiscation", conf},
      {"confiscation_is_amount", v.confiscation.amount_yuan > 0},
      {"life_imprisonment", v.life_imprisonment ? 1 : 0},
      {"death", v.death ? 1 : 0},
      {"death_with_probation", v.death_with_probation ? 1 : 0},
      {"political_rights_deprivation_for_life",
       v.political_rights_deprivation_for_life ? 1 : 0},
  };
}

PunishmentVector punishment_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("punishment must be an object");
  PunishmentVector v;
  v.exemption = get_flag(j, "exemption");
  v.public_surveillance_months = get_count(j, "public_surveillance_months");
  v.detention_months = get_count(j, "detention_months");
  v.fixed_term_months = get_count(j, "fixed_term_months");
  v.probation_months = get_count(j, "probation_months");
  v.fine_yuan = get_count(j, "fine_yuan");
  v.political_rights_deprivation_months =
      get_count(j, "political_rights_deprivation_months");
  const std::int64_t conf = get_count(j, "confiscation");
  if (j.value("confiscation_is_amount", false)) {
    v.confiscation = {conf > 0, conf};
  } else {
    v.confiscation = {conf != 0, 0};
  }
  v.life_imprisonment = get_flag(j, "life_imprisonment");
  v.death = get_flag(j, "death");
  v.death_with_probation = get_flag(j, "death_with_probation");
  v.political_rights_deprivation_for_life =
      get_flag(j, "political_rights_deprivation_for_life");
  return v;
}

json to_json(const JddRecord& r) {
  json parties = json::array();
  for (const auto& p : r.parties) parties.push_back(to_json(p));
  json sentences = json::array();
  for (const auto& s : r.fact_sentences) {
    json js{{"text", s.text},
            {"douduan", s.douduan},
            {"fact_class", to_string(s.fact_class)}};
    if (s.dependency_ref) js["dependency_parse"] = *s.dependency_ref;
    if (s.constituency_ref) js["constituency_parse"] = *s.constituency_ref;
    sentences.push_back(std::move(js));
  }
  json actions = json::array();
  for (const auto& a : r.actions) actions.push_back(to_json(a));
  json damages = json::array();
  for (const auto& d : r.damages) damages.push_back(to_json(d));
  json charges = json::array();
  for (const auto& c : r.charges) {
    charges.push_back(json{{"raw_name", c.raw_name},
                           {"standard_name", c.standard_name},
                           {"stage", to_string(c.stage)},
                           {"normalized", c.normalized}});
  }
  json punishments = json::array();
  for (const auto& p : r.punishments) {
    punishments.push_back(json{{"crime_name", p.crime_name},
                               {"punishment", to_json(p.punishment)},
                               {"unmatched", p.unmatched}});
  }
  return json{{"case_id", r.case_id},
              {"case_type", to_string(r.case_type)},
              {"crime_type", r.crime_type},
              {"parties", parties},
              {"fact_sentences", sentences},
              {"decision_text", r.decision_text},
              {"actions", actions},
              {"damages", damages},
              {"charges", charges},
              {"punishments", punishments},
              {"flags", r.flags}};
}

JddRecord record_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("record must be a JSON object");
  JddRecord r;
  r.case_id = get_string(j, "case_id");
  if (r.case_id.empty()) throw ParseError("case_id is empty");
  r.case_type = parse_enum(j, "case_type", parse_case_type, CaseType::kCriminal);
  if (j.contains("crime_type")) r.crime_type = get_string(j, "crime_type");
  if (j.contains("decision_text")) r.decision_text = get_string(j, "decision_text");
  for (const auto& p : j.value("parties", json::array())) {
    r.parties.push_back(party_from_json(p));
  }
  for (const auto& s : j.value("fact_sentences", json::array())) {
    ClassifiedSentence cs;
    cs.text = get_string(s, "text");
    cs.douduan = get_strings(s, "douduan");
    cs.fact_class = parse_enum(s, "fact_class", parse_fact_class,
                               FactClass::kUnclassified);
    if (s.contains("dependency_parse")) cs.dependency_ref = get_string(s, "dependency_parse");
    if (s.contains("constituency_parse")) cs.constituency_ref = get_string(s, "constituency_parse");
    r.fact_sentences.push_back(std::move(cs));
  }
  for (const auto& a : j.value("actions", json::array())) {
    r.actions.push_back(action_from_json(a));
  }
  for (const auto& d : j.value("damages", json::array())) {
    r.damages.push_back(damage_from_json(d));
  }
  for (const auto& c : j.value("charges", json::array())) {
    CrimeCharge cc;
    cc.raw_name = get_string(c, "raw_name");
    cc.standard_name = get_string(c, "standard_name");
    cc.stage = parse_enum(c, "stage", parse_charge_stage, ChargeStage::kCharged);
    cc.normalized = c.value("normalized", true);
    r.charges.push_back(std::move(cc));
  }
  for (const auto& p : j.value("punishments", json::array())) {
    CrimePunishment cp;
    cp.crime_name = get_string(p, "crime_name");
    cp.punishment = punishment_from_json(require(p, "punishment"));
    cp.unmatched = p.value("unmatched", false);
    r.punishments.push_back(std::move(cp));
  }
  r.flags = get_strings(j, "flags");
  return r;
}

std::string serialize_record(const JddRecord& r) { return to_json(r).dump(); }

void write_records(const std::filesystem::path& path,
                   const std::vector<JddRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << json{{"schema_version", kRecordsSchema}}.dump() << '\n';
  for (const auto& r : records) out << serialize_record(r) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<JddRecord> read_records(const std::filesystem::path& path,
                                    Diagnostics& diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<JddRecord> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      diagnostics.warn(where, "malformed JSON");
      continue;
    }
    if (j.is_object() && j.contains("schema_version")) {
      const auto v = j["schema_version"];
      if (!v.is_string() || v.get<std::string>() != kRecordsSchema) {
        throw ParseError(path.string() + ": schema version " + v.dump() +
                         " (expected " + std::string(kRecordsSchema) + ")");
      }
      continue;
    }
    try {
      JddRecord r = record_from_json(j);
      if (!seen.insert(r.case_id).second) {
        diagnostics.warn(where, "duplicate case_id '" + r.case_id + "'");
        continue;
      }
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      diagnostics.warn(where, e.what());
    }
  }
  return out;
}

}  // namespace jddkb
