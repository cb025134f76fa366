#include "jddkb/entity_extractor.h"

#include <algorithm>
#include <set>

#include "jddkb/douduan.h"
#include "jddkb/numerals.h"
#include "jddkb/utf8.h"

namespace jddkb {

namespace {

bool starts_at(std::u32string_view s, std::size_t pos, std::u32string_view w) {
  return !w.empty() && s.substr(pos, w.size()) == w;
}

std::vector<std::u32string> decode_all(const std::vector<std::string>& words) {
  std::vector<std::u32string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(utf8::decode(w));
  return out;
}

// Length of the longest word in `words` starting at `pos`, with its index.
std::pair<std::size_t, std::size_t> longest_at(
    std::u32string_view s, std::size_t pos,
    const std::vector<std::u32string>& words) {
  std::size_t best_len = 0;
  std::size_t best = words.size();
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (words[k].size() > best_len && starts_at(s, pos, words[k])) {
      best_len = words[k].size();
      best = k;
    }
  }
  return {best_len, best};
}

bool contains_any(std::string_view text, const std::vector<std::string>& words) {
  return std::any_of(words.begin(), words.end(), [&](const std::string& w) {
    return !w.empty() && text.find(w) != std::string_view::npos;
  });
}

std::vector<std::string> douduan_of(const ClassifiedSentence& s) {
  return s.douduan.empty() ? segment_douduan(s.text) : s.douduan;
}

bool is_connector(char32_t c) {
  return c == U'、' || c == U'和' || c == U'及' || c == U'与';
}

void set_component(PunishmentVector& v, PunishmentComponent c,
                   std::int64_t value) {
  switch (c) {
    case PunishmentComponent::kExemption:
      v.exemption = true;
      break;
    case PunishmentComponent::kPublicSurveillance:
      v.public_surveillance_months = value;
      break;
    case PunishmentComponent::kDetention:
      v.detention_months = value;
      break;
    case PunishmentComponent::kFixedTerm:
      v.fixed_term_months = value;
      break;
    case PunishmentComponent::kProbation:
      v.probation_months = value;
      break;
    case PunishmentComponent::kFine:
      v.fine_yuan = value;
      break;
    case PunishmentComponent::kPoliticalRights:
      v.political_rights_deprivation_months = value;
      break;
    case PunishmentComponent::kConfiscation:
      v.confiscation.imposed = true;
      v.confiscation.amount_yuan = value;
      break;
    case PunishmentComponent::kLife:
      v.life_imprisonment = true;
      break;
    case PunishmentComponent::kDeath:
      v.death = true;
      break;
    case PunishmentComponent::kDeathWithProbation:
      v.death_with_probation = true;
      break;
    case PunishmentComponent::kPoliticalRightsForLife:
      v.political_rights_deprivation_for_life = true;
      break;
  }
}

}  // namespace

// ---------------------------------------------------------------- crimes

CrimeTable CrimeTable::Defaults() {
  CrimeTable t;
  t.add("故意伤害罪", {"伤害罪"});
  t.add("故意杀人罪", {"杀人罪"});
  t.add("过失致人死亡罪");
  t.add("过失致人重伤罪");
  t.add("盗窃罪");
  t.add("抢劫罪");
  t.add("抢夺罪");
  t.add("诈骗罪");
  t.add("合同诈骗罪");
  t.add("信用卡诈骗罪");
  t.add("敲诈勒索罪");
  t.add("危险驾驶罪", {"醉酒驾驶罪", "醉驾罪"});
  t.add("交通肇事罪");
  t.add("走私、贩卖、运输、制造毒品罪",
        {"贩卖毒品罪", "运输毒品罪", "走私毒品罪", "制造毒品罪",
         "贩卖、运输毒品罪"});
  t.add("非法持有毒品罪");
  t.add("容留他人吸毒罪");
  t.add("寻衅滋事罪");
  t.add("聚众斗殴罪");
  t.add("职务侵占罪");
  t.add("贪污罪");
  t.add("受贿罪");
  t.add("行贿罪");
  t.add("挪用公款罪");
  t.add("强奸罪");
  t.add("非法拘禁罪");
  t.add("妨害公务罪");
  t.add("开设赌场罪");
  t.add("赌博罪");
  t.add("故意毁坏财物罪");
  t.add("掩饰、隐瞒犯罪所得、犯罪所得收益罪", {"掩饰、隐瞒犯罪所得罪"});
  t.add("非法吸收公众存款罪");
  t.add("非法经营罪");
  t.add("组织卖淫罪");
  t.add("滥用职权罪");
  t.add("玩忽职守罪");
  t.add("拒不支付劳动报酬罪");
  t.add("放火罪");
  t.add("失火罪");
  return t;
}

void CrimeTable::add(const std::string& standard,
                     const std::vector<std::string>& aliases) {
  if (standard.empty()) throw ConfigError("empty standard crime name");
  if (contains(standard)) {
    throw ConfigError("duplicate standard crime name '" + standard + "'");
  }
  auto bind = [&](const std::string& key) {
    auto [it, inserted] = lookup_.emplace(key, standard);
    if (!inserted && it->second != standard) {
      throw ConfigError("crime alias '" + key + "' maps to both '" +
                        it->second + "' and '" + standard + "'");
    }
  };
  // An alias registered earlier may equal this standard name.
  if (auto it = lookup_.find(standard); it != lookup_.end()) {
    throw ConfigError("crime name '" + standard + "' is already an alias of '" +
                      it->second + "'");
  }
  names_.push_back(standard);
  bind(standard);
  for (const auto& a : aliases) {
    if (!a.empty()) bind(a);
  }
}

std::optional<std::string> CrimeTable::normalize(std::string_view raw) const {
  raw = utf8::trim(raw);
  if (auto it = lookup_.find(raw); it != lookup_.end()) return it->second;
  if (!raw.ends_with("罪")) {
    std::string with(raw);
    with += "罪";
    if (auto it = lookup_.find(with); it != lookup_.end()) return it->second;
  }
  return std::nullopt;
}

bool CrimeTable::contains(std::string_view standard) const {
  return std::find(names_.begin(), names_.end(), standard) != names_.end();
}

// ---------------------------------------------------------------- injury

InjuryLexicon::InjuryLexicon(std::vector<InjuryKeyword> keywords)
    : keywords_(std::move(keywords)) {
  for (const auto& k : keywords_) {
    if (k.keyword.empty()) throw ConfigError("empty injury keyword");
  }
}

InjuryLexicon InjuryLexicon::Defaults() {
  using L = InjuryLevel;
  return InjuryLexicon({
      {"轻微伤", L::kSlight},
      {"轻伤二级", L::kMinorSecond},
      {"二级轻伤", L::kMinorSecond},
      {"轻伤一级", L::kMinorFirst},
      {"一级轻伤", L::kMinorFirst},
      {"轻伤", L::kMinorSecond},
      {"重伤二级", L::kSeriousSecond},
      {"二级重伤", L::kSeriousSecond},
      {"重伤一级", L::kSeriousFirst},
      {"一级重伤", L::kSeriousFirst},
      {"重伤", L::kSeriousSecond},
      {"致人死亡", L::kDeath},
      {"死亡", L::kDeath},
  });
}

std::optional<InjuryLevel> InjuryLexicon::match(std::string_view text) const {
  const auto u = utf8::decode(text);
  std::vector<std::u32string> words;
  for (const auto& k : keywords_) words.push_back(utf8::decode(k.keyword));
  std::optional<InjuryLevel> best;
  std::size_t i = 0;
  while (i < u.size()) {
    auto [len, k] = longest_at(u, i, words);
    if (len == 0) {
      ++i;
      continue;
    }
    if (!best || keywords_[k].level > *best) best = keywords_[k].level;
    i += len;
  }
  return best;
}

// ---------------------------------------------------------------- punishments

PunishmentKeywordTable::PunishmentKeywordTable(
    std::vector<PunishmentKeyword> keywords)
    : keywords_(std::move(keywords)) {
  for (const auto& k : keywords_) {
    if (k.keyword.empty()) throw ConfigError("empty punishment keyword");
  }
}

PunishmentKeywordTable PunishmentKeywordTable::Defaults() {
  using C = PunishmentComponent;
  using A = PunishmentArgument;
  return PunishmentKeywordTable({
      {"免于刑事处罚", C::kExemption, A::kNone},
      {"免予刑事处罚", C::kExemption, A::kNone},
      {"管制", C::kPublicSurveillance, A::kDuration},
      {"拘役", C::kDetention, A::kDuration},
      {"有期徒刑", C::kFixedTerm, A::kDuration},
      {"缓刑", C::kProbation, A::kDuration},
      {"罚金", C::kFine, A::kAmount},
      {"剥夺政治权利", C::kPoliticalRights, A::kDuration},
      {"剥夺政治权利终身", C::kPoliticalRightsForLife, A::kNone},
      {"没收个人全部财产", C::kConfiscation, A::kNone},
      {"没收个人财产", C::kConfiscation, A::kAmount},
      {"无期徒刑", C::kLife, A::kNone},
      {"死刑，缓期二年执行", C::kDeathWithProbation, A::kNone},
      {"死刑缓期二年执行", C::kDeathWithProbation, A::kNone},
      {"死刑", C::kDeath, A::kNone},
  });
}

std::string_view to_string(PunishmentArgument a) {
  switch (a) {
    case PunishmentArgument::kNone:
      return "none";
    case PunishmentArgument::kDuration:
      return "duration";
    case PunishmentArgument::kAmount:
      return "amount";
  }
  return "?";
}

std::optional<PunishmentArgument> parse_punishment_argument(std::string_view s) {
  if (s == "none") return PunishmentArgument::kNone;
  if (s == "duration") return PunishmentArgument::kDuration;
  if (s == "amount") return PunishmentArgument::kAmount;
  return std::nullopt;
}

// ---------------------------------------------------------------- damages

std::optional<DamageValue> extract_monetary_damage(
    std::string_view douduan, const std::vector<std::string>& total_cues,
    Diagnostics& diagnostics, const std::string& where) {
  const auto u = utf8::decode(douduan);
  std::vector<std::pair<std::size_t, std::int64_t>> amounts;
  std::size_t i = 0;
  while (i < u.size()) {
    if (auto m = scan_money(u, i)) {
      if (m->yuan) {
        amounts.emplace_back(m->begin, *m->yuan);
      } else {
        diagnostics.warn(where, "unparseable amount '" +
                                    utf8::encode(u.substr(m->begin, m->end - m->begin)) +
                                    "'");
      }
      i = m->end;
    } else if (auto n = scan_numeral(u, i)) {
      i = n->end;
    } else {
      ++i;
    }
  }
  if (amounts.empty()) return std::nullopt;
  std::size_t cue = u.size();
  for (const auto& c : decode_all(total_cues)) {
    if (c.empty()) continue;
    cue = std::min(cue, u.find(c));
  }
  for (const auto& [pos, yuan] : amounts) {
    if (pos >= cue) return DamageValue::Monetary(yuan);
  }
  std::int64_t best = 0;
  for (const auto& a : amounts) best = std::max(best, a.second);
  return DamageValue::Monetary(best);
}

std::optional<DamageValue> extract_monetary_damage(std::string_view douduan) {
  static const EntityRules kDefaults;
  Diagnostics ignored;
  return extract_monetary_damage(douduan, kDefaults.total_cues, ignored);
}

std::optional<DamageValue> extract_injury_level(std::string_view douduan,
                                                const InjuryLexicon& lexicon) {
  if (auto level = lexicon.match(douduan)) return DamageValue::Injury(*level);
  return std::nullopt;
}

std::optional<DamageValue> extract_injury_level(std::string_view douduan) {
  static const InjuryLexicon kDefaults = InjuryLexicon::Defaults();
  return extract_injury_level(douduan, kDefaults);
}

std::vector<DamageValue> extract_record_damages(const JddRecord& record,
                                                const EntityRules& rules,
                                                Diagnostics& diagnostics) {
  for (FactClass cls : rules.damage_priority) {
    std::optional<std::int64_t> cue_amount;
    std::optional<std::int64_t> max_amount;
    std::set<InjuryLevel> injuries;
    for (std::size_t si = 0; si < record.fact_sentences.size(); ++si) {
      const auto& s = record.fact_sentences[si];
      if (s.fact_class != cls) continue;
      const std::string where = record.case_id + " sentence " + std::to_string(si);
      for (const auto& d : douduan_of(s)) {
        if (auto m = extract_monetary_damage(d, rules.total_cues, diagnostics, where)) {
          const auto yuan = *m->amount_yuan();
          if (!cue_amount && contains_any(d, rules.total_cues)) cue_amount = yuan;
          max_amount = std::max(max_amount.value_or(0), yuan);
        }
        if (auto level = rules.injury.match(d)) injuries.insert(*level);
      }
    }
    if (!max_amount && injuries.empty()) continue;
    std::vector<DamageValue> out;
    if (max_amount) out.push_back(DamageValue::Monetary(cue_amount.value_or(*max_amount)));
    for (InjuryLevel l : injuries) out.push_back(DamageValue::Injury(l));
    return out;
  }
  return {};
}

// ---------------------------------------------------------------- crime names

std::vector<std::string> find_crime_names(std::string_view text,
                                          const EntityRules& rules) {
  const auto u = utf8::decode(text);
  const auto markers = decode_all(rules.conviction_markers);
  std::vector<std::u32string> known;
  for (const auto& [key, standard] : rules.crimes.lookup()) {
    known.push_back(utf8::decode(key));
  }
  constexpr std::size_t kMaxName = 40;
  auto name_end = [&](std::size_t p) -> std::size_t {
    if (auto [len, k] = longest_at(u, p, known); len > 0) return p + len;
    for (std::size_t j = p; j < u.size() && j < p + kMaxName; ++j) {
      if (is_douduan_delimiter(u[j])) break;
      if (u[j] == U'罪' && j > p && u[j - 1] != U'犯') return j + 1;
    }
    return std::u32string::npos;
  };

  std::vector<std::string> names;
  std::size_t i = 0;
  while (i < u.size()) {
    auto [len, k] = longest_at(u, i, markers);
    if (len == 0) {
      ++i;
      continue;
    }
    std::size_t p = i + len;
    if (p < u.size() && u[p] == U'罪') {  // 犯罪 is not a marker
      i = p;
      continue;
    }
    std::size_t next = i + len;
    while (p < u.size()) {
      const std::size_t e = name_end(p);
      if (e == std::u32string::npos) break;
      names.push_back(utf8::encode(u.substr(p, e - p)));
      next = e;
      if (e < u.size() && is_connector(u[e])) {
        p = e + 1;
        continue;
      }
      break;
    }
    i = next;
  }
  return names;
}

CrimeCharge normalize_charge(const std::string& raw, ChargeStage stage,
                             const CrimeTable& table) {
  CrimeCharge c;
  c.raw_name = raw;
  c.stage = stage;
  if (auto standard = table.normalize(raw)) {
    c.standard_name = *standard;
    c.normalized = true;
  } else {
    c.standard_name = raw;
    c.normalized = false;
  }
  return c;
}

std::vector<CrimeCharge> extract_charges(const JddRecord& record,
                                         const EntityRules& rules,
                                         Diagnostics& diagnostics) {
  for (const auto& s : record.fact_sentences) {
    if (s.fact_class != FactClass::kProsecutorArgument) continue;
    const auto parts = douduan_of(s);
    if (parts.empty()) break;
    std::vector<CrimeCharge> out;
    for (const auto& raw : find_crime_names(parts.front(), rules)) {
      auto c = normalize_charge(raw, ChargeStage::kCharged, rules.crimes);
      const bool dup = std::any_of(out.begin(), out.end(), [&](const CrimeCharge& o) {
        return o.standard_name == c.standard_name;
      });
      if (!dup) out.push_back(std::move(c));
    }
    if (out.empty()) {
      diagnostics.warn(record.case_id, "no crime name in the first prosecutor clause");
    }
    return out;
  }
  diagnostics.warn(record.case_id, "no prosecutor argument sentence");
  return {};
}

// ---------------------------------------------------------------- convictions

PunishmentVector extract_punishment(std::string_view clause,
                                    const PunishmentKeywordTable& table,
                                    Diagnostics& diagnostics,
                                    const std::string& where) {
  const auto u = utf8::decode(clause);
  std::vector<std::u32string> words;
  for (const auto& k : table.keywords()) words.push_back(utf8::decode(k.keyword));
  PunishmentVector v;
  std::size_t i = 0;
  while (i < u.size()) {
    auto [len, k] = longest_at(u, i, words);
    if (len == 0) {
      ++i;
      continue;
    }
    const auto& kw = table.keywords()[k];
    std::size_t end = i + len;
    switch (kw.argument) {
      case PunishmentArgument::kNone:
        set_component(v, kw.component, 0);
        break;
      case PunishmentArgument::kDuration:
        if (auto d = scan_duration(u, end)) {
          set_component(v, kw.component, d->months);
          end = d->end;
        } else {
          diagnostics.warn(where, "no duration after '" + kw.keyword + "'");
        }
        break;
      case PunishmentArgument::kAmount:
        if (auto m = scan_money(u, end); m && m->yuan) {
          set_component(v, kw.component, *m->yuan);
          end = m->end;
        } else {
          diagnostics.warn(where, "no amount after '" + kw.keyword + "'");
        }
        break;
    }
    i = end;
  }
  return v;
}

ConvictionResult extract_convictions_and_punishments(
    std::string_view decision_text, const std::vector<CrimeCharge>& charges,
    const EntityRules& rules, Diagnostics& diagnostics,
    const std::string& where) {
  ConvictionResult result;
  std::optional<std::string> crime;
  std::string clause;
  auto flush = [&] {
    if (!crime) return;
    auto charge = normalize_charge(*crime, ChargeStage::kConvicted, rules.crimes);
    const PunishmentVector v =
        extract_punishment(clause, rules.punishments, diagnostics, where);
    const auto check = validate_punishment(v, rules.constraints);
    if (check.ok()) {
      CrimePunishment cp;
      cp.crime_name = charge.standard_name;
      cp.punishment = v;
      cp.unmatched = std::none_of(charges.begin(), charges.end(), [&](const CrimeCharge& c) {
        return c.stage == ChargeStage::kCharged && c.standard_name == charge.standard_name;
      });
      result.punishments.push_back(std::move(cp));
    } else {
      std::string names;
      for (const auto& n : check.violations) names += (names.empty() ? "" : "+") + n;
      result.flags.push_back("punishment-invalid:" + charge.standard_name + ":" + names);
      diagnostics.warn(where, "punishment for " + charge.standard_name +
                                  " violates " + names);
    }
    result.convictions.push_back(std::move(charge));
    crime.reset();
    clause.clear();
  };

  bool skipping = false;
  for (const auto& d : segment_douduan(decision_text)) {
    if (contains_any(d, rules.combined_cues)) {
      flush();
      skipping = true;
      continue;
    }
    const auto names = find_crime_names(d, rules);
    if (!names.empty()) {
      flush();
      skipping = false;
      crime = names.front();
      if (names.size() > 1) {
        diagnostics.warn(where, "clause names " + std::to_string(names.size()) +
                                    " crimes; punishment attributed to the first");
      }
      clause = d;
      continue;
    }
    if (crime && !skipping) clause += d;
  }
  flush();
  return result;
}

}  // namespace jddkb
