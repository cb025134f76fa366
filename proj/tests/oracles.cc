#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "jddkb/action_extractor.h"
#include "jddkb/corpus.h"
#include "jddkb/pipeline.h"

namespace oracle {

namespace {

const char* const kDigits[] = {"零", "一", "二", "三", "四", "五", "六", "七", "八", "九"};
const char* const kFullwidth[] = {"０", "１", "２", "３", "４", "５", "６", "７", "８", "９"};

// 1..9999 in positional form: digit + unit per non-zero place, one 零 per gap.
std::string below_wan(int n, bool liang, bool formal_ten, bool leading) {
  const int places[] = {n / 1000, n / 100 % 10, n / 10 % 10, n % 10};
  const char* const units[] = {"千", "百", "十", ""};
  std::string out;
  bool started = false;
  bool gap = false;
  for (int i = 0; i < 4; ++i) {
    const int d = places[i];
    if (d == 0) {
      if (started) gap = true;
      continue;
    }
    if (gap) out += "零";
    gap = false;
    if (i == 2 && d == 1 && !started && leading && !formal_ten) {
      out += "十";
    } else if (d == 2 && liang && (i == 0 || i == 1)) {
      out += std::string("两") + units[i];
    } else {
      out += std::string(kDigits[d]) + units[i];
    }
    started = true;
  }
  return out;
}

std::string chinese(std::int64_t n, bool liang, bool formal_ten) {
  const int high = static_cast<int>(n / 10000);
  const int low = static_cast<int>(n % 10000);
  std::string out;
  if (high > 0) {
    if (high == 2 && liang) {
      out = "两";
    } else {
      out = below_wan(high, liang, formal_ten, true);
    }
    out += "万";
    if (low == 0) return out;
    if (low < 1000) out += "零";
    return out + below_wan(low, liang, formal_ten, false);
  }
  return below_wan(low, liang, formal_ten, true);
}

}  // namespace

const char* style_name(NumeralStyle s) {
  switch (s) {
    case NumeralStyle::kStandard: return "standard";
    case NumeralStyle::kLiang: return "liang";
    case NumeralStyle::kFormalTen: return "formal-ten";
    case NumeralStyle::kColloquial: return "colloquial";
    case NumeralStyle::kArabic: return "arabic";
    case NumeralStyle::kGrouped: return "grouped";
    case NumeralStyle::kFullwidth: return "fullwidth";
  }
  return "?";
}

std::optional<std::string> render(std::int64_t n, NumeralStyle style) {
  if (n < 1 || n > 99999999) return std::nullopt;
  const std::string digits = std::to_string(n);
  switch (style) {
    case NumeralStyle::kStandard:
      return chinese(n, false, false);
    case NumeralStyle::kLiang: {
      auto s = chinese(n, true, false);
      if (s == chinese(n, false, false)) return std::nullopt;
      return s;
    }
    case NumeralStyle::kFormalTen: {
      if (n < 10 || n > 19) return std::nullopt;
      return chinese(n, false, true);
    }
    case NumeralStyle::kColloquial: {
      // Leading place and the next one only, the trailing unit dropped:
      // 350 -> 三百五, 15000 -> 一万五, 2700 -> 二千七.
      const int len = static_cast<int>(digits.size());
      if (len < 3) return std::nullopt;
      if (digits[1] == '0') return std::nullopt;
      for (int i = 2; i < len; ++i) {
        if (digits[static_cast<std::size_t>(i)] != '0') return std::nullopt;
      }
      const char* const units[] = {"", "", "百", "千", "万"};
      if (len > 5) return std::nullopt;
      return std::string(kDigits[digits[0] - '0']) + units[len - 1] + kDigits[digits[1] - '0'];
    }
    case NumeralStyle::kArabic:
      return digits;
    case NumeralStyle::kGrouped: {
      if (n < 1000) return std::nullopt;
      std::string out;
      const std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
      out = digits.substr(0, lead);
      for (std::size_t i = lead; i < digits.size(); i += 3) out += "," + digits.substr(i, 3);
      return out;
    }
    case NumeralStyle::kFullwidth: {
      std::string out;
      for (char c : digits) out += kFullwidth[c - '0'];
      return out;
    }
  }
  return std::nullopt;
}

int punishment_bucket(const jddkb::PunishmentVector& v) {
  if (v.death) return 79;
  if (v.death_with_probation) return 78;
  if (v.life_imprisonment) return 77;
  if (v.exemption) return 0;
  const std::int64_t months = v.public_surveillance_months + v.detention_months + v.fixed_term_months;
  if (months > 0) {
    std::int64_t step = (months + 2) / 3;
    return static_cast<int>(std::min<std::int64_t>(step, 76));
  }
  if (v.fine_yuan > 0) return 80;
  if (v.political_rights_deprivation_months > 0 || v.political_rights_deprivation_for_life ||
      v.confiscation.imposed || v.confiscation.amount_yuan > 0) {
    return 81;
  }
  return 82;
}

std::string punishment_label(int b) {
  if (b == 0) return "exemption";
  if (b >= 1 && b <= 76) {
    std::string m = std::to_string(b * 3);
    return "m" + std::string(3 - std::min<std::size_t>(3, m.size()), '0') + m;
  }
  switch (b) {
    case 77: return "life";
    case 78: return "death_with_probation";
    case 79: return "death";
    case 80: return "fine_only";
    case 81: return "supplementary_only";
    case 82: return "unspecified";
  }
  return "?";
}

int damage_coordinate(const jddkb::DamageValue& d) {
  if (auto level = d.injury_level()) return 1 + static_cast<int>(*level);
  const std::int64_t y = *d.amount_yuan();
  if (y <= 1000) return 7;
  if (y <= 5000) return 8;
  if (y <= 20000) return 9;
  if (y <= 100000) return 10;
  return 11;
}

std::string damage_label(int c) {
  static const char* const kLabels[] = {
      "none", "injury:slight", "injury:minor_second", "injury:minor_first",
      "injury:serious_second", "injury:serious_first", "injury:death",
      "money:<=1000", "money:1001-5000", "money:5001-20000", "money:20001-100000",
      "money:>100000"};
  return c >= 0 && c < 12 ? kLabels[c] : "?";
}

std::vector<std::string> default_violations(const jddkb::PunishmentVector& v) {
  const bool fixed = v.fixed_term_months > 0;
  const bool death_like = v.death || v.death_with_probation;
  std::vector<std::string> out;
  if (fixed && v.life_imprisonment) out.push_back("fixed-term×life");
  if (v.exemption) {
    const bool other = v.public_surveillance_months > 0 || v.detention_months > 0 || fixed ||
                       v.probation_months > 0 || v.fine_yuan > 0 ||
                       v.political_rights_deprivation_months > 0 || v.confiscation.imposed ||
                       v.confiscation.amount_yuan > 0 || v.life_imprisonment || v.death ||
                       v.death_with_probation || v.political_rights_deprivation_for_life;
    if (other) out.push_back("exemption-exclusivity");
  }
  if (death_like && v.life_imprisonment) out.push_back("death×life");
  if (death_like && fixed) out.push_back("death×fixed-term");
  if (v.death_with_probation && v.death) out.push_back("death-with-probation-category");
  return out;
}

Table build_table(const std::vector<jddkb::TruthRecord>& truth) {
  std::map<std::string, int> freq;
  for (const auto& t : truth) {
    for (const auto& a : t.actions) ++freq[a.trigger];
  }
  Table table;
  for (const auto& t : truth) {
    bool valid = !t.convictions.empty();
    for (const auto& c : t.convictions) valid = valid && c.valid;
    if (!valid) continue;
    std::vector<std::string> actions;
    for (const auto& a : t.actions) {
      if (freq[a.trigger] > 1) actions.push_back(a.trigger);
    }
    if (actions.empty()) continue;
    std::vector<int> damages;
    for (const auto& d : t.damages) damages.push_back(damage_coordinate(d));
    if (damages.empty()) damages.push_back(0);
    table.indexed[t.case_id] = &t;
    for (const auto& c : t.convictions) {
      const int p = punishment_bucket(c.punishment);
      for (const auto& a : actions) {
        for (int d : damages) table.tuples.push_back({c.crime, a, d, p, t.case_id});
      }
      const std::int64_t months = c.punishment.public_surveillance_months +
                                  c.punishment.detention_months + c.punishment.fixed_term_months;
      if (months > 0) table.durations[c.crime][months].insert(t.case_id);
    }
  }
  return table;
}

std::vector<double> chord_distances(const std::vector<double>& values) {
  const double first = values.front();
  const double last = values.back();
  const double n = static_cast<double>(values.size() - 1);
  // Chord from A = (0, 1) to B = (1, 0); |AB x AP| / |AB|.
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double px = static_cast<double>(i) / n;
    const double py = first == last ? 0.0 : (values[i] - last) / (first - last);
    const double abx = 1.0, aby = -1.0;
    const double apx = px, apy = py - 1.0;
    out.push_back(std::abs(abx * apy - aby * apx) / std::hypot(abx, aby));
  }
  return out;
}

std::optional<std::size_t> elbow(const std::vector<double>& values) {
  if (values.front() == values.back()) return std::nullopt;
  const auto d = chord_distances(values);
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[best] + 1e-12) best = i;
  }
  if (d[best] < 1e-6) return std::nullopt;
  return best;
}

}  // namespace oracle

namespace testing_support {

SyntheticRun run_synthetic(const jddkb::SynthOptions& options, const jddkb::EngineConfig& config,
                           int jobs) {
  SyntheticRun run;
  run.corpus = jddkb::generate_synthetic(options);
  jddkb::ParseStore parses;
  std::istringstream conllu(run.corpus.conllu);
  parses.add_conllu(conllu, "synth.conllu", run.diagnostics);
  std::istringstream trees(run.corpus.trees);
  parses.add_trees(trees, "synth.trees", run.diagnostics);
  std::vector<jddkb::RawDocument> docs;
  for (std::size_t i = 1; i < run.corpus.corpus_lines.size(); ++i) {
    docs.push_back(jddkb::parse_corpus_line(run.corpus.corpus_lines[i]));
  }
  run.records = jddkb::extract_corpus(docs, parses, config, run.diagnostics, jobs);
  if (config.prune_hapax) jddkb::prune_hapax_triggers(run.records);
  run.kb = jddkb::KnowledgeBase::Build(run.records, config.scale, config.damage_axis,
                                       run.diagnostics, jobs);
  return run;
}

std::vector<ActionFixture> run_action_fixtures(const jddkb::ActionRules& rules) {
  std::vector<std::filesystem::path> dirs;
  for (const auto& e : std::filesystem::directory_iterator(fixtures_dir() / "actions")) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<ActionFixture> out;
  for (const auto& dir : dirs) {
    ActionFixture f;
    f.name = dir.filename().string();
    const auto doc = nlohmann::json::parse(read_file(dir / "doc.json"));
    jddkb::Diagnostics diags;
    jddkb::ParseStore store;
    std::ifstream conllu(dir / "parses.conllu");
    store.add_conllu(conllu, "parses.conllu", diags);
    std::ifstream trees(dir / "parses.trees");
    store.add_trees(trees, "parses.trees", diags);
    std::vector<jddkb::ClassifiedSentence> sentences;
    std::vector<const jddkb::SentenceParse*> parses;
    for (std::size_t i = 0; i < doc.at("sentences").size(); ++i) {
      const auto& s = doc["sentences"][i];
      jddkb::ClassifiedSentence cs;
      cs.text = s.at("text").get<std::string>();
      cs.fact_class = *jddkb::parse_fact_class(s.at("class").get<std::string>());
      sentences.push_back(cs);
      parses.push_back(store.find(f.name, std::to_string(i)));
      if (parses.back() != nullptr) f.douduan += jddkb::douduan_spans(*parses.back()).size();
    }
    f.actual = jddkb::extract_document_actions(sentences, parses, rules, diags, f.name);
    for (const auto& e : doc.at("expected")) {
      jddkb::ActionRecord a;
      a.source = {e.at("sentence").get<std::size_t>(), e.at("douduan").get<std::size_t>()};
      a.trigger = e.at("trigger").get<std::string>();
      a.subject = e.at("subject").get<std::vector<std::string>>();
      a.subject_inherited = e.at("inherited").get<bool>();
      a.object = e.at("object").get<std::vector<std::string>>();
      a.modifier = e.at("modifier").get<std::vector<std::string>>();
      f.expected.push_back(a);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::filesystem::path fixtures_dir() { return JDDKB_FIXTURES_DIR; }

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::path(JDDKB_SCRATCH_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace testing_support
