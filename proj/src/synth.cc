#include "jddkb/synth.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "jddkb/corpus.h"
#include "jddkb/errors.h"
#include "jddkb/numerals.h"
#include "jddkb/record_io.h"

namespace jddkb {

using nlohmann::json;

namespace {

// Own mapping from raw 64-bit draws so output does not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 engine_;
};

const std::string kTheft = "盗窃罪";
const std::string kBattery = "故意伤害罪";
const std::string kDriving = "危险驾驶罪";

struct VerbEntry {
  std::string verb;
  std::string result;  // second half of a resultative compound
  std::vector<std::vector<std::string>> objects;  // "V" stands for the victim
  bool ba = false;     // may appear as 将 + object + verb
};

const std::vector<VerbEntry>& verbs_for(const std::string& crime) {
  static const std::vector<VerbEntry> kTheftVerbs = {
      {"窃取", "", {{"手机"}, {"现金"}, {"钱包"}, {"笔记本", "电脑"}}, true},
      {"盗走", "", {{"电动车"}, {"手机"}, {"现金"}}, true},
      {"撬开", "", {{"门锁"}, {"车窗"}, {"抽屉"}}, false},
      {"潜入", "", {{"住宅"}, {"商店"}, {"办公室"}}, false},
      {"变卖", "", {{"赃物"}, {"手机"}}, true},
      {"翻越", "", {{"围墙"}, {"护栏"}}, false},
  };
  static const std::vector<VerbEntry> kBatteryVerbs = {
      {"殴打", "", {{"被害人", "V"}}, true},
      {"打", "伤", {{"被害人", "V"}}, true},
      {"持", "", {{"木棍"}, {"水果刀"}}, false},
      {"捅刺", "", {{"被害人", "V"}}, false},
      {"推搡", "", {{"被害人", "V"}}, false},
      {"纠集", "", {{"他人"}}, false},
  };
  static const std::vector<VerbEntry> kDrivingVerbs = {
      {"饮用", "", {{"白酒"}, {"啤酒"}}, false},
      {"驾驶", "", {{"小型", "轿车"}, {"二轮", "摩托车"}}, false},
      {"撞", "坏", {{"护栏"}, {"停放", "车辆"}}, true},
      {"驶离", "", {{"现场"}}, false},
  };
  if (crime == kTheft) return kTheftVerbs;
  if (crime == kBattery) return kBatteryVerbs;
  return kDrivingVerbs;
}

const std::vector<std::string> kSurnames = {"张", "李", "王", "赵", "刘", "陈", "杨", "黄", "周", "吴"};
const std::vector<std::string> kModifiers = {"当场", "随即", "再次", "多次", "故意", "又", "遂", "并", "后"};
const std::vector<std::string> kExcludedModifiers = {"遂", "并", "后"};
const std::vector<std::string> kCities = {"甲市", "乙市", "丙县", "丁区"};

std::string upos_of(const std::string& xpos) {
  if (xpos == "VV") return "VERB";
  if (xpos == "NN" || xpos == "NT") return "NOUN";
  if (xpos == "NR") return "PROPN";
  if (xpos == "AD") return "ADV";
  if (xpos == "PU") return "PUNCT";
  return "AUX";  // BA, LB
}

struct Tok {
  std::string form;
  std::string xpos;
  std::string rel;
  int head = -1;
};

class Sentence {
 public:
  int add(std::string form, std::string xpos) {
    toks_.push_back({std::move(form), std::move(xpos), "", -1});
    return static_cast<int>(toks_.size()) - 1;
  }
  void attach(int i, int head, std::string rel) {
    toks_[static_cast<std::size_t>(i)].head = head;
    toks_[static_cast<std::size_t>(i)].rel = std::move(rel);
  }
  const Tok& tok(int i) const { return toks_[static_cast<std::size_t>(i)]; }
  std::string text() const {
    std::string out;
    for (const auto& t : toks_) out += t.form;
    return out;
  }
  std::string conllu(const std::string& doc, std::size_t sent) const {
    std::string out = "# doc_id = " + doc + "\n# sent_id = " + std::to_string(sent) +
                      "\n# text = " + text() + "\n";
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      const auto& t = toks_[i];
      out += std::to_string(i + 1) + "\t" + t.form + "\t" + t.form + "\t" + upos_of(t.xpos) +
             "\t" + t.xpos + "\t_\t" + std::to_string(t.head + 1) + "\t" +
             (t.head < 0 ? std::string("root") : t.rel) + "\t_\t_\n";
    }
    return out + "\n";
  }

 private:
  std::vector<Tok> toks_;
};

std::string leaf(const Sentence& s, int i) {
  return "(" + s.tok(i).xpos + " " + s.tok(i).form + ")";
}

enum class ClauseKind { kActive, kElided, kBa };

struct ClauseOut {
  int verb = 0;
  std::string tree;
  TruthAction truth;
};

struct Defendant {
  std::string name;
  std::string victim;
  std::string victim2;
};

ClauseOut add_clause(Sentence& s, ClauseKind kind, const VerbEntry& v,
                     const std::vector<std::string>& object, const std::string& mod,
                     const Defendant& who, const std::string& date) {
  ClauseOut out;
  std::string prefix;
  int mod_idx = -1;
  std::vector<int> obj;
  auto add_object = [&] {
    for (const auto& w : object) {
      const std::string form = w == "V" ? who.victim : w;
      obj.push_back(s.add(form, form.ends_with("某") ? "NR" : "NN"));
    }
  };
  auto np = [&] {
    std::string t = "(NP";
    for (int i : obj) t += " " + leaf(s, i);
    return t + ")";
  };

  if (kind == ClauseKind::kActive) {
    if (!date.empty()) {
      const int d = s.add(date, "NT");
      prefix += "(NP " + leaf(s, d) + ") ";
      out.verb = -1;
      mod_idx = d;  // attached below once the verb exists
    }
    const int t1 = s.add("被告人", "NN");
    const int t2 = s.add(who.name, "NR");
    prefix += "(NP " + leaf(s, t1) + " " + leaf(s, t2) + ") ";
    s.attach(t1, t2, "nmod");
    const int date_idx = mod_idx;
    mod_idx = mod.empty() ? -1 : s.add(mod, "AD");
    const int vi = s.add(v.verb, "VV");
    const int ri = v.result.empty() ? -1 : s.add(v.result, "VV");
    add_object();
    if (date_idx >= 0) s.attach(date_idx, vi, "obl:tmod");
    s.attach(t2, vi, "nsubj");
    out.verb = vi;
    out.truth.subject = {"被告人" + who.name};
    out.truth.subject_inherited = false;
    std::string vt = ri < 0 ? leaf(s, vi) : "(VRD " + leaf(s, vi) + " " + leaf(s, ri) + ")";
    std::string inner = "(VP " + vt + (obj.empty() ? "" : " " + np()) + ")";
    std::string vp = mod_idx < 0 ? inner : "(VP (ADVP " + leaf(s, mod_idx) + ") " + inner + ")";
    out.tree = "(IP " + prefix + vp + ")";
    if (ri >= 0) s.attach(ri, vi, "compound:vv");
  } else {
    mod_idx = mod.empty() ? -1 : s.add(mod, "AD");
    int ba = -1;
    if (kind == ClauseKind::kBa) {
      ba = s.add("将", "BA");
      add_object();
    }
    const int vi = s.add(v.verb, "VV");
    const int ri = v.result.empty() ? -1 : s.add(v.result, "VV");
    if (kind == ClauseKind::kElided) add_object();
    out.verb = vi;
    out.truth.subject = {"被告人" + who.name};
    out.truth.subject_inherited = true;
    std::string vt = ri < 0 ? leaf(s, vi) : "(VRD " + leaf(s, vi) + " " + leaf(s, ri) + ")";
    std::string inner;
    if (kind == ClauseKind::kBa) {
      s.attach(ba, vi, "aux:ba");
      inner = "(VP " + leaf(s, ba) + " (IP " + np() + " (VP " + vt + ")))";
    } else {
      inner = "(VP " + vt + (obj.empty() ? "" : " " + np()) + ")";
    }
    std::string vp = mod_idx < 0 ? inner : "(VP (ADVP " + leaf(s, mod_idx) + ") " + inner + ")";
    out.tree = "(IP " + vp + ")";
    if (ri >= 0) s.attach(ri, vi, "compound:vv");
  }
  if (mod_idx >= 0) s.attach(mod_idx, out.verb, "advmod");
  if (!obj.empty()) {
    const int head = obj.back();
    s.attach(head, out.verb, "obj");
    std::string phrase;
    for (int i : obj) {
      if (i != head) s.attach(i, head, "nmod");
      phrase += s.tok(i).form;
    }
    out.truth.object = {phrase};
  }
  out.truth.trigger = v.verb;
  if (!mod.empty() &&
      std::find(kExcludedModifiers.begin(), kExcludedModifiers.end(), mod) == kExcludedModifiers.end()) {
    out.truth.modifier = {mod};
  }
  return out;
}

std::string render_months(std::int64_t months) {
  std::string out;
  if (months >= 12) out += render_chinese_numeral(months / 12) + "年";
  if (months % 12 != 0) out += render_chinese_numeral(months % 12) + "个月";
  return out;
}

std::string render_amount(Rng& rng, std::int64_t yuan) {
  const std::size_t style = rng.below(3);
  if (style == 0) return std::to_string(yuan);
  if (style == 1 && yuan >= 1000) {
    std::string digits = std::to_string(yuan);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
      out += digits[i];
    }
    return out;
  }
  return render_chinese_numeral(yuan);
}

std::string render_date(Rng& rng) {
  return std::to_string(rng.between(2014, 2019)) + "年" + std::to_string(rng.between(1, 12)) +
         "月" + std::to_string(rng.between(1, 28)) + "日";
}

std::string injury_phrase(InjuryLevel l) {
  switch (l) {
    case InjuryLevel::kSlight: return "轻微伤";
    case InjuryLevel::kMinorSecond: return "轻伤二级";
    case InjuryLevel::kMinorFirst: return "轻伤一级";
    case InjuryLevel::kSeriousSecond: return "重伤二级";
    case InjuryLevel::kSeriousFirst: return "重伤一级";
    case InjuryLevel::kDeath: return "死亡";
  }
  return "";
}

InjuryLevel draw_injury(Rng& rng) {
  const double u = rng.unit();
  if (u < 0.20) return InjuryLevel::kSlight;
  if (u < 0.55) return InjuryLevel::kMinorSecond;
  if (u < 0.70) return InjuryLevel::kMinorFirst;
  if (u < 0.85) return InjuryLevel::kSeriousSecond;
  if (u < 0.93) return InjuryLevel::kSeriousFirst;
  return InjuryLevel::kDeath;
}

struct DrawnPunishment {
  PunishmentVector vector;
  std::string text;
  bool valid = true;
};

std::int64_t off_unit_months(Rng& rng) {
  static const std::vector<std::int64_t> kOff = {7, 8, 10, 11, 13, 14, 16, 20, 22, 26};
  return rng.pick(kOff);
}

void add_term(DrawnPunishment& p, std::int64_t months) {
  p.vector.fixed_term_months = months;
  p.text = "判处有期徒刑" + render_months(months);
}

void add_probation(Rng& rng, DrawnPunishment& p) {
  if (p.vector.fixed_term_months == 0 || p.vector.fixed_term_months > 36 || !rng.chance(0.3)) return;
  const std::int64_t years = std::max<std::int64_t>(1, (p.vector.fixed_term_months + 11) / 12);
  p.vector.probation_months = years * 12 + (rng.chance(0.5) ? 12 : 0);
  p.text += "，缓刑" + render_months(p.vector.probation_months);
}

void add_fine(Rng& rng, DrawnPunishment& p, const std::vector<std::int64_t>& amounts) {
  p.vector.fine_yuan = rng.pick(amounts);
  p.text += (p.text.empty() ? "判处罚金人民币" : "，并处罚金人民币") +
            render_amount(rng, p.vector.fine_yuan) + "元";
}

DrawnPunishment draw_punishment(Rng& rng, const SynthOptions& o, const std::string& crime,
                                std::optional<InjuryLevel> worst, bool forgiven) {
  DrawnPunishment p;
  if (rng.chance(o.invalid_rate)) {
    p.vector.fixed_term_months = 36;
    p.vector.life_imprisonment = true;
    p.text = "判处有期徒刑三年，无期徒刑";
    p.valid = false;
    return p;
  }
  static const std::vector<std::int64_t> kTerms = {6, 9, 12, 18, 24, 30, 36, 42, 48, 60, 72, 96, 120};
  static const std::vector<std::int64_t> kLightTerms = {6, 9, 12, 18, 24, 30, 36};
  static const std::vector<std::int64_t> kHeavyTerms = {36, 48, 60, 84, 96, 120, 144, 180};
  if (crime == kTheft) {
    if (rng.chance(0.2)) {
      p.vector.detention_months = rng.between(1, 6);
      p.text = "判处拘役" + render_months(p.vector.detention_months);
    } else {
      add_term(p, rng.chance(o.off_unit_rate) ? off_unit_months(rng) : rng.pick(kTerms));
      add_probation(rng, p);
    }
    add_fine(rng, p, {1000, 2000, 3000, 5000, 8000, 10000, 20000, 50000});
    return p;
  }
  if (crime == kDriving) {
    if (rng.chance(0.05)) {
      add_fine(rng, p, {2000, 3000, 5000, 10000});
      return p;
    }
    p.vector.detention_months = rng.between(1, 6);
    p.text = "判处拘役" + render_months(p.vector.detention_months);
    add_fine(rng, p, {1000, 2000, 3000, 5000, 8000, 10000});
    return p;
  }
  // Battery.
  const InjuryLevel level = worst.value_or(InjuryLevel::kMinorSecond);
  if (level <= InjuryLevel::kMinorFirst && rng.chance(forgiven ? 0.3 : 0.05)) {
    p.vector.exemption = true;
    p.text = "免于刑事处罚";
    return p;
  }
  if (rng.chance(o.extreme_rate) || (level == InjuryLevel::kDeath && rng.chance(0.3))) {
    const std::size_t which = rng.below(3);
    if (which == 0) {
      p.vector.life_imprisonment = true;
      p.text = "判处无期徒刑";
    } else if (which == 1) {
      p.vector.death_with_probation = true;
      p.text = "判处死刑，缓期二年执行";
    } else {
      p.vector.death = true;
      p.text = "判处死刑";
    }
    p.vector.political_rights_deprivation_for_life = true;
    p.text += "，剥夺政治权利终身";
    return p;
  }
  if (rng.chance(o.off_unit_rate)) {
    add_term(p, off_unit_months(rng));
  } else {
    add_term(p, rng.pick(level >= InjuryLevel::kSeriousSecond ? kHeavyTerms : kLightTerms));
  }
  add_probation(rng, p);
  return p;
}

std::string draw_crime(Rng& rng, const SynthOptions& o) {
  double total = 0;
  for (const auto& [name, w] : o.crimes) total += w;
  double u = rng.unit() * total;
  for (const auto& [name, w] : o.crimes) {
    if (u < w) return name;
    u -= w;
  }
  return o.crimes.back().first;
}

struct DocumentOut {
  json line;
  std::string conllu;
  std::string trees;
  TruthRecord truth;
};

DocumentOut make_document(Rng& rng, const SynthOptions& o, const std::string& case_id) {
  DocumentOut out;
  TruthRecord& truth = out.truth;
  truth.case_id = case_id;

  std::vector<std::string> crimes = {draw_crime(rng, o)};
  if (crimes[0] != kDriving && rng.chance(o.multi_crime_rate)) {
    crimes = {kTheft, kBattery};
  }
  const bool battery = std::find(crimes.begin(), crimes.end(), kBattery) != crimes.end();
  const bool theft = std::find(crimes.begin(), crimes.end(), kTheft) != crimes.end();

  Defendant who;
  const std::size_t s1 = rng.below(kSurnames.size());
  std::size_t s2 = rng.below(kSurnames.size() - 1);
  if (s2 >= s1) ++s2;
  std::size_t s3 = (s2 + 1 + rng.below(kSurnames.size() - 2)) % kSurnames.size();
  if (s3 == s1) s3 = (s3 + 1) % kSurnames.size();
  if (s3 == s2) s3 = (s3 + 1) % kSurnames.size();
  if (s3 == s1) s3 = (s3 + 1) % kSurnames.size();
  who.name = kSurnames[s1] + "某";
  who.victim = kSurnames[s2] + "某";
  who.victim2 = kSurnames[s3] + "某";
  const std::string city = rng.pick(kCities);

  std::vector<std::string> facts;
  auto add_parsed = [&](const Sentence& s, const std::string& tree) {
    const std::size_t idx = facts.size();
    facts.push_back(s.text());
    out.conllu += s.conllu(case_id, idx);
    out.trees += case_id + "\t" + std::to_string(idx) + "\t" + tree + "\n";
  };

  facts.push_back(city + "人民检察院于" + render_date(rng) + "向本院提起公诉。");
  std::string charge_text;
  for (const auto& c : crimes) {
    std::string shown = c;
    if (c == kBattery && rng.chance(0.2)) shown = "伤害罪";
    charge_text += (charge_text.empty() ? "" : "、") + shown;
    truth.charges.push_back(c);
  }
  facts.push_back("公诉机关指控被告人" + who.name + "犯" + charge_text + "，请求依法判处。");
  if (rng.chance(0.5)) {
    facts.push_back("公诉机关认为，被告人" + who.name + "的行为已构成" + crimes.front() +
                    "，建议依法判处。");
  }
  truth.defense = rng.chance(o.defense_rate);
  if (truth.defense) {
    facts.push_back(rng.chance(0.5) ? "被告人" + who.name + "辩称其系初犯。"
                                    : "辩护人提出被告人" + who.name + "认罪态度较好的辩护意见。");
  }
  facts.push_back("经审理查明，事实如下。");

  // Action sentences.
  std::vector<VerbEntry> vocab;
  for (const auto& c : crimes) {
    const auto& v = verbs_for(c);
    vocab.insert(vocab.end(), v.begin(), v.end());
  }
  const int sentences = rng.between(1, 2);
  for (int si = 0; si < sentences; ++si) {
    Sentence s;
    std::vector<ClauseOut> clauses;
    const int count = rng.between(1, 3);
    for (int ci = 0; ci < count; ++ci) {
      const VerbEntry& v = rng.pick(vocab);
      const auto& object = rng.pick(v.objects);
      const std::string mod = rng.chance(0.5) ? rng.pick(kModifiers) : "";
      ClauseKind kind = ClauseKind::kElided;
      if (ci == 0 && (si == 0 || rng.chance(0.6))) {
        kind = ClauseKind::kActive;
      } else if (ci > 0 && v.ba && rng.chance(0.3)) {
        kind = ClauseKind::kBa;
      }
      const std::string date = kind == ClauseKind::kActive && rng.chance(0.5) ? render_date(rng) : "";
      clauses.push_back(add_clause(s, kind, v, object, mod, who, date));
      const int pu = s.add(ci + 1 == count ? "。" : "，", "PU");
      s.attach(pu, clauses.back().verb, "punct");
    }
    std::string tree = "(ROOT (IP";
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      if (ci > 0) s.attach(clauses[ci].verb, clauses[0].verb, "conj");
      tree += " " + clauses[ci].tree + (ci + 1 == clauses.size() ? " (PU 。)" : " (PU ，)");
      truth.actions.push_back(clauses[ci].truth);
    }
    s.attach(clauses[0].verb, -1, "root");
    add_parsed(s, tree + "))");
  }

  // Arrest, in the passive.
  if (rng.chance(0.8)) {
    const bool driving = crimes.front() == kDriving;
    const std::string agent = driving ? "民警" : "公安机关";
    const std::string verb = driving ? "查获" : "抓获";
    Sentence s;
    const int t1 = s.add("被告人", "NN");
    const int t2 = s.add(who.name, "NR");
    const int lb = s.add("被", "LB");
    const int ag = s.add(agent, "NN");
    const int vi = s.add(verb, "VV");
    const int pu = s.add("。", "PU");
    s.attach(t1, t2, "nmod");
    s.attach(t2, vi, "nsubj:pass");
    s.attach(lb, vi, "aux:pass");
    s.attach(ag, vi, "obl:agent");
    s.attach(vi, -1, "root");
    s.attach(pu, vi, "punct");
    add_parsed(s, "(ROOT (IP (NP (NN 被告人) (NR " + who.name + ")) (VP (LB 被) (IP (NP (NN " +
                      agent + ")) (VP (VV " + verb + ")))) (PU 。)))");
    truth.actions.push_back({verb, {"被告人" + who.name}, {"被告人" + who.name}, {}, true});
  }

  // Damages.
  std::optional<std::int64_t> money;
  std::set<InjuryLevel> injuries;
  if (theft) {
    money = rng.pick(std::vector<std::int64_t>{500, 800, 1000, 1500, 3000, 4800, 5000, 8000, 12000,
                                               20000, 25920, 46000, 90000, 150000, 200000});
    facts.push_back("经鉴定，被盗物品价值共计人民币" + render_amount(rng, *money) + "元。");
  }
  if (battery) {
    const InjuryLevel first = draw_injury(rng);
    injuries.insert(first);
    facts.push_back(first == InjuryLevel::kDeath
                        ? "被害人" + who.victim + "经抢救无效死亡。"
                        : "经鉴定，被害人" + who.victim + "的损伤程度为" + injury_phrase(first) + "。");
    if (rng.chance(0.2)) {
      const InjuryLevel second = draw_injury(rng);
      if (second != InjuryLevel::kDeath) {
        injuries.insert(second);
        facts.push_back("经鉴定，被害人" + who.victim2 + "的损伤程度为" + injury_phrase(second) + "。");
      }
    }
  }
  if (crimes.front() == kDriving) {
    facts.push_back("经检验，被告人" + who.name + "血液中乙醇含量为" +
                    std::to_string(rng.between(80, 260)) + "mg/100ml。");
    if (rng.chance(0.3)) {
      money = rng.between(2, 50) * 100;
      facts.push_back("经核定，事故造成财产损失共计人民币" + render_amount(rng, *money) + "元。");
    }
  }
  if (money) truth.damages.push_back(DamageValue::Monetary(*money));
  for (InjuryLevel l : injuries) truth.damages.push_back(DamageValue::Injury(l));

  // Forgiveness.
  if (crimes.front() != kDriving && rng.chance(o.forgiveness_rate)) {
    const bool negated = rng.chance(o.negated_forgiveness_rate);
    const std::string mod = negated ? "未" : "已";
    Sentence s;
    const int t1 = s.add("被告人", "NN");
    const int t2 = s.add(who.name, "NR");
    const int m = s.add(mod, "AD");
    const int vi = s.add("取得", "VV");
    const int o1 = s.add("被害人", "NN");
    const int o2 = s.add("谅解", "NN");
    const int pu = s.add("。", "PU");
    s.attach(t1, t2, "nmod");
    s.attach(t2, vi, "nsubj");
    s.attach(m, vi, "advmod");
    s.attach(vi, -1, "root");
    s.attach(o1, o2, "nmod");
    s.attach(o2, vi, "obj");
    s.attach(pu, vi, "punct");
    add_parsed(s, "(ROOT (IP (NP (NN 被告人) (NR " + who.name + ")) (VP (ADVP (AD " + mod +
                      ")) (VP (VV 取得) (NP (NN 被害人) (NN 谅解)))) (PU 。)))");
    truth.actions.push_back({"取得", {"被告人" + who.name}, {"被害人谅解"}, {mod}, false});
    truth.forgiveness = !negated;
  }
  facts.push_back("上述事实，有被害人陈述、证人证言等证据证实，足以认定。");

  // Decision.
  std::optional<InjuryLevel> worst;
  if (!injuries.empty()) worst = *injuries.rbegin();
  std::string decision = "被告人" + who.name;
  std::int64_t longest = 0;
  std::string longest_text;
  for (std::size_t i = 0; i < crimes.size(); ++i) {
    DrawnPunishment p = draw_punishment(rng, o, crimes[i], worst, truth.forgiveness);
    decision += (i == 0 ? "犯" : "；犯") + crimes[i] + "，" + p.text;
    if (p.vector.fixed_term_months >= longest) {
      longest = p.vector.fixed_term_months;
      longest_text = p.text;
    }
    truth.convictions.push_back({crimes[i], p.vector, p.valid});
  }
  if (crimes.size() > 1) {
    std::string combined = longest_text;
    if (combined.starts_with("判处")) combined = combined.substr(std::string("判处").size());
    decision += "；数罪并罚，决定执行" + combined;
  }
  decision += "。";
  if (rng.chance(0.3)) decision += "（刑期从判决执行之日起计算。）";

  json parties = json::array();
  parties.push_back({{"role", "defendant"},
                     {"name", who.name},
                     {"attributes",
                      {{"LawEnforcementActions",
                        json::array({{{"action", "刑事拘留"}, {"days", rng.between(5, 37)}}})}}}});
  parties.push_back({{"role", "prosecutor"}, {"name", city + "人民检察院"}, {"attributes", json::object()}});
  out.line = {{"case_id", case_id},
              {"case_type", "criminal"},
              {"parties", parties},
              {"facts", facts},
              {"decision", decision}};
  return out;
}

}  // namespace

SynthOptions SynthOptions::FromDocument(const KeyValueDocument& doc) {
  SynthOptions o;
  for (const auto& e : doc.section("synth")) {
    auto fail = [&](const std::string& why) {
      throw ConfigError(doc.source() + ":" + std::to_string(e.line) + ": [synth] " + e.key +
                        ": " + why);
    };
    auto rate = [&] {
      double v = 0;
      try {
        std::size_t used = 0;
        v = std::stod(e.value, &used);
        if (used != e.value.size()) fail("not a number");
      } catch (const std::logic_error&) {
        fail("not a number");
      }
      if (v < 0 || v > 1) fail("rate must lie in [0, 1]");
      return v;
    };
    if (e.key == "size") {
      const auto [end, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), o.size);
      if (ec != std::errc() || end != e.value.data() + e.value.size()) fail("not a count");
    } else if (e.key == "crimes") {
      o.crimes.clear();
      for (const auto& item : split_values(e.value)) {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos) fail("expected name:weight items");
        const std::string name = item.substr(0, colon);
        if (name != kTheft && name != kBattery && name != kDriving) {
          fail("no generator for crime '" + name + "'");
        }
        double w = 0;
        try {
          w = std::stod(item.substr(colon + 1));
        } catch (const std::logic_error&) {
          fail("bad weight in '" + item + "'");
        }
        if (w <= 0) fail("weights must be positive");
        o.crimes.emplace_back(name, w);
      }
      if (o.crimes.empty()) fail("empty crime list");
    } else if (e.key == "multi_crime_rate") {
      o.multi_crime_rate = rate();
    } else if (e.key == "defense_rate") {
      o.defense_rate = rate();
    } else if (e.key == "forgiveness_rate") {
      o.forgiveness_rate = rate();
    } else if (e.key == "negated_forgiveness_rate") {
      o.negated_forgiveness_rate = rate();
    } else if (e.key == "invalid_rate") {
      o.invalid_rate = rate();
    } else if (e.key == "off_unit_rate") {
      o.off_unit_rate = rate();
    } else if (e.key == "extreme_rate") {
      o.extreme_rate = rate();
    } else {
      fail("unknown key");
    }
  }
  return o;
}

SynthCorpus generate_synthetic(const SynthOptions& options) {
  SynthCorpus corpus;
  corpus.corpus_lines.push_back(json{{"schema_version", std::string(kCorpusSchema)}}.dump());
  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.size; ++i) {
    char id[48];
    std::snprintf(id, sizeof id, "syn%llu-%05zu", static_cast<unsigned long long>(options.seed), i);
    auto doc = make_document(rng, options, id);
    corpus.corpus_lines.push_back(doc.line.dump());
    corpus.conllu += doc.conllu;
    corpus.trees += doc.trees;
    corpus.truth.push_back(std::move(doc.truth));
  }
  return corpus;
}

void write_synthetic(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "parses", ec);
  if (ec) throw IoError("cannot create " + (dir / "parses").string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out) throw IoError("error writing " + p.string());
  };
  std::string lines;
  for (const auto& l : corpus.corpus_lines) lines += l + "\n";
  write(dir / "corpus.jsonl", lines);
  write(dir / "parses" / "synth.conllu", corpus.conllu);
  write(dir / "parses" / "synth.trees", corpus.trees);
  std::string truth;
  for (const auto& t : corpus.truth) truth += to_json(t).dump() + "\n";
  write(dir / "truth.jsonl", truth);
}

json to_json(const TruthRecord& t) {
  json actions = json::array();
  for (const auto& a : t.actions) {
    actions.push_back({{"trigger", a.trigger},
                       {"subject", a.subject},
                       {"object", a.object},
                       {"modifier", a.modifier},
                       {"subject_inherited", a.subject_inherited}});
  }
  json damages = json::array();
  for (const auto& d : t.damages) damages.push_back(to_json(d));
  json convictions = json::array();
  for (const auto& c : t.convictions) {
    convictions.push_back({{"crime", c.crime}, {"punishment", to_json(c.punishment)}, {"valid", c.valid}});
  }
  return {{"case_id", t.case_id},   {"defense", t.defense}, {"forgiveness", t.forgiveness},
          {"charges", t.charges},   {"actions", actions},   {"damages", damages},
          {"convictions", convictions}};
}

TruthRecord truth_from_json(const json& j) {
  try {
    TruthRecord t;
    t.case_id = j.at("case_id").get<std::string>();
    t.defense = j.at("defense").get<bool>();
    t.forgiveness = j.at("forgiveness").get<bool>();
    t.charges = j.at("charges").get<std::vector<std::string>>();
    for (const auto& a : j.at("actions")) {
      t.actions.push_back({a.at("trigger").get<std::string>(),
                           a.at("subject").get<std::vector<std::string>>(),
                           a.at("object").get<std::vector<std::string>>(),
                           a.at("modifier").get<std::vector<std::string>>(),
                           a.at("subject_inherited").get<bool>()});
    }
    for (const auto& d : j.at("damages")) t.damages.push_back(damage_from_json(d));
    for (const auto& c : j.at("convictions")) {
      t.convictions.push_back({c.at("crime").get<std::string>(),
                               punishment_from_json(c.at("punishment")), c.at("valid").get<bool>()});
    }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad truth record: ") + e.what());
  }
}

std::vector<TruthRecord> read_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<TruthRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(truth_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace jddkb
