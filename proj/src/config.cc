#include "jddkb/config.h"

#include <charconv>
#include <set>

namespace jddkb {

namespace {

class SectionReader {
 public:
  SectionReader(const KeyValueDocument& doc, std::string name)
      : doc_(doc), name_(std::move(name)), entries_(doc.section(name_)) {}

  const std::vector<KeyValueEntry>& entries() const { return entries_; }
  bool present() const { return doc_.has_section(name_); }

  [[noreturn]] void fail(const KeyValueEntry& e, const std::string& why) const {
    throw ConfigError(doc_.source() + ":" + std::to_string(e.line) + ": [" + name_ +
                      "] " + e.key + ": " + why);
  }

  // `defaults = keep | replace`; keep when absent.
  bool replace_defaults() const {
    bool replace = false;
    for (const auto& e : entries_) {
      if (e.key != "defaults") continue;
      if (e.value == "replace") {
        replace = true;
      } else if (e.value == "keep") {
        replace = false;
      } else {
        fail(e, "expected keep or replace");
      }
    }
    return replace;
  }

 private:
  const KeyValueDocument& doc_;
  std::string name_;
  std::vector<KeyValueEntry> entries_;
};

template <typename T>
T parse_number(const SectionReader& r, const KeyValueEntry& e) {
  T v{};
  const char* end = e.value.data() + e.value.size();
  auto res = std::from_chars(e.value.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) r.fail(e, "not a number: '" + e.value + "'");
  return v;
}

bool parse_bool(const SectionReader& r, const KeyValueEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  r.fail(e, "expected true or false");
}

std::vector<std::int64_t> parse_edges(const SectionReader& r, const KeyValueEntry& e) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_values(e.value)) {
    KeyValueEntry one = e;
    one.value = item;
    out.push_back(parse_number<std::int64_t>(r, one));
  }
  return out;
}

FactClass parse_class(const SectionReader& r, const KeyValueEntry& e, const std::string& s) {
  auto c = parse_fact_class(s);
  if (!c) r.fail(e, "unknown fact class '" + s + "'");
  return *c;
}

}  // namespace

EngineConfig EngineConfig::FromDocument(const KeyValueDocument& doc) {
  if (doc.version() != kConfigVersion) {
    throw ConfigError(doc.source() + ": config version " + std::to_string(doc.version()) +
                      " is not supported (expected " + std::to_string(kConfigVersion) + ")");
  }
  static const std::set<std::string> kSections = {
      "classify", "cues",     "actions", "crimes", "injury", "punishment",
      "constraints", "entities", "scale", "damage", "query", "synth", ""};
  for (const auto& e : doc.entries()) {
    if (!kSections.contains(e.section)) {
      throw ConfigError(doc.source() + ":" + std::to_string(e.line) + ": unknown section [" +
                        e.section + "]");
    }
    if (e.section.empty() && e.key != "version") {
      throw ConfigError(doc.source() + ":" + std::to_string(e.line) + ": key '" + e.key +
                        "' outside any section");
    }
  }

  EngineConfig cfg;

  // Cue table.
  {
    SectionReader classify(doc, "classify");
    SectionReader cues(doc, "cues");
    CueFallback fallback = cfg.cues.fallback();
    std::vector<FactClass> cueless = cfg.cues.cueless();
    for (const auto& e : classify.entries()) {
      if (e.key == "fallback") {
        auto f = parse_cue_fallback(e.value);
        if (!f) classify.fail(e, "expected inherit_previous or unclassified");
        fallback = *f;
      } else if (e.key == "cueless") {
        cueless.clear();
        for (const auto& s : split_values(e.value)) cueless.push_back(parse_class(classify, e, s));
      } else {
        classify.fail(e, "unknown key");
      }
    }
    std::vector<CuePhrase> list;
    if (!cues.replace_defaults()) list = cfg.cues.cues();
    for (const auto& e : cues.entries()) {
      if (e.key == "defaults") continue;
      if (e.key != "cue") cues.fail(e, "unknown key");
      const auto parts = split_values(e.value);
      if (parts.size() != 2) cues.fail(e, "expected '<phrase>, <class>'");
      list.push_back({parts[0], parse_class(cues, e, parts[1])});
    }
    cfg.cues = CuePhraseTable(std::move(list), fallback, std::move(cueless));
  }

  // Actions.
  {
    SectionReader r(doc, "actions");
    for (const auto& e : r.entries()) {
      if (e.key == "window") {
        auto w = parse_inheritance_window(e.value);
        if (!w) r.fail(e, "expected sentence, same_class or document");
        cfg.actions.window = *w;
      } else if (e.key == "excluded_modifiers") {
        cfg.actions.excluded_modifiers = split_values(e.value);
      } else if (e.key == "path_labels") {
        cfg.actions.path_labels = split_values(e.value);
        if (cfg.actions.path_labels.empty()) r.fail(e, "empty label set");
      } else if (e.key == "prune_hapax") {
        cfg.prune_hapax = parse_bool(r, e);
      } else {
        r.fail(e, "unknown key");
      }
    }
  }

  // Crime table.
  {
    SectionReader r(doc, "crimes");
    CrimeTable table = r.replace_defaults() ? CrimeTable() : cfg.entities.crimes;
    for (const auto& e : r.entries()) {
      if (e.key == "defaults") continue;
      if (e.key != "crime") r.fail(e, "unknown key");
      auto parts = split_values(e.value);
      if (parts.empty()) r.fail(e, "empty crime entry");
      try {
        table.add(parts[0], std::vector<std::string>(parts.begin() + 1, parts.end()));
      } catch (const ConfigError& err) {
        r.fail(e, err.what());
      }
    }
    cfg.entities.crimes = std::move(table);
  }

  // Injury lexicon.
  {
    SectionReader r(doc, "injury");
    std::vector<InjuryKeyword> list;
    if (!r.replace_defaults()) list = cfg.entities.injury.keywords();
    for (const auto& e : r.entries()) {
      if (e.key == "defaults") continue;
      if (e.key != "keyword") r.fail(e, "unknown key");
      const auto parts = split_values(e.value);
      if (parts.size() != 2) r.fail(e, "expected '<word>, <level>'");
      auto level = parse_injury_level(parts[1]);
      if (!level) r.fail(e, "unknown injury level '" + parts[1] + "'");
      list.push_back({parts[0], *level});
    }
    cfg.entities.injury = InjuryLexicon(std::move(list));
  }

  // Punishment keywords.
  {
    SectionReader r(doc, "punishment");
    std::vector<PunishmentKeyword> list;
    if (!r.replace_defaults()) list = cfg.entities.punishments.keywords();
    for (const auto& e : r.entries()) {
      if (e.key == "defaults") continue;
      if (e.key != "keyword") r.fail(e, "unknown key");
      const auto parts = split_values(e.value);
      if (parts.size() != 3) r.fail(e, "expected '<word>, <component>, <argument>'");
      auto c = parse_punishment_component(parts[1]);
      if (!c) r.fail(e, "unknown punishment component '" + parts[1] + "'");
      auto a = parse_punishment_argument(parts[2]);
      if (!a) r.fail(e, "expected none, duration or amount");
      list.push_back({parts[0], *c, *a});
    }
    cfg.entities.punishments = PunishmentKeywordTable(std::move(list));
  }

  // Constraints.
  {
    SectionReader r(doc, "constraints");
    std::vector<IntegrityConstraint> list;
    if (!r.replace_defaults()) list = cfg.entities.constraints.constraints();
    for (const auto& e : r.entries()) {
      if (e.key == "defaults") continue;
      try {
        auto c = ConstraintTable::ParseRule(e.key, e.value);
        std::erase_if(list, [&](const IntegrityConstraint& o) { return o.name == c.name; });
        list.push_back(std::move(c));
      } catch (const ConfigError& err) {
        r.fail(e, err.what());
      }
    }
    cfg.entities.constraints = ConstraintTable(std::move(list));
  }

  // Entity cues.
  {
    SectionReader r(doc, "entities");
    for (const auto& e : r.entries()) {
      if (e.key == "total_cues") {
        cfg.entities.total_cues = split_values(e.value);
      } else if (e.key == "conviction_markers") {
        cfg.entities.conviction_markers = split_values(e.value);
        if (cfg.entities.conviction_markers.empty()) r.fail(e, "empty marker list");
      } else if (e.key == "combined_cues") {
        cfg.entities.combined_cues = split_values(e.value);
      } else if (e.key == "damage_priority") {
        cfg.entities.damage_priority.clear();
        for (const auto& s : split_values(e.value)) {
          cfg.entities.damage_priority.push_back(parse_class(r, e, s));
        }
      } else {
        r.fail(e, "unknown key");
      }
    }
  }

  // Axes.
  {
    SectionReader r(doc, "scale");
    int steps = cfg.scale.steps();
    int unit = cfg.scale.unit_months();
    MonthsCombine combine = cfg.scale.combine();
    std::vector<std::int64_t> fine_edges = cfg.scale.fine_edges();
    for (const auto& e : r.entries()) {
      if (e.key == "steps") {
        steps = parse_number<int>(r, e);
      } else if (e.key == "unit_months") {
        unit = parse_number<int>(r, e);
      } else if (e.key == "combine") {
        auto c = parse_months_combine(e.value);
        if (!c) r.fail(e, "expected sum or max");
        combine = *c;
      } else if (e.key == "fine_edges") {
        fine_edges = parse_edges(r, e);
      } else {
        r.fail(e, "unknown key");
      }
    }
    cfg.scale = PunishmentScale(steps, unit, combine, fine_edges);

    SectionReader d(doc, "damage");
    for (const auto& e : d.entries()) {
      if (e.key != "money_edges") d.fail(e, "unknown key");
      cfg.damage_axis = DamageAxis(parse_edges(d, e));
    }
  }

  // Query defaults.
  {
    SectionReader r(doc, "query");
    for (const auto& e : r.entries()) {
      if (e.key == "filter_fraction") {
        cfg.filter_fraction = parse_number<double>(r, e);
        if (cfg.filter_fraction < 0 || cfg.filter_fraction > 1) r.fail(e, "must lie in [0, 1]");
      } else if (e.key == "top_k") {
        cfg.top_k = parse_number<std::size_t>(r, e);
      } else if (e.key == "elbow_tolerance") {
        cfg.elbow_tolerance = parse_number<double>(r, e);
      } else if (e.key == "forgiveness_terms") {
        cfg.forgiveness.terms = split_values(e.value);
      } else if (e.key == "negations") {
        cfg.forgiveness.negations = split_values(e.value);
      } else {
        r.fail(e, "unknown key");
      }
    }
  }
  return cfg;
}

EngineConfig EngineConfig::Load(const std::filesystem::path& path) {
  return FromDocument(KeyValueDocument::Load(path));
}

}  // namespace jddkb
