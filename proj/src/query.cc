#include "jddkb/query.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"

namespace jddkb {

namespace {

const Partition& require_partition(const KnowledgeBase& kb, std::string_view name) {
  const Partition* p = kb.partition(name);
  if (!p) throw QueryError("unknown partition '" + std::string(name) + "'");
  return *p;
}

struct AxisView {
  std::vector<std::string> labels;
};

AxisView axis_view(const KnowledgeBase& kb, const Partition& p, Axis a) {
  AxisView v;
  switch (a) {
    case Axis::kAction:
      v.labels = p.actions();
      break;
    case Axis::kDamage:
      for (int i = 0; i < kb.damage_axis().size(); ++i) {
        v.labels.push_back(kb.damage_axis().label(i));
      }
      break;
    case Axis::kPunishment:
      for (int i = 0; i < kb.scale().size(); ++i) v.labels.push_back(kb.scale().label(i));
      break;
  }
  return v;
}

int coordinate_of(const CellKey& key, Axis a, const std::vector<std::string>& actions) {
  switch (a) {
    case Axis::kAction:
      return static_cast<int>(
          std::lower_bound(actions.begin(), actions.end(), key.action) - actions.begin());
    case Axis::kDamage:
      return key.damage;
    case Axis::kPunishment:
      return key.punishment;
  }
  return 0;
}

}  // namespace

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::kAction:
      return "action";
    case Axis::kDamage:
      return "damage";
    case Axis::kPunishment:
      return "punishment";
  }
  return "?";
}

Axis parse_axis(std::string_view s) {
  if (s == "action") return Axis::kAction;
  if (s == "damage") return Axis::kDamage;
  if (s == "punishment") return Axis::kPunishment;
  throw QueryError("unknown axis '" + std::string(s) + "'");
}

double Histogram::total() const {
  double t = 0;
  for (const auto& e : entries) t += e.value;
  return t;
}

const HistogramEntry* Histogram::find(const std::vector<std::string>& labels) const {
  for (const auto& e : entries) {
    if (e.labels == labels) return &e;
  }
  return nullptr;
}

Histogram get_marginals(const KnowledgeBase& kb, const MarginalQuery& q) {
  const Partition& p = require_partition(kb, q.partition);
  if (q.keep.empty() || q.keep.size() > 2) {
    throw QueryError("marginals keep one or two axes");
  }
  if (q.keep.size() == 2 && q.keep[0] == q.keep[1]) {
    throw QueryError("axis '" + std::string(to_string(q.keep[0])) + "' kept twice");
  }
  const auto actions = p.actions();
  std::vector<AxisView> views;
  for (Axis a : q.keep) views.push_back(axis_view(kb, p, a));
  for (std::size_t i = 0; i < q.fixed.size(); ++i) {
    const auto& f = q.fixed[i];
    if (std::find(q.keep.begin(), q.keep.end(), f.axis) != q.keep.end()) {
      throw QueryError("axis '" + std::string(to_string(f.axis)) + "' both kept and fixed");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (q.fixed[j].axis == f.axis) throw QueryError("axis fixed twice");
    }
    const auto size = axis_view(kb, p, f.axis).labels.size();
    if (f.coordinate < 0 || static_cast<std::size_t>(f.coordinate) >= size) {
      throw QueryError("fixed " + std::string(to_string(f.axis)) + " coordinate " +
                       std::to_string(f.coordinate) + " out of range");
    }
  }

  const std::size_t n0 = views[0].labels.size();
  const std::size_t n1 = views.size() == 2 ? views[1].labels.size() : 1;
  std::vector<double> values(n0 * n1, 0.0);
  std::vector<std::set<std::string>> distinct;
  if (q.mode == CountMode::kDistinctCases) distinct.resize(n0 * n1);

  for (const auto& [key, cell] : p.cells()) {
    bool match = true;
    for (const auto& f : q.fixed) {
      match = match && coordinate_of(key, f.axis, actions) == f.coordinate;
    }
    if (!match) continue;
    std::size_t idx = static_cast<std::size_t>(coordinate_of(key, q.keep[0], actions)) * n1;
    if (views.size() == 2) idx += static_cast<std::size_t>(coordinate_of(key, q.keep[1], actions));
    if (q.mode == CountMode::kTuples) {
      values[idx] += static_cast<double>(cell.count);
    } else {
      distinct[idx].insert(cell.postings.begin(), cell.postings.end());
    }
  }

  Histogram h;
  h.axes = q.keep;
  h.entries.reserve(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      HistogramEntry e;
      e.labels.push_back(views[0].labels[i]);
      e.index.push_back(static_cast<int>(i));
      if (views.size() == 2) {
        e.labels.push_back(views[1].labels[j]);
        e.index.push_back(static_cast<int>(j));
      }
      const std::size_t idx = i * n1 + j;
      e.value = q.mode == CountMode::kTuples ? values[idx]
                                             : static_cast<double>(distinct[idx].size());
      h.entries.push_back(std::move(e));
    }
  }
  return h;
}

Histogram sort_descending(Histogram h) {
  std::stable_sort(h.entries.begin(), h.entries.end(),
                   [](const HistogramEntry& a, const HistogramEntry& b) {
                     if (a.value != b.value) return a.value > b.value;
                     return a.labels < b.labels;
                   });
  return h;
}

std::vector<HistogramEntry> get_axis_values(const Histogram& h,
                                            const std::function<bool(double)>& predicate) {
  std::vector<HistogramEntry> out;
  for (const auto& e : h.entries) {
    if (predicate(e.value)) out.push_back(e);
  }
  return out;
}

ElbowResult find_elbow(const std::vector<double>& values, double tolerance) {
  const std::size_t n = values.size();
  if (n < 3) throw QueryError("find_elbow needs at least three values");
  for (std::size_t i = 1; i < n; ++i) {
    if (values[i] > values[i - 1]) throw QueryError("find_elbow input is not sorted descending");
  }
  const double hi = values.front();
  const double lo = values.back();
  ElbowResult r;
  if (hi - lo <= 0) return r;
  // Scaled, the chord runs from (0, 1) to (1, 0): x + y - 1 = 0. Distances
  // within rounding noise count as ties so the smallest index wins.
  constexpr double kTie = 1e-12;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n - 1);
    const double y = (values[i] - lo) / (hi - lo);
    const double d = std::fabs(x + y - 1.0) / std::sqrt(2.0);
    if (d > r.distance + kTie) {
      r.distance = d;
      r.index = i;
    }
  }
  if (r.distance < tolerance) return ElbowResult{};
  r.found = true;
  r.cutoff = values[r.index];
  return r;
}

ElbowResult find_elbow(const Histogram& sorted, double tolerance) {
  std::vector<double> v;
  for (const auto& e : sorted.entries) v.push_back(e.value);
  return find_elbow(v, tolerance);
}

std::vector<ImportanceScore> importance_scores(const Histogram& subset,
                                               const Histogram& partition,
                                               double filter_fraction) {
  for (const Histogram* h : {&subset, &partition}) {
    if (h->axes.size() != 1 || h->axes[0] != Axis::kAction) {
      throw QueryError("importance scores need action histograms");
    }
  }
  if (filter_fraction < 0 || filter_fraction > 1) {
    throw QueryError("filter_fraction must lie in [0, 1]");
  }
  std::map<std::string, double> whole;
  for (const auto& e : partition.entries) whole[e.labels[0]] += e.value;
  std::map<std::string, double> part;
  for (const auto& e : subset.entries) {
    if (e.value <= 0) continue;
    const auto it = whole.find(e.labels[0]);
    if (it == whole.end() || it->second <= 0) {
      throw QueryError("action '" + e.labels[0] +
                       "' occurs in the subset but not in the partition");
    }
    part[e.labels[0]] += e.value;
  }

  std::vector<std::pair<std::string, double>> by_freq(whole.begin(), whole.end());
  std::sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const auto drop = static_cast<std::size_t>(
      std::floor(filter_fraction * static_cast<double>(by_freq.size())));

  std::vector<ImportanceScore> out;
  for (std::size_t i = drop; i < by_freq.size(); ++i) {
    const auto& [action, freq] = by_freq[i];
    if (freq <= 0) continue;
    const double s = part.contains(action) ? part[action] : 0.0;
    out.push_back({action, s, freq, s / freq});
  }
  std::sort(out.begin(), out.end(), [](const ImportanceScore& a, const ImportanceScore& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.partition_frequency != b.partition_frequency) {
      return a.partition_frequency > b.partition_frequency;
    }
    return a.action < b.action;
  });
  return out;
}

// ---------------------------------------------------------------- question 1

std::string_view to_string(Splitter s) {
  return s == Splitter::kDefenseArgument ? "defense_argument" : "forgiveness";
}

std::optional<Splitter> parse_splitter(std::string_view s) {
  if (s == "defense_argument") return Splitter::kDefenseArgument;
  if (s == "forgiveness") return Splitter::kForgiveness;
  return std::nullopt;
}

bool shows_forgiveness(const JddRecord& record, const ForgivenessRules& rules) {
  auto names_term = [&](std::string_view text, bool exact) {
    return std::any_of(rules.terms.begin(), rules.terms.end(), [&](const std::string& t) {
      return exact ? text == t : text.find(t) != std::string_view::npos;
    });
  };
  for (const auto& a : record.actions) {
    bool mentions = names_term(a.trigger, true);
    for (const auto& o : a.object) mentions = mentions || names_term(o, false);
    if (!mentions) continue;
    const bool negated = std::any_of(a.modifier.begin(), a.modifier.end(), [&](const std::string& m) {
      return std::find(rules.negations.begin(), rules.negations.end(), m) != rules.negations.end();
    });
    if (!negated) return true;
  }
  return false;
}

Question1Result question1_pipeline(const KnowledgeBase& kb, std::string_view partition,
                                   Splitter splitter, const ForgivenessRules& rules,
                                   Diagnostics& diagnostics) {
  const Partition& p = require_partition(kb, partition);
  Question1Result result;
  result.splitter = splitter;
  std::set<std::string> cases;
  for (const auto& [key, cell] : p.cells()) cases.insert(cell.postings.begin(), cell.postings.end());
  for (const auto& id : cases) {
    const JddRecord* r = kb.record(id);
    const bool holds = r && (splitter == Splitter::kDefenseArgument ? has_defense_argument(*r)
                                                                   : shows_forgiveness(*r, rules));
    (holds ? result.c1 : result.c2).push_back(id);
  }

  auto densities = [&](const std::string& group, const std::vector<std::string>& members) {
    if (members.empty()) {
      diagnostics.warn(std::string(partition), "group " + group + " is empty");
      return;
    }
    const std::set<std::string> in(members.begin(), members.end());
    std::map<int, std::set<std::pair<std::string, int>>> per_damage;
    std::set<std::pair<std::string, int>> pooled;
    for (const auto& [key, cell] : p.cells()) {
      for (const auto& id : cell.postings) {
        if (!in.contains(id)) continue;
        per_damage[key.damage].insert({id, key.punishment});
        pooled.insert({id, key.punishment});
      }
    }
    auto to_density = [&](const std::string& damage, const std::set<std::pair<std::string, int>>& pairs) {
      std::map<int, std::size_t> counts;
      for (const auto& [id, pun] : pairs) ++counts[pun];
      GroupDensity g{group, damage, pairs.size(), {}};
      for (const auto& [pun, c] : counts) {
        g.density.emplace_back(kb.scale().label(pun),
                               static_cast<double>(c) / static_cast<double>(pairs.size()));
      }
      return g;
    };
    for (const auto& [damage, pairs] : per_damage) {
      result.per_damage.push_back(to_density(kb.damage_axis().label(damage), pairs));
    }
    if (!pooled.empty()) result.pooled.push_back(to_density("pooled", pooled));
  };
  densities("C1", result.c1);
  densities("C2", result.c2);
  return result;
}

// ---------------------------------------------------------------- question 2

Question2aResult question2a_pipeline(const KnowledgeBase& kb, std::string_view partition,
                                     double tolerance) {
  const Partition& p = require_partition(kb, partition);
  Question2aResult result;
  Histogram h = get_marginals(kb, {std::string(partition), {Axis::kPunishment}, {},
                                   CountMode::kDistinctCases});
  std::erase_if(h.entries, [](const HistogramEntry& e) { return e.value <= 0; });
  result.marginal = sort_descending(std::move(h));

  const int unit = kb.scale().unit_months();
  for (const auto& [months, ids] : p.durations()) {
    if (months % unit == 0) continue;
    OffUnitDuration d{months, ids};
    d.case_ids.erase(std::unique(d.case_ids.begin(), d.case_ids.end()), d.case_ids.end());
    result.off_unit.push_back(std::move(d));
  }

  if (result.marginal.entries.size() < 3) {
    result.note = "fewer than three punishment levels; no rare tail";
    return result;
  }
  result.elbow = find_elbow(result.marginal, tolerance);
  if (!result.elbow.found) {
    result.note = "no elbow; no rare tail";
    return result;
  }
  result.rare_tail = true;
  const double cutoff = result.elbow.cutoff;
  for (const auto& e : get_axis_values(result.marginal, [&](double v) { return v <= cutoff; })) {
    RarePunishment rare{e.labels[0], e.value, {}};
    std::map<std::pair<std::string, int>, std::uint64_t> ctx;
    for (const auto& [key, cell] : p.cells()) {
      if (key.punishment == e.index[0]) ctx[{key.action, key.damage}] += cell.count;
    }
    for (const auto& [ad, count] : ctx) {
      rare.contexts.push_back({ad.first, kb.damage_axis().label(ad.second), count});
    }
    std::stable_sort(rare.contexts.begin(), rare.contexts.end(),
                     [](const CellContext& a, const CellContext& b) { return a.count > b.count; });
    result.rare.push_back(std::move(rare));
  }
  return result;
}

Question2bResult question2b_pipeline(const KnowledgeBase& kb, std::string_view partition,
                                     std::size_t k, double filter_fraction,
                                     std::optional<int> punishment) {
  const std::string name(partition);
  const int pun = punishment.value_or(kb.scale().exemption());
  Question2bResult result;
  result.fixed_punishment = kb.scale().label(pun);
  const Histogram grid =
      get_marginals(kb, {name, {Axis::kAction, Axis::kDamage}, {{Axis::kPunishment, pun}}, CountMode::kTuples});
  const Histogram subset = get_marginals(kb, {name, {Axis::kAction}, {{Axis::kPunishment, pun}}, CountMode::kTuples});
  const Histogram whole = get_marginals(kb, {name, {Axis::kAction}, {}});
  result.top = importance_scores(subset, whole, filter_fraction);
  if (result.top.size() > k) result.top.resize(k);
  result.heatmap.axes = grid.axes;
  for (const auto& s : result.top) {
    for (const auto& e : grid.entries) {
      if (e.labels[0] == s.action) result.heatmap.entries.push_back(e);
    }
  }
  return result;
}

// ---------------------------------------------------------------- export

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "csv") return ExportFormat::kCsv;
  if (s == "json") return ExportFormat::kJson;
  return std::nullopt;
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void export_heatmap(const Histogram& h, const std::filesystem::path& path,
                    ExportFormat format) {
  if (h.axes.size() != 2) throw QueryError("heatmap export needs a 2-D histogram");
  std::vector<std::string> rows, cols;
  std::map<std::pair<std::string, std::string>, double> grid;
  for (const auto& e : h.entries) {
    if (std::find(rows.begin(), rows.end(), e.labels[0]) == rows.end()) rows.push_back(e.labels[0]);
    if (std::find(cols.begin(), cols.end(), e.labels[1]) == cols.end()) cols.push_back(e.labels[1]);
    grid[{e.labels[0], e.labels[1]}] += e.value;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  auto value = [&](const std::string& r, const std::string& c) {
    const auto it = grid.find({r, c});
    return it == grid.end() ? 0.0 : it->second;
  };
  if (format == ExportFormat::kCsv) {
    auto field = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    out << to_string(h.axes[0]) << '/' << to_string(h.axes[1]);
    for (const auto& c : cols) out << ',' << field(c);
    out << '\n';
    for (const auto& r : rows) {
      out << field(r);
      for (const auto& c : cols) out << ',' << format_number(value(r, c));
      out << '\n';
    }
  } else {
    nlohmann::json j;
    j["axes"] = {std::string(to_string(h.axes[0])), std::string(to_string(h.axes[1]))};
    j["rows"] = rows;
    j["columns"] = cols;
    nlohmann::json values = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& c : cols) row.push_back(value(r, c));
      values.push_back(row);
    }
    j["values"] = values;
    out << j.dump(1) << '\n';
  }
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace jddkb
