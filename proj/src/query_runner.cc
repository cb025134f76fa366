#include "jddkb/query_runner.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "jddkb/utf8.h"

namespace jddkb {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Pipeline, std::string_view>, 6> kPipelines = {{
    {Pipeline::kQuestion1, "q1"},
    {Pipeline::kQuestion2a, "q2a"},
    {Pipeline::kQuestion2b, "q2b"},
    {Pipeline::kMarginals, "marginals"},
    {Pipeline::kCases, "cases"},
    {Pipeline::kResolve, "resolve"},
}};

[[noreturn]] void bad(std::string_view key, const std::string& why) {
  throw QueryError("query field '" + std::string(key) + "': " + why);
}

std::size_t to_count(std::string_view key, std::string_view v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(std::string(v), &used);
  } catch (const std::logic_error&) {
    bad(key, "expected a non-negative integer, got '" + std::string(v) + "'");
  }
  if (used != v.size() || v.starts_with('-')) {
    bad(key, "expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return static_cast<std::size_t>(n);
}

double to_real(std::string_view key, std::string_view v) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(std::string(v), &used);
  } catch (const std::logic_error&) {
    bad(key, "expected a number, got '" + std::string(v) + "'");
  }
  if (used != v.size()) bad(key, "expected a number, got '" + std::string(v) + "'");
  return d;
}

Axis to_axis(std::string_view key, std::string_view v) {
  try {
    return parse_axis(v);
  } catch (const QueryError&) {
    bad(key, "unknown axis '" + std::string(v) + "'");
  }
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

class Writer {
 public:
  explicit Writer(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("error writing " + path.string());
    written_.push_back(path);
  }
  void json_file(const std::string& name, const json& j) { write(name, j.dump(1) + "\n"); }
  void remember(std::filesystem::path p) { written_.push_back(std::move(p)); }
  const std::vector<std::filesystem::path>& written() const { return written_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

int resolve_label(const KnowledgeBase& kb, const Partition& p, Axis axis,
                  const std::string& label) {
  std::optional<int> idx;
  switch (axis) {
    case Axis::kAction:
      idx = p.action_index(label);
      break;
    case Axis::kDamage:
      idx = kb.damage_axis().index_of(label);
      break;
    case Axis::kPunishment:
      idx = kb.scale().index_of(label);
      break;
  }
  if (!idx) {
    throw QueryError("unknown " + std::string(to_string(axis)) + " label '" + label + "'");
  }
  return *idx;
}

const Partition& require(const KnowledgeBase& kb, const std::string& name) {
  if (name.empty()) throw QueryError("query field 'partition': required");
  const Partition* p = kb.partition(name);
  if (p == nullptr) throw QueryError("query field 'partition': unknown partition '" + name + "'");
  return *p;
}

json density_json(const std::vector<GroupDensity>& groups) {
  json out = json::array();
  for (const auto& g : groups) {
    json d = json::array();
    for (const auto& [label, share] : g.density) d.push_back({label, share});
    out.push_back({{"group", g.group}, {"damage", g.damage}, {"pairs", g.pairs}, {"density", d}});
  }
  return out;
}

std::string density_csv(const std::vector<GroupDensity>& groups) {
  std::string out = "group,damage,pairs,punishment,density\n";
  for (const auto& g : groups) {
    for (const auto& [label, share] : g.density) {
      out += g.group + "," + csv_field(g.damage) + "," + std::to_string(g.pairs) + "," +
             csv_field(label) + "," + format_number(share) + "\n";
    }
  }
  return out;
}

void run_q1(const KnowledgeBase& kb, const QuerySpec& q, const EngineConfig& config, Writer& w,
            Diagnostics& diags) {
  require(kb, q.partition);
  const auto r = question1_pipeline(kb, q.partition, q.splitter, config.forgiveness, diags);
  if (q.format == ExportFormat::kJson) {
    w.json_file("q1.json", {{"splitter", to_string(r.splitter)},
                            {"C1", r.c1},
                            {"C2", r.c2},
                            {"per_damage", density_json(r.per_damage)},
                            {"pooled", density_json(r.pooled)}});
    return;
  }
  std::string groups = "group,case_id\n";
  for (const auto& id : r.c1) groups += "C1," + csv_field(id) + "\n";
  for (const auto& id : r.c2) groups += "C2," + csv_field(id) + "\n";
  w.write("q1_groups.csv", groups);
  w.write("q1_per_damage.csv", density_csv(r.per_damage));
  w.write("q1_pooled.csv", density_csv(r.pooled));
}

void run_q2a(const KnowledgeBase& kb, const QuerySpec& q, Writer& w) {
  require(kb, q.partition);
  const auto r = question2a_pipeline(kb, q.partition, q.tolerance);
  json elbow = {{"found", r.elbow.found},
                {"index", r.elbow.index},
                {"cutoff", r.elbow.cutoff},
                {"distance", r.elbow.distance},
                {"rare_tail", r.rare_tail},
                {"note", r.note}};
  if (q.format == ExportFormat::kJson) {
    json marginal = json::array();
    for (const auto& e : r.marginal.entries) marginal.push_back({e.labels[0], e.value});
    json rare = json::array();
    for (const auto& p : r.rare) {
      json ctx = json::array();
      for (const auto& c : p.contexts) ctx.push_back({{"action", c.action}, {"damage", c.damage}, {"count", c.count}});
      rare.push_back({{"punishment", p.punishment}, {"cases", p.cases}, {"contexts", ctx}});
    }
    json off = json::array();
    for (const auto& o : r.off_unit) off.push_back({{"months", o.months}, {"case_ids", o.case_ids}});
    w.json_file("q2a.json", {{"marginal", marginal}, {"elbow", elbow}, {"rare", rare}, {"off_unit", off}});
    return;
  }
  std::string marginal = "punishment,cases\n";
  for (const auto& e : r.marginal.entries) {
    marginal += csv_field(e.labels[0]) + "," + format_number(e.value) + "\n";
  }
  w.write("q2a_marginal.csv", marginal);
  w.write("q2a_elbow.csv", "found,index,cutoff,distance,rare_tail,note\n" +
                               std::string(r.elbow.found ? "true" : "false") + "," +
                               std::to_string(r.elbow.index) + "," + format_number(r.elbow.cutoff) +
                               "," + format_number(r.elbow.distance) + "," +
                               (r.rare_tail ? "true" : "false") + "," + csv_field(r.note) + "\n");
  std::string rare = "punishment,cases,action,damage,count\n";
  for (const auto& p : r.rare) {
    for (const auto& c : p.contexts) {
      rare += csv_field(p.punishment) + "," + format_number(p.cases) + "," + csv_field(c.action) +
              "," + csv_field(c.damage) + "," + std::to_string(c.count) + "\n";
    }
  }
  w.write("q2a_rare.csv", rare);
  std::string off = "months,case_id\n";
  for (const auto& o : r.off_unit) {
    for (const auto& id : o.case_ids) off += std::to_string(o.months) + "," + csv_field(id) + "\n";
  }
  w.write("q2a_off_unit.csv", off);
}

void run_q2b(const KnowledgeBase& kb, const QuerySpec& q, Writer& w) {
  const Partition& p = require(kb, q.partition);
  std::optional<int> fixed;
  if (q.punishment) fixed = resolve_label(kb, p, Axis::kPunishment, *q.punishment);
  const auto r = question2b_pipeline(kb, q.partition, q.k, q.filter_fraction, fixed);
  if (q.format == ExportFormat::kJson) {
    json top = json::array();
    for (const auto& s : r.top) {
      top.push_back({{"action", s.action},
                     {"subset_frequency", s.subset_frequency},
                     {"partition_frequency", s.partition_frequency},
                     {"score", s.score}});
    }
    w.json_file("q2b.json", {{"punishment", r.fixed_punishment}, {"top", top}});
    export_heatmap(r.heatmap, w.dir() / "q2b_heatmap.json", ExportFormat::kJson);
    w.remember(w.dir() / "q2b_heatmap.json");
    return;
  }
  std::string top = "action,subset_frequency,partition_frequency,score\n";
  for (const auto& s : r.top) {
    top += csv_field(s.action) + "," + format_number(s.subset_frequency) + "," +
           format_number(s.partition_frequency) + "," + format_number(s.score) + "\n";
  }
  w.write("q2b_top.csv", top);
  export_heatmap(r.heatmap, w.dir() / "q2b_heatmap.csv", ExportFormat::kCsv);
  w.remember(w.dir() / "q2b_heatmap.csv");
}

void run_marginals(const KnowledgeBase& kb, const QuerySpec& q, Writer& w) {
  const Partition& p = require(kb, q.partition);
  MarginalQuery mq{q.partition, q.keep, {}, q.count};
  for (const auto& [axis, label] : q.fix) mq.fixed.push_back({axis, resolve_label(kb, p, axis, label)});
  const Histogram h = get_marginals(kb, mq);
  if (q.format == ExportFormat::kJson) {
    json axes = json::array();
    for (Axis a : h.axes) axes.push_back(to_string(a));
    json entries = json::array();
    for (const auto& e : h.entries) entries.push_back({{"labels", e.labels}, {"value", e.value}});
    w.json_file("marginals.json", {{"axes", axes}, {"entries", entries}});
    return;
  }
  std::string out;
  for (Axis a : h.axes) out += std::string(to_string(a)) + ",";
  out += "value\n";
  for (const auto& e : h.entries) {
    for (const auto& l : e.labels) out += csv_field(l) + ",";
    out += format_number(e.value) + "\n";
  }
  w.write("marginals.csv", out);
}

void run_cases(const KnowledgeBase& kb, const QuerySpec& q, Writer& w, Diagnostics& diags) {
  const Partition& p = require(kb, q.partition);
  CellQuery cq{q.partition, q.action, std::nullopt, std::nullopt};
  if (q.action && !p.action_index(*q.action)) {
    throw QueryError("unknown action label '" + *q.action + "'");
  }
  if (q.damage) cq.damage = resolve_label(kb, p, Axis::kDamage, *q.damage);
  if (q.punishment) cq.punishment = resolve_label(kb, p, Axis::kPunishment, *q.punishment);
  const auto ids = kb.get_cases(cq, &diags);
  if (q.format == ExportFormat::kJson) {
    w.json_file("cases.json", ids);
    return;
  }
  std::string out = "case_id\n";
  for (const auto& id : ids) out += csv_field(id) + "\n";
  w.write("cases.csv", out);
}

void run_resolve(const KnowledgeBase& kb, const QuerySpec& q, Writer& w) {
  if (q.path.empty()) throw QueryError("query field 'path': required");
  std::vector<ForwardRef> refs;
  try {
    refs = kb.resolve_forward(q.path);
  } catch (const PathError& e) {
    throw QueryError(std::string("query field 'path': ") + e.what());
  }
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("*"); };
  if (q.format == ExportFormat::kJson) {
    json out = json::array();
    for (const auto& r : refs) out.push_back(r.describe());
    w.json_file("resolve.json", out);
    return;
  }
  std::string out = "partition,action,damage,punishment,ref\n";
  for (const auto& r : refs) {
    out += csv_field(r.partition) + "," + opt(r.action) + "," + opt(r.damage) + "," +
           opt(r.punishment) + "," + csv_field(r.describe()) + "\n";
  }
  w.write("resolve.csv", out);
}

}  // namespace

std::string_view to_string(Pipeline p) {
  for (const auto& [v, name] : kPipelines) {
    if (v == p) return name;
  }
  return "?";
}

std::optional<Pipeline> parse_pipeline(std::string_view s) {
  for (const auto& [v, name] : kPipelines) {
    if (name == s) return v;
  }
  return std::nullopt;
}

QuerySpec QuerySpec::Defaults(const EngineConfig& config) {
  QuerySpec q;
  q.k = config.top_k;
  q.filter_fraction = config.filter_fraction;
  q.tolerance = config.elbow_tolerance;
  return q;
}

void QuerySpec::set(std::string_view key, std::string_view raw) {
  const std::string value(utf8::trim(raw));
  if (key == "partition") {
    partition = value;
  } else if (key == "pipeline") {
    auto p = parse_pipeline(value);
    if (!p) bad(key, "unknown pipeline '" + value + "' (q1, q2a, q2b, marginals, cases, resolve)");
    pipeline = *p;
  } else if (key == "splitter") {
    auto s = parse_splitter(value);
    if (!s) bad(key, "unknown splitter '" + value + "' (defense_argument, forgiveness)");
    splitter = *s;
  } else if (key == "keep") {
    keep.clear();
    for (const auto& item : split_values(value)) keep.push_back(to_axis(key, item));
    if (keep.empty() || keep.size() > 2) bad(key, "one or two axes");
  } else if (key == "fix") {
    const auto eq = value.find('=');
    if (eq == std::string::npos) bad(key, "expected <axis>=<label>");
    fix.emplace_back(to_axis(key, utf8::trim(std::string_view(value).substr(0, eq))),
                     std::string(utf8::trim(std::string_view(value).substr(eq + 1))));
  } else if (key == "count") {
    if (value == "tuples") {
      count = CountMode::kTuples;
    } else if (value == "distinct_cases") {
      count = CountMode::kDistinctCases;
    } else {
      bad(key, "expected tuples or distinct_cases");
    }
  } else if (key == "k") {
    k = to_count(key, value);
  } else if (key == "filter_fraction") {
    filter_fraction = to_real(key, value);
    if (filter_fraction < 0 || filter_fraction >= 1) bad(key, "must lie in [0, 1)");
  } else if (key == "tolerance") {
    tolerance = to_real(key, value);
    if (tolerance < 0) bad(key, "must be non-negative");
  } else if (key == "action") {
    action = value;
  } else if (key == "damage") {
    damage = value;
  } else if (key == "punishment") {
    punishment = value;
  } else if (key == "path") {
    path = value;
  } else if (key == "format") {
    auto f = parse_export_format(value);
    if (!f) bad(key, "expected csv or json");
    format = *f;
  } else {
    bad(key, "unknown field");
  }
}

void QuerySpec::apply(const KeyValueDocument& doc) {
  if (doc.version() != 1) {
    throw QueryError(doc.source() + ": query version " + std::to_string(doc.version()) +
                     " is not supported (expected 1)");
  }
  for (const auto& e : doc.entries()) {
    if (!e.section.empty()) {
      throw QueryError(doc.source() + ":" + std::to_string(e.line) + ": query field '" + e.key +
                       "': sections are not allowed in a query");
    }
    try {
      set(e.key, e.value);
    } catch (const QueryError& err) {
      throw QueryError(doc.source() + ":" + std::to_string(e.line) + ": " + err.what());
    }
  }
}

std::string QuerySpec::echo() const {
  std::ostringstream out;
  out << "version = 1\n";
  out << "pipeline = " << to_string(pipeline) << "\n";
  out << "partition = " << partition << "\n";
  out << "format = " << (format == ExportFormat::kCsv ? "csv" : "json") << "\n";
  switch (pipeline) {
    case Pipeline::kQuestion1:
      out << "splitter = " << to_string(splitter) << "\n";
      break;
    case Pipeline::kQuestion2a:
      out << "tolerance = " << format_number(tolerance) << "\n";
      break;
    case Pipeline::kQuestion2b:
      out << "k = " << k << "\n";
      out << "filter_fraction = " << format_number(filter_fraction) << "\n";
      out << "punishment = " << punishment.value_or("exemption") << "\n";
      break;
    case Pipeline::kMarginals: {
      std::vector<std::string> axes;
      for (Axis a : keep) axes.emplace_back(to_string(a));
      out << "keep = " << join(axes, ", ") << "\n";
      for (const auto& [axis, label] : fix) out << "fix = " << to_string(axis) << "=" << label << "\n";
      out << "count = " << (count == CountMode::kTuples ? "tuples" : "distinct_cases") << "\n";
      break;
    }
    case Pipeline::kCases:
      out << "action = " << action.value_or("*") << "\n";
      out << "damage = " << damage.value_or("*") << "\n";
      out << "punishment = " << punishment.value_or("*") << "\n";
      break;
    case Pipeline::kResolve:
      out << "path = " << path << "\n";
      break;
  }
  return out.str();
}

std::vector<std::filesystem::path> run_query(const KnowledgeBase& kb, const QuerySpec& spec,
                                             const EngineConfig& config,
                                             const std::filesystem::path& out_dir,
                                             Diagnostics& diagnostics) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  Writer w(out_dir);
  switch (spec.pipeline) {
    case Pipeline::kQuestion1:
      run_q1(kb, spec, config, w, diagnostics);
      break;
    case Pipeline::kQuestion2a:
      run_q2a(kb, spec, w);
      break;
    case Pipeline::kQuestion2b:
      run_q2b(kb, spec, w);
      break;
    case Pipeline::kMarginals:
      run_marginals(kb, spec, w);
      break;
    case Pipeline::kCases:
      run_cases(kb, spec, w, diagnostics);
      break;
    case Pipeline::kResolve:
      run_resolve(kb, spec, w);
      break;
  }
  w.write("query.txt", spec.echo());
  return w.written();
}

}  // namespace jddkb
