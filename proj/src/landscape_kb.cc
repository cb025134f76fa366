#include "jddkb/landscape_kb.h"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "jddkb/record_io.h"
#include "json.hpp"

namespace jddkb {

using nlohmann::json;

namespace {

void insert_sorted(std::vector<std::string>& v, const std::string& id) {
  v.insert(std::upper_bound(v.begin(), v.end(), id), id);
}

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool same_axes(const PunishmentScale& a, const PunishmentScale& b) {
  return a.steps() == b.steps() && a.unit_months() == b.unit_months() &&
         a.combine() == b.combine() && a.fine_edges() == b.fine_edges();
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    out.emplace_back(path.substr(start, dot == std::string_view::npos
                                            ? std::string_view::npos
                                            : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
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

constexpr std::string_view kActionsInfix = ".sentence.actions.";

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string action_path(FactClass cls, std::string_view trigger) {
  return "JDD." + std::string(schema_element(cls)) + std::string(kActionsInfix) +
         std::string(trigger);
}

std::string ForwardRef::describe() const {
  auto coord = [](const std::optional<int>& c) {
    return "[" + (c ? std::to_string(*c) : std::string("*")) + "]";
  };
  return "M." + partition + coord(action) + coord(damage) + coord(punishment);
}

// ---------------------------------------------------------------- Partition

std::vector<std::string> Partition::actions() const {
  return {actions_.begin(), actions_.end()};
}

std::optional<int> Partition::action_index(std::string_view action) const {
  const auto it = actions_.find(std::string(action));
  if (it == actions_.end()) return std::nullopt;
  return static_cast<int>(std::distance(actions_.begin(), it));
}

void Partition::add(const CellKey& key, const std::string& case_id) {
  Cell& cell = cells_[key];
  ++cell.count;
  insert_sorted(cell.postings, case_id);
  actions_.insert(key.action);
  ++total_;
}

void Partition::add_fine(int bucket, const std::string& case_id) {
  insert_sorted(fines_[bucket], case_id);
}

void Partition::add_duration(std::int64_t months, const std::string& case_id) {
  insert_sorted(durations_[months], case_id);
}

void Partition::merge(const Partition& other) {
  for (const auto& [key, cell] : other.cells_) {
    Cell& mine = cells_[key];
    mine.count += cell.count;
    mine.postings = merge_sorted(mine.postings, cell.postings);
  }
  actions_.insert(other.actions_.begin(), other.actions_.end());
  total_ += other.total_;
  for (const auto& [b, ids] : other.fines_) fines_[b] = merge_sorted(fines_[b], ids);
  for (const auto& [m, ids] : other.durations_) {
    durations_[m] = merge_sorted(durations_[m], ids);
  }
}

void Partition::restore_cell(const CellKey& key, Cell cell) {
  total_ += cell.count;
  actions_.insert(key.action);
  cells_[key] = std::move(cell);
}

// ---------------------------------------------------------------- build

KnowledgeBase KnowledgeBase::Build(std::span<const JddRecord> records,
                                   const PunishmentScale& scale,
                                   const DamageAxis& damage_axis,
                                   Diagnostics& diagnostics, int jobs) {
  KnowledgeBase kb(scale, damage_axis);
  const std::size_t n = records.size();
  const std::size_t workers =
      std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1,
                              std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (const auto& r : records) kb.add_record(r, diagnostics);
    return kb;
  }
  std::vector<KnowledgeBase> parts(workers, KnowledgeBase(scale, damage_axis));
  std::vector<Diagnostics> diags(workers);
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
          parts[w].add_record(records[i], diags[w]);
        }
      });
    }
  }
  for (std::size_t w = 0; w < workers; ++w) {
    kb.merge(parts[w]);
    diagnostics.append(diags[w]);
  }
  return kb;
}

void KnowledgeBase::add_record(const JddRecord& record, Diagnostics& diagnostics) {
  if (auto [it, inserted] = records_.emplace(record.case_id, record);
      !inserted && !(it->second == record)) {
    throw IntegrityError("case id '" + record.case_id +
                         "' indexed with two different records");
  }
  ++stats_.records;
  if (has_invalid_punishment(record)) {
    ++stats_.skipped_invalid;
    diagnostics.warn(record.case_id, "invalid punishment; excluded from the matrix");
    return;
  }
  const auto tuples = record_to_feature_set(record, scale_, damage_axis_, diagnostics);
  if (tuples.empty()) {
    ++stats_.without_tuples;
    return;
  }
  ++stats_.indexed;
  stats_.tuples += tuples.size();
  for (const auto& t : tuples) {
    auto [it, _] = partitions_.try_emplace(t.crime_type, t.crime_type);
    it->second.add({t.trigger, t.damage, t.punishment}, record.case_id);
  }
  for (const auto& cp : record.punishments) {
    Partition& p = partitions_.try_emplace(cp.crime_name, cp.crime_name).first->second;
    if (cp.punishment.fine_yuan > 0) {
      p.add_fine(scale_.fine_bucket(cp.punishment.fine_yuan), record.case_id);
    }
    if (const auto months = scale_.liberty_months(cp.punishment); months > 0) {
      p.add_duration(months, record.case_id);
    }
  }
  for (const auto& a : record.actions) {
    const FactClass cls = a.source.sentence < record.fact_sentences.size()
                              ? record.fact_sentences[a.source.sentence].fact_class
                              : FactClass::kUnclassified;
    auto& targets = forward_[action_path(cls, a.trigger)];
    for (const auto& cp : record.punishments) targets.insert(cp.crime_name);
  }
}

void KnowledgeBase::merge(const KnowledgeBase& other) {
  if (!same_axes(scale_, other.scale_) ||
      damage_axis_.money_edges() != other.damage_axis_.money_edges()) {
    throw IntegrityError("cannot merge knowledge bases with different axes");
  }
  for (const auto& [id, r] : other.records_) {
    if (auto [it, inserted] = records_.emplace(id, r); !inserted && !(it->second == r)) {
      throw IntegrityError("case id '" + id + "' carries different records");
    }
  }
  for (const auto& [name, p] : other.partitions_) {
    partitions_.try_emplace(name, name).first->second.merge(p);
  }
  for (const auto& [path, targets] : other.forward_) {
    forward_[path].insert(targets.begin(), targets.end());
  }
  stats_.records += other.stats_.records;
  stats_.indexed += other.stats_.indexed;
  stats_.skipped_invalid += other.stats_.skipped_invalid;
  stats_.without_tuples += other.stats_.without_tuples;
  stats_.tuples += other.stats_.tuples;
}

const Partition* KnowledgeBase::partition(std::string_view name) const {
  const auto it = partitions_.find(std::string(name));
  return it == partitions_.end() ? nullptr : &it->second;
}

const JddRecord* KnowledgeBase::record(std::string_view case_id) const {
  const auto it = records_.find(std::string(case_id));
  return it == records_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------- retrieval

std::vector<std::string> KnowledgeBase::get_cases(const CellQuery& q,
                                                  Diagnostics* diagnostics) const {
  auto fail = [&](const std::string& msg) {
    if (diagnostics) diagnostics->warn("get_cases", msg);
    return std::vector<std::string>{};
  };
  const Partition* p = partition(q.partition);
  if (!p) return fail("unknown partition '" + q.partition + "'");
  if (q.action && !p->action_index(*q.action)) {
    return fail("unknown action '" + *q.action + "' in " + q.partition);
  }
  if (q.damage && (*q.damage < 0 || *q.damage >= damage_axis_.size())) {
    return fail("damage coordinate " + std::to_string(*q.damage) + " out of range");
  }
  if (q.punishment && (*q.punishment < 0 || *q.punishment >= scale_.size())) {
    return fail("punishment coordinate " + std::to_string(*q.punishment) +
                " out of range");
  }
  std::vector<std::string> out;
  for (const auto& [key, cell] : p->cells()) {
    if (q.action && key.action != *q.action) continue;
    if (q.damage && key.damage != *q.damage) continue;
    if (q.punishment && key.punishment != *q.punishment) continue;
    out.insert(out.end(), cell.postings.begin(), cell.postings.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ForwardRef> KnowledgeBase::resolve_forward(std::string_view path) const {
  const auto seg = split_path(path);
  auto bad = [&](std::size_t i, const std::string& why) {
    return PathError("path '" + std::string(path) + "': segment " +
                     std::to_string(i + 1) + " '" +
                     (i < seg.size() ? seg[i] : std::string()) + "' " + why);
  };
  if (seg[0] != "JDD") throw bad(0, "must be JDD");
  if (seg.size() < 2) throw bad(1, "is missing");
  std::vector<ForwardRef> out;

  if (seg[1] == "damage" || seg[1] == "punishment") {
    if (seg.size() != 3) throw bad(std::min<std::size_t>(seg.size(), 3), "expected a single label");
    std::optional<int> coord = seg[1] == "damage" ? damage_axis_.index_of(seg[2])
                                                  : scale_.index_of(seg[2]);
    if (!coord) throw bad(2, "is not a " + seg[1] + " label");
    for (const auto& [name, p] : partitions_) {
      ForwardRef r{name, std::nullopt, std::nullopt, std::nullopt};
      (seg[1] == "damage" ? r.damage : r.punishment) = coord;
      out.push_back(r);
    }
    return out;
  }

  const auto cls = parse_schema_element(seg[1]);
  if (!cls) throw bad(1, "is not a schema element");
  if (seg.size() < 3 || seg[2] != "sentence") throw bad(2, "must be 'sentence'");
  if (seg.size() < 4) throw bad(3, "is missing");

  std::string trigger;
  std::optional<int> punishment;
  bool slice = false;
  if (seg[3] == "actions") {
    if (seg.size() != 5) throw bad(std::min<std::size_t>(seg.size(), 5), "expected a trigger");
    trigger = seg[4];
  } else {
    trigger = seg[3];
    if (seg.size() < 5 || seg[4] != "punishment") throw bad(4, "must be 'punishment'");
    slice = true;
    if (seg.size() == 6) {
      punishment = scale_.index_of(seg[5]);
      if (!punishment) throw bad(5, "is not a punishment label");
    } else if (seg.size() > 6) {
      throw bad(6, "is unexpected");
    }
  }
  const auto it = forward_.find(action_path(*cls, trigger));
  if (it == forward_.end()) throw bad(slice ? 3 : 4, "is not an indexed trigger of " + seg[1]);
  for (const auto& name : it->second) {
    const Partition* p = partition(name);
    if (!p) continue;
    const auto a = p->action_index(trigger);
    if (!a) continue;
    out.push_back({name, a, std::nullopt, punishment});
  }
  if (out.empty()) throw bad(slice ? 3 : 4, "has no matrix coordinate");
  return out;
}

CoherenceReport KnowledgeBase::check_coherence() const {
  CoherenceReport report;
  auto problem = [&](std::string msg) { report.problems.push_back(std::move(msg)); };
  std::map<std::string, std::vector<FeatureTuple>> tuples;
  Diagnostics ignored;
  auto tuples_of = [&](const std::string& id) -> const std::vector<FeatureTuple>& {
    auto it = tuples.find(id);
    if (it == tuples.end()) {
      auto t = record_to_feature_set(records_.at(id), scale_, damage_axis_, ignored);
      it = tuples.emplace(id, std::move(t)).first;
    }
    return it->second;
  };

  for (const auto& [name, p] : partitions_) {
    std::uint64_t sum = 0;
    for (const auto& [key, cell] : p.cells()) {
      const std::string where = "M." + name + "(" + key.action + "," +
                                std::to_string(key.damage) + "," +
                                std::to_string(key.punishment) + ")";
      sum += cell.count;
      if (cell.count != cell.postings.size()) {
        problem(where + ": count " + std::to_string(cell.count) + " != " +
                std::to_string(cell.postings.size()) + " postings");
      }
      if (!std::is_sorted(cell.postings.begin(), cell.postings.end())) {
        problem(where + ": postings not sorted");
      }
      for (auto b = cell.postings.begin(); b != cell.postings.end();) {
        const auto e = std::upper_bound(b, cell.postings.end(), *b);
        const auto occurrences = static_cast<std::size_t>(e - b);
        if (!records_.contains(*b)) {
          problem(where + ": unknown case id " + *b);
        } else {
          const FeatureTuple want{name, key.action, key.damage, key.punishment};
          const auto& ts = tuples_of(*b);
          const auto mult = static_cast<std::size_t>(std::count(ts.begin(), ts.end(), want));
          if (mult == 0 || occurrences % mult != 0) {
            problem(where + ": case " + *b + " does not map to this cell");
          }
        }
        b = e;
      }
    }
    if (sum != p.total()) {
      problem("M." + name + ": cell counts sum to " + std::to_string(sum) +
              ", total is " + std::to_string(p.total()));
    }
  }
  for (const auto& [path, targets] : forward_) {
    const auto pos = path.find(kActionsInfix);
    const std::string trigger =
        pos == std::string::npos ? std::string() : path.substr(pos + kActionsInfix.size());
    for (const auto& name : targets) {
      const Partition* p = partition(name);
      if (!p || !p->action_index(trigger)) {
        problem("forward entry " + path + " -> " + name + " does not resolve");
      }
    }
  }
  return report;
}

bool KnowledgeBase::same_matrix(const KnowledgeBase& other) const {
  return partitions_ == other.partitions_ && forward_ == other.forward_;
}

// ---------------------------------------------------------------- snapshot

std::string KnowledgeBase::serialize() const {
  json body;
  body["scale"] = {{"steps", scale_.steps()},
                   {"unit_months", scale_.unit_months()},
                   {"combine", std::string(to_string(scale_.combine()))},
                   {"fine_edges", scale_.fine_edges()}};
  body["damage_axis"] = {{"money_edges", damage_axis_.money_edges()}};
  json parts = json::object();
  for (const auto& [name, p] : partitions_) {
    json cells = json::array();
    for (const auto& [key, cell] : p.cells()) {
      cells.push_back({key.action, key.damage, key.punishment, cell.count, cell.postings});
    }
    json fines = json::object();
    for (const auto& [b, ids] : p.fines()) fines[std::to_string(b)] = ids;
    json durations = json::object();
    for (const auto& [m, ids] : p.durations()) durations[std::to_string(m)] = ids;
    parts[name] = {{"cells", cells}, {"fines", fines}, {"durations", durations}};
  }
  body["partitions"] = parts;
  json forward = json::object();
  for (const auto& [path, targets] : forward_) forward[path] = targets;
  body["forward"] = forward;
  json records = json::array();
  for (const auto& [id, r] : records_) records.push_back(to_json(r));
  body["records"] = records;
  body["stats"] = {{"records", stats_.records},
                   {"indexed", stats_.indexed},
                   {"skipped_invalid", stats_.skipped_invalid},
                   {"without_tuples", stats_.without_tuples},
                   {"tuples", stats_.tuples}};
  const std::string text = body.dump();
  char header[96];
  std::snprintf(header, sizeof header, "# jddkb-snapshot %d %zu %016" PRIx64 "\n",
                kSnapshotVersion, text.size(), fnv1a64(text));
  return header + text;
}

KnowledgeBase KnowledgeBase::Deserialize(std::string_view text) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw IntegrityError("snapshot header missing or truncated");
  std::istringstream header{std::string(text.substr(0, nl))};
  std::string hash, magic, checksum;
  int version = 0;
  std::size_t length = 0;
  if (!(header >> hash >> magic >> version >> length >> checksum) || hash != "#" ||
      magic != "jddkb-snapshot") {
    throw IntegrityError("not a jddkb snapshot");
  }
  if (version != kSnapshotVersion) {
    throw IntegrityError("snapshot version " + std::to_string(version) +
                         " is not supported; this build reads version " +
                         std::to_string(kSnapshotVersion));
  }
  const std::string_view body = text.substr(nl + 1);
  if (body.size() != length) {
    throw IntegrityError("snapshot body has " + std::to_string(body.size()) +
                         " bytes, header declares " + std::to_string(length) +
                         " (truncated or padded)");
  }
  char expect[17];
  std::snprintf(expect, sizeof expect, "%016" PRIx64, fnv1a64(body));
  if (checksum != expect) throw IntegrityError("snapshot checksum mismatch");

  try {
    const json j = json::parse(body);
    const auto& s = j.at("scale");
    const auto combine = parse_months_combine(s.at("combine").get<std::string>());
    if (!combine) throw IntegrityError("snapshot: bad months combine");
    KnowledgeBase kb(
        PunishmentScale(s.at("steps").get<int>(), s.at("unit_months").get<int>(),
                        *combine, s.at("fine_edges").get<std::vector<std::int64_t>>()),
        DamageAxis(j.at("damage_axis").at("money_edges").get<std::vector<std::int64_t>>()));
    for (const auto& [name, pj] : j.at("partitions").items()) {
      Partition p(name);
      for (const auto& c : pj.at("cells")) {
        p.restore_cell({c.at(0).get<std::string>(), c.at(1).get<int>(), c.at(2).get<int>()},
                       Cell{c.at(3).get<std::uint64_t>(),
                            c.at(4).get<std::vector<std::string>>()});
      }
      for (const auto& [b, ids] : pj.at("fines").items()) {
        for (const auto& id : ids) p.add_fine(std::stoi(b), id.get<std::string>());
      }
      for (const auto& [m, ids] : pj.at("durations").items()) {
        for (const auto& id : ids) p.add_duration(std::stoll(m), id.get<std::string>());
      }
      kb.partitions_.emplace(name, std::move(p));
    }
    for (const auto& [path, targets] : j.at("forward").items()) {
      kb.forward_[path] = targets.get<std::set<std::string>>();
    }
    for (const auto& rj : j.at("records")) {
      JddRecord r = record_from_json(rj);
      kb.records_.emplace(r.case_id, std::move(r));
    }
    const auto& st = j.at("stats");
    kb.stats_ = {st.at("records").get<std::size_t>(), st.at("indexed").get<std::size_t>(),
                 st.at("skipped_invalid").get<std::size_t>(),
                 st.at("without_tuples").get<std::size_t>(),
                 st.at("tuples").get<std::uint64_t>()};
    return kb;
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("malformed snapshot body: ") + e.what());
  } catch (const ParseError& e) {
    throw IntegrityError(std::string("malformed snapshot record: ") + e.what());
  } catch (const ConfigError& e) {
    throw IntegrityError(std::string("malformed snapshot axes: ") + e.what());
  }
}

void KnowledgeBase::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write snapshot " + path.string());
  out << serialize();
  if (!out) throw IoError("error writing snapshot " + path.string());
}

KnowledgeBase KnowledgeBase::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read snapshot " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Deserialize(buf.str());
}

void KnowledgeBase::export_csv(std::string_view name,
                               const std::filesystem::path& path) const {
  const Partition* p = partition(name);
  if (!p) throw QueryError("unknown partition '" + std::string(name) + "'");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "action,damage,punishment,count\n";
  for (const auto& [key, cell] : p->cells()) {
    out << csv_field(key.action) << ',' << damage_axis_.label(key.damage) << ','
        << scale_.label(key.punishment) << ',' << cell.count << '\n';
  }
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace jddkb
