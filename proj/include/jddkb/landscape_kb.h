#ifndef JDDKB_LANDSCAPE_KB_H_
#define JDDKB_LANDSCAPE_KB_H_

// The knowledge base: records S, per-crime-type count matrices M over
// action × damage × punishment, and the indices D between them.
//
// Snapshot format: one header line
//   # jddkb-snapshot <version> <body bytes> <fnv1a64 of body, hex>
// followed by a single-line JSON body with sorted keys:
//   {"damage_axis": {...}, "forward": {path: [partition, ...]},
//    "partitions": {name: {"cells": [[action, damage, punishment, count,
//    [case_id, ...]], ...], "durations": {...}, "fines": {...}}},
//    "records": [...], "scale": {...}}

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jddkb/errors.h"
#include "jddkb/features.h"
#include "jddkb/model.h"
#include "jddkb/scale.h"

namespace jddkb {

inline constexpr int kSnapshotVersion = 1;

struct CellKey {
  std::string action;
  int damage = 0;
  int punishment = 0;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

// One posting per contributing tuple occurrence, kept sorted.
struct Cell {
  std::uint64_t count = 0;
  std::vector<std::string> postings;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::string crime_type) : crime_type_(std::move(crime_type)) {}

  const std::string& crime_type() const { return crime_type_; }
  const std::map<CellKey, Cell>& cells() const { return cells_; }
  // Sorted action vocabulary; an action's coordinate is its position.
  std::vector<std::string> actions() const;
  std::optional<int> action_index(std::string_view action) const;
  std::uint64_t total() const { return total_; }

  // Case ids per fine bucket and per liberty length in months, one entry per
  // conviction.
  const std::map<int, std::vector<std::string>>& fines() const { return fines_; }
  const std::map<std::int64_t, std::vector<std::string>>& durations() const {
    return durations_;
  }

  void add(const CellKey& key, const std::string& case_id);
  void add_fine(int bucket, const std::string& case_id);
  void add_duration(std::int64_t months, const std::string& case_id);
  void merge(const Partition& other);

  // Snapshot restore; no invariants are enforced here.
  void restore_cell(const CellKey& key, Cell cell);

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::string crime_type_;
  std::map<CellKey, Cell> cells_;
  std::set<std::string> actions_;
  std::uint64_t total_ = 0;
  std::map<int, std::vector<std::string>> fines_;
  std::map<std::int64_t, std::vector<std::string>> durations_;
};

// Cell or slice selector; unset coordinates are free.
struct CellQuery {
  std::string partition;
  std::optional<std::string> action;
  std::optional<int> damage;
  std::optional<int> punishment;
};

// A forward-index target. Unset coordinates are free axes.
struct ForwardRef {
  std::string partition;
  std::optional<int> action;
  std::optional<int> damage;
  std::optional<int> punishment;

  // "M.<partition>[3][*][12]".
  std::string describe() const;
  friend bool operator==(const ForwardRef&, const ForwardRef&) = default;
};

struct BuildStats {
  std::size_t records = 0;
  std::size_t indexed = 0;          // contributed at least one tuple
  std::size_t skipped_invalid = 0;  // punishment-invalid flag
  std::size_t without_tuples = 0;   // no conviction or no actions
  std::uint64_t tuples = 0;
};

struct CoherenceReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(PunishmentScale scale, DamageAxis damage_axis)
      : scale_(std::move(scale)), damage_axis_(std::move(damage_axis)) {}

  // Feature emission runs on up to `jobs` threads over contiguous chunks;
  // chunk results are merged, so the outcome does not depend on `jobs`.
  static KnowledgeBase Build(std::span<const JddRecord> records,
                             const PunishmentScale& scale,
                             const DamageAxis& damage_axis,
                             Diagnostics& diagnostics, int jobs = 1);

  void add_record(const JddRecord& record, Diagnostics& diagnostics);

  // Union of both corpora. Throws IntegrityError when the axes differ or a
  // case id carries different records on the two sides.
  void merge(const KnowledgeBase& other);

  const PunishmentScale& scale() const { return scale_; }
  const DamageAxis& damage_axis() const { return damage_axis_; }
  const std::map<std::string, Partition>& partitions() const { return partitions_; }
  const Partition* partition(std::string_view name) const;
  const std::map<std::string, JddRecord>& records() const { return records_; }
  const JddRecord* record(std::string_view case_id) const;
  const std::map<std::string, std::set<std::string>>& forward() const {
    return forward_;
  }
  const BuildStats& stats() const { return stats_; }

  // Deduplicated, sorted case ids of the selected cell or slice. Unknown
  // partitions and coordinates give an empty list plus a diagnostic.
  std::vector<std::string> get_cases(const CellQuery& query,
                                     Diagnostics* diagnostics = nullptr) const;

  // Paths:
  //   JDD.<element>.sentence.actions.<trigger>           action axis
  //   JDD.<element>.sentence.<trigger>.punishment         action-punishment slice
  //   JDD.<element>.sentence.<trigger>.punishment.<label> action + punishment
  //   JDD.damage.<label> / JDD.punishment.<label>         one axis coordinate
  // One reference per partition, sorted. Throws PathError naming the first
  // segment that does not resolve.
  std::vector<ForwardRef> resolve_forward(std::string_view path) const;

  // Count/posting coherence, known case ids, marginal totals, forward
  // targets, and forward/reverse consistency against the stored records.
  CoherenceReport check_coherence() const;

  std::string serialize() const;
  static KnowledgeBase Deserialize(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static KnowledgeBase Load(const std::filesystem::path& path);

  // action,damage,punishment,count rows in cell order.
  void export_csv(std::string_view partition, const std::filesystem::path& path) const;

  // Matrix contents only (records and stats excluded).
  bool same_matrix(const KnowledgeBase& other) const;

 private:
  PunishmentScale scale_;
  DamageAxis damage_axis_;
  std::map<std::string, Partition> partitions_;
  std::map<std::string, JddRecord> records_;
  std::map<std::string, std::set<std::string>> forward_;
  BuildStats stats_;
};

std::string action_path(FactClass cls, std::string_view trigger);
std::uint64_t fnv1a64(std::string_view data);

}  // namespace jddkb

#endif  // JDDKB_LANDSCAPE_KB_H_
