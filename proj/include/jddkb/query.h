#ifndef JDDKB_QUERY_H_
#define JDDKB_QUERY_H_

// Landscape-analysis primitives and the two question pipelines over a
// built knowledge base. Everything here is read-only over the KB.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jddkb/errors.h"
#include "jddkb/landscape_kb.h"

namespace jddkb {

enum class Axis { kAction, kDamage, kPunishment };

std::string_view to_string(Axis a);
// Throws QueryError on an unknown name.
Axis parse_axis(std::string_view s);

// kTuples sums cell counts. kDistinctCases counts each case once per
// histogram coordinate, however many tuples it contributed there.
enum class CountMode { kTuples, kDistinctCases };

struct HistogramEntry {
  std::vector<std::string> labels;  // one per axis
  std::vector<int> index;           // axis coordinates
  double value = 0;
  friend bool operator==(const HistogramEntry&, const HistogramEntry&) = default;
};

struct Histogram {
  std::vector<Axis> axes;
  std::vector<HistogramEntry> entries;

  double total() const;
  const HistogramEntry* find(const std::vector<std::string>& labels) const;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct Fixing {
  Axis axis = Axis::kPunishment;
  int coordinate = 0;
};

struct MarginalQuery {
  std::string partition;
  std::vector<Axis> keep;      // one or two distinct axes
  std::vector<Fixing> fixed;   // axes pinned to one coordinate
  CountMode mode = CountMode::kTuples;
};

// Dense over the kept axes, in axis order (action axis: sorted vocabulary).
// Throws QueryError on an unknown partition or a malformed axis selection.
Histogram get_marginals(const KnowledgeBase& kb, const MarginalQuery& query);

// Value descending, then labels ascending.
Histogram sort_descending(Histogram h);

std::vector<HistogramEntry> get_axis_values(
    const Histogram& h, const std::function<bool(double)>& predicate);

inline constexpr double kElbowTolerance = 1e-6;

struct ElbowResult {
  bool found = false;
  std::size_t index = 0;
  double cutoff = 0;
  double distance = 0;
};

// Knee of a descending series: the point farthest from the chord joining
// the first and last points, both axes scaled to [0, 1]. Ties keep the
// smallest index; a maximum distance under `tolerance` means no elbow.
// Throws QueryError on fewer than three values or unsorted input.
ElbowResult find_elbow(const std::vector<double>& values,
                       double tolerance = kElbowTolerance);
ElbowResult find_elbow(const Histogram& sorted, double tolerance = kElbowTolerance);

struct ImportanceScore {
  std::string action;
  double subset_frequency = 0;
  double partition_frequency = 0;
  double score = 0;
  friend bool operator==(const ImportanceScore&, const ImportanceScore&) = default;
};

// score = subset / partition frequency per action, after dropping the
// floor(filter_fraction * n) most frequent partition actions. Sorted by
// score, then partition frequency (both descending), then action. Throws
// QueryError when the subset has an action the partition lacks.
std::vector<ImportanceScore> importance_scores(const Histogram& subset,
                                               const Histogram& partition,
                                               double filter_fraction = 0.05);

// ---------------------------------------------------------------- question 1

enum class Splitter { kDefenseArgument, kForgiveness };

std::string_view to_string(Splitter s);
std::optional<Splitter> parse_splitter(std::string_view s);

struct ForgivenessRules {
  std::vector<std::string> terms = {"谅解", "原谅"};
  std::vector<std::string> negations = {"未", "不", "没", "没有", "拒绝"};
};

// Some action names a forgiveness term (as trigger or inside an object)
// and carries no negation modifier.
bool shows_forgiveness(const JddRecord& record, const ForgivenessRules& rules);

struct GroupDensity {
  std::string group;     // "C1" or "C2"
  std::string damage;    // damage label, or "pooled"
  std::size_t pairs = 0; // distinct (case, punishment) pairs
  std::vector<std::pair<std::string, double>> density;  // punishment label -> share
  friend bool operator==(const GroupDensity&, const GroupDensity&) = default;
};

struct Question1Result {
  Splitter splitter = Splitter::kDefenseArgument;
  std::vector<std::string> c1;  // splitter holds
  std::vector<std::string> c2;
  std::vector<GroupDensity> per_damage;
  std::vector<GroupDensity> pooled;
};

// C1 holds the partition's cases with a defense argument (or showing
// forgiveness), C2 the rest. For every damage present in a group, the
// punishments of the cells whose postings meet the group give a density
// over distinct (case, punishment) pairs; a pooled density per group
// ignores the damage.
Question1Result question1_pipeline(const KnowledgeBase& kb, std::string_view partition,
                                   Splitter splitter, const ForgivenessRules& rules,
                                   Diagnostics& diagnostics);

// ---------------------------------------------------------------- question 2

struct CellContext {
  std::string action;
  std::string damage;
  std::uint64_t count = 0;
  friend bool operator==(const CellContext&, const CellContext&) = default;
};

struct RarePunishment {
  std::string punishment;
  double cases = 0;
  std::vector<CellContext> contexts;
  friend bool operator==(const RarePunishment&, const RarePunishment&) = default;
};

struct OffUnitDuration {
  std::int64_t months = 0;
  std::vector<std::string> case_ids;  // distinct
  friend bool operator==(const OffUnitDuration&, const OffUnitDuration&) = default;
};

struct Question2aResult {
  Histogram marginal;  // non-zero punishments by distinct cases, sorted
  ElbowResult elbow;
  bool rare_tail = false;
  std::string note;    // why there is no tail
  std::vector<RarePunishment> rare;
  std::vector<OffUnitDuration> off_unit;
};

// Punishments at or below the elbow cutoff, plus liberty lengths that are
// not a multiple of the scale unit.
Question2aResult question2a_pipeline(const KnowledgeBase& kb, std::string_view partition,
                                     double tolerance = kElbowTolerance);

struct Question2bResult {
  std::string fixed_punishment;
  std::vector<ImportanceScore> top;  // at most k
  Histogram heatmap;                 // action × damage over the top actions
};

// Fix the punishment (default exemption), rank actions of the remaining
// action × damage histogram by importance and keep the top k.
Question2bResult question2b_pipeline(const KnowledgeBase& kb, std::string_view partition,
                                     std::size_t k = 20, double filter_fraction = 0.05,
                                     std::optional<int> punishment = std::nullopt);

// ---------------------------------------------------------------- export

enum class ExportFormat { kCsv, kJson };
std::optional<ExportFormat> parse_export_format(std::string_view s);

// Row axis × column axis grid with every cell written (zeros included);
// an empty histogram gives just the header. Throws QueryError unless the
// histogram is 2-D, IoError when the file cannot be written.
void export_heatmap(const Histogram& h, const std::filesystem::path& path,
                    ExportFormat format = ExportFormat::kCsv);

// Shortest round-trip decimal form; integers print without a fraction.
std::string format_number(double v);

}  // namespace jddkb

#endif  // JDDKB_QUERY_H_
