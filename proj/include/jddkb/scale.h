#ifndef JDDKB_SCALE_H_
#define JDDKB_SCALE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jddkb/errors.h"
#include "jddkb/model.h"

namespace jddkb {

// How surveillance, detention and fixed-term months combine into one
// deprivation-of-liberty length.
enum class MonthsCombine { kSum, kMax };

std::string_view to_string(MonthsCombine m);
std::optional<MonthsCombine> parse_months_combine(std::string_view s);

// Ordered punishment levels: exemption, `steps` three-month steps, then
// life, death with probation, death. Three reserved slots follow the levels
// for vectors with no deprivation component: fine only, other supplementary
// punishments only, nothing recognized.
class PunishmentScale {
 public:
  PunishmentScale() : PunishmentScale(76, 3) {}
  // Throws ConfigError unless steps >= 1 and unit_months >= 1.
  PunishmentScale(int steps, int unit_months,
                  MonthsCombine combine = MonthsCombine::kSum,
                  std::vector<std::int64_t> fine_edges = {1000, 5000, 10000, 50000});

  int steps() const { return steps_; }
  int unit_months() const { return unit_months_; }
  MonthsCombine combine() const { return combine_; }

  // Ordered levels only (exemption .. death): 1 + steps + 3.
  int level_count() const { return steps_ + 4; }
  // Levels plus the reserved slots.
  int size() const { return level_count() + 3; }

  int exemption() const { return 0; }
  int life() const { return steps_ + 1; }
  int death_with_probation() const { return steps_ + 2; }
  int death() const { return steps_ + 3; }
  int fine_only() const { return level_count(); }
  int supplementary_only() const { return level_count() + 1; }
  int unspecified() const { return level_count() + 2; }

  // ceil(months / unit), clamped to [1, steps]; 0 for 0 months.
  int step_bucket(std::int64_t months) const;

  std::int64_t liberty_months(const PunishmentVector& v) const;

  // Main-axis bucket. `diagnostics` receives a note for vectors with no
  // recognized component.
  int bucket(const PunishmentVector& v, Diagnostics* diagnostics = nullptr,
             const std::string& where = "") const;

  // Parallel fine table: 0 = no fine, 1.. = bucket by edges.
  int fine_bucket(std::int64_t fine_yuan) const;
  int fine_bucket_count() const { return static_cast<int>(fine_edges_.size()) + 2; }
  const std::vector<std::int64_t>& fine_edges() const { return fine_edges_; }
  std::string fine_label(int index) const;

  std::string label(int index) const;
  std::optional<int> index_of(std::string_view label) const;

 private:
  int steps_;
  int unit_months_;
  MonthsCombine combine_;
  std::vector<std::int64_t> fine_edges_;
};

// Damage coordinates: no damage, injury levels by severity, monetary
// buckets split at `money_edges` (upper bounds, inclusive).
class DamageAxis {
 public:
  DamageAxis() : DamageAxis({1000, 5000, 20000, 100000}) {}
  // Throws ConfigError unless edges are positive and strictly increasing.
  explicit DamageAxis(std::vector<std::int64_t> money_edges);

  int size() const { return 1 + 6 + static_cast<int>(edges_.size()) + 1; }
  int none() const { return 0; }
  int coordinate(const DamageValue& d) const;
  int money_bucket(std::int64_t yuan) const;

  std::string label(int index) const;
  std::optional<int> index_of(std::string_view label) const;
  const std::vector<std::int64_t>& money_edges() const { return edges_; }

 private:
  std::vector<std::int64_t> edges_;
};

}  // namespace jddkb

#endif  // JDDKB_SCALE_H_
