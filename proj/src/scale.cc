#include "jddkb/scale.h"

#include <algorithm>
#include <cstdio>

namespace jddkb {

namespace {

std::string months_label(std::int64_t months) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "m%03lld", static_cast<long long>(months));
  return buf;
}

void check_edges(const std::vector<std::int64_t>& edges, const char* what) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] <= 0 || (i > 0 && edges[i] <= edges[i - 1])) {
      throw ConfigError(std::string(what) +
                        " edges must be positive and strictly increasing");
    }
  }
}

// "<=a", "a+1-b", ">b" for bucket i of the given edges.
std::string range_label(const std::vector<std::int64_t>& edges, std::size_t i) {
  if (i == 0) return "<=" + std::to_string(edges.front());
  if (i == edges.size()) return ">" + std::to_string(edges.back());
  return std::to_string(edges[i - 1] + 1) + "-" + std::to_string(edges[i]);
}

std::size_t range_index(const std::vector<std::int64_t>& edges, std::int64_t v) {
  return static_cast<std::size_t>(
      std::lower_bound(edges.begin(), edges.end(), v) - edges.begin());
}

}  // namespace

std::string_view to_string(MonthsCombine m) {
  return m == MonthsCombine::kSum ? "sum" : "max";
}

std::optional<MonthsCombine> parse_months_combine(std::string_view s) {
  if (s == "sum") return MonthsCombine::kSum;
  if (s == "max") return MonthsCombine::kMax;
  return std::nullopt;
}

PunishmentScale::PunishmentScale(int steps, int unit_months,
                                 MonthsCombine combine,
                                 std::vector<std::int64_t> fine_edges)
    : steps_(steps),
      unit_months_(unit_months),
      combine_(combine),
      fine_edges_(std::move(fine_edges)) {
  if (steps_ < 1) throw ConfigError("punishment scale needs at least one step");
  if (unit_months_ < 1) throw ConfigError("punishment unit must be >= 1 month");
  check_edges(fine_edges_, "fine");
}

int PunishmentScale::step_bucket(std::int64_t months) const {
  if (months <= 0) return 0;
  const std::int64_t b = (months + unit_months_ - 1) / unit_months_;
  return static_cast<int>(std::min<std::int64_t>(b, steps_));
}

std::int64_t PunishmentScale::liberty_months(const PunishmentVector& v) const {
  if (combine_ == MonthsCombine::kMax) {
    return std::max({v.public_surveillance_months, v.detention_months,
                     v.fixed_term_months});
  }
  return v.public_surveillance_months + v.detention_months + v.fixed_term_months;
}

int PunishmentScale::bucket(const PunishmentVector& v, Diagnostics* diagnostics,
                            const std::string& where) const {
  if (v.death) return death();
  if (v.death_with_probation) return death_with_probation();
  if (v.life_imprisonment) return life();
  if (v.exemption) return exemption();
  if (const auto months = liberty_months(v); months > 0) return step_bucket(months);
  if (v.fine_yuan > 0) return fine_only();
  if (v.political_rights_deprivation_months > 0 ||
      v.political_rights_deprivation_for_life || is_active(v, PunishmentComponent::kConfiscation)) {
    return supplementary_only();
  }
  if (diagnostics) diagnostics->warn(where, "punishment with no recognized component");
  return unspecified();
}

int PunishmentScale::fine_bucket(std::int64_t fine_yuan) const {
  if (fine_yuan <= 0) return 0;
  return 1 + static_cast<int>(range_index(fine_edges_, fine_yuan));
}

std::string PunishmentScale::fine_label(int index) const {
  if (index == 0) return "no_fine";
  if (fine_edges_.empty()) return "fine";
  return "fine:" + range_label(fine_edges_, static_cast<std::size_t>(index - 1));
}

std::string PunishmentScale::label(int index) const {
  if (index == exemption()) return "exemption";
  if (index >= 1 && index <= steps_) return months_label(index * unit_months_);
  if (index == life()) return "life";
  if (index == death_with_probation()) return "death_with_probation";
  if (index == death()) return "death";
  if (index == fine_only()) return "fine_only";
  if (index == supplementary_only()) return "supplementary_only";
  if (index == unspecified()) return "unspecified";
  return "?";
}

std::optional<int> PunishmentScale::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (this->label(i) == label) return i;
  }
  return std::nullopt;
}

DamageAxis::DamageAxis(std::vector<std::int64_t> money_edges)
    : edges_(std::move(money_edges)) {
  check_edges(edges_, "monetary damage");
}

int DamageAxis::money_bucket(std::int64_t yuan) const {
  return 7 + static_cast<int>(range_index(edges_, yuan));
}

int DamageAxis::coordinate(const DamageValue& d) const {
  if (auto level = d.injury_level()) return 1 + static_cast<int>(*level);
  return money_bucket(*d.amount_yuan());
}

std::string DamageAxis::label(int index) const {
  if (index == 0) return "none";
  if (index >= 1 && index <= 6) {
    return "injury:" + std::string(to_string(kInjuryLevels[index - 1]));
  }
  if (index >= 7 && index < size()) {
    if (edges_.empty()) return "money";
    return "money:" + range_label(edges_, static_cast<std::size_t>(index - 7));
  }
  return "?";
}

std::optional<int> DamageAxis::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (this->label(i) == label) return i;
  }
  return std::nullopt;
}

}  // namespace jddkb
