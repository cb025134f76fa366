#include "jddkb/features.h"

namespace jddkb {

std::vector<FeatureTuple> record_to_feature_set(const JddRecord& record,
                                                const PunishmentScale& scale,
                                                const DamageAxis& damage_axis,
                                                Diagnostics& diagnostics) {
  if (has_invalid_punishment(record)) {
    diagnostics.warn(record.case_id, "invalid punishment; excluded from the matrix");
    return {};
  }
  if (record.punishments.empty()) {
    diagnostics.warn(record.case_id, "no convicted crime");
    return {};
  }
  std::vector<int> damages;
  for (const auto& d : record.damages) damages.push_back(damage_axis.coordinate(d));
  if (damages.empty()) damages.push_back(damage_axis.none());

  std::vector<FeatureTuple> out;
  for (const auto& cp : record.punishments) {
    const int bucket = scale.bucket(cp.punishment, &diagnostics, record.case_id);
    for (const auto& a : record.actions) {
      for (int d : damages) out.push_back({cp.crime_name, a.trigger, d, bucket});
    }
  }
  return out;
}

}  // namespace jddkb
