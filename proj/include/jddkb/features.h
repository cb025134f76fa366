#ifndef JDDKB_FEATURES_H_
#define JDDKB_FEATURES_H_

#include <compare>
#include <string>
#include <vector>

#include "jddkb/errors.h"
#include "jddkb/model.h"
#include "jddkb/scale.h"

namespace jddkb {

// One matrix coordinate contributed by a record.
struct FeatureTuple {
  std::string crime_type;  // partition
  std::string trigger;
  int damage = 0;          // DamageAxis coordinate
  int punishment = 0;      // PunishmentScale bucket

  friend auto operator<=>(const FeatureTuple&, const FeatureTuple&) = default;
};

// actions × max(1, damages) per convicted crime, in record order. A multiset:
// repeated triggers contribute repeated tuples. Records without convicted
// crimes, or flagged with an invalid punishment, give nothing plus a
// diagnostic.
std::vector<FeatureTuple> record_to_feature_set(const JddRecord& record,
                                                const PunishmentScale& scale,
                                                const DamageAxis& damage_axis,
                                                Diagnostics& diagnostics);

}  // namespace jddkb

#endif  // JDDKB_FEATURES_H_
