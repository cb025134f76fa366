#ifndef JDDKB_CONFIG_H_
#define JDDKB_CONFIG_H_

// Engine configuration, loaded from the key-value format (see keyvalue.h).
// Every section is optional; missing keys keep their defaults.
//
//   version = 1
//   [classify]    fallback = inherit_previous | unclassified
//                 cueless = <class>, ...
//   [cues]        defaults = keep | replace;  cue = <phrase>, <class>   (repeatable)
//   [actions]     window = sentence | same_class | document
//                 excluded_modifiers = 遂, 并, ...;  path_labels = IP, VP, VV, VRD
//                 prune_hapax = true | false
//   [crimes]      defaults = keep | replace;  crime = <standard>, <alias>, ...
//   [injury]      defaults = keep | replace;  keyword = <word>, <level>
//   [punishment]  defaults = keep | replace
//                 keyword = <word>, <component>, none | duration | amount
//   [constraints] defaults = keep | replace;  <name> = exclusive a, b | c  or  sole a
//   [entities]    total_cues, conviction_markers, combined_cues, damage_priority
//   [scale]       steps, unit_months, combine = sum | max, fine_edges
//   [damage]      money_edges
//   [query]       filter_fraction, top_k, elbow_tolerance, forgiveness_terms,
//                 negations

#include <filesystem>
#include <string>

#include "jddkb/action_extractor.h"
#include "jddkb/classify.h"
#include "jddkb/entity_extractor.h"
#include "jddkb/keyvalue.h"
#include "jddkb/query.h"
#include "jddkb/scale.h"

namespace jddkb {

inline constexpr int kConfigVersion = 1;

struct EngineConfig {
  CuePhraseTable cues = CuePhraseTable::Defaults();
  ActionRules actions;
  bool prune_hapax = true;
  EntityRules entities;
  PunishmentScale scale;
  DamageAxis damage_axis;
  ForgivenessRules forgiveness;
  double filter_fraction = 0.05;
  std::size_t top_k = 20;
  double elbow_tolerance = kElbowTolerance;

  static EngineConfig Defaults() { return {}; }
  // Throws ConfigError naming the file, line and key on any bad or unknown
  // entry, and on a version other than kConfigVersion.
  static EngineConfig FromDocument(const KeyValueDocument& doc);
  static EngineConfig Load(const std::filesystem::path& path);
};

}  // namespace jddkb

#endif  // JDDKB_CONFIG_H_
