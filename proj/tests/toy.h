#ifndef JDDKB_TESTS_TOY_H_
#define JDDKB_TESTS_TOY_H_

// Hand-sized records for knowledge-base and query tests.

#include <string>
#include <vector>

#include "jddkb/landscape_kb.h"
#include "jddkb/model.h"

namespace toy {

inline jddkb::PunishmentVector months(std::int64_t m) {
  jddkb::PunishmentVector v;
  v.fixed_term_months = m;
  return v;
}

inline jddkb::PunishmentVector exempt() {
  jddkb::PunishmentVector v;
  v.exemption = true;
  return v;
}

// One court-facts sentence holding every action; `defense` adds a
// defendant-argument sentence.
inline jddkb::JddRecord record(const std::string& id, const std::string& crime,
                               const std::vector<std::string>& actions,
                               const std::vector<jddkb::DamageValue>& damages,
                               const jddkb::PunishmentVector& p, bool defense = false) {
  jddkb::JddRecord r;
  r.case_id = id;
  r.crime_type = crime;
  jddkb::ClassifiedSentence s;
  s.text = "事实。";
  s.fact_class = jddkb::FactClass::kCourtFacts;
  r.fact_sentences.push_back(s);
  if (defense) {
    s.text = "辩称。";
    s.fact_class = jddkb::FactClass::kDefendantArgument;
    r.fact_sentences.push_back(s);
  }
  for (const auto& a : actions) {
    jddkb::ActionRecord ar;
    ar.trigger = a;
    r.actions.push_back(ar);
  }
  r.damages = damages;
  r.charges.push_back({crime, crime, jddkb::ChargeStage::kConvicted, true});
  r.punishments.push_back({crime, p, false});
  return r;
}

inline jddkb::DamageValue money(std::int64_t y) { return jddkb::DamageValue::Monetary(y); }
inline jddkb::DamageValue injury(jddkb::InjuryLevel l) { return jddkb::DamageValue::Injury(l); }

inline jddkb::KnowledgeBase build(const std::vector<jddkb::JddRecord>& rs, int jobs = 1) {
  jddkb::Diagnostics d;
  return jddkb::KnowledgeBase::Build(rs, jddkb::PunishmentScale(), jddkb::DamageAxis(), d, jobs);
}

}  // namespace toy

#endif  // JDDKB_TESTS_TOY_H_
