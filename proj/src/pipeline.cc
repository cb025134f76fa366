#include "jddkb/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "jddkb/action_extractor.h"
#include "jddkb/classify.h"
#include "jddkb/entity_extractor.h"

namespace jddkb {

JddRecord extract_record(const RawDocument& doc, const ParseStore& parses,
                         const EngineConfig& config, Diagnostics& diagnostics) {
  JddRecord r;
  r.case_id = doc.case_id;
  r.case_type = doc.case_type;
  r.parties = doc.parties;
  r.decision_text = doc.decision_text;
  r.fact_sentences = classify_sentences(doc.sentences, config.cues);

  std::vector<const SentenceParse*> sentence_parses;
  for (std::size_t i = 0; i < r.fact_sentences.size(); ++i) {
    const SentenceParse* p = parses.find(doc.case_id, std::to_string(i));
    if (p) {
      const std::string ref = parse_ref(doc.case_id, i);
      if (p->graph) r.fact_sentences[i].dependency_ref = ref;
      if (p->tree) r.fact_sentences[i].constituency_ref = ref;
    }
    sentence_parses.push_back(p);
  }
  r.actions = extract_document_actions(r.fact_sentences, sentence_parses,
                                       config.actions, diagnostics, doc.case_id);
  r.damages = extract_record_damages(r, config.entities, diagnostics);
  r.charges = extract_charges(r, config.entities, diagnostics);

  auto convicted = extract_convictions_and_punishments(
      r.decision_text, r.charges, config.entities, diagnostics, doc.case_id);
  if (convicted.convictions.empty()) {
    diagnostics.warn(doc.case_id, "no conviction found in the decision");
  } else {
    r.crime_type = convicted.convictions.front().standard_name;
  }
  for (auto& c : convicted.convictions) {
    const bool dup = std::any_of(r.charges.begin(), r.charges.end(), [&](const CrimeCharge& o) {
      return o.stage == c.stage && o.standard_name == c.standard_name;
    });
    if (!dup) r.charges.push_back(std::move(c));
  }
  for (const auto& c : r.charges) {
    if (!c.normalized) {
      diagnostics.warn(doc.case_id, "crime name '" + c.raw_name + "' is not in the crime table");
    }
  }
  r.punishments = std::move(convicted.punishments);
  r.flags = std::move(convicted.flags);
  return r;
}

std::vector<JddRecord> extract_corpus(const std::vector<RawDocument>& docs,
                                      const ParseStore& parses,
                                      const EngineConfig& config,
                                      Diagnostics& diagnostics, int jobs) {
  std::vector<JddRecord> out(docs.size());
  std::vector<Diagnostics> diags(docs.size());
  const std::size_t workers = std::clamp<std::size_t>(
      jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1, std::max<std::size_t>(docs.size(), 1));
  std::vector<std::exception_ptr> errors(docs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        out[i] = extract_record(docs[i], parses, config, diags[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& d : diags) diagnostics.append(d);
  return out;
}

}  // namespace jddkb
