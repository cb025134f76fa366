#ifndef JDDKB_PIPELINE_H_
#define JDDKB_PIPELINE_H_

// Per-document extraction: classification, actions, damages, charges,
// convictions and punishments.

#include <vector>

#include "jddkb/config.h"
#include "jddkb/corpus.h"
#include "jddkb/errors.h"
#include "jddkb/model.h"

namespace jddkb {

JddRecord extract_record(const RawDocument& doc, const ParseStore& parses,
                         const EngineConfig& config, Diagnostics& diagnostics);

// extract_record over all documents on up to `jobs` threads. Output and
// diagnostics keep document order whatever `jobs` is.
std::vector<JddRecord> extract_corpus(const std::vector<RawDocument>& docs,
                                      const ParseStore& parses,
                                      const EngineConfig& config,
                                      Diagnostics& diagnostics, int jobs = 1);

}  // namespace jddkb

#endif  // JDDKB_PIPELINE_H_
