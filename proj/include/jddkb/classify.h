#ifndef JDDKB_CLASSIFY_H_
#define JDDKB_CLASSIFY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jddkb/model.h"

namespace jddkb {

enum class CueFallback { kInheritPrevious, kUnclassified };

std::string_view to_string(CueFallback f);
std::optional<CueFallback> parse_cue_fallback(std::string_view s);

struct CuePhrase {
  std::string cue;
  FactClass fact_class = FactClass::kUnclassified;
};

// Cue-phrase classifier for the eight fact classes. A sentence takes the
// class of the cue occurring earliest in it; equal positions prefer the
// longer cue, then table order.
class CuePhraseTable {
 public:
  CuePhraseTable() = default;
  // Throws ConfigError on an empty cue string, or when a non-empty table
  // leaves one of the eight classes without a cue and not listed in
  // `cueless`.
  CuePhraseTable(std::vector<CuePhrase> cues, CueFallback fallback,
                 std::vector<FactClass> cueless = {});

  static CuePhraseTable Defaults();

  const std::vector<CuePhrase>& cues() const { return cues_; }
  CueFallback fallback() const { return fallback_; }
  const std::vector<FactClass>& cueless() const { return cueless_; }
  bool empty() const { return cues_.empty(); }

  std::optional<FactClass> match(std::string_view sentence) const;

 private:
  std::vector<CuePhrase> cues_;
  CueFallback fallback_ = CueFallback::kInheritPrevious;
  std::vector<FactClass> cueless_;
};

// Labels sentences in document order. A sentence without a cue inherits its
// predecessor's class (or stays unclassified, per the table's fallback); a
// cue-less first sentence is case background. Throws ConfigError on an
// empty table.
std::vector<ClassifiedSentence> classify_sentences(
    std::span<const std::string> sentences, const CuePhraseTable& cues);

}  // namespace jddkb

#endif  // JDDKB_CLASSIFY_H_
