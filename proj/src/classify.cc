#include "jddkb/classify.h"

#include <algorithm>

#include "jddkb/douduan.h"
#include "jddkb/errors.h"

namespace jddkb {

std::string_view to_string(CueFallback f) {
  return f == CueFallback::kInheritPrevious ? "inherit_previous"
                                            : "unclassified";
}

std::optional<CueFallback> parse_cue_fallback(std::string_view s) {
  if (s == "inherit_previous") return CueFallback::kInheritPrevious;
  if (s == "unclassified") return CueFallback::kUnclassified;
  return std::nullopt;
}

CuePhraseTable::CuePhraseTable(std::vector<CuePhrase> cues,
                               CueFallback fallback,
                               std::vector<FactClass> cueless)
    : cues_(std::move(cues)), fallback_(fallback), cueless_(std::move(cueless)) {
  for (const auto& c : cues_) {
    if (c.cue.empty()) throw ConfigError("cue table: empty cue string");
    if (c.fact_class == FactClass::kUnclassified) {
      throw ConfigError("cue table: cue '" + c.cue + "' maps to unclassified");
    }
  }
  if (cues_.empty()) return;
  for (std::size_t k = 0; k < kFactClassCount; ++k) {
    const auto cls = static_cast<FactClass>(k);
    const bool has_cue = std::any_of(cues_.begin(), cues_.end(),
                                     [&](const CuePhrase& c) {
                                       return c.fact_class == cls;
                                     });
    const bool declared = std::find(cueless_.begin(), cueless_.end(), cls) !=
                          cueless_.end();
    if (!has_cue && !declared) {
      throw ConfigError("cue table: class '" + std::string(to_string(cls)) +
                        "' has no cue and is not declared cue-less");
    }
  }
}

CuePhraseTable CuePhraseTable::Defaults() {
  using F = FactClass;
  return CuePhraseTable(
      {
          {"向本院提起公诉", F::kCaseBackground},
          {"本院受理", F::kCaseBackground},
          {"立案受理", F::kCaseBackground},
          {"公诉机关指控", F::kProsecutorArgument},
          {"检察院指控", F::kProsecutorArgument},
          {"起诉指控", F::kProsecutorArgument},
          {"公诉机关向法庭提供", F::kProsecutorEvidence},
          {"公诉机关提供", F::kProsecutorEvidence},
          {"公诉机关提交", F::kProsecutorEvidence},
          {"公诉机关认为", F::kProsecutorOpinion},
          {"量刑建议", F::kProsecutorOpinion},
          {"建议判处", F::kProsecutorOpinion},
          {"辩称", F::kDefendantArgument},
          {"辩护意见", F::kDefendantArgument},
          {"辩护人提出", F::kDefendantArgument},
          {"辩护人提交", F::kDefendantEvidence},
          {"辩护人提供", F::kDefendantEvidence},
          {"经审理查明", F::kCourtFacts},
          {"本院查明", F::kCourtFacts},
          {"上述事实", F::kCourtEvidence},
          {"证据证实", F::kCourtEvidence},
          {"予以确认", F::kCourtEvidence},
      },
      CueFallback::kInheritPrevious);
}

std::optional<FactClass> CuePhraseTable::match(std::string_view sentence) const {
  std::optional<FactClass> best;
  std::size_t best_pos = std::string_view::npos;
  std::size_t best_len = 0;
  for (const auto& c : cues_) {
    const auto pos = sentence.find(c.cue);
    if (pos == std::string_view::npos) continue;
    if (pos < best_pos || (pos == best_pos && c.cue.size() > best_len)) {
      best = c.fact_class;
      best_pos = pos;
      best_len = c.cue.size();
    }
  }
  return best;
}

std::vector<ClassifiedSentence> classify_sentences(
    std::span<const std::string> sentences, const CuePhraseTable& cues) {
  if (cues.empty()) throw ConfigError("cue table is empty");
  std::vector<ClassifiedSentence> out;
  out.reserve(sentences.size());
  for (const auto& text : sentences) {
    ClassifiedSentence s;
    s.text = text;
    s.douduan = segment_douduan(text);
    if (auto cls = cues.match(text)) {
      s.fact_class = *cls;
    } else if (out.empty()) {
      s.fact_class = FactClass::kCaseBackground;
    } else if (cues.fallback() == CueFallback::kInheritPrevious) {
      s.fact_class = out.back().fact_class;
    } else {
      s.fact_class = FactClass::kUnclassified;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace jddkb
