#ifndef JDDKB_CORPUS_H_
#define JDDKB_CORPUS_H_

// Raw corpus and annotation input.
//
// Corpus: JSON lines, one document per line, optionally preceded by a
// header line {"schema_version": "jddkb-corpus/1"}:
//   {"case_id": "...", "case_type": "criminal",
//    "parties": [{"role": "defendant", "name": "...", "attributes": {...}}],
//    "facts": ["sentence", ...] | "text",
//    "decision": "..."}
//
// Annotations (a directory):
//   *.conllu  one block per fact sentence; "# doc_id = <case_id>" and
//             "# sent_id = <0-based fact sentence index>"; optional
//             "# douduan = 1-6 7-12" token ranges (1-based, inclusive).
//   *.trees   one line per sentence: <doc_id> TAB <sent_id> TAB <tree>.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jddkb/constituency_tree.h"
#include "jddkb/dependency_graph.h"
#include "jddkb/errors.h"
#include "jddkb/model.h"

namespace jddkb {

inline constexpr std::string_view kCorpusSchema = "jddkb-corpus/1";

struct RawDocument {
  std::size_t line = 0;
  std::string case_id;
  CaseType case_type = CaseType::kCriminal;
  std::vector<Party> parties;
  std::vector<std::string> sentences;  // fact sentences in order
  std::string decision_text;
};

// Parses one corpus line. Throws ParseError with a reason.
RawDocument parse_corpus_line(std::string_view line);

// Sequential reader. Malformed lines (and duplicate case ids) are reported
// with their line number and skipped.
class CorpusReader {
 public:
  // Throws IoError when the file cannot be opened.
  explicit CorpusReader(const std::filesystem::path& path);

  std::optional<RawDocument> next(Diagnostics& diagnostics);

 private:
  std::ifstream in_;
  std::string source_;
  std::size_t line_no_ = 0;
  std::map<std::string, std::size_t> seen_;
};

std::vector<RawDocument> load_corpus(const std::filesystem::path& path,
                                     Diagnostics& diagnostics);

// Half-open token range [begin, end).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct SentenceParse {
  std::optional<DependencyGraph> graph;
  std::optional<ConstituencyTree> tree;
  std::vector<TokenSpan> douduan_spans;  // empty: derive from tokens
};

// Annotations keyed by (doc_id, sent_id).
class ParseStore {
 public:
  // Loads every *.conllu and *.trees file in `dir` (sorted by name). Throws
  // IoError when the directory is missing or holds no .conllu file.
  static ParseStore LoadDirectory(const std::filesystem::path& dir,
                                  Diagnostics& diagnostics);

  void add_conllu(std::istream& in, const std::string& source,
                  Diagnostics& diagnostics);
  void add_trees(std::istream& in, const std::string& source,
                 Diagnostics& diagnostics);
  void put(const std::string& doc_id, const std::string& sent_id,
           SentenceParse parse);

  const SentenceParse* find(const std::string& doc_id,
                            const std::string& sent_id) const;
  std::size_t size() const { return parses_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, SentenceParse> parses_;
};

std::string parse_ref(const std::string& doc_id, std::size_t sentence_index);

// Clause spans over the tokens: explicit spans when annotated, otherwise
// segment_douduan over the concatenated token forms mapped back to tokens.
std::vector<TokenSpan> douduan_spans(const SentenceParse& parse);
std::vector<TokenSpan> derive_douduan_spans(const DependencyGraph& graph);

}  // namespace jddkb

#endif  // JDDKB_CORPUS_H_
