#ifndef JDDKB_DEPENDENCY_GRAPH_H_
#define JDDKB_DEPENDENCY_GRAPH_H_

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jddkb/errors.h"

namespace jddkb {

struct Token {
  std::string form;
  std::string lemma;  // empty when the annotation has "_"
  std::string upos;
  std::string xpos;
};

struct DependencyEdge {
  std::size_t head = 0;
  std::size_t dependent = 0;
  std::string relation;
};

// Universal-dependency tree over 0-based token indices.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  // heads[i] is the 0-based head of token i, or -1 for the root. Throws
  // ParseError unless the arcs form a single tree.
  DependencyGraph(std::vector<Token> tokens, std::vector<int> heads,
                  std::vector<std::string> relations);

  std::size_t size() const { return tokens_.size(); }
  const Token& token(std::size_t i) const { return tokens_.at(i); }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::optional<std::size_t> head(std::size_t i) const;
  const std::string& relation(std::size_t i) const { return relations_.at(i); }
  std::size_t root() const { return root_; }
  // Dependents of i in token order.
  std::span<const std::size_t> dependents(std::size_t i) const {
    return children_.at(i);
  }
  std::vector<DependencyEdge> edges() const;

  // Canonical verb/noun identity: lemma, else surface form.
  const std::string& key(std::size_t i) const;

  // Token indices of i's subtree in order, not descending into dependents
  // whose base relation is in `stop` (i itself is always included).
  std::vector<std::size_t> subtree(std::size_t i,
                                   std::span<const std::string_view> stop) const;
  // Concatenated surface forms of subtree(i, stop), punctuation dropped.
  std::string phrase(std::size_t i, std::span<const std::string_view> stop) const;

 private:
  std::vector<Token> tokens_;
  std::vector<int> heads_;
  std::vector<std::string> relations_;
  std::vector<std::vector<std::size_t>> children_;
  std::size_t root_ = 0;
};

// "nsubj:pass" -> "nsubj".
std::string_view base_relation(std::string_view relation);
// "nsubj:pass" -> "pass"; "" when there is no subtype.
std::string_view relation_subtype(std::string_view relation);

struct ConlluSentence {
  std::map<std::string, std::string> metadata;  // "# key = value" comments
  DependencyGraph graph;
  std::size_t line = 0;  // first line of the block
};

struct ConlluReadResult {
  std::vector<ConlluSentence> sentences;
  Diagnostics diagnostics;  // one entry per rejected block
};

// Reads sentence blocks separated by blank lines. Multiword-token ranges
// ("1-2") and empty nodes ("1.1") are skipped. Malformed blocks are
// reported and skipped.
ConlluReadResult read_conllu(std::istream& in, std::string_view source = "");

}  // namespace jddkb

#endif  // JDDKB_DEPENDENCY_GRAPH_H_
