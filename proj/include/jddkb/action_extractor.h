#ifndef JDDKB_ACTION_EXTRACTOR_H_
#define JDDKB_ACTION_EXTRACTOR_H_

// Action-schema extraction over constituency + universal-dependency parses.
//
// Triggers:
//   rule 1  VV leaves whose path from the root contains only IP/VP/VV/VRD
//           nodes (a ROOT wrapper is not counted as a path node);
//   rule 2  verbs that are conj/ccomp dependents of a rule-1 trigger (one
//           hop only).
// Arguments:
//   subject   nsubj dependents; otherwise inherited from the most recent
//             earlier clause that has a subject;
//   object    obj dependents, except 被 (aux:pass) -> nsubj:pass dependents,
//             and 将/把 (aux) -> nominal dependents between marker and verb;
//   modifier  advmod dependents minus an exclusion list.

#include <set>
#include <span>
#include <string>
#include <vector>

#include "jddkb/constituency_tree.h"
#include "jddkb/corpus.h"
#include "jddkb/dependency_graph.h"
#include "jddkb/model.h"

namespace jddkb {

// Which earlier clauses may lend their subject.
enum class InheritanceWindow {
  kSentence,   // same sentence only
  kSameClass,  // same sentence, then earlier sentences of the same fact class
  kDocument,   // any earlier clause
};

std::string_view to_string(InheritanceWindow w);
std::optional<InheritanceWindow> parse_inheritance_window(std::string_view s);

struct ActionRules {
  std::vector<std::string> excluded_modifiers = {"遂", "并", "且", "后", "但"};
  InheritanceWindow window = InheritanceWindow::kSameClass;
  std::vector<std::string> path_labels = {"IP", "VP", "VV", "VRD"};
};

// True when the leaf is a VV whose root path passes rule 1.
bool satisfies_rule1(const ConstituencyTree& tree, std::size_t leaf,
                     std::span<const std::string> path_labels);

// Sorted token indices. Throws AlignmentError when the tree leaves and the
// dependency tokens differ.
std::vector<std::size_t> extract_trigger_verbs(const ConstituencyTree& tree,
                                               const DependencyGraph& graph,
                                               const ActionRules& rules = {});

struct SubjectResult {
  std::vector<std::string> subject;
  bool inherited = false;
  friend bool operator==(const SubjectResult&, const SubjectResult&) = default;
};

// `context` holds the records of strictly earlier clauses that the
// inheritance window admits, oldest first.
SubjectResult extract_subject(std::size_t trigger, const DependencyGraph& graph,
                              std::span<const ActionRecord> context);

std::vector<std::string> extract_object(std::size_t trigger,
                                        const DependencyGraph& graph);

std::vector<std::string> extract_modifier(
    std::size_t trigger, const DependencyGraph& graph,
    std::span<const std::string> excluded);

// Extracts the actions of a whole document. `parses[i]` belongs to
// sentences[i] and may be null (no annotation: no actions). Misaligned
// parses are reported and skipped.
std::vector<ActionRecord> extract_document_actions(
    std::span<const ClassifiedSentence> sentences,
    std::span<const SentenceParse* const> parses, const ActionRules& rules,
    Diagnostics& diagnostics, const std::string& where = "");

struct PruneReport {
  std::vector<std::string> removed_lemmas;  // sorted
  std::size_t removed_records = 0;
};

// Drops every action whose trigger occurs exactly once over the input.
PruneReport prune_hapax_triggers(std::vector<ActionRecord>& actions);
PruneReport prune_hapax_triggers(std::vector<JddRecord>& corpus);

}  // namespace jddkb

#endif  // JDDKB_ACTION_EXTRACTOR_H_
