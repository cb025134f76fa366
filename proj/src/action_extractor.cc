#include "jddkb/action_extractor.h"

#include <algorithm>
#include <array>
#include <map>

namespace jddkb {

namespace {

// Dependents not folded into an argument phrase.
constexpr std::array<std::string_view, 17> kPhraseStop = {
    "acl",   "relcl",     "advcl", "ccomp",  "xcomp",    "csubj",
    "parataxis", "punct", "conj",  "cc",     "mark",     "dep",
    "discourse", "advmod", "aux",  "cop",    "vocative"};

bool is_verb(const Token& t) {
  return t.upos == "VERB" || t.xpos == "VV";
}

bool is_nominal(const Token& t) {
  if (!t.upos.empty()) {
    return t.upos == "NOUN" || t.upos == "PROPN" || t.upos == "PRON";
  }
  return t.xpos == "NN" || t.xpos == "NR" || t.xpos == "PN";
}

bool is_passive_aux(std::string_view rel) {
  return rel == "auxpass" ||
         (base_relation(rel) == "aux" && relation_subtype(rel) == "pass");
}

bool is_passive_subject(std::string_view rel) {
  return rel == "nsubjpass" ||
         (base_relation(rel) == "nsubj" && relation_subtype(rel) == "pass");
}

bool is_active_subject(std::string_view rel) {
  return base_relation(rel) == "nsubj" && relation_subtype(rel) != "pass";
}

bool token_is(const DependencyGraph& g, std::size_t i, std::string_view w) {
  return g.token(i).form == w || g.token(i).lemma == w;
}

// Phrase of each argument head plus its coordinated conjuncts.
std::vector<std::string> argument_phrases(const DependencyGraph& g,
                                          const std::vector<std::size_t>& heads) {
  std::vector<std::string> out;
  for (std::size_t h : heads) {
    out.push_back(g.phrase(h, kPhraseStop));
    for (std::size_t d : g.dependents(h)) {
      if (base_relation(g.relation(d)) == "conj" && is_nominal(g.token(d))) {
        out.push_back(g.phrase(d, kPhraseStop));
      }
    }
  }
  return out;
}

void check_alignment(const ConstituencyTree& tree, const DependencyGraph& graph) {
  const auto words = tree.words();
  if (words.size() != graph.size()) {
    throw AlignmentError("tree has " + std::to_string(words.size()) +
                         " leaves, dependency graph has " +
                         std::to_string(graph.size()) + " tokens");
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] != graph.token(i).form) {
      throw AlignmentError("token " + std::to_string(i + 1) + ": tree '" +
                           words[i] + "' vs dependency '" +
                           graph.token(i).form + "'");
    }
  }
}

}  // namespace

std::string_view to_string(InheritanceWindow w) {
  switch (w) {
    case InheritanceWindow::kSentence:
      return "sentence";
    case InheritanceWindow::kSameClass:
      return "same_class";
    case InheritanceWindow::kDocument:
      return "document";
  }
  return "?";
}

std::optional<InheritanceWindow> parse_inheritance_window(std::string_view s) {
  if (s == "sentence") return InheritanceWindow::kSentence;
  if (s == "same_class") return InheritanceWindow::kSameClass;
  if (s == "document") return InheritanceWindow::kDocument;
  return std::nullopt;
}

bool satisfies_rule1(const ConstituencyTree& tree, std::size_t leaf,
                     std::span<const std::string> path_labels) {
  if (tree.tag(leaf) != "VV") return false;
  auto labels = tree.path_labels(leaf);
  std::size_t first = 0;
  if (!labels.empty() && (labels.front() == "ROOT" || labels.front().empty())) {
    first = 1;
  }
  for (std::size_t k = first; k < labels.size(); ++k) {
    if (std::find(path_labels.begin(), path_labels.end(), labels[k]) ==
        path_labels.end()) {
      return false;
    }
  }
  return labels.size() > first;
}

std::vector<std::size_t> extract_trigger_verbs(const ConstituencyTree& tree,
                                               const DependencyGraph& graph,
                                               const ActionRules& rules) {
  check_alignment(tree, graph);
  std::vector<std::size_t> rule1;
  for (std::size_t leaf = 0; leaf < tree.leaf_count(); ++leaf) {
    if (!satisfies_rule1(tree, leaf, rules.path_labels)) continue;
    // A resultative compound (VRD) yields one trigger: its dependency head.
    const auto pre = *tree.node(tree.leaf_node(leaf)).parent;
    const auto up = tree.node(pre).parent;
    if (up && tree.node(*up).label == "VRD") {
      const auto h = graph.head(leaf);
      if (h && tree.node(*tree.node(tree.leaf_node(*h)).parent).parent == up) {
        continue;
      }
    }
    rule1.push_back(leaf);
  }
  std::vector<std::size_t> out = rule1;
  for (std::size_t t : rule1) {
    for (std::size_t d : graph.dependents(t)) {
      const auto base = base_relation(graph.relation(d));
      if ((base == "conj" || base == "ccomp") && is_verb(graph.token(d))) {
        out.push_back(d);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SubjectResult extract_subject(std::size_t trigger, const DependencyGraph& graph,
                              std::span<const ActionRecord> context) {
  std::vector<std::size_t> heads;
  for (std::size_t d : graph.dependents(trigger)) {
    if (is_active_subject(graph.relation(d))) heads.push_back(d);
  }
  if (!heads.empty()) return {argument_phrases(graph, heads), false};
  // Latest clause with a subject; its first trigger in token order.
  for (auto it = context.rbegin(); it != context.rend(); ++it) {
    if (it->subject.empty()) continue;
    const ActionSource latest = it->source;
    const ActionRecord* pick = &*it;
    for (auto jt = it; jt != context.rend() && jt->source == latest; ++jt) {
      if (!jt->subject.empty()) pick = &*jt;
    }
    return {pick->subject, true};
  }
  return {{}, true};
}

std::vector<std::string> extract_object(std::size_t trigger,
                                        const DependencyGraph& graph) {
  const auto deps = graph.dependents(trigger);
  // 被: passive auxiliary -> passive nominal subject.
  for (std::size_t d : deps) {
    if (is_passive_aux(graph.relation(d)) && token_is(graph, d, "被")) {
      std::vector<std::size_t> heads;
      for (std::size_t e : deps) {
        if (is_passive_subject(graph.relation(e))) heads.push_back(e);
      }
      return argument_phrases(graph, heads);
    }
  }
  // 将/把: auxiliary -> nominals between the marker and the verb.
  for (std::size_t d : deps) {
    if (base_relation(graph.relation(d)) == "aux" &&
        !is_passive_aux(graph.relation(d)) &&
        (token_is(graph, d, "把") || token_is(graph, d, "将"))) {
      std::vector<std::size_t> heads;
      for (std::size_t e : deps) {
        if (e > d && e < trigger && is_nominal(graph.token(e))) heads.push_back(e);
      }
      return argument_phrases(graph, heads);
    }
  }
  std::vector<std::size_t> heads;
  for (std::size_t d : deps) {
    const auto base = base_relation(graph.relation(d));
    if (base == "obj" || base == "dobj") heads.push_back(d);
  }
  return argument_phrases(graph, heads);
}

std::vector<std::string> extract_modifier(std::size_t trigger,
                                          const DependencyGraph& graph,
                                          std::span<const std::string> excluded) {
  std::vector<std::string> out;
  for (std::size_t d : graph.dependents(trigger)) {
    if (base_relation(graph.relation(d)) != "advmod") continue;
    std::string p = graph.phrase(d, kPhraseStop);
    const bool skip =
        std::find(excluded.begin(), excluded.end(), p) != excluded.end() ||
        std::find(excluded.begin(), excluded.end(), graph.key(d)) != excluded.end();
    if (!skip) out.push_back(std::move(p));
  }
  return out;
}

std::vector<ActionRecord> extract_document_actions(
    std::span<const ClassifiedSentence> sentences,
    std::span<const SentenceParse* const> parses, const ActionRules& rules,
    Diagnostics& diagnostics, const std::string& where) {
  std::vector<ActionRecord> out;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const SentenceParse* parse = si < parses.size() ? parses[si] : nullptr;
    if (parse == nullptr || !parse->graph) continue;
    const std::string loc = where + " sentence " + std::to_string(si);
    if (!parse->tree) {
      diagnostics.warn(loc, "dependency parse without constituency tree");
      continue;
    }
    const DependencyGraph& graph = *parse->graph;
    std::vector<std::size_t> triggers;
    try {
      triggers = extract_trigger_verbs(*parse->tree, graph, rules);
    } catch (const AlignmentError& e) {
      diagnostics.warn(loc, e.what());
      continue;
    }
    const auto spans = douduan_spans(*parse);
    // Context admitted by the window, computed per clause.
    auto admitted = [&](const ActionRecord& r) {
      if (r.source.sentence == si) return true;
      switch (rules.window) {
        case InheritanceWindow::kSentence:
          return false;
        case InheritanceWindow::kSameClass:
          return sentences[r.source.sentence].fact_class ==
                 sentences[si].fact_class;
        case InheritanceWindow::kDocument:
          return true;
      }
      return false;
    };
    for (std::size_t di = 0; di < spans.size(); ++di) {
      std::vector<ActionRecord> context;
      for (const auto& r : out) {
        if (admitted(r)) context.push_back(r);
      }
      std::vector<ActionRecord> clause;
      for (std::size_t t : triggers) {
        if (t < spans[di].begin || t >= spans[di].end) continue;
        ActionRecord a;
        a.trigger = graph.key(t);
        auto subj = extract_subject(t, graph, context);
        a.subject = std::move(subj.subject);
        a.subject_inherited = subj.inherited;
        a.object = extract_object(t, graph);
        a.modifier = extract_modifier(t, graph, rules.excluded_modifiers);
        a.source = {si, di};
        clause.push_back(std::move(a));
      }
      out.insert(out.end(), clause.begin(), clause.end());
    }
  }
  return out;
}

PruneReport prune_hapax_triggers(std::vector<ActionRecord>& actions) {
  std::map<std::string, std::size_t> freq;
  for (const auto& a : actions) ++freq[a.trigger];
  PruneReport report;
  for (const auto& [lemma, n] : freq) {
    if (n == 1) report.removed_lemmas.push_back(lemma);
  }
  const auto before = actions.size();
  std::erase_if(actions, [&](const ActionRecord& a) { return freq[a.trigger] == 1; });
  report.removed_records = before - actions.size();
  return report;
}

PruneReport prune_hapax_triggers(std::vector<JddRecord>& corpus) {
  std::map<std::string, std::size_t> freq;
  for (const auto& r : corpus) {
    for (const auto& a : r.actions) ++freq[a.trigger];
  }
  PruneReport report;
  for (const auto& [lemma, n] : freq) {
    if (n == 1) report.removed_lemmas.push_back(lemma);
  }
  for (auto& r : corpus) {
    const auto before = r.actions.size();
    std::erase_if(r.actions, [&](const ActionRecord& a) { return freq[a.trigger] == 1; });
    report.removed_records += before - r.actions.size();
  }
  return report;
}

}  // namespace jddkb
