#include "jddkb/dependency_graph.h"

#include <algorithm>
#include <charconv>

namespace jddkb {

namespace {

bool is_punct(const Token& t) { return t.upos == "PUNCT" || t.xpos == "PU"; }

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view base_relation(std::string_view relation) {
  return relation.substr(0, relation.find(':'));
}

std::string_view relation_subtype(std::string_view relation) {
  auto colon = relation.find(':');
  return colon == std::string_view::npos ? std::string_view{}
                                         : relation.substr(colon + 1);
}

DependencyGraph::DependencyGraph(std::vector<Token> tokens,
                                 std::vector<int> heads,
                                 std::vector<std::string> relations)
    : tokens_(std::move(tokens)),
      heads_(std::move(heads)),
      relations_(std::move(relations)) {
  const std::size_t n = tokens_.size();
  if (heads_.size() != n || relations_.size() != n) {
    throw ParseError("dependency graph: column length mismatch");
  }
  if (n == 0) throw ParseError("dependency graph: no tokens");
  children_.assign(n, {});
  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < n; ++i) {
    const int h = heads_[i];
    if (h < 0) {
      if (root) throw ParseError("dependency graph: more than one root");
      root = i;
    } else if (static_cast<std::size_t>(h) >= n ||
               static_cast<std::size_t>(h) == i) {
      throw ParseError("dependency graph: bad head for token " +
                       std::to_string(i + 1));
    } else {
      children_[h].push_back(i);
    }
  }
  if (!root) throw ParseError("dependency graph: no root");
  root_ = *root;
  // Every token must reach the root without revisiting a node.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i;
    std::size_t steps = 0;
    while (heads_[cur] >= 0) {
      cur = static_cast<std::size_t>(heads_[cur]);
      if (++steps > n) throw ParseError("dependency graph: cycle");
    }
  }
}

std::optional<std::size_t> DependencyGraph::head(std::size_t i) const {
  const int h = heads_.at(i);
  if (h < 0) return std::nullopt;
  return static_cast<std::size_t>(h);
}

std::vector<DependencyEdge> DependencyGraph::edges() const {
  std::vector<DependencyEdge> out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (heads_[i] >= 0) {
      out.push_back({static_cast<std::size_t>(heads_[i]), i, relations_[i]});
    }
  }
  return out;
}

const std::string& DependencyGraph::key(std::size_t i) const {
  const auto& t = tokens_.at(i);
  return t.lemma.empty() ? t.form : t.lemma;
}

std::vector<std::size_t> DependencyGraph::subtree(
    std::size_t i, std::span<const std::string_view> stop) const {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{i};
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (std::size_t d : children_[cur]) {
      const auto base = base_relation(relations_[d]);
      if (std::find(stop.begin(), stop.end(), base) != stop.end()) continue;
      stack.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string DependencyGraph::phrase(
    std::size_t i, std::span<const std::string_view> stop) const {
  std::string out;
  for (std::size_t t : subtree(i, stop)) {
    if (t != i && is_punct(tokens_[t])) continue;
    out += tokens_[t].form;
  }
  return out;
}

ConlluReadResult read_conllu(std::istream& in, std::string_view source) {
  ConlluReadResult result;
  std::string line;
  std::size_t line_no = 0;

  std::map<std::string, std::string> metadata;
  std::vector<Token> tokens;
  std::vector<int> heads;
  std::vector<std::string> relations;
  std::size_t block_start = 0;
  std::string block_error;

  auto flush = [&]() {
    if (tokens.empty() && metadata.empty() && block_error.empty()) return;
    const std::string where =
        std::string(source) + ":" + std::to_string(block_start);
    if (block_error.empty()) {
      try {
        result.sentences.push_back(
            {std::move(metadata),
             DependencyGraph(std::move(tokens), std::move(heads),
                             std::move(relations)),
             block_start});
      } catch (const ParseError& e) {
        result.diagnostics.warn(where, e.what());
      }
    } else {
      result.diagnostics.warn(where, block_error);
    }
    metadata.clear();
    tokens.clear();
    heads.clear();
    relations.clear();
    block_error.clear();
    block_start = 0;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (block_start == 0) block_start = line_no;
    if (!block_error.empty()) continue;
    if (line.front() == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        auto trim = [](std::string_view s) {
          while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
          while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
          return std::string(s);
        };
        metadata[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      }
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 10) {
      block_error = "line " + std::to_string(line_no) + ": expected 10 columns";
      continue;
    }
    if (fields[0].find('-') != std::string_view::npos ||
        fields[0].find('.') != std::string_view::npos) {
      continue;
    }
    const auto id = to_int(fields[0]);
    const auto head = to_int(fields[6]);
    if (!id || !head || *id != static_cast<int>(tokens.size()) + 1) {
      block_error = "line " + std::to_string(line_no) + ": bad ID or HEAD";
      continue;
    }
    auto field = [](std::string_view f) {
      return f == "_" ? std::string() : std::string(f);
    };
    tokens.push_back({std::string(fields[1]), field(fields[2]),
                      field(fields[3]), field(fields[4])});
    heads.push_back(*head - 1);
    relations.emplace_back(fields[7]);
  }
  flush();
  return result;
}

}  // namespace jddkb
