#include "jddkb/constituency_tree.h"

#include <algorithm>

#include "jddkb/errors.h"

namespace jddkb {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

ConstituencyTree ConstituencyTree::Parse(std::string_view text) {
  ConstituencyTree tree;
  std::vector<std::size_t> open;  // stack of node ids
  std::size_t i = 0;
  auto skip_space = [&]() {
    while (i < text.size() && is_space(text[i])) ++i;
  };
  auto read_atom = [&]() {
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i]) && text[i] != '(' &&
           text[i] != ')') {
      ++i;
    }
    return std::string(text.substr(start, i - start));
  };

  skip_space();
  if (i >= text.size() || text[i] != '(') {
    throw ParseError("constituency tree: expected '('");
  }
  bool closed_root = false;
  while (true) {
    skip_space();
    if (i >= text.size()) break;
    if (closed_root) throw ParseError("constituency tree: trailing input");
    const char c = text[i];
    if (c == '(') {
      ++i;
      skip_space();
      Node n;
      if (i < text.size() && text[i] != '(' && text[i] != ')') n.label = read_atom();
      const std::size_t id = tree.nodes_.size();
      if (!open.empty()) {
        n.parent = open.back();
        tree.nodes_[open.back()].children.push_back(id);
      }
      tree.nodes_.push_back(std::move(n));
      open.push_back(id);
    } else if (c == ')') {
      ++i;
      if (open.empty()) throw ParseError("constituency tree: unbalanced ')'");
      if (tree.nodes_[open.back()].children.empty()) {
        throw ParseError("constituency tree: node '" +
                         tree.nodes_[open.back()].label + "' has no children");
      }
      open.pop_back();
      if (open.empty()) closed_root = true;
    } else {
      if (open.empty()) throw ParseError("constituency tree: word outside node");
      Node leaf;
      leaf.label = read_atom();
      leaf.parent = open.back();
      leaf.leaf_index = tree.leaves_.size();
      const std::size_t id = tree.nodes_.size();
      tree.nodes_[open.back()].children.push_back(id);
      tree.leaves_.push_back(id);
      tree.nodes_.push_back(std::move(leaf));
    }
  }
  if (!open.empty()) throw ParseError("constituency tree: unbalanced '('");
  if (tree.leaves_.empty()) throw ParseError("constituency tree: no leaves");
  return tree;
}

std::vector<std::string> ConstituencyTree::words() const {
  std::vector<std::string> out;
  out.reserve(leaves_.size());
  for (std::size_t id : leaves_) out.push_back(nodes_[id].label);
  return out;
}

const std::string& ConstituencyTree::tag(std::size_t leaf_index) const {
  return nodes_.at(*nodes_.at(leaves_.at(leaf_index)).parent).label;
}

std::vector<std::string> ConstituencyTree::path_labels(
    std::size_t leaf_index) const {
  std::vector<std::string> out;
  auto cur = nodes_.at(leaves_.at(leaf_index)).parent;
  while (cur) {
    out.push_back(nodes_[*cur].label);
    cur = nodes_[*cur].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string ConstituencyTree::to_string() const {
  std::string out;
  auto emit = [&](auto&& self, std::size_t id) -> void {
    const Node& n = nodes_[id];
    if (n.leaf_index) {
      out += n.label;
      return;
    }
    out += '(';
    out += n.label;
    for (std::size_t c : n.children) {
      out += ' ';
      self(self, c);
    }
    out += ')';
  };
  emit(emit, 0);
  return out;
}

}  // namespace jddkb
