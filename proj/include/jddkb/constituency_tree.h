#ifndef JDDKB_CONSTITUENCY_TREE_H_
#define JDDKB_CONSTITUENCY_TREE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jddkb {

// Labeled ordered tree in Penn/CTB bracket notation, e.g.
//   (ROOT (IP (NP (NN 被告人)) (VP (VV 逃跑))))
// Leaves are the words; the node above a leaf is its pre-terminal (POS tag).
class ConstituencyTree {
 public:
  struct Node {
    std::string label;  // category, or the word for a leaf
    std::vector<std::size_t> children;
    std::optional<std::size_t> parent;
    std::optional<std::size_t> leaf_index;  // set on leaves only
  };

  // Throws ParseError on unbalanced brackets or an empty node.
  static ConstituencyTree Parse(std::string_view bracketed);

  std::size_t root() const { return 0; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t leaf_node(std::size_t leaf_index) const {
    return leaves_.at(leaf_index);
  }
  std::vector<std::string> words() const;
  // Label of the pre-terminal above the leaf.
  const std::string& tag(std::size_t leaf_index) const;
  // Labels from the root down to the pre-terminal of the leaf (the leaf
  // word itself excluded).
  std::vector<std::string> path_labels(std::size_t leaf_index) const;

  std::string to_string() const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::size_t> leaves_;
};

}  // namespace jddkb

#endif  // JDDKB_CONSTITUENCY_TREE_H_
