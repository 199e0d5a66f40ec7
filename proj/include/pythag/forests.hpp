#pragma once

// Full binary trees and forests: composition (grafting), tensor product,
// common refinement, and the special trees used throughout the library.
//
// Composition is written in diagram order: compose(top, bottom) grafts the
// j-th root of `bottom` onto the j-th leaf of `top`. In operator notation
// this is bottom∘top.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pythag/words.hpp"

namespace pythag {

/// A finite full binary tree, stored as its preorder code (1 = caret, 0 = leaf).
class Tree {
public:
  /// The trivial tree (a single leaf).
  Tree() : code_{0} {}

  static Tree leaf() { return Tree(); }
  static Tree caret(const Tree& left, const Tree& right);
  /// Throws ContractError unless `code` is a valid preorder code.
  static Tree from_code(std::vector<std::uint8_t> code);

  bool is_leaf() const noexcept { return code_.size() == 1; }
  std::size_t leaf_count() const noexcept { return (code_.size() + 1) / 2; }
  std::size_t caret_count() const noexcept { return code_.size() / 2; }

  Tree left() const;
  Tree right() const;

  /// Depth-first left-to-right leaf addresses.
  std::vector<BinaryWord> leaves() const;
  /// Depth of the first (leftmost) leaf.
  std::size_t leftmost_depth() const;
  /// True iff `v` is a vertex (a leaf or internal node) of the tree.
  bool has_vertex(const BinaryWord& v) const;

  /// "*" for a leaf, "(LR)" for a caret.
  std::string to_string() const;

  const std::vector<std::uint8_t>& code() const noexcept { return code_; }

  bool operator==(const Tree&) const = default;
  auto operator<=>(const Tree&) const = default;

private:
  explicit Tree(std::vector<std::uint8_t> code) : code_(std::move(code)) {}

  std::vector<std::uint8_t> code_;
};

/// A nonempty ordered list of trees.
class Forest {
public:
  /// Throws ContractError when `trees` is empty.
  explicit Forest(std::vector<Tree> trees);
  Forest(const Tree& tree) : trees_{tree} {}  // NOLINT: a tree is a one-root forest

  /// n trivial trees.
  static Forest trivial(std::size_t roots);

  std::size_t root_count() const noexcept { return trees_.size(); }
  std::size_t leaf_count() const;
  const std::vector<Tree>& trees() const noexcept { return trees_; }
  const Tree& operator[](std::size_t i) const { return trees_[i]; }

  bool operator==(const Forest&) const = default;

private:
  std::vector<Tree> trees_;
};

Forest compose(const Forest& top, const Forest& bottom);
/// compose for a single top tree; the result is again a tree.
Tree compose(const Tree& top, const Forest& bottom);

Forest tensor(const Forest& f, const Forest& g);

/// f_{k,n}: n roots, a single caret on root k (1-based).
Forest elementary(std::size_t k, std::size_t n);

/// L_i: leaves 0, 10, 110, ..., 1^i 0, 1^{i+1}.
Tree vine_left(std::size_t i);
/// R_i: leaves 0^{i+1}, 0^i 1, ..., 01, 1.
Tree vine_right(std::size_t i);

/// The regular tree with 2^n leaves, all at depth n.
Tree complete(std::size_t depth);

/// The smallest tree having `v` as a leaf (one caret per proper prefix).
Tree path_tree(const BinaryWord& v);

struct Refinement {
  Tree tree;     ///< least common upper bound w
  Forest first;  ///< w == compose(t, first)
  Forest second; ///< w == compose(s, second)
};

/// Union of two trees as subtrees of the infinite binary tree, with the
/// forests that grow each argument into it.
Refinement common_refinement(const Tree& t, const Tree& s);

/// Just the union tree of common_refinement.
Tree tree_union(const Tree& t, const Tree& s);

/// The forest f with compose(t, f) == w; requires t to be a rooted subtree of w.
Forest growth_forest(const Tree& t, const Tree& w);

/// The maximal subtree of `t` rooted at vertex `v`.
Tree subtree_at(const Tree& t, const BinaryWord& v);

/// The tree whose leaves are exactly `leaves`; throws ContractError unless
/// they form a complete prefix code.
Tree tree_from_leaves(const std::vector<BinaryWord>& leaves);

/// Replaces each listed leaf by its tree.
Tree graft(const Tree& t, const std::map<BinaryWord, Tree>& assignments);

/// Parses the grammar tree ::= "*" | "(" tree tree ")" (whitespace ignored).
Tree parse_tree(std::string_view text);
/// Parses a tree starting at `pos`, advancing it past the tree.
Tree parse_tree(std::string_view text, std::size_t& pos);

}  // namespace pythag
