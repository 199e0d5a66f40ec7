#include "pythag/forests.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "pythag/errors.hpp"

namespace pythag {

namespace {

using Code = std::vector<std::uint8_t>;

// One past the end of the subtree whose root sits at `i`.
std::size_t subtree_end(const Code& code, std::size_t i) {
  std::size_t need = 1;
  while (need > 0) {
    need = code[i] ? need + 1 : need - 1;
    ++i;
  }
  return i;
}

// Index of vertex v, or npos when v is not a vertex.
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t locate(const Code& code, const BinaryWord& v) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (code[i] == 0) return npos;
    i = v[k] == 0 ? i + 1 : subtree_end(code, i + 1);
  }
  return i;
}

// Writes the union of the subtrees at ti and si; returns their ends.
std::pair<std::size_t, std::size_t> union_into(const Code& t, std::size_t ti, const Code& s,
                                               std::size_t si, Code& out) {
  if (t[ti] == 0) {
    std::size_t se = subtree_end(s, si);
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(si),
               s.begin() + static_cast<std::ptrdiff_t>(se));
    return {ti + 1, se};
  }
  if (s[si] == 0) {
    std::size_t te = subtree_end(t, ti);
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(ti),
               t.begin() + static_cast<std::ptrdiff_t>(te));
    return {te, si + 1};
  }
  out.push_back(1);
  auto [tl, sl] = union_into(t, ti + 1, s, si + 1, out);
  return union_into(t, tl, s, sl, out);
}

// Collects, for each leaf of t, the subtree of w hanging below it.
std::pair<std::size_t, std::size_t> growth_into(const Code& t, std::size_t ti, const Code& w,
                                                std::size_t wi, std::vector<Tree>& out) {
  if (t[ti] == 0) {
    std::size_t we = subtree_end(w, wi);
    out.push_back(Tree::from_code(Code(w.begin() + static_cast<std::ptrdiff_t>(wi),
                                       w.begin() + static_cast<std::ptrdiff_t>(we))));
    return {ti + 1, we};
  }
  if (w[wi] == 0) throw ContractError("growth_forest: tree is not a rooted subtree of the target");
  auto [tl, wl] = growth_into(t, ti + 1, w, wi + 1, out);
  return growth_into(t, tl, w, wl, out);
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

void parse_into(std::string_view text, std::size_t& pos, Code& out) {
  skip_space(text, pos);
  if (pos >= text.size()) throw ParseError("unexpected end of tree", pos);
  if (text[pos] == '*') {
    out.push_back(0);
    ++pos;
    return;
  }
  if (text[pos] != '(') throw ParseError("expected '*' or '('", pos);
  ++pos;
  out.push_back(1);
  parse_into(text, pos, out);
  parse_into(text, pos, out);
  skip_space(text, pos);
  if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
  ++pos;
}

void print_into(const Code& code, std::size_t& i, std::string& out) {
  if (code[i] == 0) {
    out.push_back('*');
    ++i;
    return;
  }
  ++i;
  out.push_back('(');
  print_into(code, i, out);
  print_into(code, i, out);
  out.push_back(')');
}

}  // namespace

// ---------------------------------------------------------------------------
// Tree

Tree Tree::caret(const Tree& left, const Tree& right) {
  Code code;
  code.reserve(1 + left.code_.size() + right.code_.size());
  code.push_back(1);
  code.insert(code.end(), left.code_.begin(), left.code_.end());
  code.insert(code.end(), right.code_.begin(), right.code_.end());
  return Tree(std::move(code));
}

Tree Tree::from_code(std::vector<std::uint8_t> code) {
  if (code.empty()) throw ContractError("empty tree code");
  std::size_t need = 1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (need == 0) throw ContractError("trailing symbols in tree code");
    if (code[i] > 1) throw ContractError("tree code symbols must be 0 or 1");
    need = code[i] ? need + 1 : need - 1;
  }
  if (need != 0) throw ContractError("truncated tree code");
  return Tree(std::move(code));
}

Tree Tree::left() const {
  if (is_leaf()) throw ContractError("a leaf has no children");
  std::size_t e = subtree_end(code_, 1);
  return Tree(Code(code_.begin() + 1, code_.begin() + static_cast<std::ptrdiff_t>(e)));
}

Tree Tree::right() const {
  if (is_leaf()) throw ContractError("a leaf has no children");
  std::size_t e = subtree_end(code_, 1);
  return Tree(Code(code_.begin() + static_cast<std::ptrdiff_t>(e), code_.end()));
}

std::vector<BinaryWord> Tree::leaves() const {
  std::vector<BinaryWord> out;
  out.reserve(leaf_count());
  BinaryWord path;
  for (auto symbol : code_) {
    if (symbol == 1) {
      path.push_back(0);
      continue;
    }
    out.push_back(path);
    while (!path.empty() && path.back() == 1) path.pop_back();
    if (!path.empty()) {
      path.pop_back();
      path.push_back(1);
    }
  }
  return out;
}

std::size_t Tree::leftmost_depth() const {
  std::size_t d = 0;
  while (code_[d] == 1) ++d;
  return d;
}

bool Tree::has_vertex(const BinaryWord& v) const {
  return locate(code_, v) != npos;
}

std::string Tree::to_string() const {
  std::string out;
  std::size_t i = 0;
  print_into(code_, i, out);
  return out;
}

// ---------------------------------------------------------------------------
// Forest

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
  if (trees_.empty()) throw ContractError("a forest needs at least one tree");
}

Forest Forest::trivial(std::size_t roots) {
  return Forest(std::vector<Tree>(roots, Tree::leaf()));
}

std::size_t Forest::leaf_count() const {
  std::size_t n = 0;
  for (const auto& t : trees_) n += t.leaf_count();
  return n;
}

Tree compose(const Tree& top, const Forest& bottom) {
  if (top.leaf_count() != bottom.root_count()) {
    throw ContractError("compose: top has " + std::to_string(top.leaf_count()) +
                        " leaves but bottom has " + std::to_string(bottom.root_count()) + " roots");
  }
  Code code;
  std::size_t next = 0;
  for (auto symbol : top.code()) {
    if (symbol == 1) {
      code.push_back(1);
    } else {
      const auto& sub = bottom[next++].code();
      code.insert(code.end(), sub.begin(), sub.end());
    }
  }
  return Tree::from_code(std::move(code));
}

Forest compose(const Forest& top, const Forest& bottom) {
  if (top.leaf_count() != bottom.root_count()) {
    throw ContractError("compose: top has " + std::to_string(top.leaf_count()) +
                        " leaves but bottom has " + std::to_string(bottom.root_count()) + " roots");
  }
  std::vector<Tree> out;
  out.reserve(top.root_count());
  std::size_t offset = 0;
  for (const auto& t : top.trees()) {
    std::vector<Tree> part(bottom.trees().begin() + static_cast<std::ptrdiff_t>(offset),
                           bottom.trees().begin() + static_cast<std::ptrdiff_t>(offset + t.leaf_count()));
    offset += t.leaf_count();
    out.push_back(compose(t, Forest(std::move(part))));
  }
  return Forest(std::move(out));
}

Forest tensor(const Forest& f, const Forest& g) {
  std::vector<Tree> trees = f.trees();
  trees.insert(trees.end(), g.trees().begin(), g.trees().end());
  return Forest(std::move(trees));
}

Forest elementary(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw ContractError("elementary forest index " + std::to_string(k) + " out of range 1.." +
                        std::to_string(n));
  }
  std::vector<Tree> trees(n, Tree::leaf());
  trees[k - 1] = Tree::caret(Tree::leaf(), Tree::leaf());
  return Forest(std::move(trees));
}

Tree vine_left(std::size_t i) {
  if (i == 0) throw ContractError("vine index must be positive");
  Code code;
  for (std::size_t k = 0; k <= i; ++k) {
    code.push_back(1);
    code.push_back(0);
  }
  code.push_back(0);
  return Tree::from_code(std::move(code));
}

Tree vine_right(std::size_t i) {
  if (i == 0) throw ContractError("vine index must be positive");
  Code code(i + 1, 1);
  code.insert(code.end(), i + 2, 0);
  return Tree::from_code(std::move(code));
}

Tree complete(std::size_t depth) {
  Tree t;
  for (std::size_t k = 0; k < depth; ++k) t = Tree::caret(t, t);
  return t;
}

Tree path_tree(const BinaryWord& v) {
  Tree t;
  for (std::size_t k = v.size(); k-- > 0;) {
    t = v[k] == 0 ? Tree::caret(t, Tree::leaf()) : Tree::caret(Tree::leaf(), t);
  }
  return t;
}

Tree tree_union(const Tree& t, const Tree& s) {
  Code out;
  out.reserve(std::max(t.code().size(), s.code().size()));
  union_into(t.code(), 0, s.code(), 0, out);
  return Tree::from_code(std::move(out));
}

Forest growth_forest(const Tree& t, const Tree& w) {
  std::vector<Tree> out;
  out.reserve(t.leaf_count());
  growth_into(t.code(), 0, w.code(), 0, out);
  return Forest(std::move(out));
}

Refinement common_refinement(const Tree& t, const Tree& s) {
  Tree w = tree_union(t, s);
  Forest f = growth_forest(t, w);
  Forest h = growth_forest(s, w);
  return {std::move(w), std::move(f), std::move(h)};
}

Tree subtree_at(const Tree& t, const BinaryWord& v) {
  std::size_t i = locate(t.code(), v);
  if (i == npos) throw ContractError("subtree_at: " + v.to_string() + " is not a vertex of " + t.to_string());
  std::size_t e = subtree_end(t.code(), i);
  return Tree::from_code(Code(t.code().begin() + static_cast<std::ptrdiff_t>(i),
                              t.code().begin() + static_cast<std::ptrdiff_t>(e)));
}

namespace {

Tree build_from(const std::vector<BinaryWord>& sorted, std::size_t begin, std::size_t end, const BinaryWord& prefix) {
  if (end - begin == 1 && sorted[begin] == prefix) return Tree::leaf();
  auto mid = begin;
  BinaryWord left = prefix.child(0);
  while (mid < end && left.is_prefix_of(sorted[mid])) ++mid;
  return Tree::caret(build_from(sorted, begin, mid, left), build_from(sorted, mid, end, prefix.child(1)));
}

}  // namespace

Tree tree_from_leaves(const std::vector<BinaryWord>& leaves) {
  if (!is_sdp(leaves)) throw ContractError("tree_from_leaves: words are not a complete prefix code");
  std::vector<BinaryWord> sorted = leaves;
  std::sort(sorted.begin(), sorted.end());
  return build_from(sorted, 0, sorted.size(), BinaryWord{});
}

Tree graft(const Tree& t, const std::map<BinaryWord, Tree>& assignments) {
  std::vector<Tree> bottom;
  std::size_t used = 0;
  for (const auto& leaf : t.leaves()) {
    auto it = assignments.find(leaf);
    if (it == assignments.end()) {
      bottom.push_back(Tree::leaf());
    } else {
      bottom.push_back(it->second);
      ++used;
    }
  }
  if (used != assignments.size()) throw ContractError("graft: a key is not a leaf of " + t.to_string());
  return compose(t, Forest(std::move(bottom)));
}

Tree parse_tree(std::string_view text, std::size_t& pos) {
  Code code;
  parse_into(text, pos, code);
  return Tree::from_code(std::move(code));
}

Tree parse_tree(std::string_view text) {
  std::size_t pos = 0;
  Tree t = parse_tree(text, pos);
  skip_space(text, pos);
  if (pos != text.size()) throw ParseError("trailing characters after tree", pos);
  return t;
}

}  // namespace pythag
