#include "pythag/thompson.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "pythag/errors.hpp"

namespace pythag {

namespace {

using Code = std::vector<std::uint8_t>;

// Leaf index -> code position, for every caret whose two children are leaves.
std::map<std::size_t, std::size_t> exposed_carets(const Code& code) {
  std::map<std::size_t, std::size_t> out;
  std::size_t leaves_seen = 0;
  for (std::size_t p = 0; p < code.size(); ++p) {
    if (code[p] == 1 && p + 2 < code.size() && code[p + 1] == 0 && code[p + 2] == 0) {
      out.emplace(leaves_seen, p);
    }
    if (code[p] == 0) ++leaves_seen;
  }
  return out;
}

Code collapse(const Code& code, const std::vector<std::size_t>& positions) {
  Code out;
  out.reserve(code.size());
  std::size_t next = 0;
  for (std::size_t p = 0; p < code.size(); ++p) {
    if (next < positions.size() && positions[next] == p) {
      out.push_back(0);
      p += 2;
      ++next;
    } else {
      out.push_back(code[p]);
    }
  }
  return out;
}

}  // namespace

std::pair<Tree, Tree> reduce_pair(Tree range, Tree domain) {
  if (range.leaf_count() != domain.leaf_count()) {
    throw ContractError("tree pair leaf counts differ: " + std::to_string(range.leaf_count()) + " vs " +
                        std::to_string(domain.leaf_count()));
  }
  for (;;) {
    auto r = exposed_carets(range.code());
    auto d = exposed_carets(domain.code());
    std::vector<std::size_t> rp;
    std::vector<std::size_t> dp;
    for (const auto& [leaf, pos] : r) {
      auto it = d.find(leaf);
      if (it == d.end()) continue;
      rp.push_back(pos);
      dp.push_back(it->second);
    }
    if (rp.empty()) break;
    range = Tree::from_code(collapse(range.code(), rp));
    domain = Tree::from_code(collapse(domain.code(), dp));
  }
  return {std::move(range), std::move(domain)};
}

ThompsonElement ThompsonElement::from_pair(const Tree& range, const Tree& domain) {
  auto [r, d] = reduce_pair(range, domain);
  return ThompsonElement(std::move(r), std::move(d));
}

std::string ThompsonElement::to_string() const {
  return "[" + range_.to_string() + "," + domain_.to_string() + "]";
}

ThompsonElement multiply(const ThompsonElement& g, const ThompsonElement& h) {
  // g∘h = [f∘t, f'∘s'] with f∘s = f'∘t'; here via the union of s and t'.
  auto ref = common_refinement(g.domain_tree(), h.range_tree());
  return ThompsonElement::from_pair(compose(g.range_tree(), ref.first),
                                    compose(h.domain_tree(), ref.second));
}

ThompsonElement inverse(const ThompsonElement& g) {
  return ThompsonElement::from_pair(g.domain_tree(), g.range_tree());
}

ThompsonElement power(const ThompsonElement& g, std::int64_t n) {
  ThompsonElement base = n < 0 ? inverse(g) : g;
  auto e = static_cast<std::uint64_t>(n < 0 ? -n : n);
  ThompsonElement result;
  while (e > 0) {
    if (e & 1u) result = multiply(result, base);
    e >>= 1u;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

ThompsonElement generator(std::size_t n) {
  // x_0 halves [0,1/2]: domain leaves 0,10,11 go to 00,01,1.
  Tree range = vine_right(1);
  Tree domain = vine_left(1);
  for (std::size_t k = 0; k < n; ++k) {
    range = Tree::caret(Tree::leaf(), range);
    domain = Tree::caret(Tree::leaf(), domain);
  }
  return ThompsonElement::from_pair(range, domain);
}

CantorPoint act_point(const ThompsonElement& g, const CantorPoint& p) {
  auto domain = g.domain_tree().leaves();
  auto range = g.range_tree().leaves();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (point_in_interval(p, domain[i])) return p.replace_prefix(domain[i].size(), range[i]);
  }
  throw ContractError("act_point: domain leaves do not cover the point");  // unreachable for valid trees
}

IntervalUnion support(const ThompsonElement& g) {
  auto domain = g.domain_tree().leaves();
  auto range = g.range_tree().leaves();
  IntervalUnion u;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] != range[i]) u = union_insert(std::move(u), domain[i]);
  }
  return u;
}

std::pair<Tree, Tree> refine_domain(const ThompsonElement& g, const Tree& domain_target) {
  Tree w = tree_union(g.domain_tree(), domain_target);
  Forest f = growth_forest(g.domain_tree(), w);
  return {compose(g.range_tree(), f), w};
}

namespace {

struct Block {
  std::size_t begin = 0;
  std::size_t end = 0;
};

Block prefix_block(const std::vector<BinaryWord>& leaves, const BinaryWord& v) {
  auto first = std::find_if(leaves.begin(), leaves.end(), [&](const BinaryWord& l) { return v.is_prefix_of(l); });
  auto last = std::find_if(first, leaves.end(), [&](const BinaryWord& l) { return !v.is_prefix_of(l); });
  return {static_cast<std::size_t>(first - leaves.begin()), static_cast<std::size_t>(last - leaves.begin())};
}

}  // namespace

bool stabilizes(const ThompsonElement& g, const BinaryWord& v) {
  auto [range, domain] = refine_domain(g, path_tree(v));
  auto d = prefix_block(domain.leaves(), v);
  auto r = prefix_block(range.leaves(), v);
  return d.begin == r.begin && d.end == r.end && d.end > d.begin;
}

ThompsonElement restrict(const ThompsonElement& g, const BinaryWord& v) {
  if (!stabilizes(g, v)) {
    throw ContractError("restrict: " + g.to_string() + " does not stabilize I_" + v.to_string());
  }
  auto [range, domain] = refine_domain(g, path_tree(v));
  return ThompsonElement::from_pair(subtree_at(range, v), subtree_at(domain, v));
}

std::int64_t slope_exponent_at_zero(const ThompsonElement& g) {
  return static_cast<std::int64_t>(g.range_tree().leftmost_depth()) -
         static_cast<std::int64_t>(g.domain_tree().leftmost_depth());
}

ThompsonElement vine_elt(std::size_t i) {
  return ThompsonElement::from_pair(vine_left(i), vine_right(i));
}

ThompsonElement fixture_g(std::size_t n, std::size_t i, const CantorPoint& u) {
  Tree base = complete(n);
  std::map<BinaryWord, Tree> range_graft;
  std::map<BinaryWord, Tree> domain_graft;
  for (const auto& leaf : base.leaves()) {
    if (point_in_interval(u, leaf)) continue;
    range_graft.emplace(leaf, vine_left(i));
    domain_graft.emplace(leaf, vine_right(i));
  }
  return ThompsonElement::from_pair(graft(base, range_graft), graft(base, domain_graft));
}

ThompsonElement fixture_g_tilde(std::size_t n, std::size_t i) {
  Tree base = complete(n);
  std::map<BinaryWord, Tree> range_graft;
  std::map<BinaryWord, Tree> domain_graft;
  for (const auto& leaf : base.leaves()) {
    range_graft.emplace(leaf, vine_left(i));
    domain_graft.emplace(leaf, vine_right(i));
  }
  return ThompsonElement::from_pair(graft(base, range_graft), graft(base, domain_graft));
}

ThompsonElement embed_at(const ThompsonElement& inner, const BinaryWord& v) {
  Tree base = path_tree(v);
  return ThompsonElement::from_pair(graft(base, {{v, inner.range_tree()}}),
                                    graft(base, {{v, inner.domain_tree()}}));
}

}  // namespace pythag
