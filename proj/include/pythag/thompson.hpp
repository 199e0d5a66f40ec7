#pragma once

// Elements of Thompson's group F as reduced tree pairs.
//
// An element [t, s] has range tree t and domain tree s; it maps the
// standard dyadic interval of the i-th leaf of s affinely onto that of the
// i-th leaf of t. Products compose as functions: multiply(g, h) applies h
// first.

#include <cstdint>
#include <string>

#include "pythag/forests.hpp"
#include "pythag/words.hpp"

namespace pythag {

class ThompsonElement {
public:
  /// The identity [e, e].
  ThompsonElement() = default;

  /// Reduces (range, domain); throws ContractError on a leaf-count mismatch.
  static ThompsonElement from_pair(const Tree& range, const Tree& domain);

  const Tree& range_tree() const noexcept { return range_; }
  const Tree& domain_tree() const noexcept { return domain_; }
  std::size_t leaf_count() const noexcept { return range_.leaf_count(); }
  bool is_identity() const noexcept { return range_.is_leaf(); }

  /// "[range,domain]" in the tree grammar; parse_element reads it back.
  std::string to_string() const;

  bool operator==(const ThompsonElement&) const = default;

private:
  ThompsonElement(Tree range, Tree domain) : range_(std::move(range)), domain_(std::move(domain)) {}

  Tree range_;
  Tree domain_;
};

/// Strips common bottom carets until none remain. Exposed for testing the
/// reduction separately from construction.
std::pair<Tree, Tree> reduce_pair(Tree range, Tree domain);

ThompsonElement multiply(const ThompsonElement& g, const ThompsonElement& h);
ThompsonElement inverse(const ThompsonElement& g);
ThompsonElement power(const ThompsonElement& g, std::int64_t n);

/// The standard generators, x_k⁻¹ x_n x_k = x_{n+1} for k < n.
/// x_0 = [R_1, L_1] (slope 1/2 at 0); x_{n+1} hangs both trees of x_n as
/// right child of a new root. Note [L_1, R_1] = vine_elt(1) = x_0⁻¹.
ThompsonElement generator(std::size_t n);

CantorPoint act_point(const ThompsonElement& g, const CantorPoint& p);

/// Closure of the moved points: union of domain leaves that differ from
/// their corresponding range leaves.
IntervalUnion support(const ThompsonElement& g);

/// True iff g maps I_v onto I_v.
bool stabilizes(const ThompsonElement& g, const BinaryWord& v);

/// The rescaled element g_v acting on I_v ≅ Cantor space.
/// Throws ContractError unless stabilizes(g, v).
ThompsonElement restrict(const ThompsonElement& g, const BinaryWord& v);

/// depth(leftmost range leaf) − depth(leftmost domain leaf); equals
/// log₂ of (g⁻¹)'(0).
std::int64_t slope_exponent_at_zero(const ThompsonElement& g);

/// Both trees of g refined so that every domain leaf lies under a leaf of
/// `domain_target` (and `domain_target` ⪯ domain). Used to read g on a
/// given partition.
std::pair<Tree, Tree> refine_domain(const ThompsonElement& g, const Tree& domain_target);

/// [L_i, R_i].
ThompsonElement vine_elt(std::size_t i);

/// Copies of L_i (range) and R_i (domain) attached under every leaf of the
/// complete tree of depth n except the leaf whose interval contains u.
ThompsonElement fixture_g(std::size_t n, std::size_t i, const CantorPoint& u);

/// As fixture_g but attached under every leaf.
ThompsonElement fixture_g_tilde(std::size_t n, std::size_t i);

/// An element acting as `inner` on I_v and trivially elsewhere.
ThompsonElement embed_at(const ThompsonElement& inner, const BinaryWord& v);

}  // namespace pythag
