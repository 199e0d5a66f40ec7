#pragma once

// Vectors of the limit space: trees whose leaves carry coefficient vectors,
// modulo growth by Φ. A representative [t, ξ] is stored as the tree t and a
// d × leaves(t) matrix whose j-th column decorates the j-th leaf.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pythag/errors.hpp"
#include "pythag/forests.hpp"
#include "pythag/pythagorean.hpp"
#include "pythag/words.hpp"

namespace pythag {

template <typename Scalar>
class LimitVector {
public:
  using PairType = PythagoreanPair<Scalar>;
  using Values = MatrixX<Scalar>;

  LimitVector(std::shared_ptr<const PairType> pair, Tree tree, Values values)
    : pair_(std::move(pair)), tree_(std::move(tree)), values_(std::move(values)) {
    if (!pair_) throw ContractError("limit vector needs a pair");
    if (values_.rows() != pair_->dim() || values_.cols() != static_cast<Eigen::Index>(tree_.leaf_count())) {
      throw ContractError("limit vector values must be " + std::to_string(pair_->dim()) + " x " +
                          std::to_string(tree_.leaf_count()) + ", got " + std::to_string(values_.rows()) +
                          " x " + std::to_string(values_.cols()));
    }
  }

  const PairType& pair() const noexcept { return *pair_; }
  const std::shared_ptr<const PairType>& pair_ptr() const noexcept { return pair_; }
  const Tree& tree() const noexcept { return tree_; }
  const Values& values() const noexcept { return values_; }
  Eigen::Index dim() const noexcept { return pair_->dim(); }

private:
  std::shared_ptr<const PairType> pair_;
  Tree tree_;
  Values values_;
};

using Vec = LimitVector<std::complex<double>>;

template <typename Scalar>
void require_same_pair(const LimitVector<Scalar>& x, const LimitVector<Scalar>& y) {
  if (x.pair_ptr() == y.pair_ptr()) return;
  if (x.dim() == y.dim() && x.pair().A() == y.pair().A() && x.pair().B() == y.pair().B()) return;
  throw ContractError("limit vectors belong to different pythagorean pairs");
}

/// [e, ξ].
template <typename Scalar>
LimitVector<Scalar> embed(std::shared_ptr<const PythagoreanPair<Scalar>> pair, const VectorX<Scalar>& xi) {
  if (xi.size() != pair->dim()) {
    throw ContractError("embed: vector has dimension " + std::to_string(xi.size()) + ", pair has " +
                        std::to_string(pair->dim()));
  }
  MatrixX<Scalar> values = xi;
  return LimitVector<Scalar>(std::move(pair), Tree::leaf(), std::move(values));
}

/// The zero vector on tree t.
template <typename Scalar>
LimitVector<Scalar> zero_vector(std::shared_ptr<const PythagoreanPair<Scalar>> pair, const Tree& t = Tree::leaf()) {
  auto d = pair->dim();
  return LimitVector<Scalar>(std::move(pair), t, MatrixX<Scalar>::Zero(d, static_cast<Eigen::Index>(t.leaf_count())));
}

/// (t, ξ) ↦ (compose(t, f), Φ(f)ξ).
template <typename Scalar>
LimitVector<Scalar> grow(const LimitVector<Scalar>& z, const Forest& f) {
  if (f.root_count() != z.tree().leaf_count()) {
    throw ContractError("grow: forest has " + std::to_string(f.root_count()) + " roots but the vector has " +
                        std::to_string(z.tree().leaf_count()) + " leaves");
  }
  return LimitVector<Scalar>(z.pair_ptr(), compose(z.tree(), f), phi(z.pair(), f, z.values()));
}

/// Grows z to the representative on `target`, which must contain z's tree.
template <typename Scalar>
LimitVector<Scalar> grow_to(const LimitVector<Scalar>& z, const Tree& target) {
  if (z.tree() == target) return z;
  return LimitVector<Scalar>(z.pair_ptr(), target, phi(z.pair(), growth_forest(z.tree(), target), z.values()));
}

/// alpha·x + beta·y on the common refinement.
template <typename Scalar>
LimitVector<Scalar> combine(Scalar alpha, const LimitVector<Scalar>& x, Scalar beta, const LimitVector<Scalar>& y) {
  require_same_pair(x, y);
  Tree w = tree_union(x.tree(), y.tree());
  auto gx = grow_to(x, w);
  auto gy = grow_to(y, w);
  return LimitVector<Scalar>(x.pair_ptr(), w, alpha * gx.values() + beta * gy.values());
}

template <typename Scalar>
LimitVector<Scalar> operator+(const LimitVector<Scalar>& x, const LimitVector<Scalar>& y) {
  return combine(Scalar(1), x, Scalar(1), y);
}

template <typename Scalar>
LimitVector<Scalar> operator-(const LimitVector<Scalar>& x, const LimitVector<Scalar>& y) {
  return combine(Scalar(1), x, Scalar(-1), y);
}

template <typename Scalar>
LimitVector<Scalar> operator*(Scalar c, const LimitVector<Scalar>& x) {
  return LimitVector<Scalar>(x.pair_ptr(), x.tree(), c * x.values());
}

/// ⟨x, y⟩: linear in x, conjugate-linear in y.
template <typename Scalar>
Scalar inner(const LimitVector<Scalar>& x, const LimitVector<Scalar>& y) {
  require_same_pair(x, y);
  Tree w = tree_union(x.tree(), y.tree());
  auto gx = grow_to(x, w);
  auto gy = grow_to(y, w);
  return gy.values().conjugate().cwiseProduct(gx.values()).sum();
}

template <typename Scalar>
RealOf<Scalar> norm(const LimitVector<Scalar>& x) {
  return x.values().norm();
}

/// ‖x − y‖ ≤ tol.
template <typename Scalar>
bool approx_equal(const LimitVector<Scalar>& x, const LimitVector<Scalar>& y, RealOf<Scalar> tol) {
  return norm(x - y) <= tol;
}

template <typename Scalar>
bool is_zero(const LimitVector<Scalar>& x, RealOf<Scalar> tol) {
  return norm(x) <= tol;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> leaf_block(const std::vector<BinaryWord>& leaves, const BinaryWord& v) {
  std::size_t begin = 0;
  while (begin < leaves.size() && !v.is_prefix_of(leaves[begin])) ++begin;
  std::size_t end = begin;
  while (end < leaves.size() && v.is_prefix_of(leaves[end])) ++end;
  return {begin, end};
}

}  // namespace detail

/// The v-component of z: grow until v is a vertex, keep the subtree at v.
template <typename Scalar>
LimitVector<Scalar> tau(const BinaryWord& v, const LimitVector<Scalar>& z) {
  if (v.empty()) return z;
  Tree w = tree_union(z.tree(), path_tree(v));
  auto grown = grow_to(z, w);
  auto [begin, end] = detail::leaf_block(w.leaves(), v);
  return LimitVector<Scalar>(z.pair_ptr(), subtree_at(w, v),
                             grown.values().middleCols(static_cast<Eigen::Index>(begin),
                                                       static_cast<Eigen::Index>(end - begin)));
}

/// Adjoint of tau: hang z below vertex v, every other leaf zero.
template <typename Scalar>
LimitVector<Scalar> tau_star(const BinaryWord& v, const LimitVector<Scalar>& z) {
  if (v.empty()) return z;
  Tree base = path_tree(v);
  Tree t = graft(base, {{v, z.tree()}});
  auto leaves = base.leaves();
  auto slot = static_cast<Eigen::Index>(std::find(leaves.begin(), leaves.end(), v) - leaves.begin());
  MatrixX<Scalar> values = MatrixX<Scalar>::Zero(z.dim(), static_cast<Eigen::Index>(t.leaf_count()));
  values.middleCols(slot, z.values().cols()) = z.values();
  return LimitVector<Scalar>(z.pair_ptr(), std::move(t), std::move(values));
}

/// ρ_v = τ*_v τ_v.
template <typename Scalar>
LimitVector<Scalar> rho(const BinaryWord& v, const LimitVector<Scalar>& z) {
  return tau_star(v, tau(v, z));
}

/// ρ_I = Σ ρ_v over the words of I, computed in one pass: grow until every
/// word of I is a vertex, then zero the leaves outside I.
template <typename Scalar>
LimitVector<Scalar> rho_union(const IntervalUnion& region, const LimitVector<Scalar>& z) {
  Tree w = z.tree();
  for (const auto& v : region.words()) w = tree_union(w, path_tree(v));
  auto grown = grow_to(z, w);
  MatrixX<Scalar> values = grown.values();
  auto leaves = w.leaves();
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    if (!region.covers(leaves[j])) values.col(static_cast<Eigen::Index>(j)).setZero();
  }
  return LimitVector<Scalar>(z.pair_ptr(), std::move(w), std::move(values));
}

/// Collapses carets whose two leaf values are (within tol) the Φ-image of a
/// single parent value ξ' = A*η₀ + B*η₁, until no caret qualifies.
template <typename Scalar>
LimitVector<Scalar> trim(const LimitVector<Scalar>& z, RealOf<Scalar> tol) {
  const auto& pair = z.pair();
  std::vector<std::uint8_t> code = z.tree().code();
  MatrixX<Scalar> values = z.values();
  const auto tol2 = tol * tol;
  for (;;) {
    std::vector<std::uint8_t> next_code;
    next_code.reserve(code.size());
    std::vector<VectorX<Scalar>> next_values;
    next_values.reserve(static_cast<std::size_t>(values.cols()));
    bool changed = false;
    Eigen::Index leaf = 0;
    for (std::size_t p = 0; p < code.size(); ++p) {
      if (code[p] == 1 && p + 2 < code.size() && code[p + 1] == 0 && code[p + 2] == 0) {
        VectorX<Scalar> left = values.col(leaf);
        VectorX<Scalar> right = values.col(leaf + 1);
        VectorX<Scalar> parent = pair.A().adjoint() * left + pair.B().adjoint() * right;
        auto residual = (left - pair.A() * parent).squaredNorm() + (right - pair.B() * parent).squaredNorm();
        if (residual <= tol2) {
          next_code.push_back(0);
          next_values.push_back(std::move(parent));
          leaf += 2;
          p += 2;
          changed = true;
          continue;
        }
      }
      next_code.push_back(code[p]);
      if (code[p] == 0) next_values.push_back(values.col(leaf++));
    }
    if (!changed) break;
    code = std::move(next_code);
    values.resize(z.dim(), static_cast<Eigen::Index>(next_values.size()));
    for (std::size_t j = 0; j < next_values.size(); ++j) values.col(static_cast<Eigen::Index>(j)) = next_values[j];
  }
  return LimitVector<Scalar>(z.pair_ptr(), Tree::from_code(std::move(code)), std::move(values));
}

}  // namespace pythag
