#pragma once

// Seeded generators for words, trees, elements and limit vectors.

#include <algorithm>
#include <complex>
#include <memory>
#include <random>
#include <vector>

#include "pythag/forests.hpp"
#include "pythag/limitspace.hpp"
#include "pythag/thompson.hpp"
#include "pythag/words.hpp"

namespace pythag {

template <typename Rng>
BinaryWord random_word(Rng& rng, std::size_t length) {
  std::uniform_int_distribution<int> bit(0, 1);
  BinaryWord w;
  for (std::size_t i = 0; i < length; ++i) w.push_back(bit(rng));
  return w;
}

/// A uniformly grown tree: split a random leaf of depth < max_depth until
/// `leaves` leaves exist. Requires leaves ≤ 2^max_depth.
template <typename Rng>
Tree random_tree(Rng& rng, std::size_t leaves, std::size_t max_depth) {
  std::vector<BinaryWord> current{BinaryWord{}};
  while (current.size() < leaves) {
    std::vector<std::size_t> splittable;
    for (std::size_t k = 0; k < current.size(); ++k)
      if (current[k].size() < max_depth) splittable.push_back(k);
    if (splittable.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, splittable.size() - 1);
    std::size_t k = splittable[pick(rng)];
    BinaryWord w = current[k];
    current[k] = w.child(0);
    current.push_back(w.child(1));
  }
  return tree_from_leaves(current);
}

/// A random reduced element whose unreduced trees have depth ≤ max_depth
/// and at most max_leaves leaves.
template <typename Rng>
ThompsonElement random_element(Rng& rng, std::size_t max_depth, std::size_t max_leaves) {
  std::size_t cap = max_leaves;
  if (max_depth < 63) cap = std::min<std::size_t>(cap, std::size_t{1} << max_depth);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(cap, 1));
  std::size_t n = count(rng);
  Tree range = random_tree(rng, n, max_depth);
  Tree domain = random_tree(rng, n, max_depth);
  return ThompsonElement::from_pair(range, domain);
}

/// A random eventually periodic point with short preperiod and period.
template <typename Rng>
CantorPoint random_point(Rng& rng, std::size_t max_preperiod = 6, std::size_t max_period = 4) {
  std::uniform_int_distribution<std::size_t> pre(0, max_preperiod);
  std::uniform_int_distribution<std::size_t> per(1, max_period);
  auto a = pre(rng);
  auto b = per(rng);
  return CantorPoint(random_word(rng, a), random_word(rng, b));
}

template <typename Scalar, typename Rng>
VectorX<Scalar> random_vector(Rng& rng, Eigen::Index d) {
  std::normal_distribution<RealOf<Scalar>> normal;
  VectorX<Scalar> v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if constexpr (is_complex<Scalar>::value) {
      auto re = normal(rng);
      auto im = normal(rng);
      v(i) = Scalar(re, im);
    } else {
      v(i) = normal(rng);
    }
  }
  return v;
}

/// A random limit vector on a random tree with at most max_leaves leaves.
template <typename Scalar, typename Rng>
LimitVector<Scalar> random_limit_vector(Rng& rng, std::shared_ptr<const PythagoreanPair<Scalar>> pair,
                                        std::size_t max_depth, std::size_t max_leaves) {
  std::uniform_int_distribution<std::size_t> count(1, max_leaves);
  Tree t = random_tree(rng, count(rng), max_depth);
  MatrixX<Scalar> values(pair->dim(), static_cast<Eigen::Index>(t.leaf_count()));
  for (Eigen::Index j = 0; j < values.cols(); ++j) values.col(j) = random_vector<Scalar>(rng, pair->dim());
  return LimitVector<Scalar>(std::move(pair), std::move(t), std::move(values));
}

}  // namespace pythag
