#pragma once

// Pythagorean pairs (A, B) of d×d matrices with A*A + B*B = I, the isometry
// Φ they induce on forests, word operators, and a diffuseness certificate.
//
// Convention shared by every module: descending along a left edge (bit 0)
// applies A, along a right edge (bit 1) applies B.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pythag/errors.hpp"
#include "pythag/forests.hpp"
#include "pythag/words.hpp"

namespace pythag {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <typename Scalar>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Scalar>
class PythagoreanPair {
public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;
  using Real = RealOf<Scalar>;

  /// Checks shapes only; use validate() for the Pythagorean relation.
  PythagoreanPair(Matrix a, Matrix b, Real tol = Real(1e-12))
    : a_(std::move(a)), b_(std::move(b)), tol_(tol) {
    if (a_.rows() != a_.cols() || b_.rows() != b_.cols() || a_.rows() != b_.rows() || a_.rows() == 0) {
      throw ContractError("pythagorean pair needs two nonempty square matrices of equal size, got " +
                          std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()) + " and " +
                          std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()));
    }
    if (!(tol_ >= Real(0))) throw ContractError("pythagorean pair tolerance must be nonnegative");
  }

  const Matrix& A() const noexcept { return a_; }
  const Matrix& B() const noexcept { return b_; }
  Real tol() const noexcept { return tol_; }
  Eigen::Index dim() const noexcept { return a_.rows(); }

  const Matrix& letter(int bit) const { return bit == 0 ? a_ : b_; }

private:
  Matrix a_;
  Matrix b_;
  Real tol_;
};

using Pair = PythagoreanPair<std::complex<double>>;
using Matrix = MatrixX<std::complex<double>>;
using Vector = VectorX<std::complex<double>>;

template <typename Real>
struct PairReport {
  Real defect;
  bool pass;
};

/// ‖A*A + B*B − I‖_F against the pair's tolerance.
template <typename Scalar>
PairReport<RealOf<Scalar>> validate(const PythagoreanPair<Scalar>& pair) {
  using M = MatrixX<Scalar>;
  M gram = pair.A().adjoint() * pair.A() + pair.B().adjoint() * pair.B();
  auto defect = (gram - M::Identity(pair.dim(), pair.dim())).norm();
  return {defect, defect <= pair.tol()};
}

/// The operator carrying a root value to vertex w: bits read left to right,
/// each new letter multiplying on the left.
template <typename Scalar>
MatrixX<Scalar> word_operator(const PythagoreanPair<Scalar>& pair, const BinaryWord& w) {
  MatrixX<Scalar> out = MatrixX<Scalar>::Identity(pair.dim(), pair.dim());
  for (std::size_t i = 0; i < w.size(); ++i) out = pair.letter(w[i]) * out;
  return out;
}

/// word_operator(pair, w) * xi without forming the matrix.
template <typename Scalar>
VectorX<Scalar> apply_word(const PythagoreanPair<Scalar>& pair, const BinaryWord& w, VectorX<Scalar> xi) {
  for (std::size_t i = 0; i < w.size(); ++i) xi = pair.letter(w[i]) * xi;
  return xi;
}

/// Φ(t) on one root value: a d × leaves(t) matrix, one column per leaf.
template <typename Scalar>
MatrixX<Scalar> phi_tree(const PythagoreanPair<Scalar>& pair, const Tree& t, const VectorX<Scalar>& xi) {
  MatrixX<Scalar> out(pair.dim(), static_cast<Eigen::Index>(t.leaf_count()));
  std::vector<VectorX<Scalar>> stack{xi};
  Eigen::Index column = 0;
  for (auto symbol : t.code()) {
    VectorX<Scalar> v = std::move(stack.back());
    stack.pop_back();
    if (symbol == 1) {
      stack.push_back(pair.B() * v);
      stack.push_back(pair.A() * v);
    } else {
      out.col(column++) = v;
    }
  }
  return out;
}

/// Φ(f): root values (columns of `values`) to leaf values.
template <typename Scalar>
MatrixX<Scalar> phi(const PythagoreanPair<Scalar>& pair, const Forest& f, const MatrixX<Scalar>& values) {
  if (values.cols() != static_cast<Eigen::Index>(f.root_count())) {
    throw ContractError("phi: forest has " + std::to_string(f.root_count()) + " roots but " +
                        std::to_string(values.cols()) + " values were given");
  }
  if (values.rows() != pair.dim()) throw ContractError("phi: value dimension does not match the pair");
  MatrixX<Scalar> out(pair.dim(), static_cast<Eigen::Index>(f.leaf_count()));
  Eigen::Index offset = 0;
  for (std::size_t j = 0; j < f.root_count(); ++j) {
    const Tree& t = f[j];
    auto n = static_cast<Eigen::Index>(t.leaf_count());
    if (t.is_leaf()) {
      out.col(offset) = values.col(static_cast<Eigen::Index>(j));
    } else {
      out.middleCols(offset, n) = phi_tree(pair, t, VectorX<Scalar>(values.col(static_cast<Eigen::Index>(j))));
    }
    offset += n;
  }
  return out;
}

/// The d = 1 pair (a, b); throws ContractError off the unit sphere.
template <typename Scalar = std::complex<double>>
PythagoreanPair<Scalar> scalar_pair(Scalar a, Scalar b, RealOf<Scalar> tol = RealOf<Scalar>(1e-12)) {
  using std::abs;
  auto norm2 = abs(a) * abs(a) + abs(b) * abs(b);
  if (abs(norm2 - RealOf<Scalar>(1)) > tol) {
    throw ContractError("scalar pair is off the unit sphere: |a|^2 + |b|^2 = " + std::to_string(double(norm2)));
  }
  MatrixX<Scalar> ma(1, 1);
  MatrixX<Scalar> mb(1, 1);
  ma(0, 0) = a;
  mb(0, 0) = b;
  return PythagoreanPair<Scalar>(ma, mb, tol);
}

/// Seeded pair: orthonormalize a Gaussian 2d×d matrix, split into A (top) and B (bottom).
template <typename Scalar = std::complex<double>>
PythagoreanPair<Scalar> random_pair(Eigen::Index d, std::uint64_t seed) {
  using Real = RealOf<Scalar>;
  if (d < 1) throw ContractError("random_pair: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal;
  MatrixX<Scalar> g(2 * d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < 2 * d; ++i) {
      if constexpr (is_complex<Scalar>::value) {
        Real re = normal(rng);
        Real im = normal(rng);
        g(i, j) = Scalar(re, im);
      } else {
        g(i, j) = normal(rng);
      }
    }
  }
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(g);
  MatrixX<Scalar> q = qr.householderQ() * MatrixX<Scalar>::Identity(2 * d, d);
  return PythagoreanPair<Scalar>(q.topRows(d), q.bottomRows(d), Real(1e-12));
}

/// Largest singular value.
template <typename Derived>
auto operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 1 && m.cols() == 1) return RealOf<Scalar>(std::abs(m(0, 0)));
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m);
  return svd.singularValues()(0);
}

template <typename Derived>
auto spectral_radius(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Scalar>;
  using Complex = std::complex<Real>;
  if (m.rows() == 1) return Real(std::abs(m(0, 0)));
  Eigen::ComplexEigenSolver<MatrixX<Complex>> solver(m.template cast<Complex>(), false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

struct Certified {
  std::size_t depth;
  double eps;
};
struct NotDiffuse {
  BinaryWord witness;
};
struct Unknown {
  std::size_t depth;
};
using DiffuseVerdict = std::variant<Certified, NotDiffuse, Unknown>;

struct DiffuseOptions {
  /// Longest block the search may explore before giving up.
  std::size_t max_depth = 1 << 16;
  double eps = 1e-3;
  std::size_t witness_len = 8;
  /// Give up with Unknown after this many visited words; 0 means no limit.
  std::size_t max_nodes = std::size_t{1} << 22;
  /// Blocks are cut where the product norm first drops to this value.
  double contraction = 0.5;
};

/// Two phases. First every word of length 1..witness_len (shortlex order) is
/// checked for spectral radius ≥ 1 − tol, which blocks decay along the
/// periodic ray.
///
/// Then a depth-first search cuts each branch at the first word whose norm is
/// ≤ contraction. The cut words form a complete prefix code S with lengths
/// ≤ L and norms ≤ c < 1. A word of length ≥ kL begins with k blocks from S,
/// so its operator has norm ≤ c^k; the certified depth is kL for the least k
/// with c^k ≤ eps.
template <typename Scalar>
DiffuseVerdict diffuse_certificate(const PythagoreanPair<Scalar>& pair, const DiffuseOptions& options = {}) {
  using M = MatrixX<Scalar>;
  using Real = RealOf<Scalar>;
  if (!(options.eps > 0)) throw ContractError("diffuse_certificate: eps must be positive");
  if (!(options.contraction > 0 && options.contraction < 1)) {
    throw ContractError("diffuse_certificate: contraction must lie in (0, 1)");
  }

  const Real threshold = Real(1) - pair.tol();
  for (std::size_t len = 1; len <= options.witness_len; ++len) {
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t code = 0; code < count; ++code) {
      BinaryWord w;
      for (std::size_t k = len; k-- > 0;) w.push_back(static_cast<int>((code >> k) & 1u));
      if (spectral_radius(word_operator(pair, w)) >= threshold) return NotDiffuse{w};
    }
  }

  struct Node {
    M op;
    std::size_t depth;
  };
  // slack so that exact products like (1/√2)² land inside the cut
  const Real cut = Real(options.contraction) * Real(1 + 1e-9);
  std::vector<Node> stack;
  stack.push_back({M::Identity(pair.dim(), pair.dim()), 0});
  std::size_t longest = 0;
  Real worst = 0;
  std::size_t visited = 0;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (options.max_nodes != 0 && ++visited > options.max_nodes) return Unknown{node.depth};
    // Frobenius norm bounds the operator norm from above.
    Real frobenius = node.op.norm();
    Real bound = frobenius <= cut ? frobenius : operator_norm(node.op);
    if (bound <= cut) {
      longest = std::max(longest, node.depth);
      worst = std::max(worst, bound);
      continue;
    }
    if (node.depth >= options.max_depth) return Unknown{options.max_depth};
    stack.push_back({pair.B() * node.op, node.depth + 1});
    stack.push_back({pair.A() * node.op, node.depth + 1});
  }
  std::size_t blocks = 1;
  if (worst > Real(options.eps)) {
    blocks = static_cast<std::size_t>(std::ceil(std::log(options.eps) / std::log(double(worst))));
    while (std::pow(double(worst), double(blocks)) > options.eps) ++blocks;
  }
  return Certified{blocks * longest, options.eps};
}

inline std::string to_string(const DiffuseVerdict& verdict) {
  struct Printer {
    std::string operator()(const Certified& c) const {
      return "CERTIFIED depth=" + std::to_string(c.depth) + " eps=" + format_eps(c.eps);
    }
    std::string operator()(const NotDiffuse& n) const { return "NOT-DIFFUSE witness=" + n.witness.to_string(); }
    std::string operator()(const Unknown& u) const { return "UNKNOWN depth=" + std::to_string(u.depth); }
    static std::string format_eps(double eps) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", eps);
      return buf;
    }
  };
  return std::visit(Printer{}, verdict);
}

}  // namespace pythag
