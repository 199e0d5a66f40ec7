#pragma once

// The Pythagorean (Jones) representation σ of F on limit vectors, matrix
// coefficients, ergodic averages, mixing scans, and the independent oracles
// available on the scalar circle (character, Koopman).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pythag/limitspace.hpp"
#include "pythag/pythagorean.hpp"
#include "pythag/thompson.hpp"

namespace pythag {

/// σ(g)z: with g = [t, s] and z = [r, ξ], grow s and r to w = f∘s = h∘r and
/// return [f∘t, Φ(h)ξ]. The tree changes, the decoration does not.
template <typename Scalar>
LimitVector<Scalar> act(const ThompsonElement& g, const LimitVector<Scalar>& z) {
  auto ref = common_refinement(g.domain_tree(), z.tree());
  return LimitVector<Scalar>(z.pair_ptr(), compose(g.range_tree(), ref.first), phi(z.pair(), ref.second, z.values()));
}

/// σ(g) as Σ τ*_{ν_i} τ_{ω_i} over corresponding leaves of any
/// representative (range, domain) of g, reduced or not.
template <typename Scalar>
LimitVector<Scalar> act_via_isometries(const Tree& range, const Tree& domain, const LimitVector<Scalar>& z) {
  if (range.leaf_count() != domain.leaf_count()) throw ContractError("act_via_isometries: leaf counts differ");
  auto nus = range.leaves();
  auto omegas = domain.leaves();
  LimitVector<Scalar> sum = zero_vector(z.pair_ptr());
  for (std::size_t i = 0; i < nus.size(); ++i) sum = sum + tau_star(nus[i], tau(omegas[i], z));
  return sum;
}

template <typename Scalar>
LimitVector<Scalar> act_via_isometries(const ThompsonElement& g, const LimitVector<Scalar>& z) {
  return act_via_isometries(g.range_tree(), g.domain_tree(), z);
}

/// Σ τ*_{ν} σ(g_ν) τ_ν over a partition whose every vertex g stabilizes.
template <typename Scalar>
LimitVector<Scalar> act_decomposed(const ThompsonElement& g, const std::vector<BinaryWord>& partition,
                                   const LimitVector<Scalar>& z) {
  if (!is_sdp(partition)) throw ContractError("act_decomposed: vertices do not form a partition");
  LimitVector<Scalar> sum = zero_vector(z.pair_ptr());
  for (const auto& v : partition) sum = sum + tau_star(v, act(restrict(g, v), tau(v, z)));
  return sum;
}

/// φ_z(g) = ⟨σ(g)z, z⟩.
template <typename Scalar>
Scalar coefficient(const ThompsonElement& g, const LimitVector<Scalar>& z) {
  return inner(act(g, z), z);
}

/// ⟨σ(g)ξ, ξ⟩ for ξ at the root, evaluated as ⟨Φ(domain)ξ, Φ(range)ξ⟩ leaf
/// by leaf. Never builds a limit vector.
template <typename Scalar>
Scalar coefficient_cyclic(const PythagoreanPair<Scalar>& pair, const ThompsonElement& g, const VectorX<Scalar>& xi) {
  if (xi.size() != pair.dim()) throw ContractError("coefficient_cyclic: vector dimension does not match the pair");
  MatrixX<Scalar> from_domain = phi_tree(pair, g.domain_tree(), xi);
  MatrixX<Scalar> from_range = phi_tree(pair, g.range_tree(), xi);
  return from_range.conjugate().cwiseProduct(from_domain).sum();
}

/// coefficient_cyclic with ξ the first standard basis vector.
template <typename Scalar>
Scalar coefficient_cyclic(const PythagoreanPair<Scalar>& pair, const ThompsonElement& g) {
  return coefficient_cyclic(pair, g, VectorX<Scalar>(VectorX<Scalar>::Unit(pair.dim(), 0)));
}

// ---------------------------------------------------------------------------
// Ergodic averages

inline constexpr double kErgodicTrimTol = 1e-12;

/// (1/n) Σ_{k<n} σ(g)^k z, trimming every partial sum.
template <typename Scalar>
LimitVector<Scalar> ergodic_average(const ThompsonElement& g, const LimitVector<Scalar>& z, std::size_t n,
                                    RealOf<Scalar> trim_tol = RealOf<Scalar>(kErgodicTrimTol)) {
  if (n == 0) throw ContractError("ergodic_average: n must be positive");
  LimitVector<Scalar> current = z;
  LimitVector<Scalar> sum = z;
  for (std::size_t k = 1; k < n; ++k) {
    current = trim(act(g, current), trim_tol);
    sum = trim(sum + current, trim_tol);
  }
  return Scalar(RealOf<Scalar>(1) / RealOf<Scalar>(n)) * sum;
}

/// ‖average − (z − ρ_{supp(g)} z)‖.
template <typename Scalar>
RealOf<Scalar> ergodic_defect(const ThompsonElement& g, const LimitVector<Scalar>& z, std::size_t n,
                              RealOf<Scalar> trim_tol = RealOf<Scalar>(kErgodicTrimTol)) {
  auto limit = z - rho_union(support(g), z);
  return norm(ergodic_average(g, z, n, trim_tol) - limit);
}

/// ‖(1/n) Σ_{k<n} σ(g^k) z‖ from the coefficients alone:
/// ‖avg‖² = (1/n²) Σ_{j,k} φ(k − j), with phis[m] = φ_z(g^m), φ(−m) = conj φ(m).
template <typename Scalar>
RealOf<Scalar> gram_average_norm(const std::vector<Scalar>& phis, std::size_t n) {
  using Real = RealOf<Scalar>;
  if (n == 0 || phis.size() < n) throw ContractError("gram_average_norm: need phi(g^m) for m < n");
  Real total = Real(n) * std::real(phis[0]);
  for (std::size_t m = 1; m < n; ++m) total += Real(2) * Real(n - m) * std::real(phis[m]);
  total /= Real(n) * Real(n);
  return std::sqrt(std::max(total, Real(0)));
}

/// φ_ξ(g^m) for m < n through coefficient_cyclic.
template <typename Scalar>
std::vector<Scalar> cyclic_power_coefficients(const PythagoreanPair<Scalar>& pair, const ThompsonElement& g,
                                              const VectorX<Scalar>& xi, std::size_t n) {
  std::vector<Scalar> phis;
  phis.reserve(n);
  ThompsonElement gk;
  for (std::size_t m = 0; m < n; ++m) {
    phis.push_back(coefficient_cyclic(pair, gk, xi));
    gk = multiply(g, gk);
  }
  return phis;
}

// ---------------------------------------------------------------------------
// Fixed vectors and covariance

/// σ(g)z = z tested leafwise: ‖τ_{ν_i}z − τ_{ω_i}z‖ ≤ tol for every pair of
/// corresponding leaves of the reduced representative.
template <typename Scalar>
bool fixed_vector_test(const ThompsonElement& g, const LimitVector<Scalar>& z, RealOf<Scalar> tol) {
  auto nus = g.range_tree().leaves();
  auto omegas = g.domain_tree().leaves();
  for (std::size_t i = 0; i < nus.size(); ++i) {
    if (norm(tau(nus[i], z) - tau(omegas[i], z)) > tol) return false;
  }
  return true;
}

/// ‖σ(g_ν) τ_ν z − τ_ν σ(g) z‖; requires g to stabilize I_ν.
template <typename Scalar>
RealOf<Scalar> covariance_check(const ThompsonElement& g, const BinaryWord& v, const LimitVector<Scalar>& z) {
  if (!stabilizes(g, v)) {
    throw ContractError("covariance_check: " + g.to_string() + " does not stabilize I_" + v.to_string());
  }
  return norm(act(restrict(g, v), tau(v, z)) - tau(v, act(g, z)));
}

// ---------------------------------------------------------------------------
// Coefficient tables

struct CoefficientRow {
  std::string label;
  std::int64_t index;
  std::complex<double> value;
  double abs;
};

struct CoefficientTable {
  std::vector<CoefficientRow> rows;

  void add(std::string label, std::int64_t index, std::complex<double> value) {
    rows.push_back({std::move(label), index, value, std::abs(value)});
  }

  /// Rows carrying `label`, in insertion order.
  std::vector<CoefficientRow> select(const std::string& label) const {
    std::vector<CoefficientRow> out;
    for (const auto& r : rows)
      if (r.label == label) out.push_back(r);
    return out;
  }
};

/// CSV with header "label,index,re,im,abs" at full double precision.
void write_csv(std::ostream& out, const CoefficientTable& table);

/// Smallest index from which |value| strictly decreases to the end of the
/// labelled series; nullopt if the last step does not decrease.
std::optional<std::int64_t> decreasing_from(const CoefficientTable& table, const std::string& label);

template <typename Scalar>
std::complex<double> to_complex(Scalar s) {
  if constexpr (is_complex<Scalar>::value) {
    return {double(s.real()), double(s.imag())};
  } else {
    return {double(s), 0.0};
  }
}

/// Rows "vine" with |⟨σ([L_i,R_i])e₁, e₁⟩| for i = 1..i_max, then for each
/// supplied vector x_k and depth n, rows "tilde_n<n>_x<k>" with
/// φ_{x_k}(g̃_{n,i}).
template <typename Scalar>
CoefficientTable mixing_scan(const PythagoreanPair<Scalar>& pair, const std::vector<LimitVector<Scalar>>& vectors,
                             std::size_t i_max, const std::vector<std::size_t>& tilde_depths = {1, 2}) {
  CoefficientTable table;
  for (std::size_t i = 1; i <= i_max; ++i) {
    table.add("vine", static_cast<std::int64_t>(i), to_complex(coefficient_cyclic(pair, vine_elt(i))));
  }
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    for (std::size_t n : tilde_depths) {
      std::string label = "tilde_n" + std::to_string(n) + "_x" + std::to_string(k);
      for (std::size_t i = 1; i <= i_max; ++i) {
        table.add(label, static_cast<std::int64_t>(i), to_complex(coefficient(fixture_g_tilde(n, i), vectors[k])));
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Scalar-circle oracles

/// ⟨κ_s(g)1, 1⟩ for the twisted Koopman representation on L²[0,1]:
/// Σ_k sqrt(ℓ_k ℓ'_k) (ℓ_k / ℓ'_k)^{is}, with ℓ_k, ℓ'_k the lengths of the
/// k-th domain and range leaves. Integrates (dg_*L/dL)^{1/2+is} exactly on
/// each affine piece.
std::complex<double> koopman_coefficient(const ThompsonElement& g, double s);

/// Sign with which slope_exponent_at_zero enters the character
/// g ↦ a^{sign·slope}; frozen from calibrate_character_sign().
inline constexpr int kCharacterSign = -1;

/// Measures the sign on x_0 with a = i (where i^{+1} and i^{-1} differ).
int calibrate_character_sign();

struct CharacterCheck {
  std::complex<double> predicted;
  std::complex<double> measured;
  double residual;  ///< ‖σ(g)[e,1] − predicted·[e,1]‖
};

/// For d = 1 and b = 0: σ(g) acts on [e, 1] by the character.
CharacterCheck character_check(std::shared_ptr<const Pair> pair, const ThompsonElement& g);

struct TwistFit {
  double s;
  double fit_error;       ///< on x_0
  double held_out_error;  ///< max over the held-out elements
};

/// Finds s with coefficients of (ω/√2, ω/√2) matching koopman_coefficient(·, s):
/// a scan on x_0 (which fixes |s|), then the sign that does best on
/// `held_out`.
TwistFit fit_twist(std::complex<double> omega, const std::vector<ThompsonElement>& held_out);

}  // namespace pythag
