#include "pythag/jones.hpp"

#include <cstdio>

namespace pythag {

void write_csv(std::ostream& out, const CoefficientTable& table) {
  out << "label,index,re,im,abs\n";
  char buf[128];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, ",%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(r.index), r.value.real(),
                  r.value.imag(), r.abs);
    out << r.label << buf;
  }
}

std::optional<std::int64_t> decreasing_from(const CoefficientTable& table, const std::string& label) {
  auto rows = table.select(label);
  if (rows.size() < 2) return std::nullopt;
  std::size_t start = rows.size() - 1;
  while (start > 0 && rows[start - 1].abs > rows[start].abs) --start;
  if (start == rows.size() - 1) return std::nullopt;
  return rows[start].index;
}

std::complex<double> koopman_coefficient(const ThompsonElement& g, double s) {
  auto domain = g.domain_tree().leaves();
  auto range = g.range_tree().leaves();
  const double ln2 = std::numbers::ln2;
  std::complex<double> total = 0.0;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    auto ds = static_cast<double>(domain[k].size());
    auto dt = static_cast<double>(range[k].size());
    double magnitude = std::exp2(-(ds + dt) / 2.0);
    total += std::polar(magnitude, s * ln2 * (dt - ds));
  }
  return total;
}

namespace {

std::complex<double> int_power(std::complex<double> a, std::int64_t k) {
  if (k < 0) {
    a = 1.0 / a;
    k = -k;
  }
  std::complex<double> out = 1.0;
  while (k > 0) {
    if (k & 1) out *= a;
    a *= a;
    k >>= 1;
  }
  return out;
}

}  // namespace

int calibrate_character_sign() {
  const std::complex<double> a(0.0, 1.0);
  auto pair = std::make_shared<const Pair>(scalar_pair(a, std::complex<double>(0.0)));
  auto g = generator(0);
  auto measured = coefficient(g, embed(pair, Vector(Vector::Ones(1))));
  auto k = slope_exponent_at_zero(g);
  double plus = std::abs(measured - int_power(a, k));
  double minus = std::abs(measured - int_power(a, -k));
  return plus <= minus ? 1 : -1;
}

CharacterCheck character_check(std::shared_ptr<const Pair> pair, const ThompsonElement& g) {
  if (pair->dim() != 1 || std::abs(pair->B()(0, 0)) > pair->tol()) {
    throw ContractError("character_check needs a scalar pair with b = 0");
  }
  const auto a = pair->A()(0, 0);
  auto z = embed(pair, Vector(Vector::Ones(1)));
  auto predicted = int_power(a, kCharacterSign * slope_exponent_at_zero(g));
  auto image = act(g, z);
  return {predicted, inner(image, z), norm(image - predicted * z)};
}

TwistFit fit_twist(std::complex<double> omega, const std::vector<ThompsonElement>& held_out) {
  const double r = 1.0 / std::numbers::sqrt2;
  const Pair pair = scalar_pair(omega * r, omega * r);
  const auto x0 = generator(0);
  const auto target = coefficient_cyclic(pair, x0);
  auto error_at = [&](double s) { return std::abs(target - koopman_coefficient(x0, s)); };

  // One period of s ↦ 2^{is} is 2π/ln 2; x_0 sees only |s|, so scan half of it.
  const double period = 2.0 * std::numbers::pi / std::numbers::ln2;
  constexpr int kGrid = 4000;
  double best = 0.0;
  for (int k = 1; k <= kGrid; ++k) {
    double s = 0.5 * period * k / kGrid;
    if (error_at(s) < error_at(best)) best = s;
  }
  double step = 0.5 * period / kGrid;
  double lo = std::max(0.0, best - step);
  double hi = best + step;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (error_at(m1) < error_at(m2)) hi = m2; else lo = m1;
  }
  best = 0.5 * (lo + hi);

  auto held_out_error = [&](double s) {
    double worst = 0.0;
    for (const auto& g : held_out) worst = std::max(worst, std::abs(coefficient_cyclic(pair, g) - koopman_coefficient(g, s)));
    return worst;
  };
  double plus = held_out_error(best);
  double minus = held_out_error(-best);
  double s = plus <= minus ? best : -best;
  return {s, error_at(s), std::min(plus, minus)};
}

}  // namespace pythag
