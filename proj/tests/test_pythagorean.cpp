#include <doctest.h>

#include <cmath>
#include <random>

#include "pythag/errors.hpp"
#include "pythag/pythagorean.hpp"
#include "pythag/random.hpp"

using namespace pythag;
using C = std::complex<double>;

namespace {

BinaryWord W(const char* s) { return BinaryWord::parse(s); }
const double r2 = 1.0 / std::sqrt(2.0);

Pair diag_pair() {
  Matrix A = Matrix::Zero(2, 2);
  Matrix B = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = r2;
  B(1, 1) = r2;
  return Pair(A, B);
}

// Largest singular value by brute force on AᴴA eigenvalues.
double svd_oracle(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

TEST_SUITE("pythagorean") {

TEST_CASE("validate") {
  auto ok = validate(scalar_pair<C>(0.6, 0.8));
  CHECK(ok.defect == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ok.pass);
  auto bad = validate(Pair(Matrix::Ones(1, 1), Matrix::Ones(1, 1)));
  CHECK(bad.defect == doctest::Approx(1.0));
  CHECK_FALSE(bad.pass);
  CHECK(validate(diag_pair()).pass);
  CHECK_THROWS_AS(Pair(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), ContractError);
  CHECK_THROWS_AS(Pair(Matrix::Zero(2, 3), Matrix::Zero(2, 3)), ContractError);
}

TEST_CASE("scalar pairs") {
  CHECK_NOTHROW(scalar_pair<C>(1.0, 0.0));
  CHECK_NOTHROW(scalar_pair<C>(r2, r2));
  C omega = std::polar(1.0, M_PI / 3);
  CHECK(validate(scalar_pair<C>(omega * r2, omega * r2)).pass);
  CHECK_THROWS_AS(scalar_pair<C>(1.0, 1.0), ContractError);
  // the template also runs on real scalars
  auto real = scalar_pair<double>(0.6, 0.8);
  CHECK(validate(real).pass);
}

TEST_CASE("word operators") {
  auto p = scalar_pair<C>(0.6, 0.8);
  CHECK(word_operator(p, W("^")).isApprox(Matrix::Identity(1, 1)));
  CHECK(std::abs(word_operator(p, W("01"))(0, 0) - 0.8 * 0.6) < 1e-15);
  CHECK(std::abs(word_operator(p, W("000"))(0, 0) - 0.216) < 1e-15);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto q = random_pair(1 + static_cast<Eigen::Index>(rng() % 3), rng());
    auto w = random_word(rng, rng() % 6);
    auto v = random_word(rng, rng() % 6);
    CHECK((word_operator(q, concat(w, v)) - word_operator(q, v) * word_operator(q, w)).norm() < 1e-12);
    Vector xi = random_vector<C>(rng, q.dim());
    CHECK((apply_word(q, w, xi) - word_operator(q, w) * xi).norm() < 1e-12);
  }
}

TEST_CASE("phi") {
  auto p = scalar_pair<C>(r2, r2);
  Matrix one = Matrix::Ones(1, 1);
  Matrix out = phi(p, Forest(vine_left(1)), one);
  CHECK(std::abs(out(0, 0) - 0.70710678118654752) < 1e-15);
  CHECK(std::abs(out(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(out(0, 2) - 0.5) < 1e-15);

  std::mt19937_64 rng(9);
  auto q = random_pair(2, 77);
  Matrix xs(2, 2);
  xs.col(0) = random_vector<C>(rng, 2);
  xs.col(1) = random_vector<C>(rng, 2);
  Matrix f12 = phi(q, elementary(1, 2), xs);
  CHECK((f12.col(0) - q.A() * xs.col(0)).norm() < 1e-14);
  CHECK((f12.col(1) - q.B() * xs.col(0)).norm() < 1e-14);
  CHECK((f12.col(2) - xs.col(1)).norm() < 1e-14);
  CHECK(phi(q, Forest::trivial(2), xs).isApprox(xs));
  CHECK_THROWS_AS(phi(q, Forest::trivial(3), xs), ContractError);
}

TEST_CASE("phi is an isometry and matches word operators") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = 1 + static_cast<Eigen::Index>(rng() % 3);
    auto q = random_pair(d, rng());
    auto t = random_tree(rng, 1 + rng() % 12, 6);
    Vector xi = random_vector<C>(rng, d);
    Matrix out = phi_tree(q, t, xi);
    CHECK(std::abs(out.norm() - xi.norm()) < 1e-10);
    auto leaves = t.leaves();
    for (std::size_t j = 0; j < leaves.size(); ++j) {
      CHECK((out.col(static_cast<Eigen::Index>(j)) - word_operator(q, leaves[j]) * xi).norm() < 1e-12);
    }
    CHECK(std::abs((q.A() * xi).squaredNorm() + (q.B() * xi).squaredNorm() - xi.squaredNorm()) < 1e-10);
  }
  // Σ over all words of length n of ‖W_w ξ‖² = ‖ξ‖²
  auto q = random_pair(3, 4);
  Vector xi = random_vector<C>(rng, 3);
  CHECK(std::abs(phi_tree(q, complete(7), xi).squaredNorm() - xi.squaredNorm()) < 1e-10);
}

TEST_CASE("random pairs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (Eigen::Index d = 1; d <= 4; ++d) CHECK(validate(random_pair(d, seed)).defect <= 1e-12);
  }
  auto a = random_pair(2, 1);
  auto b = random_pair(2, 2);
  CHECK((a.A() - b.A()).norm() + (a.B() - b.B()).norm() > 0);
  auto a2 = random_pair(2, 1);
  CHECK(a.A() == a2.A());
  auto s = random_pair(1, 3);
  CHECK(std::abs(std::norm(s.A()(0, 0)) + std::norm(s.B()(0, 0)) - 1.0) < 1e-12);
  CHECK(validate(random_pair<double>(3, 5)).pass);
}

TEST_CASE("norms") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto n = 1 + static_cast<Eigen::Index>(rng() % 4);
    Matrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) m.col(j) = random_vector<C>(rng, n);
    CHECK(operator_norm(m) == doctest::Approx(svd_oracle(m)).epsilon(1e-10));
  }
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = C(0, -0.9);
  CHECK(spectral_radius(d) == doctest::Approx(0.9));
}

TEST_CASE("diffuse certificate examples") {
  auto v = diffuse_certificate(scalar_pair<C>(1.0, 0.0));
  REQUIRE(std::holds_alternative<NotDiffuse>(v));
  CHECK(std::get<NotDiffuse>(v).witness == W("0"));
  CHECK(to_string(v) == "NOT-DIFFUSE witness=0");

  auto c = diffuse_certificate(scalar_pair<C>(0.0, 1.0));
  REQUIRE(std::holds_alternative<NotDiffuse>(c));
  CHECK(std::get<NotDiffuse>(c).witness == W("1"));

  DiffuseOptions opts;
  opts.eps = 1e-3;
  auto h = diffuse_certificate(scalar_pair<C>(r2, r2), opts);
  REQUIRE(std::holds_alternative<Certified>(h));
  CHECK(std::get<Certified>(h).depth == 20);
  CHECK(to_string(h) == "CERTIFIED depth=20 eps=0.001");

  auto dg = diffuse_certificate(diag_pair());
  REQUIRE(std::holds_alternative<NotDiffuse>(dg));
  CHECK(std::get<NotDiffuse>(dg).witness == W("0"));

  // a rotation in A: spectral radius 1 but no real fixed direction
  Matrix A = Matrix::Zero(2, 2);
  A(0, 1) = -1.0;
  A(1, 0) = 1.0;
  auto rot = diffuse_certificate(Pair(A, Matrix::Zero(2, 2)));
  CHECK(std::holds_alternative<NotDiffuse>(rot));

  CHECK_THROWS_AS(diffuse_certificate(scalar_pair<C>(r2, r2), DiffuseOptions{24, 0.0, 8, 0, 0.5}), ContractError);
}

TEST_CASE("certified verdicts are sound") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 12; ++trial) {
    auto d = 1 + static_cast<Eigen::Index>(trial % 3);
    auto q = random_pair(d, 1000 + static_cast<std::uint64_t>(trial));
    auto v = diffuse_certificate(q);
    REQUIRE(std::holds_alternative<Certified>(v));
    auto cert = std::get<Certified>(v);
    for (int k = 0; k < 100; ++k) {
      auto w = random_word(rng, cert.depth + 5);
      CHECK(operator_norm(word_operator(q, w)) <= cert.eps * (1 + 1e-9));
    }
  }
}

TEST_CASE("unknown when the budget runs out") {
  // |b| = 1e-3: pure A-words need about 1.4 million letters to halve
  auto q = scalar_pair<C>(std::sqrt(1 - 1e-6), 1e-3);
  DiffuseOptions opts;
  opts.max_depth = 1000;
  CHECK(std::holds_alternative<Unknown>(diffuse_certificate(q, opts)));
  opts.max_depth = 1 << 22;
  opts.max_nodes = 5000;
  CHECK(std::holds_alternative<Unknown>(diffuse_certificate(q, opts)));
}

}  // TEST_SUITE
