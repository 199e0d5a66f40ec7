#include <doctest.h>

#include <random>

#include "pythag/errors.hpp"
#include "pythag/limitspace.hpp"
#include "pythag/random.hpp"

using namespace pythag;
using C = std::complex<double>;

namespace {

BinaryWord W(const char* s) { return BinaryWord::parse(s); }
const Tree kCaret = Tree::caret(Tree::leaf(), Tree::leaf());

std::shared_ptr<const Pair> share(Pair p) { return std::make_shared<const Pair>(std::move(p)); }

Vec on_tree(std::shared_ptr<const Pair> pair, const Tree& t, const Matrix& values) { return Vec(std::move(pair), t, values); }

// The vectors z_n: ξ at the second leaf of complete(n), zero elsewhere.
Vec z_n(std::shared_ptr<const Pair> pair, std::size_t n, const Vector& xi) {
  Tree t = complete(n);
  Matrix values = Matrix::Zero(pair->dim(), static_cast<Eigen::Index>(t.leaf_count()));
  values.col(1) = xi;
  return Vec(std::move(pair), t, values);
}

// Every word of length ≤ depth, as sdps: all complete prefix codes of depth ≤ 3.
void all_trees(std::size_t depth, std::vector<Tree>& out) {
  if (depth == 0) {
    out.push_back(Tree::leaf());
    return;
  }
  std::vector<Tree> smaller;
  all_trees(depth - 1, smaller);
  out.push_back(Tree::leaf());
  for (const auto& l : smaller)
    for (const auto& r : smaller) out.push_back(Tree::caret(l, r));
}

}  // namespace

TEST_SUITE("limitspace") {

TEST_CASE("embed and grow") {
  auto p = share(scalar_pair<C>(0.6, 0.8));
  auto e = embed(p, Vector(Vector::Ones(1)));
  CHECK(e.tree().is_leaf());
  CHECK(norm(e) == doctest::Approx(1.0));
  CHECK(is_zero(embed(p, Vector(Vector::Zero(1))), 0.0));
  CHECK_THROWS_AS(embed(p, Vector(Vector::Ones(2))), ContractError);

  auto q = share(random_pair(2, 3));
  std::mt19937_64 rng(1);
  Vector xi = random_vector<C>(rng, 2);
  auto g = grow(embed(q, xi), Forest(kCaret));
  CHECK(g.tree() == kCaret);
  CHECK((g.values().col(0) - q->A() * xi).norm() < 1e-14);
  CHECK((g.values().col(1) - q->B() * xi).norm() < 1e-14);
  auto z = random_limit_vector<C>(rng, q, 4, 6);
  CHECK(norm(grow(z, Forest::trivial(z.tree().leaf_count())) - z) == 0.0);
  CHECK_THROWS_AS(grow(z, Forest::trivial(z.tree().leaf_count() + 1)), ContractError);
}

TEST_CASE("inner products") {
  auto p = share(scalar_pair<C>(C(0.6, 0), C(0, 0.8)));
  Matrix ab(1, 2);
  ab << p->A()(0, 0), p->B()(0, 0);
  auto lhs = on_tree(p, kCaret, ab);
  CHECK(std::abs(inner(lhs, embed(p, Vector(Vector::Ones(1)))) - 1.0) < 1e-15);

  auto q = share(random_pair(3, 8));
  std::mt19937_64 rng(4);
  Vector xi = random_vector<C>(rng, 3);
  Vector eta = random_vector<C>(rng, 3);
  CHECK(std::abs(inner(embed(q, xi), embed(q, eta)) - eta.dot(xi)) < 1e-12);

  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      double v = std::abs(inner(z_n(q, m, xi), z_n(q, n, xi)));
      if (m == n) CHECK(v == doctest::Approx(xi.squaredNorm()));
      else CHECK(v < 1e-12);
    }

  // sesquilinearity and representative independence
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_limit_vector<C>(rng, q, 4, 6);
    auto y = random_limit_vector<C>(rng, q, 4, 6);
    C a(0.3, -1.2);
    CHECK(std::abs(inner(a * x, y) - a * inner(x, y)) < 1e-10);
    CHECK(std::abs(inner(x, a * y) - std::conj(a) * inner(x, y)) < 1e-10);
    CHECK(std::abs(inner(x, y) - std::conj(inner(y, x))) < 1e-10);
    std::vector<Tree> ts;
    for (std::size_t j = 0; j < x.tree().leaf_count(); ++j) ts.push_back(random_tree(rng, 1 + rng() % 4, 3));
    auto gx = grow(x, Forest(ts));
    CHECK(std::abs(inner(gx, y) - inner(x, y)) <= 1e-9);
    CHECK(std::abs(norm(gx) - norm(x)) <= 1e-10);
  }

  auto other = share(random_pair(3, 9));
  CHECK_THROWS_AS(inner(embed(q, xi), embed(other, xi)), ContractError);
}

TEST_CASE("tau") {
  auto q = share(random_pair(2, 5));
  std::mt19937_64 rng(6);
  Matrix xs(2, 2);
  xs.col(0) = random_vector<C>(rng, 2);
  xs.col(1) = random_vector<C>(rng, 2);
  auto z = on_tree(q, kCaret, xs);
  auto c01 = tau(W("01"), z);
  CHECK(c01.tree().is_leaf());
  CHECK((c01.values().col(0) - q->B() * xs.col(0)).norm() < 1e-14);
  CHECK(norm(tau(W("^"), z) - z) == 0.0);

  Vector xi = random_vector<C>(rng, 2);
  Vector ak = xi;
  for (std::size_t k = 1; k <= 6; ++k) {
    ak = q->A() * ak;
    CHECK(norm(tau(BinaryWord::repeat(0, k), embed(q, xi)) - embed(q, ak)) < 1e-12);
  }

  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_limit_vector<C>(rng, q, 4, 6);
    auto v = random_word(rng, rng() % 5);
    CHECK(norm(tau(v, x)) <= norm(x) + 1e-12);
  }
}

TEST_CASE("tau_star") {
  auto q = share(random_pair(2, 15));
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    auto z = random_limit_vector<C>(rng, q, 3, 5);
    auto v = random_word(rng, rng() % 4);
    auto lifted = tau_star(v, z);
    CHECK(std::abs(norm(lifted) - norm(z)) < 1e-12);
    CHECK(norm(tau(v, lifted) - z) < 1e-12);
    auto w = random_word(rng, 1 + rng() % 4);
    if (disjoint(v, w)) CHECK(norm(tau(w, lifted)) < 1e-12);
    // adjointness: ⟨τ*_v z, y⟩ = ⟨z, τ_v y⟩
    auto y = random_limit_vector<C>(rng, q, 4, 6);
    CHECK(std::abs(inner(lifted, y) - inner(z, tau(v, y))) < 1e-10);
  }
  auto z = random_limit_vector<C>(rng, q, 3, 5);
  CHECK(norm(tau_star(W("^"), z) - z) == 0.0);

  // moving the 1-component under vertex 0
  Matrix xs(2, 4);
  for (int j = 0; j < 4; ++j) xs.col(j) = random_vector<C>(rng, 2);
  auto full = on_tree(q, complete(2), xs);
  auto moved = tau_star(W("0"), tau(W("1"), full));
  CHECK((grow_to(moved, complete(2)).values().col(0) - xs.col(2)).norm() < 1e-14);
  CHECK((grow_to(moved, complete(2)).values().col(1) - xs.col(3)).norm() < 1e-14);
  CHECK(grow_to(moved, complete(2)).values().rightCols(2).norm() == 0.0);
}

TEST_CASE("rho and partition of identity") {
  auto q = share(random_pair(2, 25));
  std::mt19937_64 rng(26);
  Matrix xs(2, 2);
  xs.col(0) = random_vector<C>(rng, 2);
  xs.col(1) = random_vector<C>(rng, 2);
  auto z = on_tree(q, kCaret, xs);
  auto r0 = rho(W("0"), z);
  CHECK((grow_to(r0, kCaret).values().col(0) - xs.col(0)).norm() < 1e-14);
  CHECK(grow_to(r0, kCaret).values().col(1).norm() == 0.0);

  std::vector<Tree> trees;
  all_trees(3, trees);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_limit_vector<C>(rng, q, 4, 6);
    for (const auto& t : trees) {
      auto sum = zero_vector(q);
      for (const auto& v : t.leaves()) sum = sum + rho(v, x);
      CHECK(norm(sum - x) <= 1e-10);
    }
    CHECK(norm(rho_union(IntervalUnion{}, x)) == 0.0);
    CHECK(norm(rho_union(IntervalUnion::full(), x) - x) == 0.0);
  }

  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_limit_vector<C>(rng, q, 4, 6);
    auto y = random_limit_vector<C>(rng, q, 4, 6);
    auto v = random_word(rng, rng() % 4);
    auto px = rho(v, x);
    CHECK(norm(rho(v, px) - px) < 1e-12);
    CHECK(std::abs(inner(px, y) - inner(x, rho(v, y))) < 1e-10);

    IntervalUnion u;
    for (int k = 0; k < 3; ++k) u = union_insert(u, random_word(rng, 1 + rng() % 3));
    auto sum = zero_vector(q);
    for (const auto& w : u.words()) sum = sum + rho(w, x);
    CHECK(norm(rho_union(u, x) - sum) < 1e-10);
    auto c = union_complement(u);
    CHECK(norm(rho_union(u, x) + rho_union(c, x) - x) < 1e-10);
  }
}

TEST_CASE("trim") {
  auto p = share(scalar_pair<C>(C(0.6, 0.0), C(0.0, 0.8)));
  Matrix ab(1, 2);
  ab << p->A()(0, 0), p->B()(0, 0);
  auto t = trim(on_tree(p, kCaret, ab), 1e-12);
  CHECK(t.tree().is_leaf());
  CHECK(std::abs(t.values()(0, 0) - 1.0) < 1e-15);

  auto q = share(random_pair(3, 35));
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    auto z = random_limit_vector<C>(rng, q, 4, 6);
    std::vector<Tree> ts;
    for (std::size_t j = 0; j < z.tree().leaf_count(); ++j) ts.push_back(random_tree(rng, 1 + rng() % 4, 3));
    auto grown = grow(z, Forest(ts));
    auto back = trim(grown, 1e-12);
    // random values almost surely collapse no further than z's own tree
    CHECK(back.tree() == z.tree());
    CHECK(norm(back - z) < 1e-10);
    CHECK(trim(back, 1e-12).tree() == back.tree());
  }
}

TEST_CASE("decay along rays") {
  auto one = share(scalar_pair<C>(1.0, 0.0));
  auto e = embed(one, Vector(Vector::Ones(1)));
  CHECK(norm(tau(W("0"), e) - e) == 0.0);

  auto h = share(scalar_pair<C>(0.6, 0.8));
  auto eh = embed(h, Vector(Vector::Ones(1)));
  double prev = 1.0;
  for (std::size_t k = 1; k <= 30; ++k) {
    double n = norm(tau(BinaryWord::repeat(0, k), eh));
    CHECK(n == doctest::Approx(std::pow(0.6, double(k))));
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("real scalars") {
  auto p = std::make_shared<const PythagoreanPair<double>>(random_pair<double>(2, 3));
  std::mt19937_64 rng(2);
  auto x = random_limit_vector<double>(rng, p, 4, 6);
  auto sum = zero_vector(p);
  for (const auto& v : complete(2).leaves()) sum = sum + rho(v, x);
  CHECK(norm(sum - x) < 1e-12);
}

}  // TEST_SUITE
