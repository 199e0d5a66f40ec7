#include <doctest.h>

#include <random>

#include "pythag/errors.hpp"
#include "pythag/io.hpp"
#include "pythag/jones.hpp"
#include "pythag/random.hpp"

using namespace pythag;
using C = std::complex<double>;

namespace {

std::size_t offset_of(const std::string& text) {
  try {
    parse_element(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("element grammar") {
  CHECK(parse_element("x0") == generator(0));
  CHECK(parse_element("x3") == generator(3));
  CHECK(parse_element("[(*(**)),((**)*)]") == ThompsonElement::from_pair(vine_left(1), vine_right(1)));
  CHECK(parse_element("[(*(**)),((**)*)]") == inverse(generator(0)));
  CHECK(parse_element("x0 x0^-1").is_identity());
  CHECK(parse_element("x1^3") == power(generator(1), 3));
  CHECK(parse_element("  x1 x0 ") == multiply(generator(1), generator(0)));
  CHECK(parse_element("x0^-1 x2 x0") == generator(3));
  CHECK(parse_element("[*,*]").is_identity());
}

TEST_CASE("element errors carry offsets") {
  CHECK_THROWS_AS(parse_element(""), ParseError);
  CHECK(offset_of("x") == 1);
  CHECK(offset_of("x0 y") == 3);
  CHECK(offset_of("[(**),*]") == 7);
  CHECK(offset_of("[(**) (**)]") == 6);
  CHECK(offset_of("x0^") == 3);
}

TEST_CASE("round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_element(rng, 6, 12);
    CHECK(parse_element(g.to_string()) == g);
  }
}

TEST_CASE("complex numbers") {
  CHECK(parse_complex("1.5") == C(1.5, 0));
  CHECK(parse_complex("-2i") == C(0, -2));
  CHECK(parse_complex("0.5+0.25i") == C(0.5, 0.25));
  CHECK(parse_complex("1e-3-2e-1i") == C(1e-3, -0.2));
  CHECK(parse_complex("i") == C(0, 1));
  CHECK(parse_complex("-i") == C(0, -1));
  CHECK(parse_complex(" 1 + i ") == C(1, 1));
  CHECK_THROWS_AS(parse_complex(""), ParseError);
  CHECK_THROWS_AS(parse_complex("abc"), ParseError);
  CHECK_THROWS_AS(parse_complex("1+2"), ParseError);
  CHECK_THROWS_AS(parse_complex("1i2"), ParseError);
}

TEST_CASE("vector literals") {
  auto p = std::make_shared<const Pair>(scalar_pair<C>(0.6, 0.8));
  auto z = parse_limit_vector("(**) : 0.5 ; 0.5", p);
  CHECK(z.tree().leaf_count() == 2);
  CHECK(z.values()(0, 1) == C(0.5, 0));
  CHECK_THROWS_AS(parse_limit_vector("(**) : 0.5", p), ParseError);
  CHECK_THROWS_AS(parse_limit_vector("(**) 0.5 ; 0.5", p), ParseError);
  CHECK_THROWS_AS(parse_limit_vector("(*) : 0.5", p), ParseError);

  auto q = std::make_shared<const Pair>(random_pair(2, 1));
  auto y = parse_limit_vector("* : 1, 2i", q);
  CHECK(y.values()(1, 0) == C(0, 2));
  CHECK_THROWS_AS(parse_limit_vector("* : 1", q), ParseError);
}

TEST_CASE("pair files") {
  auto s = parse_pair_json(R"({"a": [0.6, 0], "b": [0.8, 0]})");
  CHECK(s.dim() == 1);
  CHECK(validate(s).pass);
  auto real = parse_pair_json(R"({"a": 0.6, "b": 0.8, "tol": 1e-9})");
  CHECK(real.tol() == 1e-9);
  CHECK_THROWS_AS(parse_pair_json(R"({"a": 1, "b": 1})"), ContractError);
  CHECK_THROWS_AS(parse_pair_json(R"({"a": 1})"), ContractError);
  CHECK_THROWS_AS(parse_pair_json(R"({"dim": 2, "A": [[1]], "B": [[0]]})"), ContractError);
  CHECK_THROWS_AS(parse_pair_json("{"), ParseError);

  auto q = random_pair(3, 9);
  auto back = parse_pair_json(pair_to_json(q));
  CHECK((back.A() - q.A()).norm() == 0.0);
  CHECK((back.B() - q.B()).norm() == 0.0);
  CHECK_THROWS_AS(load_pair_file("/nonexistent/pair.json"), ContractError);
}

TEST_CASE("number formatting") {
  CHECK(format_complex(C(0.25 + 1 / std::sqrt(2.0), 0)) == "0.957107+0.000000i");
  CHECK(format_complex(C(1, -0.5)) == "1.000000-0.500000i");
  CHECK(format_short_sci(0.0) == "0.0e0");
  CHECK(format_short_sci(2.2e-16) == "2.2e-16");
  CHECK(format_short_sci(1234.0) == "1.2e3");
}

}  // TEST_SUITE
