#include "doctest.h"

#include <random>

#include "symdiff/linalg.hpp"
#include "symdiff/poly.hpp"

using namespace symdiff;

namespace {

Vec ints(Field f, std::initializer_list<long long> v) {
  Vec out;
  for (auto x : v) out.emplace_back(f, x);
  return out;
}

MultiPoly random_form(Field f, std::size_t nvars, std::uint32_t deg, std::mt19937_64& rng) {
  MultiPoly g(f, nvars);
  for (const auto& e : monomials_of_degree(nvars, deg))
    if (rng() % 2) g.add_term(e, Scalar(f, static_cast<long long>(rng() % 19) - 9));
  return g;
}

}  // namespace

TEST_CASE("poly_eval examples") {
  const Field Q = Field::rational();
  const MultiPoly q = parse_poly("z0*z3 - z1*z2", 4);
  CHECK(poly_eval(q, ints(Q, {1, 0, 0, 0})).is_zero());
  CHECK(poly_eval(q, ints(Q, {1, 1, 1, 0})) == Scalar(Q, -1));
  const Field F7 = Field::prime(7);
  CHECK(poly_eval(parse_poly("z0^2", 1, F7), ints(F7, {3})) == Scalar(F7, 2));
  CHECK_THROWS_AS(poly_eval(q, ints(F7, {1, 1, 1, 0})), FieldMismatch);
}

TEST_CASE("partial derivatives") {
  CHECK(partial_derivative(parse_poly("z0*z3 - z1*z2", 4), 0) == parse_poly("z3", 4));
  CHECK(partial_derivative(parse_poly("z1^3", 2), 1) == parse_poly("3*z1^2", 2));
  CHECK(partial_derivative(parse_poly("z1^3", 2, Field::prime(3)), 1).is_zero());
}

TEST_CASE("no zero coefficients are stored") {
  const MultiPoly f = parse_poly("z0*z1 + z1*z0 - 2*z0*z1", 2);
  CHECK(f.is_zero());
  CHECK(f.degree() == -1);
  CHECK(parse_poly("3*z0^2 + 4*z0^2", 1, Field::prime(7)).is_zero());
}

TEST_CASE("parser rejects junk") {
  CHECK_THROWS_AS(parse_poly("z0 + ", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("z5", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("z0 ** 2", 1), ParseError);
  CHECK(parse_poly("x0^2*x1 - 3", 2).degree() == 3);
}

TEST_CASE("evaluation is multiplicative") {
  std::mt19937_64 rng(7);
  for (Field f : {Field::prime(101), Field::rational()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const MultiPoly g = random_form(f, 4, 2, rng), h = random_form(f, 4, 3, rng);
      Vec pt;
      for (int i = 0; i < 4; ++i) pt.emplace_back(f, static_cast<long long>(rng() % 41) - 20);
      CHECK(poly_eval(g * h, pt) == poly_eval(g, pt) * poly_eval(h, pt));
      CHECK(poly_eval(g + h, pt) == poly_eval(g, pt) + poly_eval(h, pt));
    }
  }
}

TEST_CASE("Euler identity for homogeneous forms") {
  std::mt19937_64 rng(11);
  const Field F = Field::prime(101);
  for (std::uint32_t d = 1; d <= 5; ++d) {
    const MultiPoly f = random_form(F, 4, d, rng);
    MultiPoly lhs(F, 4);
    for (std::size_t i = 0; i < 4; ++i) lhs += MultiPoly::variable(F, 4, i) * f.derivative(i);
    CHECK(lhs == f * Scalar(F, d));
    if (!f.derivative(0).is_zero()) CHECK(f.derivative(0).degree() == static_cast<int>(d) - 1);
  }
}

TEST_CASE("composition with a parametrization") {
  const MultiPoly q = parse_poly("z0*z3 - z1*z2", 4);
  std::vector<MultiPoly> seg;
  for (const char* t : {"x0*x2", "x0*x3", "x1*x2", "x1*x3"}) seg.push_back(parse_poly(t, 4));
  CHECK(q.compose(seg).is_zero());
}

TEST_CASE("monomials_of_degree counts") {
  CHECK(monomials_of_degree(4, 2).size() == 10);
  CHECK(monomials_of_degree(6, 2).size() == 21);
  CHECK(monomials_of_degree(3, 0).size() == 1);
}
