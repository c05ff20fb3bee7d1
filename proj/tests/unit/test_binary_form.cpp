#include "doctest.h"

#include <random>

#include "symdiff/binary_form.hpp"
#include "symdiff/linalg.hpp"

using namespace symdiff;

namespace {

Vec ints(Field f, std::initializer_list<long long> v) {
  Vec out;
  for (auto x : v) out.emplace_back(f, x);
  return out;
}

std::vector<long long> residues(const BinaryForm& bf) {
  std::vector<long long> r;
  for (const auto& c : bf.coeffs) r.push_back(c.residue());
  return r;
}

}  // namespace

TEST_CASE("restriction examples") {
  const Field F = Field::prime(101);
  const MultiPoly conic = parse_poly("z0*z2 - z1^2", 3, F);
  // s*t
  CHECK(residues(restrict_to_line(conic, ints(F, {1, 0, 0}), ints(F, {0, 0, 1}))) == std::vector<long long>{0, 1, 0});
  // -t^2
  CHECK(residues(restrict_to_line(conic, ints(F, {1, 0, 0}), ints(F, {0, 1, 0}))) == std::vector<long long>{0, 0, 100});
  // t^2 (3s - t)
  const MultiPoly nodal = parse_poly("z2^2*z0 - z1^3 - z1^2*z0", 3, F);
  CHECK(residues(restrict_to_line(nodal, ints(F, {1, 0, 0}), ints(F, {0, 1, 2}))) ==
        std::vector<long long>{0, 0, 3, 100});
}

TEST_CASE("restriction needs distinct points") {
  const Field F = Field::prime(11);
  const MultiPoly conic = parse_poly("z0*z2 - z1^2", 3, F);
  CHECK_THROWS_AS(restrict_to_line(conic, ints(F, {1, 2, 3}), ints(F, {2, 4, 6})), std::invalid_argument);
}

TEST_CASE("multiplicity pattern examples") {
  const Field F = Field::prime(101);
  const MultiPoly conic = parse_poly("z0*z2 - z1^2", 3, F);
  const MultiPoly nodal = parse_poly("z2^2*z0 - z1^3 - z1^2*z0", 3, F);
  using Pairs = std::vector<std::pair<int, int>>;
  CHECK(multiplicity_pattern(restrict_to_line(conic, ints(F, {1, 0, 0}), ints(F, {0, 0, 1}))).factors ==
        Pairs{{1, 1}, {1, 1}});
  CHECK(multiplicity_pattern(restrict_to_line(conic, ints(F, {1, 0, 0}), ints(F, {0, 1, 0}))).factors ==
        Pairs{{2, 1}});
  const auto nod = multiplicity_pattern(restrict_to_line(nodal, ints(F, {1, 0, 0}), ints(F, {0, 1, 2})));
  CHECK(nod.factors == Pairs{{2, 1}, {1, 1}});
  CHECK(nod.line_type() == std::vector<int>{2, 1});
}

TEST_CASE("conjugate points count geometrically") {
  // z0^2 + z1^2 on the line z2 = 0 over F_7: two conjugate simple points
  const Field F = Field::prime(7);
  const MultiPoly f = parse_poly("z0^2 + z1^2", 3, F);
  const auto prof = multiplicity_pattern(restrict_to_line(f, ints(F, {1, 0, 0}), ints(F, {0, 1, 0})));
  CHECK(prof.factors == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(prof.total() == 2);
  CHECK(prof.line_type() == std::vector<int>{1, 1});
}

TEST_CASE("contained lines") {
  const Field F = Field::prime(11);
  const MultiPoly q = parse_poly("z0*z3 - z1*z2", 4, F);
  const auto prof = multiplicity_pattern(restrict_to_line(q, ints(F, {1, 0, 0, 0}), ints(F, {0, 1, 0, 0})));
  CHECK(prof.contained);
}

TEST_CASE("pattern properties on random lines") {
  const Field F = Field::prime(31);
  const MultiPoly cubic = parse_poly("z0^3 + z1^3 + z2^3 + 2*z0*z1*z2", 3, F);
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 300) {
    Vec a, b;
    for (int i = 0; i < 3; ++i) {
      a.emplace_back(F, static_cast<long long>(rng() % 31));
      b.emplace_back(F, static_cast<long long>(rng() % 31));
    }
    try {
      const BinaryForm ab = restrict_to_line(cubic, a, b);
      const auto pab = multiplicity_pattern(ab);
      if (pab.contained) continue;
      ++checked;
      CHECK(pab.total() == 3);
      CHECK(multiplicity_pattern(restrict_to_line(cubic, b, a)) == pab);
      Vec b3 = b;
      for (auto& c : b3) c *= Scalar(F, 3);
      CHECK(multiplicity_pattern(restrict_to_line(cubic, a, b3)) == pab);
      // vanishes at [1:0] iff f(a) = 0
      CHECK(ab.coeffs[0].is_zero() == poly_eval(cubic, a).is_zero());
    } catch (const std::invalid_argument&) {
      // a and b proportional (or zero): not a line
    }
  }
}
