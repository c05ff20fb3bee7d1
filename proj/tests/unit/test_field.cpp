#include "doctest.h"

#include <random>

#include "symdiff/field.hpp"

using namespace symdiff;

TEST_CASE("prime field representatives are canonical") {
  const Field F7 = Field::prime(7);
  CHECK(Scalar(F7, -1).residue() == 6);
  CHECK(Scalar(F7, 9).residue() == 2);
  CHECK(Scalar(F7, mpq_class(1, 2)).residue() == 4);
  CHECK((Scalar(F7, 3) * Scalar(F7, 5)).residue() == 1);
  CHECK(Scalar(F7, 3).inverse() == Scalar(F7, 5));
}

TEST_CASE("rationals stay reduced with positive denominator") {
  const Field Q = Field::rational();
  const Scalar a(Q, mpq_class(2, -4));
  CHECK(a.rational().get_num() == -1);
  CHECK(a.rational().get_den() == 2);
  CHECK((a + Scalar(Q, mpq_class(1, 2))).is_zero());
}

TEST_CASE("division by zero is an error") {
  CHECK_THROWS_AS(Scalar::zero(Field::prime(11)).inverse(), std::domain_error);
  CHECK_THROWS_AS(Scalar::zero(Field::rational()).inverse(), std::domain_error);
  CHECK_THROWS_AS(Scalar(Field::prime(3), mpq_class(1, 3)), std::domain_error);
}

TEST_CASE("mixing fields throws") {
  CHECK_THROWS_AS(Scalar(Field::prime(5), 1) + Scalar(Field::prime(7), 1), FieldMismatch);
  CHECK_THROWS_AS(Scalar(Field::prime(5), 1) * Scalar(Field::rational(), 1), FieldMismatch);
}

TEST_CASE("field descriptors validate") {
  CHECK_THROWS(Field::prime(9));
  CHECK_THROWS(Field::prime(2));
  CHECK(Field::prime(32003).characteristic() == 32003);
  CHECK(next_prime(32003) == 32009);
  CHECK(next_prime(32009) == 32027);
}

TEST_CASE("Fermat's little theorem and inverses agree") {
  std::mt19937_64 rng(3);
  const std::uint32_t p = 32003;
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t a = 1 + rng() % (p - 1);
    CHECK(mod_pow(a, p - 1, p) == 1);
    CHECK(std::uint64_t(a) * mod_inverse(a, p) % p == 1);
  }
}
