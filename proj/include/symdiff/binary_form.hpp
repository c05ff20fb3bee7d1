#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdiff/field.hpp"
#include "symdiff/poly.hpp"

namespace symdiff {

/// Homogeneous form in (s, t): coeffs[j] multiplies s^(degree-j) * t^j.
struct BinaryForm {
  Field field;
  int degree = 0;
  std::vector<Scalar> coeffs;

  bool is_zero() const;
  /// Value at [s:t].
  Scalar eval(const Scalar& s, const Scalar& t) const;
  std::string to_string() const;
};

/// Factorization shape of a binary form over the algebraic closure: one
/// (multiplicity, degree) pair per irreducible factor over the base field.
struct BinaryFormProfile {
  std::vector<std::pair<int, int>> factors;  // sorted descending
  bool contained = false;

  int total() const;
  /// Intersection type: each multiplicity repeated by its residue degree,
  /// sorted descending, e.g. (2,1).
  std::vector<int> line_type() const;
  friend bool operator==(const BinaryFormProfile&, const BinaryFormProfile&) = default;
  std::string to_string() const;
};

/// f(s*a + t*b) expanded as a binary form of degree deg f. Requires a, b to be
/// distinct projective points (std::invalid_argument otherwise).
BinaryForm restrict_to_line(const MultiPoly& f, std::span<const Scalar> a, std::span<const Scalar> b);

/// Squarefree + distinct-degree factorization pattern over F_p, with no
/// extension-field arithmetic. Zero form gives contained = true. Requires
/// p > degree (std::domain_error) and a prime field.
BinaryFormProfile multiplicity_pattern(const BinaryForm& bf);

/// Profile of the common zero scheme of several binary forms (their gcd).
/// Zero forms impose nothing; all zero gives contained = true.
BinaryFormProfile common_profile(std::span<const BinaryForm> forms);

}  // namespace symdiff
