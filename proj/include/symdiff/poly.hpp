#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "symdiff/field.hpp"

namespace symdiff {

using Exponent = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponent& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

/// All exponent vectors of length nvars with total degree `degree`, in
/// ascending lexicographic order.
std::vector<Exponent> monomials_of_degree(std::size_t nvars, std::uint32_t degree);

/// Sparse multivariate polynomial over a Field. Terms map exponent vectors to
/// nonzero coefficients; zero coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(Field f, std::size_t nvars) : field_(f), nvars_(nvars) {}

  static MultiPoly constant(Field f, std::size_t nvars, const Scalar& c);
  static MultiPoly variable(Field f, std::size_t nvars, std::size_t i);
  static MultiPoly monomial(const Scalar& c, Exponent e);

  Field field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Exponent, Scalar>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Coefficient of a monomial, zero if absent.
  Scalar coefficient(const Exponent& e) const;

  /// Adds c * z^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Scalar& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Scalar& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

  MultiPoly pow(std::uint32_t e) const;

  Scalar evaluate(std::span<const Scalar> pt) const;
  MultiPoly derivative(std::size_t i) const;
  /// Image of an integer/rational polynomial in another field.
  MultiPoly reduce(Field target) const;
  /// Substitutes z_i -> subs[i]; all subs share one ring.
  MultiPoly compose(std::span<const MultiPoly> subs) const;

  std::string to_string(char var = 'z') const;

 private:
  void check_compatible(const MultiPoly& o) const;

  Field field_;
  std::size_t nvars_ = 0;
  std::map<Exponent, Scalar> terms_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text such as "3*z0^2*z1 - z2^3" with integer coefficients. Variables
/// are written z<i> (x<i> is accepted as a synonym, for parametrizations).
/// Throws ParseError on malformed input or an index >= nvars.
MultiPoly parse_poly(std::string_view text, std::size_t nvars, Field f = Field::rational());

/// Exact evaluation; FieldMismatch if pt lives in another field.
Scalar poly_eval(const MultiPoly& f, std::span<const Scalar> pt);
MultiPoly partial_derivative(const MultiPoly& f, std::size_t i);

/// Number of variables referenced by the text (1 + the largest index seen).
std::size_t count_variables(std::string_view text);

}  // namespace symdiff
