#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace symdiff {

/// Raised when two values from different base fields meet in one operation.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Descriptor of the base field: either F_p for an odd prime p < 2^31, or Q.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rational() { return Field{}; }
  /// Throws std::invalid_argument unless p is an odd prime below 2^31.
  static Field prime(std::uint64_t p);

  constexpr bool is_rational() const noexcept { return p_ == 0; }
  constexpr bool is_prime() const noexcept { return p_ != 0; }
  constexpr std::uint32_t characteristic() const noexcept { return p_; }

  std::string name() const;

  friend constexpr bool operator==(Field, Field) = default;

 private:
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);
/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

/// An exact field element with a canonical representative: 0 <= v < p over
/// F_p, a reduced fraction with positive denominator over Q.
class Scalar {
 public:
  /// Rational zero.
  Scalar() : v_(mpq_class(0)) {}
  Scalar(Field f, long long v);
  Scalar(Field f, const mpz_class& v);
  /// Reduces a rational into f. Throws std::domain_error when the
  /// denominator vanishes mod p.
  Scalar(Field f, const mpq_class& v);

  static Scalar zero(Field f) { return Scalar(f, 0LL); }
  static Scalar one(Field f) { return Scalar(f, 1LL); }
  /// Trusted constructor from a residue already in [0, p).
  static Scalar from_residue(Field f, std::uint32_t r);

  Field field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue for F_p elements; throws for rationals.
  std::uint32_t residue() const;
  const mpq_class& rational() const;

  Scalar inverse() const;  // std::domain_error on zero
  Scalar pow(std::uint64_t e) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Total order on canonical representatives (used for canonical row sorting).
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;

  Field field_;
  std::variant<std::uint32_t, mpq_class> v_;
};

}  // namespace symdiff
