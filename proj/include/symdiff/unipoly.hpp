#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace symdiff {

/// Dense univariate polynomial over F_p, coefficients low degree first.
/// Always trimmed: no trailing zero coefficients, the zero polynomial is empty.
class UniPolyMod {
 public:
  explicit UniPolyMod(std::uint32_t p) : p_(p) {}
  UniPolyMod(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static UniPolyMod x(std::uint32_t p) { return UniPolyMod(p, {0, 1}); }

  std::uint32_t prime() const noexcept { return p_; }
  const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::uint32_t leading() const { return c_.back(); }
  std::uint32_t eval(std::uint32_t x) const;

  UniPolyMod monic() const;
  UniPolyMod derivative() const;

  friend UniPolyMod operator+(const UniPolyMod& a, const UniPolyMod& b);
  friend UniPolyMod operator-(const UniPolyMod& a, const UniPolyMod& b);
  friend UniPolyMod operator*(const UniPolyMod& a, const UniPolyMod& b);
  friend bool operator==(const UniPolyMod& a, const UniPolyMod& b) = default;

  /// Quotient and remainder; b must be nonzero.
  static std::pair<UniPolyMod, UniPolyMod> divmod(const UniPolyMod& a, const UniPolyMod& b);
  /// Monic gcd (zero only if both inputs are zero).
  static UniPolyMod gcd(UniPolyMod a, UniPolyMod b);
  /// base^e mod m.
  static UniPolyMod powmod(const UniPolyMod& base, std::uint64_t e, const UniPolyMod& m);

 private:
  void trim();
  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
};

/// Squarefree decomposition (Yun). Returns pairs (multiplicity, monic
/// squarefree factor) with factors of positive degree. Requires p > degree.
std::vector<std::pair<int, UniPolyMod>> squarefree_decomposition(const UniPolyMod& f);

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (d, product of all irreducible factors of degree d).
std::vector<std::pair<int, UniPolyMod>> distinct_degree_factorization(const UniPolyMod& f);

}  // namespace symdiff
