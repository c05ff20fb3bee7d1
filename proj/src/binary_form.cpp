#include "symdiff/binary_form.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "symdiff/unipoly.hpp"

namespace symdiff {

namespace {

bool proportional(std::span<const Scalar> a, std::span<const Scalar> b) {
  // rank of the 2 x n matrix [a; b] is < 2 iff all 2x2 minors vanish
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

// s-adic valuation and dehomogenization f(1, t).
std::pair<int, UniPolyMod> split_form(const BinaryForm& bf) {
  const std::uint32_t p = bf.field.characteristic();
  std::vector<std::uint32_t> c;
  c.reserve(bf.coeffs.size());
  for (const auto& x : bf.coeffs) c.push_back(x.residue());
  UniPolyMod h(p, std::move(c));
  return {bf.degree - h.degree(), h};
}

void add_profile(const UniPolyMod& h, std::vector<std::pair<int, int>>& out) {
  if (h.degree() <= 0) return;
  for (const auto& [mult, part] : squarefree_decomposition(h))
    for (const auto& [deg, prod] : distinct_degree_factorization(part))
      for (int i = 0; i < prod.degree() / deg; ++i) out.emplace_back(mult, deg);
}

}  // namespace

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Scalar& c) { return c.is_zero(); });
}

Scalar BinaryForm::eval(const Scalar& s, const Scalar& t) const {
  Scalar acc = Scalar::zero(field);
  for (int j = 0; j <= degree; ++j) acc += coeffs[j] * s.pow(degree - j) * t.pow(j);
  return acc;
}

std::string BinaryForm::to_string() const {
  std::string out;
  for (int j = 0; j <= degree; ++j) {
    if (coeffs[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += coeffs[j].to_string();
    if (degree - j) out += "*s^" + std::to_string(degree - j);
    if (j) out += "*t^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

int BinaryFormProfile::total() const {
  int t = 0;
  for (const auto& [e, d] : factors) t += e * d;
  return t;
}

std::vector<int> BinaryFormProfile::line_type() const {
  std::vector<int> out;
  for (const auto& [e, d] : factors) out.insert(out.end(), d, e);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::string BinaryFormProfile::to_string() const {
  if (contained) return "contained";
  std::string out = "{";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(factors[i].first) + "," + std::to_string(factors[i].second) + ")";
  }
  return out + "}";
}

BinaryForm restrict_to_line(const MultiPoly& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != f.nvars() || b.size() != f.nvars())
    throw std::invalid_argument("line points must have nvars coordinates");
  if (proportional(a, b)) throw std::invalid_argument("restrict_to_line needs two distinct points");
  if (!f.is_homogeneous()) throw std::invalid_argument("restrict_to_line needs a homogeneous form");
  const Field F = f.field();
  BinaryForm out{F, std::max(f.degree(), 0), {}};
  out.coeffs.assign(out.degree + 1, Scalar::zero(F));
  for (const auto& [e, c] : f.terms()) {
    std::vector<Scalar> acc{c};
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t r = 0; r < e[i]; ++r) {
        // multiply by (a_i*s + b_i*t)
        std::vector<Scalar> next(acc.size() + 1, Scalar::zero(F));
        for (std::size_t j = 0; j < acc.size(); ++j) {
          next[j] += acc[j] * a[i];
          next[j + 1] += acc[j] * b[i];
        }
        acc = std::move(next);
      }
    for (std::size_t j = 0; j < acc.size(); ++j) out.coeffs[j] += acc[j];
  }
  return out;
}

BinaryFormProfile multiplicity_pattern(const BinaryForm& bf) { return common_profile(std::span(&bf, 1)); }

BinaryFormProfile common_profile(std::span<const BinaryForm> forms) {
  BinaryFormProfile prof;
  int s_mult = -1;
  std::optional<UniPolyMod> h;
  for (const auto& bf : forms) {
    if (!bf.field.is_prime()) throw std::domain_error("multiplicity patterns need a prime field");
    if (static_cast<std::uint64_t>(bf.degree) >= bf.field.characteristic())
      throw std::domain_error("multiplicity patterns need p > degree");
    if (bf.is_zero()) continue;
    auto [e, part] = split_form(bf);
    s_mult = s_mult < 0 ? e : std::min(s_mult, e);
    h = h ? UniPolyMod::gcd(*h, part) : part.monic();
  }
  if (s_mult < 0) {
    prof.contained = true;
    return prof;
  }
  if (s_mult > 0) prof.factors.emplace_back(s_mult, 1);
  add_profile(*h, prof.factors);
  std::sort(prof.factors.rbegin(), prof.factors.rend());
  return prof;
}

}  // namespace symdiff
