#include "symdiff/unipoly.hpp"

#include <stdexcept>

#include "symdiff/field.hpp"

namespace symdiff {

UniPolyMod::UniPolyMod(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

void UniPolyMod::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint32_t UniPolyMod::eval(std::uint32_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
  return static_cast<std::uint32_t>(acc);
}

UniPolyMod UniPolyMod::monic() const {
  if (c_.empty()) return *this;
  std::uint64_t inv = mod_inverse(c_.back(), p_);
  UniPolyMod r(p_);
  r.c_.reserve(c_.size());
  for (auto c : c_) r.c_.push_back(static_cast<std::uint32_t>(c * inv % p_));
  return r;
}

UniPolyMod UniPolyMod::derivative() const {
  UniPolyMod r(p_);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(static_cast<std::uint32_t>(std::uint64_t(c_[i]) * (i % p_) % p_));
  r.trim();
  return r;
}

UniPolyMod operator+(const UniPolyMod& a, const UniPolyMod& b) {
  UniPolyMod r(a.p_);
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    std::uint64_t s = (i < a.c_.size() ? a.c_[i] : 0ULL) + (i < b.c_.size() ? b.c_[i] : 0ULL);
    r.c_[i] = static_cast<std::uint32_t>(s % a.p_);
  }
  r.trim();
  return r;
}

UniPolyMod operator-(const UniPolyMod& a, const UniPolyMod& b) {
  UniPolyMod r(a.p_);
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    std::uint64_t s = (i < a.c_.size() ? a.c_[i] : 0ULL) + a.p_ - (i < b.c_.size() ? b.c_[i] : 0ULL);
    r.c_[i] = static_cast<std::uint32_t>(s % a.p_);
  }
  r.trim();
  return r;
}

UniPolyMod operator*(const UniPolyMod& a, const UniPolyMod& b) {
  UniPolyMod r(a.p_);
  if (a.c_.empty() || b.c_.empty()) return r;
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      acc[i + j] = (acc[i + j] + std::uint64_t(a.c_[i]) * b.c_[j]) % a.p_;
  r.c_.assign(acc.begin(), acc.end());
  r.trim();
  return r;
}

std::pair<UniPolyMod, UniPolyMod> UniPolyMod::divmod(const UniPolyMod& a, const UniPolyMod& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::uint32_t p = a.p_;
  std::vector<std::uint64_t> rem(a.c_.begin(), a.c_.end());
  UniPolyMod q(p);
  if (a.degree() < b.degree()) return {q, a};
  q.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
  std::uint64_t inv = mod_inverse(b.c_.back(), p);
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    std::uint64_t coef = rem[i + b.degree()] % p * inv % p;
    q.c_[i] = static_cast<std::uint32_t>(coef);
    if (coef == 0) continue;
    for (int j = 0; j <= b.degree(); ++j)
      rem[i + j] = (rem[i + j] + (p - coef) * b.c_[j]) % p;
  }
  UniPolyMod r(p);
  r.c_.assign(rem.begin(), rem.begin() + b.degree());
  r.trim();
  q.trim();
  return {q, r};
}

UniPolyMod UniPolyMod::gcd(UniPolyMod a, UniPolyMod b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPolyMod UniPolyMod::powmod(const UniPolyMod& base, std::uint64_t e, const UniPolyMod& m) {
  UniPolyMod result = divmod(UniPolyMod(m.p_, {1}), m).second;
  UniPolyMod b = divmod(base, m).second;
  while (e) {
    if (e & 1) result = divmod(result * b, m).second;
    e >>= 1;
    if (e) b = divmod(b * b, m).second;
  }
  return result;
}

std::vector<std::pair<int, UniPolyMod>> squarefree_decomposition(const UniPolyMod& f) {
  std::vector<std::pair<int, UniPolyMod>> out;
  if (f.degree() <= 0) return out;
  if (static_cast<std::uint64_t>(f.degree()) >= f.prime())
    throw std::domain_error("squarefree decomposition requires p > degree");
  const auto fm = f.monic();
  const auto df = fm.derivative();
  auto a = UniPolyMod::gcd(fm, df);
  auto b = UniPolyMod::divmod(fm, a).first;
  auto c = UniPolyMod::divmod(df, a).first;
  auto d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    a = UniPolyMod::gcd(b, d);
    if (a.degree() > 0) out.emplace_back(i, a);
    b = UniPolyMod::divmod(b, a).first;
    c = UniPolyMod::divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

std::vector<std::pair<int, UniPolyMod>> distinct_degree_factorization(const UniPolyMod& f) {
  std::vector<std::pair<int, UniPolyMod>> out;
  const std::uint32_t p = f.prime();
  UniPolyMod g = f.monic();
  UniPolyMod h = UniPolyMod::divmod(UniPolyMod::x(p), g.degree() > 0 ? g : UniPolyMod(p, {1})).second;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = UniPolyMod::powmod(h, p, g);
    auto factor = UniPolyMod::gcd(g, h - UniPolyMod::x(p));
    if (factor.degree() > 0) {
      out.emplace_back(d, factor);
      g = UniPolyMod::divmod(g, factor).first;
      h = UniPolyMod::divmod(h, g).second;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.degree(), g);
  return out;
}

}  // namespace symdiff
