#include "symdiff/poly.hpp"

#include <cctype>

namespace symdiff {

namespace {

void compositions(std::size_t nvars, std::uint32_t degree, Exponent& cur, std::size_t pos,
                  std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  // ascending lex: smallest leading exponent first
  for (std::uint32_t e = 0; e <= degree; ++e) {
    cur[pos] = e;
    compositions(nvars, degree - e, cur, pos + 1, out);
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  char get() {
    skip_ws();
    return s_[i_++];
  }
  std::string digits() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected digits");
    return std::string(s_.substr(start, i_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(i_) + " in \"" +
                     std::string(s_) + "\": " + what);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

bool is_var_letter(char c) { return c == 'z' || c == 'x'; }

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t nvars, std::uint32_t degree) {
  std::vector<Exponent> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent cur(nvars, 0);
  compositions(nvars, degree, cur, 0, out);
  return out;
}

MultiPoly MultiPoly::constant(Field f, std::size_t nvars, const Scalar& c) {
  MultiPoly r(f, nvars);
  r.add_term(Exponent(nvars, 0), c);
  return r;
}

MultiPoly MultiPoly::variable(Field f, std::size_t nvars, std::size_t i) {
  MultiPoly r(f, nvars);
  Exponent e(nvars, 0);
  e.at(i) = 1;
  r.add_term(e, Scalar::one(f));
  return r;
}

MultiPoly MultiPoly::monomial(const Scalar& c, Exponent e) {
  MultiPoly r(c.field(), e.size());
  r.add_term(e, c);
  return r;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int td = static_cast<int>(total_degree(e));
    if (d >= 0 && td != d) return false;
    d = td;
  }
  return true;
}

Scalar MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Scalar& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match nvars");
  if (!(c.field() == field_)) throw FieldMismatch("term coefficient from another field");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("polynomials over different fields");
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomials in different variable counts");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(field_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.field_, a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::pow(std::uint32_t e) const {
  MultiPoly result = constant(field_, nvars_, Scalar::one(field_));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Scalar MultiPoly::evaluate(std::span<const Scalar> pt) const {
  if (pt.size() != nvars_)
    throw std::invalid_argument("point has " + std::to_string(pt.size()) + " coordinates, expected " +
                                std::to_string(nvars_));
  for (const auto& x : pt)
    if (!(x.field() == field_)) throw FieldMismatch("point and polynomial over different fields");
  Scalar acc = Scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= pt[i].pow(e[i]);
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(std::size_t i) const {
  if (i >= nvars_) throw std::out_of_range("derivative variable index out of range");
  MultiPoly r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent d = e;
    --d[i];
    r.add_term(d, c * Scalar(field_, static_cast<long long>(e[i])));
  }
  return r;
}

MultiPoly MultiPoly::reduce(Field target) const {
  if (target == field_) return *this;
  if (!field_.is_rational()) throw FieldMismatch("only rational polynomials can be reduced");
  MultiPoly r(target, nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, Scalar(target, c.rational()));
  return r;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> subs) const {
  if (subs.size() != nvars_) throw std::invalid_argument("compose needs one substitute per variable");
  if (subs.empty()) return *this;
  const Field f = subs[0].field();
  const std::size_t nv = subs[0].nvars();
  if (!(f == field_)) throw FieldMismatch("compose across fields");
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  MultiPoly r(f, nv);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(f, nv, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(f, nv, Scalar::one(f)));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * subs[i]);
      t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

std::string MultiPoly::to_string(char var) const {
  if (terms_.empty()) return "0";
  std::string out;
  // descending order reads naturally (z0^2 before z1^2)
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = c.to_string();
    bool negative = field_.is_rational() && sgn(c.rational()) < 0;
    if (negative) coeff = coeff.substr(1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    bool any_var = total_degree(e) > 0;
    bool unit = coeff == "1";
    if (!unit || !any_var) out += coeff;
    bool first = unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!first) out += "*";
      first = false;
      out += var + std::to_string(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

MultiPoly parse_poly(std::string_view text, std::size_t nvars, Field f) {
  Lexer lx(text);
  MultiPoly result(Field::rational(), nvars);
  if (lx.done()) lx.fail("empty polynomial");
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.get();
      sign = c == '-' ? -1 : 1;
    } else if (!first) {
      lx.fail("expected '+' or '-'");
    }
    first = false;
    mpz_class coeff(sign);
    Exponent e(nvars, 0);
    bool need_factor = true;
    while (need_factor) {
      char n = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(n))) {
        coeff *= mpz_class(lx.digits());
      } else if (is_var_letter(n)) {
        lx.get();
        if (!std::isdigit(static_cast<unsigned char>(lx.peek()))) lx.fail("variable index expected");
        std::size_t idx = std::stoul(lx.digits());
        if (idx >= nvars)
          lx.fail("variable index " + std::to_string(idx) + " exceeds " + std::to_string(nvars - 1));
        std::uint32_t power = 1;
        if (lx.peek() == '^') {
          lx.get();
          power = static_cast<std::uint32_t>(std::stoul(lx.digits()));
        }
        e[idx] += power;
      } else {
        lx.fail("expected coefficient or variable");
      }
      need_factor = lx.peek() == '*';
      if (need_factor) lx.get();
    }
    result.add_term(e, Scalar(Field::rational(), coeff));
  }
  return result.reduce(f);
}

std::size_t count_variables(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_var_letter(text[i])) continue;
    std::size_t j = i + 1, idx = 0;
    bool any = false;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      idx = idx * 10 + (text[j] - '0');
      ++j;
      any = true;
    }
    if (any) n = std::max(n, idx + 1);
  }
  return n;
}

Scalar poly_eval(const MultiPoly& f, std::span<const Scalar> pt) { return f.evaluate(pt); }

MultiPoly partial_derivative(const MultiPoly& f, std::size_t i) { return f.derivative(i); }

}  // namespace symdiff
