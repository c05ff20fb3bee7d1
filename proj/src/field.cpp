#include "symdiff/field.hpp"

#include <tuple>
#include <utility>

namespace symdiff {

namespace {

std::uint32_t reduce_mpz(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p, base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("division by zero in F_" + std::to_string(p));
  // extended Euclid on signed 64-bit values
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Field Field::prime(std::uint64_t p) {
  if (p < 3 || p >= (1ULL << 31) || !symdiff::is_prime(p))
    throw std::invalid_argument("field characteristic must be an odd prime below 2^31, got " +
                                std::to_string(p));
  return Field(static_cast<std::uint32_t>(p));
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(p_);
}

Scalar::Scalar(Field f, long long v) : field_(f) {
  if (f.is_prime()) {
    long long p = f.characteristic();
    long long r = v % p;
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  } else {
    v_ = mpq_class(static_cast<long>(v));
  }
}

Scalar::Scalar(Field f, const mpz_class& v) : field_(f) {
  if (f.is_prime())
    v_ = reduce_mpz(v, f.characteristic());
  else
    v_ = mpq_class(v);
}

Scalar::Scalar(Field f, const mpq_class& v) : field_(f) {
  if (f.is_prime()) {
    std::uint32_t p = f.characteristic();
    std::uint32_t den = reduce_mpz(v.get_den(), p);
    if (den == 0)
      throw std::domain_error("rational " + v.get_str() + " has no image in " + f.name());
    v_ = static_cast<std::uint32_t>(std::uint64_t(reduce_mpz(v.get_num(), p)) *
                                    mod_inverse(den, p) % p);
  } else {
    mpq_class c = v;
    c.canonicalize();
    v_ = std::move(c);
  }
}

Scalar Scalar::from_residue(Field f, std::uint32_t r) {
  Scalar s;
  s.field_ = f;
  s.v_ = r;
  return s;
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(v_) == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(v_) == 1;
  return std::get<mpq_class>(v_) == 1;
}

std::uint32_t Scalar::residue() const {
  if (!field_.is_prime()) throw FieldMismatch("residue() requested from a rational scalar");
  return std::get<std::uint32_t>(v_);
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw FieldMismatch("rational() requested from a prime-field scalar");
  return std::get<mpq_class>(v_);
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw FieldMismatch("field mismatch: " + field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (field_.is_prime())
    return from_residue(field_, mod_inverse(std::get<std::uint32_t>(v_), field_.characteristic()));
  Scalar s;
  s.v_ = mpq_class(1) / std::get<mpq_class>(v_);
  return s;
}

Scalar Scalar::pow(std::uint64_t e) const {
  if (field_.is_prime())
    return from_residue(field_, mod_pow(std::get<std::uint32_t>(v_), e, field_.characteristic()));
  Scalar result = one(field_), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar Scalar::operator-() const {
  if (field_.is_prime()) {
    std::uint32_t r = std::get<std::uint32_t>(v_);
    return from_residue(field_, r == 0 ? 0 : field_.characteristic() - r);
  }
  Scalar s;
  s.v_ = mpq_class(-std::get<mpq_class>(v_));
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t r = std::uint64_t(std::get<std::uint32_t>(v_)) + std::get<std::uint32_t>(o.v_);
    if (r >= field_.characteristic()) r -= field_.characteristic();
    v_ = static_cast<std::uint32_t>(r);
  } else {
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint32_t a = std::get<std::uint32_t>(v_), b = std::get<std::uint32_t>(o.v_);
    v_ = a >= b ? a - b : a + (field_.characteristic() - b);
  } else {
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    v_ = static_cast<std::uint32_t>(std::uint64_t(std::get<std::uint32_t>(v_)) *
                                    std::get<std::uint32_t>(o.v_) % field_.characteristic());
  } else {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.v_ == b.v_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (a.field_.is_prime())
    return std::get<std::uint32_t>(a.v_) <=> std::get<std::uint32_t>(b.v_);
  int c = cmp(std::get<mpq_class>(a.v_), std::get<mpq_class>(b.v_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(std::get<std::uint32_t>(v_));
  return std::get<mpq_class>(v_).get_str();
}

}  // namespace symdiff
