#include "symdiff/point_set.hpp"

#include <bit>
#include <stdexcept>

#include "symdiff/field.hpp"

namespace symdiff {

ProjectiveSpace::ProjectiveSpace(std::uint32_t p, int N) : p_(p), N_(N) {
  if (N < 0) throw std::invalid_argument("negative projective dimension");
  pow_.assign(N + 2, 1);
  for (int i = 1; i <= N + 1; ++i) {
    if (pow_[i - 1] > (1ULL << 40)) throw std::invalid_argument("projective space too large to index");
    pow_[i] = pow_[i - 1] * p;
  }
  size_ = (pow_[N + 1] - 1) / (p - 1);
  // lexicographic order puts vectors led by a later coordinate first
  block_start_.assign(N + 1, 0);
  for (int i = 0; i <= N; ++i) block_start_[i] = (pow_[N - i] - 1) / (p - 1);
}

bool ProjectiveSpace::normalize(std::vector<std::uint32_t>& z) const {
  std::size_t lead = 0;
  while (lead < z.size() && z[lead] % p_ == 0) ++lead;
  if (lead == z.size()) return false;
  const std::uint64_t inv = mod_inverse(z[lead] % p_, p_);
  for (auto& c : z) c = static_cast<std::uint32_t>(c % p_ * inv % p_);
  return true;
}

std::uint64_t ProjectiveSpace::index(std::span<const std::uint32_t> z) const {
  if (z.size() != static_cast<std::size_t>(N_ + 1)) throw std::invalid_argument("point has wrong length");
  std::vector<std::uint32_t> v(z.begin(), z.end());
  if (!normalize(v)) throw std::invalid_argument("zero vector is not a projective point");
  std::size_t lead = 0;
  while (v[lead] == 0) ++lead;
  std::uint64_t rest = 0;
  for (std::size_t i = lead + 1; i < v.size(); ++i) rest = rest * p_ + v[i];
  return block_start_[lead] + rest;
}

std::vector<std::uint32_t> ProjectiveSpace::point(std::uint64_t idx) const {
  if (idx >= size_) throw std::out_of_range("point index out of range");
  int lead = N_;
  while (lead > 0 && idx >= block_start_[lead - 1]) --lead;
  std::vector<std::uint32_t> v(N_ + 1, 0);
  v[lead] = 1;
  std::uint64_t rest = idx - block_start_[lead];
  for (int i = N_; i > lead; --i) {
    v[i] = static_cast<std::uint32_t>(rest % p_);
    rest /= p_;
  }
  return v;
}

PointSet::PointSet(ProjectiveSpace space) : space_(std::move(space)), words_((space_.size() + 63) / 64, 0) {}

std::uint64_t PointSet::count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<std::uint64_t> PointSet::members() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

PointSet& PointSet::operator|=(const PointSet& o) {
  if (!(space_ == o.space_)) throw std::invalid_argument("union of point sets in different spaces");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

bool PointSet::is_subset_of(const PointSet& o) const {
  if (!(space_ == o.space_)) throw std::invalid_argument("comparing point sets in different spaces");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

void insert_line(PointSet& set, std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
  const std::uint32_t p = set.space().prime();
  std::vector<std::uint32_t> z(x.size());
  set.insert(y);
  for (std::uint32_t t = 0; t < p; ++t) {
    for (std::size_t i = 0; i < x.size(); ++i)
      z[i] = static_cast<std::uint32_t>((x[i] + std::uint64_t(t) * y[i]) % p);
    set.insert(z);
  }
}

}  // namespace symdiff
