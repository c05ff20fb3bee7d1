#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace symdiff {

/// Canonical enumeration of P^N(F_p): normalized coordinate vectors (first
/// nonzero entry 1) in ascending lexicographic order.
class ProjectiveSpace {
 public:
  ProjectiveSpace(std::uint32_t p, int N);

  std::uint32_t prime() const noexcept { return p_; }
  int ambient() const noexcept { return N_; }
  /// (p^(N+1) - 1) / (p - 1)
  std::uint64_t size() const noexcept { return size_; }

  /// Index of a vector (normalized on the fly); the zero vector is invalid.
  std::uint64_t index(std::span<const std::uint32_t> z) const;
  std::vector<std::uint32_t> point(std::uint64_t idx) const;
  /// Scales so the first nonzero coordinate is 1; returns false for zero.
  bool normalize(std::vector<std::uint32_t>& z) const;

  friend bool operator==(const ProjectiveSpace& a, const ProjectiveSpace& b) {
    return a.p_ == b.p_ && a.N_ == b.N_;
  }

 private:
  std::uint32_t p_;
  int N_;
  std::uint64_t size_;
  std::vector<std::uint64_t> pow_;         // p^i
  std::vector<std::uint64_t> block_start_; // first index of points led by coordinate i
};

/// Subset of P^N(F_p) as a bitset over the canonical enumeration.
class PointSet {
 public:
  explicit PointSet(ProjectiveSpace space);

  const ProjectiveSpace& space() const noexcept { return space_; }
  void insert(std::uint64_t idx) { words_[idx >> 6] |= 1ULL << (idx & 63); }
  void insert(std::span<const std::uint32_t> z) { insert(space_.index(z)); }
  bool contains(std::uint64_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1ULL; }
  bool contains(std::span<const std::uint32_t> z) const { return contains(space_.index(z)); }

  std::uint64_t count() const;
  bool empty() const { return count() == 0; }
  double coverage() const { return double(count()) / double(space_.size()); }
  std::vector<std::uint64_t> members() const;

  PointSet& operator|=(const PointSet& o);
  bool is_subset_of(const PointSet& o) const;
  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.space_ == b.space_ && a.words_ == b.words_;
  }

 private:
  ProjectiveSpace space_;
  std::vector<std::uint64_t> words_;
};

/// Inserts every F_p point of the line through x and y (x != y projectively).
void insert_line(PointSet& set, std::span<const std::uint32_t> x, std::span<const std::uint32_t> y);

}  // namespace symdiff
