#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "symdiff/field.hpp"

namespace symdiff {

using Vec = std::vector<Scalar>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linearly independent list of vectors of common length.
struct SubspaceBasis {
  Field field;
  std::size_t ncols = 0;
  std::vector<Vec> vectors;

  std::size_t dimension() const { return vectors.size(); }
  /// True if v lies in the span.
  bool contains(std::span<const Scalar> v) const;
};

/// Rows accumulated into a reduced row-echelon core. Pivoting is
/// deterministic: rows are reduced against existing pivots, and a new pivot
/// is the first nonzero column of the residue. The core is the unique RREF of
/// the row space, so it does not depend on the order rows arrive in.
class ConstraintMatrix {
 public:
  ConstraintMatrix(Field f, std::size_t ncols) : field_(f), ncols_(ncols) {}

  Field field() const noexcept { return field_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t rank() const noexcept { return core_.size(); }
  std::size_t rows_seen() const noexcept { return rows_seen_; }
  std::size_t kernel_dimension() const noexcept { return ncols_ - core_.size(); }

  /// Appends one row; returns the new rank.
  std::size_t append_row(std::span<const Scalar> row);
  /// Appends a batch after sorting it lexicographically; returns the new rank.
  std::size_t append_rows(std::vector<Vec> rows);

  /// True if v is orthogonal to every accumulated row.
  bool annihilates(std::span<const Scalar> v) const;

  const std::vector<Vec>& echelon_rows() const noexcept { return core_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  Field field_;
  std::size_t ncols_;
  std::size_t rows_seen_ = 0;
  std::vector<Vec> core_;           // RREF rows, ordered by pivot column
  std::vector<std::size_t> pivots_; // pivot column of each core row
};

/// Basis of {v : M v = 0}; dimension ncols - rank.
SubspaceBasis kernel_basis(const ConstraintMatrix& m);
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);
/// Rank of a list of equal-length vectors.
std::size_t rank_of(Field f, std::size_t ncols, std::span<const Vec> rows);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);

}  // namespace symdiff
