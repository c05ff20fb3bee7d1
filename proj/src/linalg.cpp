#include "symdiff/linalg.hpp"

#include <algorithm>
#include <string>

namespace symdiff {

namespace {

void check_length(std::size_t got, std::size_t want) {
  if (got != want)
    throw DimensionMismatch("vector of length " + std::to_string(got) + ", expected " + std::to_string(want));
}

}  // namespace

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  check_length(b.size(), a.size());
  if (a.empty()) return Scalar();
  Scalar acc = Scalar::zero(a[0].field());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc;
}

std::size_t ConstraintMatrix::append_row(std::span<const Scalar> row) {
  check_length(row.size(), ncols_);
  ++rows_seen_;
  Vec r(row.begin(), row.end());
  for (const auto& x : r)
    if (!(x.field() == field_)) throw FieldMismatch("row entry from another field");
  for (std::size_t i = 0; i < core_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c.is_zero()) continue;
    const Vec& piv = core_[i];
    for (std::size_t j = pivots_[i]; j < ncols_; ++j)
      if (!piv[j].is_zero()) r[j] -= c * piv[j];
  }
  auto lead = std::find_if(r.begin(), r.end(), [](const Scalar& x) { return !x.is_zero(); });
  if (lead == r.end()) return rank();
  const std::size_t col = static_cast<std::size_t>(lead - r.begin());
  const Scalar inv = lead->inverse();
  for (std::size_t j = col; j < ncols_; ++j)
    if (!r[j].is_zero()) r[j] *= inv;
  // keep the core fully reduced
  for (auto& other : core_) {
    const Scalar c = other[col];
    if (c.is_zero()) continue;
    for (std::size_t j = col; j < ncols_; ++j)
      if (!r[j].is_zero()) other[j] -= c * r[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), col);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, col);
  core_.insert(core_.begin() + idx, std::move(r));
  return rank();
}

std::size_t ConstraintMatrix::append_rows(std::vector<Vec> rows) {
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) append_row(r);
  return rank();
}

bool ConstraintMatrix::annihilates(std::span<const Scalar> v) const {
  check_length(v.size(), ncols_);
  return std::all_of(core_.begin(), core_.end(), [&](const Vec& r) { return dot(r, v).is_zero(); });
}

SubspaceBasis kernel_basis(const ConstraintMatrix& m) {
  const Field f = m.field();
  SubspaceBasis out{f, m.ncols(), {}};
  const auto& piv = m.pivots();
  const auto& rows = m.echelon_rows();
  std::vector<bool> is_pivot(m.ncols(), false);
  for (auto c : piv) is_pivot[c] = true;
  for (std::size_t free = 0; free < m.ncols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.ncols(), Scalar::zero(f));
    v[free] = Scalar::one(f);
    for (std::size_t i = 0; i < rows.size(); ++i) v[piv[i]] = -rows[i][free];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

bool SubspaceBasis::contains(std::span<const Scalar> v) const {
  check_length(v.size(), ncols);
  ConstraintMatrix m(field, ncols);
  for (const auto& b : vectors) m.append_row(b);
  const auto r = m.rank();
  return m.append_row(v) == r;
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ncols != b.ncols) throw DimensionMismatch("intersect: subspaces of different ambient dimension");
  if (!(a.field == b.field)) throw FieldMismatch("intersect: subspaces over different fields");
  // A ∩ B = (A^perp + B^perp)^perp for the standard bilinear form
  auto annihilator = [](const SubspaceBasis& s) {
    ConstraintMatrix m(s.field, s.ncols);
    for (const auto& v : s.vectors) m.append_row(v);
    return kernel_basis(m);
  };
  ConstraintMatrix both(a.field, a.ncols);
  for (const auto& v : annihilator(a).vectors) both.append_row(v);
  for (const auto& v : annihilator(b).vectors) both.append_row(v);
  return kernel_basis(both);
}

std::size_t rank_of(Field f, std::size_t ncols, std::span<const Vec> rows) {
  ConstraintMatrix m(f, ncols);
  for (const auto& r : rows) m.append_row(r);
  return m.rank();
}

}  // namespace symdiff
