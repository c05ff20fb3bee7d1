#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace symdiff {

/// Whether z1^i1 z2^i2 dz1^m1 dz2^m2 on the double-cover germ descends to the
/// resolution: vanishing order i1 + i2 >= m1 + m2, and invariance under the
/// involution (total degree i1 + i2 + m1 + m2 even). Negative arguments throw.
bool descends_to_resolution(int i1, int i2, int m1, int m2);

/// #{(m1, m2, m3) >= 0 : m1 + m2 + m3 = m, c*m1 >= m2 + m3}, and 0 for odd m.
/// c must be 1 or 3 (std::invalid_argument otherwise).
std::uint64_t count_invariant_monomials(int m, int c);

/// The same count by walking every triple; the reference for the closed form.
std::uint64_t count_invariant_monomials_brute(int m, int c);

struct JumpRow {
  int m = 0;
  std::uint64_t count_c1 = 0;
  std::uint64_t count_c3 = 0;
  std::int64_t difference = 0;  // count_c3 - count_c1
};

struct JumpTable {
  std::vector<JumpRow> rows;  // even m only, ascending

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Rows for every even 2 <= m <= m_max. Requires m_max >= 2.
JumpTable jump_table(int m_max);

}  // namespace symdiff
