#include "symdiff/plurigenera.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace symdiff {

namespace {

void check_c(int c) {
  if (c != 1 && c != 3) throw std::invalid_argument("count_invariant_monomials: c must be 1 or 3, got " + std::to_string(c));
}

}  // namespace

bool descends_to_resolution(int i1, int i2, int m1, int m2) {
  if (i1 < 0 || i2 < 0 || m1 < 0 || m2 < 0) throw std::invalid_argument("descends_to_resolution: negative exponent");
  return i1 + i2 >= m1 + m2 && (i1 + i2 + m1 + m2) % 2 == 0;
}

std::uint64_t count_invariant_monomials(int m, int c) {
  check_c(c);
  if (m < 0) throw std::invalid_argument("count_invariant_monomials: m must be non-negative");
  if (m % 2) return 0;
  // c*m1 >= m - m1  <=>  m1 >= ceil(m / (c+1)); each m1 leaves m - m1 + 1 splits of the rest
  const int lo = (m + c) / (c + 1);
  std::uint64_t n = 0;
  for (int m1 = lo; m1 <= m; ++m1) n += static_cast<std::uint64_t>(m - m1 + 1);
  return n;
}

std::uint64_t count_invariant_monomials_brute(int m, int c) {
  check_c(c);
  if (m < 0) throw std::invalid_argument("count_invariant_monomials: m must be non-negative");
  std::uint64_t n = 0;
  for (int m1 = 0; m1 <= m; ++m1)
    for (int m2 = 0; m1 + m2 <= m; ++m2) {
      const int m3 = m - m1 - m2;
      if ((m1 + m2 + m3) % 2 == 0 && c * m1 >= m2 + m3) ++n;
    }
  return n;
}

JumpTable jump_table(int m_max) {
  if (m_max < 2) throw std::invalid_argument("jump_table needs m_max >= 2");
  JumpTable t;
  for (int m = 2; m <= m_max; m += 2) {
    JumpRow r{m, count_invariant_monomials(m, 1), count_invariant_monomials(m, 3), 0};
    r.difference = static_cast<std::int64_t>(r.count_c3) - static_cast<std::int64_t>(r.count_c1);
    t.rows.push_back(r);
  }
  return t;
}

nlohmann::json JumpTable::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"m", r.m}, {"count_c1", r.count_c1}, {"count_c3", r.count_c3}, {"difference", r.difference}});
  return {{"rows", rows_json}};
}

std::string JumpTable::to_text() const {
  std::ostringstream os;
  os << std::setw(4) << "m" << std::setw(10) << "c=1" << std::setw(10) << "c=3" << std::setw(8) << "jump" << '\n';
  for (const auto& r : rows)
    os << std::setw(4) << r.m << std::setw(10) << r.count_c1 << std::setw(10) << r.count_c3 << std::setw(8)
       << r.difference << '\n';
  return os.str();
}

}  // namespace symdiff
