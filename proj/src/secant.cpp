#include "symdiff/secant.hpp"

#include <algorithm>

namespace symdiff {

namespace {

LineClassification classify_forms(const std::vector<MultiPoly>& forms, std::span<const Scalar> a,
                                  std::span<const Scalar> b) {
  std::vector<BinaryForm> restricted;
  restricted.reserve(forms.size());
  for (const auto& f : forms) restricted.push_back(restrict_to_line(f, a, b));

  LineClassification c;
  c.profile = common_profile(restricted);
  if (c.profile.contained) {
    c.contained = c.is_secant = c.is_trisecant = c.is_t_trisecant = c.is_tangent = true;
    c.total = 0;
    c.multiplicity_at_a = -1;
    return c;
  }
  c.total = c.profile.total();
  c.is_secant = c.total >= 2;
  c.is_trisecant = c.total >= 3;
  c.is_tangent = std::any_of(c.profile.factors.begin(), c.profile.factors.end(),
                             [](const auto& f) { return f.first >= 2; });
  c.is_t_trisecant = c.is_trisecant && c.is_tangent;

  // a sits at t = 0, so its multiplicity is the smallest t-adic valuation
  int v = -1;
  for (const auto& bf : restricted) {
    if (bf.is_zero()) continue;
    int j = 0;
    while (bf.coeffs[j].is_zero()) ++j;
    v = v < 0 ? j : std::min(v, j);
  }
  c.multiplicity_at_a = std::max(v, 0);
  return c;
}

// F_{p^2} = F_p[sqrt r] for a fixed non-residue r.
struct Fp2 {
  std::uint32_t a = 0, b = 0;
  std::uint32_t p = 0, r = 0;

  Fp2 operator+(const Fp2& o) const { return {std::uint32_t((a + std::uint64_t(o.a)) % p), std::uint32_t((b + std::uint64_t(o.b)) % p), p, r}; }
  Fp2 operator*(const Fp2& o) const {
    const std::uint64_t re = (std::uint64_t(a) * o.a + std::uint64_t(b) * o.b % p * r) % p;
    const std::uint64_t im = (std::uint64_t(a) * o.b + std::uint64_t(b) * o.a) % p;
    return {std::uint32_t(re), std::uint32_t(im), p, r};
  }
  Fp2 operator-() const { return {a ? p - a : 0, b ? p - b : 0, p, r}; }
  bool is_zero() const { return a == 0 && b == 0; }
  Fp2 inverse() const {
    // (a - b sqrt r) / (a^2 - r b^2)
    const std::uint64_t norm = (std::uint64_t(a) * a + std::uint64_t(p - (std::uint64_t(b) * b % p * r % p))) % p;
    const std::uint64_t ni = mod_inverse(norm, p);
    return {std::uint32_t(a * ni % p), std::uint32_t((b ? p - b : 0) * ni % p), p, r};
  }
};

std::uint32_t non_residue(std::uint32_t p) {
  for (std::uint32_t r = 2; r < p; ++r)
    if (mod_pow(r, (p - 1) / 2, p) == p - 1) return r;
  throw std::invalid_argument("no quadratic non-residue mod " + std::to_string(p));
}

int rank_fp2(std::vector<std::vector<Fp2>> rows) {
  int rank = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Fp2 inv = rows[rank][c].inverse();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == rank || rows[i][c].is_zero()) continue;
      const Fp2 f = -(rows[i][c] * inv);
      for (std::size_t k = c; k < ncols; ++k) rows[i][k] = rows[i][k] + f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<std::uint32_t>> smooth_points(const PrimeModel& pm, const PointSet& X) {
  std::vector<std::vector<std::uint32_t>> out;
  for (auto idx : X.members()) {
    auto x = X.space().point(idx);
    if (pm.is_smooth(x)) out.push_back(std::move(x));
  }
  return out;
}

bool kills(const std::vector<std::vector<std::uint32_t>>& jac, std::span<const std::uint32_t> z, std::uint32_t p) {
  for (const auto& row : jac) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i) acc += std::uint64_t(row[i]) * z[i] % p;
    if (acc % p) return false;
  }
  return true;
}

Vec to_vec(std::uint32_t p, std::span<const std::uint32_t> r) {
  const Field F = Field::prime(p);
  Vec v;
  for (auto x : r) v.push_back(Scalar::from_residue(F, x));
  return v;
}

}  // namespace

LineClassification classify_line(const BoundModel& bm, const ProjPoint& a, const ProjPoint& b) {
  return classify_forms(bm.forms(), a.coords(), b.coords());
}

LineClassification classify_line(const PrimeModel& pm, std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b) {
  const Vec va = to_vec(pm.prime(), a), vb = to_vec(pm.prime(), b);
  return classify_forms(pm.polys(), va, vb);
}

PointSet cone_of_point(const PrimeModel& pm, std::span<const std::uint32_t> x, const PointSet& target) {
  if (!pm.is_smooth(x)) throw SingularPointError("cone vertex is not a smooth point of X");
  const auto jac = pm.jacobian(x);
  const auto& space = target.space();
  const std::uint64_t xi = space.index(x);
  PointSet out(space);
  for (auto idx : target.members()) {
    if (idx == xi) continue;
    const auto y = space.point(idx);
    if (kills(jac, y, pm.prime())) insert_line(out, x, y);
  }
  return out;
}

std::vector<ConeIterationState> iterate_cone_variety(const VarietyModel& m, std::uint32_t p, int kmax,
                                                     std::uint64_t budget) {
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  const PrimeModel pm(m, p);
  PointSet current = enumerate_points(m, p, budget);
  const auto smooth = smooth_points(pm, current);
  std::vector<ConeIterationState> states;
  states.push_back({0, current, current.coverage()});
  for (int k = 1; k <= kmax; ++k) {
    PointSet next(current.space());
    for (const auto& x : smooth) next |= cone_of_point(pm, x, current);
    const bool fixpoint = next == current;
    current = std::move(next);
    states.push_back({k, current, current.coverage()});
    if (fixpoint) break;
  }
  return states;
}

std::vector<Exponent> quadric_monomials(int N) { return monomials_of_degree(N + 1, 2); }

SubspaceBasis quadric_envelope(const VarietyModel& m, std::uint32_t p, std::uint64_t budget) {
  const Field F = Field::prime(p);
  const PointSet X = enumerate_points(m, p, budget);
  const auto monos = quadric_monomials(m.ambient);
  ConstraintMatrix M(F, monos.size());
  for (auto idx : X.members()) {
    const auto z = X.space().point(idx);
    Vec row;
    row.reserve(monos.size());
    for (const auto& e : monos) {
      std::uint64_t v = 1;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) v = v * z[i] % p;
      row.push_back(Scalar::from_residue(F, static_cast<std::uint32_t>(v)));
    }
    M.append_row(row);
    if (M.rank() == monos.size()) break;
  }
  return kernel_basis(M);
}

// ------------------------------------------------------------ SecantOracle

SecantOracle::SecantOracle(const VarietyModel& m, std::uint32_t p, std::uint64_t budget)
    : pm_(m, p), points_(enumerate_points(m, p, budget)), secant_(points_) {
  smooth_ = smooth_points(pm_, points_);
  const auto members = points_.members();
  std::vector<std::vector<std::uint32_t>> pts;
  pts.reserve(members.size());
  for (auto idx : members) pts.push_back(points_.space().point(idx));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) insert_line(secant_, pts[i], pts[j]);
  if (m.parametrization) build_extension_data(m, budget / 4);
}

void SecantOracle::build_extension_data(const VarietyModel& m, std::uint64_t budget) {
  const std::uint32_t p = pm_.prime();
  const std::size_t s = m.source_vars();
  if (s == 0) return;
  const std::uint64_t q = std::uint64_t(p) * p;
  std::uint64_t total = 0, block = 1;
  for (std::size_t i = 0; i < s; ++i) {
    total += block;
    block *= q;
    if (total > budget) return;  // too many source points: leave the extension scope unavailable
  }
  const std::uint32_t r = non_residue(p);
  const Field F = Field::prime(p);
  std::vector<ModForm> param;
  for (const auto& g : *m.parametrization) param.emplace_back(g.reduce(F));
  const auto embed = [&](std::uint32_t c) { return Fp2{c % p, 0, p, r}; };

  std::vector<Fp2> src(s), img(m.ambient + 1);
  for (std::size_t lead = 0; lead < s; ++lead) {
    const std::size_t free = s - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= q;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::fill(src.begin(), src.end(), Fp2{0, 0, p, r});
      src[lead] = Fp2{1, 0, p, r};
      std::uint64_t rest = c;
      for (std::size_t i = s; i-- > lead + 1;) {
        const std::uint64_t e = rest % q;
        rest /= q;
        src[i] = Fp2{std::uint32_t(e % p), std::uint32_t(e / p), p, r};
      }
      bool zero = true;
      for (std::size_t i = 0; i < param.size(); ++i) {
        img[i] = param[i].eval_in<Fp2>(src, embed);
        zero = zero && img[i].is_zero();
      }
      if (zero) continue;
      std::vector<std::vector<Fp2>> jac;
      for (const auto& g : pm_.gradients()) {
        std::vector<Fp2> row;
        for (const auto& d : g) row.push_back(d.eval_in<Fp2>(img, embed));
        jac.push_back(std::move(row));
      }
      if (rank_fp2(jac) != pm_.codim()) continue;
      std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> packed;
      for (const auto& row : jac) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pr;
        for (const auto& e : row) pr.emplace_back(e.a, e.b);
        packed.push_back(std::move(pr));
      }
      ext_jacobians_.push_back(std::move(packed));
    }
  }
}

bool SecantOracle::secant_membership(std::span<const std::uint32_t> z) const { return secant_.contains(z); }

bool SecantOracle::tangent_membership(std::span<const std::uint32_t> z, TangentScope scope) const {
  const std::uint32_t p = pm_.prime();
  for (const auto& x : smooth_)
    if (pm_.tangent_contains(x, z)) return true;
  if (scope == TangentScope::rational) return false;
  if (!has_extension_data())
    throw std::logic_error("no F_{p^2} tangent data: the model needs a parametrization of manageable size");
  for (const auto& jac : ext_jacobians_) {
    bool ok = true;
    for (const auto& row : jac) {
      std::uint64_t re = 0, im = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        re += std::uint64_t(row[i].first) * z[i] % p;
        im += std::uint64_t(row[i].second) * z[i] % p;
      }
      if (re % p || im % p) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool secant_membership(const VarietyModel& m, const ProjPoint& z, std::uint32_t p) {
  return SecantOracle(m, p).secant_membership(z.residues());
}

bool tangent_membership(const VarietyModel& m, const ProjPoint& z, std::uint32_t p, TangentScope scope) {
  return SecantOracle(m, p).tangent_membership(z.residues(), scope);
}

nlohmann::json ZakReport::to_json() const {
  return {{"model", model},
          {"prime", prime},
          {"trials", trials},
          {"seed", seed},
          {"secant_points_off_x", secant_points_off_x},
          {"rational_failures", rational_failures},
          {"extension_failures", extension_failures < 0 ? nlohmann::json(nullptr) : nlohmann::json(extension_failures)}};
}

ZakReport zak_check(const VarietyModel& m, std::uint32_t p, int trials, std::uint64_t seed, std::uint64_t budget) {
  if (trials < 0) throw std::invalid_argument("trials must be non-negative");
  const SecantOracle oracle(m, p, budget);
  ZakReport rep;
  rep.model = m.name;
  rep.prime = p;
  rep.seed = seed;
  std::vector<std::uint64_t> off;
  for (auto idx : oracle.secant_set().members())
    if (!oracle.points().contains(idx)) off.push_back(idx);
  rep.secant_points_off_x = off.size();
  if (oracle.has_extension_data()) rep.extension_failures = 0;
  if (off.empty()) return rep;

  Rng rng(seed * 0x9E3779B97F4A7C15ULL ^ p);
  const auto& space = oracle.points().space();
  for (int t = 0; t < trials; ++t) {
    const auto z = space.point(off[rng() % off.size()]);
    ++rep.trials;
    if (oracle.tangent_membership(z, TangentScope::rational)) continue;
    ++rep.rational_failures;
    if (oracle.has_extension_data() && !oracle.tangent_membership(z, TangentScope::quadratic_extension))
      ++rep.extension_failures;
  }
  return rep;
}

nlohmann::json Prop18Report::to_json() const {
  return {{"model", model},
          {"prime", prime},
          {"envelope_dimension", envelope_dimension},
          {"sizes", sizes},
          {"violations", violations}};
}

Prop18Report prop18_check(const VarietyModel& m, std::uint32_t p, int kmax, std::uint64_t budget) {
  Prop18Report rep;
  rep.model = m.name;
  rep.prime = p;
  const SubspaceBasis env = quadric_envelope(m, p, budget);
  rep.envelope_dimension = env.dimension();
  const auto monos = quadric_monomials(m.ambient);
  const auto states = iterate_cone_variety(m, p, kmax, budget);
  for (const auto& st : states) {
    rep.sizes.push_back(st.set.count());
    for (auto idx : st.set.members()) {
      const auto z = st.set.space().point(idx);
      for (const auto& q : env.vectors) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < monos.size(); ++c) {
          std::uint64_t v = q[c].residue();
          for (std::size_t i = 0; i < monos[c].size(); ++i)
            for (std::uint32_t k = 0; k < monos[c][i]; ++k) v = v * z[i] % p;
          acc += v;
        }
        if (acc % p) {
          ++rep.violations;
          break;
        }
      }
    }
  }
  return rep;
}

PointSet trisecant_variety(const VarietyModel& m, std::uint32_t p, std::uint64_t budget) {
  const PrimeModel pm(m, p);
  const PointSet X = enumerate_points(m, p, budget);
  std::vector<std::vector<std::uint32_t>> pts;
  for (auto idx : X.members()) pts.push_back(X.space().point(idx));
  PointSet out(X.space());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto c = classify_line(pm, pts[i], pts[j]);
      if (c.contained || c.is_trisecant) insert_line(out, pts[i], pts[j]);
    }
  return out;
}

nlohmann::json TrisecantEqualityReport::to_json() const {
  return {{"model", model}, {"prime", prime}, {"cone_size", cone_size}, {"trisecant_size", trisecant_size}, {"equal", equal}};
}

TrisecantEqualityReport trisecant_equality(const VarietyModel& m, std::uint32_t p, std::uint64_t budget) {
  TrisecantEqualityReport rep;
  rep.model = m.name;
  rep.prime = p;
  const auto states = iterate_cone_variety(m, p, 1, budget);
  const PointSet& cone = states.back().set;
  const PointSet tr = trisecant_variety(m, p, budget);
  rep.cone_size = cone.count();
  rep.trisecant_size = tr.count();
  rep.equal = cone == tr;
  return rep;
}

nlohmann::json cone_iteration_json(const VarietyModel& m, std::uint32_t p,
                                   const std::vector<ConeIterationState>& states, double threshold) {
  nlohmann::json j;
  j["model"] = m.name;
  j["prime"] = p;
  j["space_size"] = states.empty() ? 0 : states.front().set.space().size();
  j["threshold"] = threshold;
  j["states"] = nlohmann::json::array();
  std::optional<int> first_reach;
  for (const auto& s : states) {
    j["states"].push_back({{"k", s.k}, {"size", s.set.count()}, {"coverage", s.coverage}});
    if (!first_reach && s.coverage >= threshold) first_reach = s.k;
  }
  j["fixpoint"] = states.size() >= 2 && states.back().set == states[states.size() - 2].set;
  j["final_coverage"] = states.empty() ? 0.0 : states.back().coverage;
  j["reaches_threshold_at"] = first_reach ? nlohmann::json(*first_reach) : nlohmann::json(nullptr);
  return j;
}

}  // namespace symdiff
