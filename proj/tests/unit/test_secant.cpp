#include "doctest.h"

#include <random>
#include <set>

#include "symdiff/secant.hpp"

using namespace symdiff;

namespace {

using Pt = std::vector<std::uint32_t>;

Pt random_point(Rng& rng, std::uint32_t p, std::size_t n) {
  for (;;) {
    Pt z(n);
    for (auto& c : z) c = rng() % p;
    if (std::any_of(z.begin(), z.end(), [](auto c) { return c != 0; })) return z;
  }
}

// The symmetric 3x3 matrix of a Veronese coordinate vector has rank <= 2.
bool veronese_rank_le2(const Pt& z, std::uint32_t p) {
  std::vector<std::vector<std::uint32_t>> m = {{z[0], z[1], z[2]}, {z[1], z[3], z[4]}, {z[2], z[4], z[5]}};
  return rank_mod_p(m, p) <= 2;
}

}  // namespace

TEST_CASE("line classification examples") {
  const Field F = Field::prime(101);
  const BoundModel conic(models::conic(), F);
  const auto sec = classify_line(conic, ProjPoint::from_ints(F, {1, 0, 0}), ProjPoint::from_ints(F, {0, 0, 1}));
  CHECK(sec.profile.line_type() == std::vector<int>{1, 1});
  CHECK(sec.is_secant);
  CHECK_FALSE(sec.is_trisecant);
  CHECK_FALSE(sec.is_tangent);

  const auto tan = classify_line(conic, ProjPoint::from_ints(F, {1, 0, 0}), ProjPoint::from_ints(F, {0, 1, 0}));
  CHECK(tan.profile.line_type() == std::vector<int>{2});
  CHECK(tan.is_tangent);
  CHECK_FALSE(tan.is_t_trisecant);
  CHECK(tan.multiplicity_at_a == 2);

  const BoundModel nodal(models::nodal_cubic(), F);
  const auto tt = classify_line(nodal, ProjPoint::from_ints(F, {1, 0, 0}), ProjPoint::from_ints(F, {0, 1, 2}));
  CHECK(tt.profile.line_type() == std::vector<int>{2, 1});
  CHECK(tt.is_t_trisecant);
  CHECK(tt.multiplicity_at_a == 2);
}

TEST_CASE("lines inside X set every flag") {
  const Field F = Field::prime(11);
  const auto c = classify_line(BoundModel(models::quadric_surface(), F), ProjPoint::from_ints(F, {1, 0, 0, 0}),
                               ProjPoint::from_ints(F, {0, 1, 0, 0}));
  CHECK(c.contained);
  CHECK((c.is_secant && c.is_trisecant && c.is_tangent && c.is_t_trisecant));
}

TEST_CASE("classification is symmetric and the flags are consistent") {
  Rng rng(41);
  for (const char* name : {"fermat-cubic-surface", "quadric-pencil-ci", "nodal-cubic", "twisted-cubic"}) {
    const VarietyModel m = models::builtin(name);
    const PrimeModel pm(m, 31);
    for (int i = 0; i < 150; ++i) {
      const Pt a = random_point(rng, 31, m.ambient + 1), b = random_point(rng, 31, m.ambient + 1);
      const ProjectiveSpace P(31, m.ambient);
      if (P.index(a) == P.index(b)) continue;
      const auto ab = classify_line(pm, a, b), ba = classify_line(pm, b, a);
      CHECK(ab.profile == ba.profile);
      if (ab.is_t_trisecant) CHECK((ab.is_trisecant && ab.is_tangent));
      if (!ab.contained) CHECK(ab.total == ab.profile.total());
      CHECK((ab.multiplicity_at_a > 0) == (ab.contained || pm.vanishes(a)));
    }
  }
}

TEST_CASE("cone of a point") {
  const std::uint32_t p = 11;
  const VarietyModel q = models::quadric_surface();
  const PrimeModel pq(q, p);
  const PointSet X = enumerate_points(q, p);
  for (auto idx : X.members()) {
    const Pt x = X.space().point(idx);
    const PointSet c = cone_of_point(pq, x, X);
    CHECK(c.is_subset_of(X));
    CHECK(c.count() == 2 * p + 1);  // the two rulings through x
  }

  const VarietyModel h = models::hyperplane(3);
  const PointSet H = enumerate_points(h, p);
  CHECK(cone_of_point(PrimeModel(h, p), H.space().point(H.members().front()), H) == H);

  // a smooth conic point's tangent line meets the conic only at x
  const VarietyModel cn = models::conic();
  const PointSet C = enumerate_points(cn, p);
  CHECK(cone_of_point(PrimeModel(cn, p), Pt{1, 0, 0}, C).empty());

  CHECK_THROWS_AS(cone_of_point(PrimeModel(models::nodal_cubic(), p), Pt{1, 0, 0}, C), SingularPointError);
}

TEST_CASE("cone points lie on chords to tangent target points") {
  const std::uint32_t p = 7;
  const VarietyModel m = models::quadric_pencil_ci();
  const PrimeModel pm(m, p);
  const PointSet X = enumerate_points(m, p);
  const auto members = X.members();
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    const Pt x = X.space().point(members[rng() % members.size()]);
    const PointSet c = cone_of_point(pm, x, X);
    for (auto zi : c.members()) {
      const Pt z = X.space().point(zi);
      bool found = false;
      for (auto yi : members) {
        const Pt y = X.space().point(yi);
        if (yi == X.space().index(x) || !pm.tangent_contains(x, y)) continue;
        // z on the line xy: rank of {x, y, z} is 2
        if (rank_mod_p({x, y, z}, p) == 2) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("quadric fixpoint and cubic coverage") {
  for (std::uint32_t p : {11u, 13u}) {
    const auto st = iterate_cone_variety(models::quadric_surface(), p, 3);
    REQUIRE(st.size() == 2);
    CHECK(st[1].set == st[0].set);
  }
  double prev = 0;
  for (std::uint32_t p : {11u, 13u, 17u}) {
    const auto st = iterate_cone_variety(models::fermat(3, 3), p, 1);
    CHECK(st[0].set.is_subset_of(st[1].set));
    CHECK(st[1].coverage >= 0.95);
    CHECK(st[1].coverage >= prev);
    prev = st[1].coverage;
  }
}

TEST_CASE("iterates grow once they contain X") {
  const auto cub = iterate_cone_variety(models::fermat(3, 3), 7, 2);
  REQUIRE(cub[0].set.is_subset_of(cub[1].set));
  for (std::size_t k = 1; k + 1 < cub.size(); ++k) CHECK(cub[k].set.is_subset_of(cub[k + 1].set));

  // On the CI every chord stays inside X = Q1 ∩ Q2, and over F_5 only the
  // points on rational lines of X survive: S_1 is a proper subset and a fixpoint.
  const auto ci = iterate_cone_variety(models::quadric_pencil_ci(), 5, 3);
  CHECK(ci[1].set.is_subset_of(ci[0].set));
  CHECK(ci[1].set.count() < ci[0].set.count());
  CHECK(ci.back().set == ci[1].set);
}

TEST_CASE("nodal plane cubic: S_1 is the union of rational tangent lines at non-flex points") {
  // The tangent line at a smooth point meets the cubic a third time at a
  // rational point, unless x is a flex; so S_1 is exactly that union.
  const std::uint32_t p = 11;
  const VarietyModel m = models::nodal_cubic();
  const PrimeModel pm(m, p);
  const PointSet X = enumerate_points(m, p);
  PointSet oracle(X.space());
  for (auto idx : X.members()) {
    const Pt x = X.space().point(idx);
    if (!pm.is_smooth(x)) continue;
    for (auto yi : X.members()) {
      const Pt y = X.space().point(yi);
      if (yi != idx && pm.tangent_contains(x, y)) insert_line(oracle, x, y);
    }
  }
  const auto st = iterate_cone_variety(m, p, 1);
  CHECK(st[1].set == oracle);
  // rational tangent lines reach only part of P^2(F_11)
  CHECK(st[1].coverage == doctest::Approx(78.0 / 133.0));
}

TEST_CASE("quadric envelopes") {
  CHECK(quadric_envelope(models::quadric_surface(), 11).dimension() == 1);
  CHECK(quadric_envelope(models::fermat(3, 3), 11).dimension() == 0);
  const VarietyModel v = models::veronese_surface();
  const SubspaceBasis env = quadric_envelope(v, 7);
  CHECK(env.dimension() == 6);
  const auto monos = quadric_monomials(5);
  const Field F = Field::prime(7);
  for (const auto& f : v.forms) {
    Vec coeffs(monos.size(), Scalar::zero(F));
    const MultiPoly fp = f.reduce(F);
    for (std::size_t c = 0; c < monos.size(); ++c) coeffs[c] = fp.coefficient(monos[c]);
    CHECK(env.contains(coeffs));
  }
  const PointSet X = enumerate_points(v, 7);
  for (const auto& q : env.vectors) {
    MultiPoly g(F, 6);
    for (std::size_t c = 0; c < monos.size(); ++c) g.add_term(monos[c], q[c]);
    const PrimeModel pg(VarietyModel{"q", 5, 4, {g}, std::nullopt}, 7);
    for (auto idx : X.members()) CHECK(pg.vanishes(X.space().point(idx)));
  }
}

TEST_CASE("Veronese secant membership matches the rank oracle") {
  const std::uint32_t p = 7;
  const SecantOracle oracle(models::veronese_surface(), p);
  const ProjectiveSpace& P = oracle.points().space();
  for (std::uint64_t i = 0; i < P.size(); ++i) {
    const Pt z = P.point(i);
    CHECK(oracle.secant_membership(z) == veronese_rank_le2(z, p));
  }
  for (auto idx : oracle.points().members()) CHECK(oracle.secant_membership(P.point(idx)));
  CHECK(oracle.secant_set().count() == 2850);
}

TEST_CASE("Veronese tangent membership against symmetric-product oracle") {
  // z is tangent at v(a) iff its matrix is a b^T + b a^T for some b
  const std::uint32_t p = 7;
  const ProjectiveSpace P2(p, 2), P5(p, 5);
  std::set<std::uint64_t> tangent;
  for (std::uint64_t ai = 0; ai < P2.size(); ++ai) {
    const Pt a = P2.point(ai);
    for (std::uint32_t code = 1; code < p * p * p; ++code) {
      const Pt b{code % p, code / p % p, code / (p * p)};
      auto s = [&](int i, int j) { return static_cast<std::uint32_t>((a[i] * b[j] + a[j] * b[i]) % p); };
      const Pt z{s(0, 0), s(0, 1), s(0, 2), s(1, 1), s(1, 2), s(2, 2)};
      if (std::any_of(z.begin(), z.end(), [](auto c) { return c != 0; })) tangent.insert(P5.index(z));
    }
  }
  const SecantOracle oracle(models::veronese_surface(), p);
  REQUIRE(oracle.has_extension_data());
  int off = 0, rational = 0;
  for (auto idx : oracle.secant_set().members()) {
    const Pt z = P5.point(idx);
    CHECK(oracle.tangent_membership(z, TangentScope::rational) == (tangent.count(idx) == 1));
    // every rank-2 form splits over F_49
    CHECK(oracle.tangent_membership(z, TangentScope::quadratic_extension));
    if (!oracle.points().contains(idx)) {
      ++off;
      rational += tangent.count(idx) ? 1 : 0;
    }
  }
  CHECK(off == 2793);
  CHECK(off - rational == 1197);
}

TEST_CASE("Zak check") {
  const ZakReport v = zak_check(models::veronese_surface(), 7, 200);
  CHECK(v.trials == 200);
  CHECK(v.extension_failures == 0);
  CHECK(v.rational_failures > 0);
  CHECK(zak_check(models::veronese_surface(), 7, 200).to_json() == v.to_json());

  const ZakReport q = zak_check(models::quadric_surface(), 7, 100);
  CHECK(q.rational_failures == 0);
  const ZakReport h = zak_check(models::hyperplane(3), 7, 100);
  CHECK(h.secant_points_off_x == 0);
  CHECK(h.rational_failures == 0);

  // no parametrization: the extension scope is unavailable
  CHECK(zak_check(models::fermat(3, 3), 5, 20).extension_failures == -1);
}

TEST_CASE("cone iterates lie in every quadric through X") {
  const Prop18Report ci = prop18_check(models::quadric_pencil_ci(), 5, 3);
  CHECK(ci.envelope_dimension == 2);
  CHECK(ci.violations == 0);
  CHECK(prop18_check(models::quadric_surface(), 7, 2).violations == 0);
  const Prop18Report cub = prop18_check(models::fermat(3, 3), 7, 1);
  CHECK(cub.envelope_dimension == 0);
  CHECK(cub.violations == 0);
}

TEST_CASE("trisecant variety equals the first cone iterate on the quadric-pencil CI") {
  const TrisecantEqualityReport r = trisecant_equality(models::quadric_pencil_ci(), 5);
  CHECK(r.equal);
  CHECK(r.cone_size == r.trisecant_size);
}

TEST_CASE("free-function membership wrappers") {
  const Field F = Field::prime(7);
  const VarietyModel v = models::veronese_surface();
  CHECK(secant_membership(v, ProjPoint::from_ints(F, {1, 2, 3, 4, 6, 2}), 7));
  CHECK_FALSE(secant_membership(v, ProjPoint::from_ints(F, {1, 0, 0, 1, 0, 1}), 7));
  CHECK(tangent_membership(v, ProjPoint::from_ints(F, {1, 0, 0, 0, 0, 0}), 7));
}
