#include "doctest.h"

#include <algorithm>

#include "symdiff/sections.hpp"

using namespace symdiff;

namespace {

std::vector<ProjPoint> sample(const BoundModel& bm, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ProjPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back(sample_smooth_point(bm, rng));
  return pts;
}

// Coefficient vector of P = F(z) * w^alpha in the (m, m + deg F) basis.
SymTensor times_form(const MultiPoly& F, const Exponent& alpha, int m) {
  const int N = static_cast<int>(F.nvars()) - 1;
  SymTensor t{candidate_basis(N, m, m + F.degree()), {}};
  t.coeffs.assign(t.basis.ncols(), Scalar::zero(F.field()));
  for (const auto& [e, c] : F.terms()) t.coeffs[t.basis.column_of(alpha, e)] = c;
  return t;
}

}  // namespace

TEST_CASE("candidate basis sizes") {
  CHECK(candidate_basis(3, 2, 2).ncols() == 10);
  CHECK(candidate_basis(3, 2, 3).ncols() == 40);
  CHECK(candidate_basis(3, 3, 2).ncols() == 0);
  for (int N = 1; N <= 5; ++N)
    for (int m = 0; m <= 3; ++m)
      for (int k = 0; k <= 5; ++k) CHECK(candidate_basis(N, m, k).ncols() == candidate_count(N, m, k));
  const CandidateBasis b = candidate_basis(3, 2, 3);
  for (std::size_t c = 1; c < b.ncols(); ++c)
    CHECK(std::tie(b.w_exps[c - 1], b.z_exps[c - 1]) < std::tie(b.w_exps[c], b.z_exps[c]));
}

TEST_CASE("quadric witness examples") {
  const MultiPoly Q = parse_poly("z0*z3 - z1*z2", 4);
  const SymTensor w = quadric_witness(Q, 2);
  const Exponent none(4, 0);
  CHECK(w.coeffs[w.basis.column_of({1, 0, 0, 1}, none)] == Scalar(Field::rational(), 1));
  CHECK(w.coeffs[w.basis.column_of({0, 1, 1, 0}, none)] == Scalar(Field::rational(), -1));
  CHECK(std::count_if(w.coeffs.begin(), w.coeffs.end(), [](const Scalar& s) { return !s.is_zero(); }) == 2);

  const SymTensor sq = quadric_witness(parse_poly("z0^2", 4), 2);
  CHECK(sq.coeffs[sq.basis.column_of({2, 0, 0, 0}, none)].is_one());

  const SymTensor w4 = quadric_witness(Q, 4);
  CHECK(w4.coeffs[w4.basis.column_of({1, 1, 1, 1}, none)] == Scalar(Field::rational(), -2));
  CHECK(w4.coeffs[w4.basis.column_of({2, 0, 0, 2}, none)].is_one());

  CHECK_THROWS_AS(quadric_witness(Q, 3), std::invalid_argument);
  CHECK_THROWS_AS(quadric_witness(parse_poly("z0^3", 4), 2), std::invalid_argument);
}

TEST_CASE("quadric witness satisfies every cone row, over F_p and Q") {
  const MultiPoly Q = parse_poly("z0*z3 - z1*z2", 4);
  for (Field F : {Field::prime(32003), Field::rational()}) {
    const BoundModel bm(models::quadric_surface(), F);
    for (int m : {2, 4}) {
      const SymTensor w = quadric_witness(Q.reduce(F), m);
      for (const auto& x : sample(bm, 20, 3)) CHECK(satisfies(cone_constraints_at(bm, x, w.basis), w.coeffs));
    }
  }
}

TEST_CASE("the quadric witness is not a trivial section") {
  const Field F = Field::prime(101);
  const BoundModel bm(models::quadric_surface(), F);
  const SymTensor w = quadric_witness(parse_poly("z0*z3 - z1*z2", 4, F), 2);
  CHECK_FALSE(satisfies(vanishing_constraints_at(bm, ProjPoint::from_ints(F, {1, 0, 0, 0}), w.basis), w.coeffs));
}

TEST_CASE("w0^2 on the hyperplane z0 = 0 is independent of the vertex coordinate") {
  const Field F = Field::prime(101);
  const BoundModel bm(models::hyperplane(3), F);
  const CandidateBasis b = candidate_basis(3, 2, 2);
  Vec v(b.ncols(), Scalar::zero(F));
  v[b.column_of({2, 0, 0, 0}, {0, 0, 0, 0})] = Scalar::one(F);
  for (const auto& x : sample(bm, 10, 4)) CHECK(satisfies(cone_constraints_at(bm, x, b), v));
}

TEST_CASE("forms in the ideal of X give trivial rows") {
  const Field F = Field::prime(101);
  const VarietyModel cubic = models::fermat(3, 3);
  const BoundModel bm(cubic, F);
  const MultiPoly f = cubic.forms[0].reduce(F);
  const auto pts = sample(bm, 10, 6);

  const SymTensor fw = times_form(f, {0, 1, 0, 0}, 1);
  for (const auto& x : pts) CHECK(satisfies(vanishing_constraints_at(bm, x, fw.basis), fw.coeffs));

  // sum_i w_i dF/dz_i, for (m, k) = (1, deg F)
  const CandidateBasis b = candidate_basis(3, 1, 3);
  Vec v(b.ncols(), Scalar::zero(F));
  for (std::size_t i = 0; i < 4; ++i) {
    Exponent alpha(4, 0);
    alpha[i] = 1;
    const MultiPoly df = f.derivative(i);
    for (const auto& [e, c] : df.terms()) v[b.column_of(alpha, e)] += c;
  }
  for (const auto& x : pts) CHECK(satisfies(vanishing_constraints_at(bm, x, b), v));
}

TEST_CASE("cubic surface: fifteen points over F_101 cut (2,2) to zero") {
  const BoundModel bm(models::fermat(3, 3), Field::prime(101));
  const auto [k1, k0] = kernel_dimensions_at(bm, 2, 2, sample(bm, 15, 8));
  CHECK(k1 == 0);
  CHECK(k0 == 0);
}

TEST_CASE("K0 is inside K1 and sample order does not matter") {
  const BoundModel bm(models::quadric_pencil_ci(), Field::prime(32003));
  auto pts = sample(bm, 12, 10);
  const auto d1 = kernel_dimensions_at(bm, 2, 2, pts);
  std::reverse(pts.begin(), pts.end());
  std::rotate(pts.begin(), pts.begin() + 5, pts.end());
  CHECK(kernel_dimensions_at(bm, 2, 2, pts) == d1);
  CHECK(d1.second <= d1.first);
}

TEST_CASE("semicontinuity: dimensions over F_p bound those over Q") {
  const Field Q = Field::rational();
  const BoundModel bq(models::quadric_surface(), Q);
  const auto pts = sample(bq, 8, 12);
  for (int mk : {2, 3}) {
    const auto over_q = kernel_dimensions_at(bq, mk, mk, pts);
    for (std::uint64_t p : {7ULL, 11ULL, 32003ULL}) {
      const Field F = Field::prime(p);
      const BoundModel bp(models::quadric_surface(), F);
      std::vector<ProjPoint> red;
      for (const auto& x : pts) {
        Vec v;
        for (const auto& c : x.coords()) v.emplace_back(F, c.rational());
        red.emplace_back(v);
      }
      const auto over_p = kernel_dimensions_at(bp, mk, mk, red);
      CHECK(over_p.first >= over_q.first);
    }
  }
}

TEST_CASE("estimate_dimension: quadric and cubic") {
  const DimensionReport q = estimate_dimension(models::quadric_surface(), 2, 2);
  CHECK(q.status == "stable");
  CHECK(q.dimension == std::optional<std::size_t>(1));
  CHECK(q.runs.size() == 3);
  CHECK(q.primes_agree);
  for (const auto& r : q.runs) {
    CHECK(std::is_sorted(r.k1_trace.rbegin(), r.k1_trace.rend()));
    CHECK(std::is_sorted(r.k0_trace.rbegin(), r.k0_trace.rend()));
  }
  for (int m = 2; m <= 4; ++m) CHECK(estimate_dimension(models::fermat(3, 3), m, m).dimension == std::optional<std::size_t>(0));
}

TEST_CASE("quadric (2,2) is 1 at every admissible prime") {
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 101ULL}) {
    EstimateConfig cfg;
    cfg.primes = {p};
    CHECK(estimate_dimension(models::quadric_surface(), 2, 2, cfg).dimension == std::optional<std::size_t>(1));
  }
}

TEST_CASE("k < m short-circuits to zero with no samples") {
  const DimensionReport r = estimate_dimension(models::fermat(4, 3), 3, 2);
  CHECK(r.status == "empty-basis");
  CHECK(r.dimension == std::optional<std::size_t>(0));
  CHECK(r.samples == 0);
  CHECK(r.ncols == 0);
}

TEST_CASE("inadmissible primes are rejected") {
  EstimateConfig cfg;
  cfg.primes = {3};
  CHECK_THROWS_AS(estimate_dimension(models::fermat(3, 3), 2, 2, cfg), std::invalid_argument);
  cfg.primes = {7};
  CHECK_THROWS_AS(estimate_dimension(models::quadric_surface(), 4, 4, cfg), std::invalid_argument);
}

TEST_CASE("an impossible stabilization window is reported as unstable") {
  EstimateConfig cfg;
  cfg.window = 5;
  cfg.max_batches = 3;
  const DimensionReport r = estimate_dimension(models::quadric_surface(), 2, 2, cfg);
  CHECK(r.status == "unstable");
  CHECK_FALSE(r.dimension.has_value());
}

TEST_CASE("reports are deterministic and carry the range label") {
  const auto a = estimate_dimension(models::quadric_pencil_ci(), 2, 2).to_json().dump();
  const auto b = estimate_dimension(models::quadric_pencil_ci(), 2, 2).to_json().dump();
  CHECK(a == b);
  const auto j = estimate_dimension(models::twisted_cubic(), 2, 2).to_json();
  CHECK(j["in_range"] == false);
  CHECK(j["label"] == "polynomial-representable subspace");
}
