#include "symdiff/sections.hpp"

#include <algorithm>
#include <map>

namespace symdiff {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// u-monomial -> row over the candidate columns, for the restriction of every
// candidate to the affine tangent space at x.
std::map<Exponent, Vec> restriction_table(const BoundModel& bm, const ProjPoint& x, const CandidateBasis& basis) {
  const TangentFrame frame = tangent_frame(bm, x);
  std::map<Exponent, Vec> table;
  if (basis.ncols() == 0) return table;

  const Field F = bm.field();
  const std::size_t nu = frame.vectors.size();
  const std::size_t n1 = basis.N + 1;

  // l_i(u) = sum_j frame_j[i] * u_j is the i-th coordinate of the tangent vector
  std::vector<MultiPoly> coord(n1, MultiPoly(F, nu));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < nu; ++j) {
      Exponent e(nu, 0);
      e[j] = 1;
      coord[i].add_term(e, frame.vectors[j][i]);
    }
  std::vector<std::vector<MultiPoly>> powers(n1);
  auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(MultiPoly::constant(F, nu, Scalar::one(F)));
    while (pw.size() <= e) pw.push_back(pw.back() * coord[i]);
    return pw[e];
  };

  std::map<Exponent, MultiPoly> by_alpha;
  for (std::size_t c = 0; c < basis.ncols(); ++c) {
    const Exponent& alpha = basis.w_exps[c];
    auto it = by_alpha.find(alpha);
    if (it == by_alpha.end()) {
      MultiPoly prod = MultiPoly::constant(F, nu, Scalar::one(F));
      for (std::size_t i = 0; i < n1; ++i)
        if (alpha[i]) prod = prod * power(i, alpha[i]);
      it = by_alpha.emplace(alpha, std::move(prod)).first;
    }
    Scalar zb = Scalar::one(F);
    const Exponent& beta = basis.z_exps[c];
    for (std::size_t i = 0; i < n1; ++i)
      if (beta[i]) zb *= x[i].pow(beta[i]);
    if (zb.is_zero()) continue;
    for (const auto& [mu, coef] : it->second.terms()) {
      auto [row, inserted] = table.try_emplace(mu);
      if (inserted) row->second.assign(basis.ncols(), Scalar::zero(F));
      row->second[c] = coef * zb;
    }
  }
  return table;
}

ConstraintRows rows_from(std::map<Exponent, Vec>&& table, bool only_vertex) {
  ConstraintRows rows;
  for (auto& [mu, row] : table) {
    if (only_vertex && mu[0] == 0) continue;
    if (std::all_of(row.begin(), row.end(), [](const Scalar& s) { return s.is_zero(); })) continue;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

long CandidateBasis::column_of(const Exponent& alpha, const Exponent& beta) const {
  for (std::size_t c = 0; c < ncols(); ++c)
    if (w_exps[c] == alpha && z_exps[c] == beta) return static_cast<long>(c);
  return -1;
}

std::uint64_t candidate_count(int N, int m, int k) {
  if (k < m || m < 0) return 0;
  return binomial(N + m, m) * binomial(N + k - m, N);
}

CandidateBasis candidate_basis(int N, int m, int k) {
  if (N < 1 || m < 0) throw std::invalid_argument("candidate_basis needs N >= 1 and m >= 0");
  CandidateBasis b{N, m, k, {}, {}};
  if (k < m) return b;
  const auto alphas = monomials_of_degree(N + 1, m);
  const auto betas = monomials_of_degree(N + 1, k - m);
  for (const auto& a : alphas)
    for (const auto& be : betas) {
      b.w_exps.push_back(a);
      b.z_exps.push_back(be);
    }
  return b;
}

ConstraintRows cone_constraints_at(const BoundModel& bm, const ProjPoint& x, const CandidateBasis& basis) {
  return rows_from(restriction_table(bm, x, basis), true);
}

ConstraintRows vanishing_constraints_at(const BoundModel& bm, const ProjPoint& x, const CandidateBasis& basis) {
  return rows_from(restriction_table(bm, x, basis), false);
}

SymTensor quadric_witness(const MultiPoly& Q, int m) {
  if (m < 0 || m % 2 != 0) throw std::invalid_argument("quadric_witness needs an even order m");
  if (Q.degree() != 2 || !Q.is_homogeneous()) throw std::invalid_argument("quadric_witness needs a quadratic form");
  const int N = static_cast<int>(Q.nvars()) - 1;
  SymTensor t{candidate_basis(N, m, m), {}};
  t.coeffs.assign(t.basis.ncols(), Scalar::zero(Q.field()));
  const Exponent no_z(N + 1, 0);
  const MultiPoly power = Q.pow(static_cast<std::uint32_t>(m / 2));
  for (const auto& [e, c] : power.terms())
    t.coeffs[t.basis.column_of(e, no_z)] = c;
  return t;
}

bool satisfies(const ConstraintRows& rows, const Vec& v) {
  return std::all_of(rows.begin(), rows.end(), [&](const Vec& r) { return dot(r, v).is_zero(); });
}

std::vector<std::uint64_t> dimension_primes(const VarietyModel& model, int m, const EstimateConfig& cfg) {
  std::vector<std::uint64_t> primes = cfg.primes;
  if (primes.empty()) {
    if (cfg.nprimes < 1) throw std::invalid_argument("need at least one prime");
    std::uint64_t p = is_prime(cfg.first_prime) ? cfg.first_prime : next_prime(cfg.first_prime);
    for (int i = 0; i < cfg.nprimes; ++i) {
      primes.push_back(p);
      p = next_prime(p);
    }
  }
  const std::uint64_t bound = std::max<std::uint64_t>(model.max_degree(), 2ULL * m);
  for (auto p : primes) {
    Field::prime(p);
    if (p <= bound)
      throw std::invalid_argument("prime " + std::to_string(p) + " is not admissible: need p > " + std::to_string(bound));
  }
  return primes;
}

std::pair<std::size_t, std::size_t> kernel_dimensions_at(const BoundModel& bm, int m, int k,
                                                         const std::vector<ProjPoint>& points) {
  const CandidateBasis basis = candidate_basis(bm.model().ambient, m, k);
  ConstraintMatrix k1(bm.field(), basis.ncols()), k0(bm.field(), basis.ncols());
  for (const auto& x : points) {
    auto table = restriction_table(bm, x, basis);
    for (const auto& [mu, row] : table) {
      if (mu[0] > 0) k1.append_row(row);
      k0.append_row(row);
    }
  }
  return {k1.kernel_dimension(), k0.kernel_dimension()};
}

DimensionReport estimate_dimension(const VarietyModel& model, int m, int k, const EstimateConfig& cfg) {
  DimensionReport rep;
  rep.model = model.name;
  rep.m = m;
  rep.k = k;
  rep.seed = cfg.seed;
  rep.in_range = model.in_complete_range();
  const CandidateBasis basis = candidate_basis(model.ambient, m, k);
  rep.ncols = basis.ncols();
  if (basis.ncols() == 0) {
    rep.status = "empty-basis";
    rep.dimension = 0;
    return rep;
  }
  if (cfg.batch_size < 1 || cfg.window < 1 || cfg.max_batches < 1)
    throw std::invalid_argument("batch size, window and batch budget must be positive");

  for (auto p : dimension_primes(model, m, cfg)) {
    const Field F = Field::prime(p);
    const BoundModel bm(model, F);
    Rng rng(cfg.seed * 0x9E3779B97F4A7C15ULL ^ p);
    ConstraintMatrix k1(F, basis.ncols()), k0(F, basis.ncols());
    PrimeRun run;
    run.prime = static_cast<std::uint32_t>(p);
    std::size_t prev1 = basis.ncols(), prev0 = basis.ncols();
    int unchanged = 0;
    while (run.batches < cfg.max_batches) {
      ConstraintRows r1, r0;
      for (int i = 0; i < cfg.batch_size; ++i) {
        const ProjPoint x = sample_smooth_point(bm, rng, cfg.sampling);
        for (auto& [mu, row] : restriction_table(bm, x, basis)) {
          if (mu[0] > 0) r1.push_back(row);
          r0.push_back(std::move(row));
        }
      }
      k1.append_rows(std::move(r1));
      k0.append_rows(std::move(r0));
      run.samples += cfg.batch_size;
      ++run.batches;
      const std::size_t d1 = k1.kernel_dimension(), d0 = k0.kernel_dimension();
      run.k1_trace.push_back(d1);
      run.k0_trace.push_back(d0);
      unchanged = (d1 == prev1 && d0 == prev0) ? unchanged + 1 : 0;
      prev1 = d1;
      prev0 = d0;
      if (unchanged >= cfg.window) {
        run.stabilized = true;
        break;
      }
    }
    run.dim_k1 = k1.kernel_dimension();
    run.dim_k0 = k0.kernel_dimension();
    rep.samples += run.samples;
    rep.runs.push_back(std::move(run));
  }

  const auto& first = rep.runs.front();
  rep.dim_k1 = first.dim_k1;
  rep.dim_k0 = first.dim_k0;
  rep.primes_agree = std::all_of(rep.runs.begin(), rep.runs.end(), [&](const PrimeRun& r) {
    return r.dim_k1 == first.dim_k1 && r.dim_k0 == first.dim_k0;
  });
  const bool all_stable =
      std::all_of(rep.runs.begin(), rep.runs.end(), [](const PrimeRun& r) { return r.stabilized; });
  if (all_stable && rep.primes_agree) {
    rep.status = "stable";
    rep.dimension = first.dim_k1 - first.dim_k0;
  } else {
    rep.status = "unstable";
  }
  return rep;
}

nlohmann::json DimensionReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["m"] = m;
  j["k"] = k;
  j["ncols"] = ncols;
  j["seed"] = seed;
  j["in_range"] = in_range;
  j["label"] = in_range ? "H0(X, S^m Omega^1_X(k))" : "polynomial-representable subspace";
  j["status"] = status;
  j["dimension"] = dimension ? nlohmann::json(*dimension) : nlohmann::json(nullptr);
  j["dim_K1"] = dim_k1;
  j["dim_K0"] = dim_k0;
  j["samples"] = samples;
  j["primes_agree"] = primes_agree;
  j["runs"] = nlohmann::json::array();
  for (const auto& r : runs)
    j["runs"].push_back({{"prime", r.prime},
                         {"dim_K1", r.dim_k1},
                         {"dim_K0", r.dim_k0},
                         {"samples", r.samples},
                         {"batches", r.batches},
                         {"stabilized", r.stabilized},
                         {"K1_trace", r.k1_trace},
                         {"K0_trace", r.k0_trace}});
  return j;
}

}  // namespace symdiff
