#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "symdiff/linalg.hpp"
#include "symdiff/poly.hpp"
#include "symdiff/variety.hpp"

namespace symdiff {

/// Monomials z^beta * w^alpha with |alpha| = m, |beta| = k - m, where w_i is
/// the formal symbol for dz_i. Empty when k < m.
struct CandidateBasis {
  int N = 0;
  int m = 0;
  int k = 0;
  std::vector<Exponent> w_exps;  // alpha of column c
  std::vector<Exponent> z_exps;  // beta of column c

  std::size_t ncols() const { return w_exps.size(); }
  /// Column of (alpha, beta), or -1.
  long column_of(const Exponent& alpha, const Exponent& beta) const;
};

/// Columns ordered lexicographically by (alpha, beta).
CandidateBasis candidate_basis(int N, int m, int k);
/// C(N+m, m) * C(N+k-m, N), or 0 for k < m.
std::uint64_t candidate_count(int N, int m, int k);

/// Coefficient vector over a candidate basis.
struct SymTensor {
  CandidateBasis basis;
  Vec coeffs;
};

using ConstraintRows = std::vector<Vec>;

/// Rows of the cone-with-vertex condition at a smooth x: restrict the generic
/// candidate to the affine tangent space, written in the frame
/// u0*x + u1*t1 + ... + un*tn, and require every coefficient of a monomial
/// containing u0 to vanish. Throws SingularPointError.
ConstraintRows cone_constraints_at(const BoundModel& bm, const ProjPoint& x, const CandidateBasis& basis);

/// Rows forcing the restriction to vanish identically (the trivial sections).
ConstraintRows vanishing_constraints_at(const BoundModel& bm, const ProjPoint& x, const CandidateBasis& basis);

/// (Omega_Q)^(m/2) in the (m, m) basis, Omega_Q = Q with z replaced by w.
/// Throws std::invalid_argument for odd m or a non-quadratic Q.
SymTensor quadric_witness(const MultiPoly& Q, int m);

struct EstimateConfig {
  std::uint64_t first_prime = 32003;
  int nprimes = 3;
  /// Explicit primes override first_prime/nprimes when non-empty.
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 1;
  int batch_size = 5;
  int window = 3;
  int max_batches = 40;
  SamplingConfig sampling;
};

struct PrimeRun {
  std::uint32_t prime = 0;
  std::size_t dim_k1 = 0;
  std::size_t dim_k0 = 0;
  int samples = 0;
  int batches = 0;
  bool stabilized = false;
  std::vector<std::size_t> k1_trace;  // kernel dimension after each batch
  std::vector<std::size_t> k0_trace;
};

struct DimensionReport {
  std::string model;
  int m = 0;
  int k = 0;
  std::size_t ncols = 0;
  std::uint64_t seed = 0;
  bool in_range = false;
  /// "stable", "unstable" or "empty-basis"
  std::string status;
  std::optional<std::size_t> dimension;
  std::size_t dim_k1 = 0;
  std::size_t dim_k0 = 0;
  int samples = 0;
  bool primes_agree = true;
  std::vector<PrimeRun> runs;

  bool stable() const { return status != "unstable"; }
  nlohmann::json to_json() const;
};

/// The primes a run will use, checked for admissibility: p > max(form
/// degree, 2m). Throws std::invalid_argument otherwise.
std::vector<std::uint64_t> dimension_primes(const VarietyModel& model, int m, const EstimateConfig& cfg);

/// Estimates dim H^0(X, S^m Omega^1_X (k)) as dim K1 - dim K0, sampling
/// batches of smooth points until both kernels stop changing for `window`
/// batches, once per prime. Disagreement or non-stabilization gives status
/// "unstable" and no dimension.
DimensionReport estimate_dimension(const VarietyModel& model, int m, int k, const EstimateConfig& cfg = {});

/// (dim K1, dim K0) for a fixed point list over one field.
std::pair<std::size_t, std::size_t> kernel_dimensions_at(const BoundModel& bm, int m, int k,
                                                         const std::vector<ProjPoint>& points);

/// True if `v` satisfies every row.
bool satisfies(const ConstraintRows& rows, const Vec& v);

}  // namespace symdiff
