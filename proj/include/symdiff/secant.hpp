#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "symdiff/binary_form.hpp"
#include "symdiff/linalg.hpp"
#include "symdiff/point_set.hpp"
#include "symdiff/variety.hpp"

namespace symdiff {

struct LineClassification {
  BinaryFormProfile profile;
  int total = 0;
  bool is_secant = false;
  bool is_trisecant = false;
  bool is_t_trisecant = false;
  bool is_tangent = false;
  bool contained = false;
  /// Multiplicity of the intersection at the first point a (0 if a is not on X).
  int multiplicity_at_a = 0;
};

/// Type of the scheme X ∩ ab from the gcd of the restricted defining forms.
LineClassification classify_line(const BoundModel& bm, const ProjPoint& a, const ProjPoint& b);
/// Same over F_p residues, without building Scalars for the points.
LineClassification classify_line(const PrimeModel& pm, std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b);

/// Points on chords from a smooth x to every y != x in target ∩ T_xX.
/// Throws SingularPointError for singular x.
PointSet cone_of_point(const PrimeModel& pm, std::span<const std::uint32_t> x, const PointSet& target);

struct ConeIterationState {
  int k = 0;
  PointSet set;
  double coverage = 0.0;
};

/// S_0 = X(F_p), S_{k+1} = union over smooth x in X(F_p) of C_x(S_k); stops at
/// kmax or at a fixpoint.
std::vector<ConeIterationState> iterate_cone_variety(const VarietyModel& m, std::uint32_t p, int kmax,
                                                     std::uint64_t budget = 2'000'000);

/// Degree-2 monomials in N+1 variables, the coordinates of quadric_envelope.
std::vector<Exponent> quadric_monomials(int N);
/// Quadrics vanishing on X(F_p): the kernel of the evaluation matrix of all
/// degree-2 monomials at the enumerated points.
SubspaceBasis quadric_envelope(const VarietyModel& m, std::uint32_t p, std::uint64_t budget = 2'000'000);

enum class TangentScope { rational, quadratic_extension };

/// Precomputed X(F_p), its smooth points, the rational secant set, and (for
/// parametrized models) tangent data at the F_{p^2}-points of X.
class SecantOracle {
 public:
  SecantOracle(const VarietyModel& m, std::uint32_t p, std::uint64_t budget = 2'000'000);

  const PrimeModel& prime_model() const noexcept { return pm_; }
  const PointSet& points() const noexcept { return points_; }
  const PointSet& secant_set() const noexcept { return secant_; }

  /// z in X, or on a line through two distinct points of X(F_p).
  bool secant_membership(std::span<const std::uint32_t> z) const;
  /// Some smooth x has z in T_xX; x ranges over X(F_p), or over X(F_{p^2})
  /// for the quadratic_extension scope (parametrized models only).
  bool tangent_membership(std::span<const std::uint32_t> z, TangentScope scope = TangentScope::rational) const;
  bool has_extension_data() const noexcept { return !ext_jacobians_.empty(); }

 private:
  void build_extension_data(const VarietyModel& m, std::uint64_t budget);

  PrimeModel pm_;
  PointSet points_;
  std::vector<std::vector<std::uint32_t>> smooth_;
  PointSet secant_;
  // each entry: Jacobian rows at an F_{p^2} point, entries as (re, im)
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>> ext_jacobians_;
};

bool secant_membership(const VarietyModel& m, const ProjPoint& z, std::uint32_t p);
bool tangent_membership(const VarietyModel& m, const ProjPoint& z, std::uint32_t p,
                        TangentScope scope = TangentScope::rational);

struct ZakReport {
  std::string model;
  std::uint32_t prime = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t secant_points_off_x = 0;
  int rational_failures = 0;
  /// -1 when the model has no parametrization to reach X(F_{p^2}).
  int extension_failures = -1;
  nlohmann::json to_json() const;
};

/// Samples secant points z off X and counts those without a tangent point.
ZakReport zak_check(const VarietyModel& m, std::uint32_t p, int trials, std::uint64_t seed = 1,
                    std::uint64_t budget = 2'000'000);

struct Prop18Report {
  std::string model;
  std::uint32_t prime = 0;
  std::size_t envelope_dimension = 0;
  std::vector<std::uint64_t> sizes;  // |S_k|
  std::uint64_t violations = 0;
  nlohmann::json to_json() const;
};

/// Checks that every iterate S_k lies in every quadric through X(F_p).
Prop18Report prop18_check(const VarietyModel& m, std::uint32_t p, int kmax, std::uint64_t budget = 2'000'000);

/// Union of the F_p lines through two points of X(F_p) meeting X with total
/// length >= 3 (including lines contained in X).
PointSet trisecant_variety(const VarietyModel& m, std::uint32_t p, std::uint64_t budget = 2'000'000);

struct TrisecantEqualityReport {
  std::string model;
  std::uint32_t prime = 0;
  std::uint64_t cone_size = 0;
  std::uint64_t trisecant_size = 0;
  bool equal = false;
  nlohmann::json to_json() const;
};

/// Compares C_X X (first cone iterate) with Tr(X) as point sets.
TrisecantEqualityReport trisecant_equality(const VarietyModel& m, std::uint32_t p, std::uint64_t budget = 2'000'000);

nlohmann::json cone_iteration_json(const VarietyModel& m, std::uint32_t p,
                                   const std::vector<ConeIterationState>& states, double threshold);

}  // namespace symdiff
