#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "symdiff/field.hpp"
#include "symdiff/linalg.hpp"
#include "symdiff/point_set.hpp"
#include "symdiff/poly.hpp"

namespace symdiff {

using Rng = std::mt19937_64;

class SingularPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of P^N with coordinates scaled so the first nonzero one is 1.
class ProjPoint {
 public:
  /// Throws std::invalid_argument for the zero vector.
  explicit ProjPoint(Vec coords);
  static ProjPoint from_ints(Field f, std::initializer_list<long long> coords);

  Field field() const { return coords_.front().field(); }
  std::size_t size() const { return coords_.size(); }
  const Vec& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  /// Residues of an F_p point.
  std::vector<std::uint32_t> residues() const;
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  std::string to_string() const;

 private:
  Vec coords_;
};

/// Projective variety X in P^N given by homogeneous forms with integer (or
/// rational) coefficients, optionally with a parametrization.
struct VarietyModel {
  std::string name;
  int ambient = 0;  // N
  int dim = 0;      // n
  std::vector<MultiPoly> forms;                          // nvars N+1, over Q
  std::optional<std::vector<MultiPoly>> parametrization;  // N+1 forms in source variables

  int codim() const { return ambient - dim; }
  int max_degree() const;
  std::size_t source_vars() const;
  /// 3n > 2(N-1): the range where polynomial data captures all sections.
  bool in_complete_range() const { return 3 * dim > 2 * (ambient - 1); }
  /// Throws std::invalid_argument if a form is zero or inhomogeneous, or if
  /// the forms do not vanish identically on the parametrization.
  void validate() const;
};

VarietyModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const VarietyModel& m);
/// Loads a model file, or a built-in when the path is "builtin:<name>".
VarietyModel load_model(const std::filesystem::path& path);

namespace models {
VarietyModel quadric_surface();                 // z0*z3 - z1*z2 with Segre parametrization
VarietyModel fermat(int degree, int ambient);   // sum z_i^d
VarietyModel nodal_cubic();                     // z2^2*z0 - z1^2*(z1 + z0)
VarietyModel conic();                           // z0*z2 - z1^2
VarietyModel hyperplane(int ambient);           // z0
VarietyModel projective_space(int ambient);     // no forms
VarietyModel twisted_cubic();
VarietyModel veronese_surface();
VarietyModel segre_p1_p2();
VarietyModel quadric_pencil_ci();  // smooth intersection of two quadrics in P^5
std::vector<std::string> builtin_names();
VarietyModel builtin(const std::string& name);
}  // namespace models

/// Fast evaluator for a form over F_p (and over extensions of F_p).
class ModForm {
 public:
  ModForm() = default;
  explicit ModForm(const MultiPoly& f);  // f over F_p

  std::uint32_t eval(std::span<const std::uint32_t> z) const;

  /// Evaluation over any ring R built on top of F_p; `embed` maps residues in.
  template <class R, class Embed>
  R eval_in(std::span<const R> z, Embed embed) const {
    R acc = embed(0);
    for (const auto& t : terms_) {
      R v = embed(t.coeff);
      for (std::size_t i = 0; i < t.exp.size(); ++i)
        for (std::uint32_t k = 0; k < t.exp[i]; ++k) v = v * z[i];
      acc = acc + v;
    }
    return acc;
  }

 private:
  struct Term {
    std::uint32_t coeff;
    Exponent exp;
  };
  std::uint32_t p_ = 0;
  std::vector<Term> terms_;
};

/// A model reduced mod p with compiled forms and Jacobian, for the
/// enumeration-heavy code paths.
class PrimeModel {
 public:
  PrimeModel(const VarietyModel& m, std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }
  int ambient() const noexcept { return ambient_; }
  int codim() const noexcept { return codim_; }
  const std::vector<ModForm>& forms() const noexcept { return forms_; }
  const std::vector<std::vector<ModForm>>& gradients() const noexcept { return grads_; }
  /// The defining forms reduced mod p.
  const std::vector<MultiPoly>& polys() const noexcept { return polys_; }

  bool vanishes(std::span<const std::uint32_t> z) const;
  std::vector<std::vector<std::uint32_t>> jacobian(std::span<const std::uint32_t> z) const;
  int jacobian_rank(std::span<const std::uint32_t> z) const;
  /// On X with Jacobian rank N - n.
  bool is_smooth(std::span<const std::uint32_t> z) const;
  /// z lies in the embedded tangent space at x: J(x) z = 0.
  bool tangent_contains(std::span<const std::uint32_t> x, std::span<const std::uint32_t> z) const;

 private:
  std::uint32_t p_;
  int ambient_;
  int codim_;
  std::vector<MultiPoly> polys_;
  std::vector<ModForm> forms_;
  std::vector<std::vector<ModForm>> grads_;
};

/// Rank of a small matrix over F_p.
int rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

/// A model with its forms and Jacobian reduced into one field.
class BoundModel {
 public:
  BoundModel(VarietyModel m, Field f);

  const VarietyModel& model() const noexcept { return model_; }
  Field field() const noexcept { return field_; }
  const std::vector<MultiPoly>& forms() const noexcept { return forms_; }

  bool contains(const ProjPoint& x) const;
  /// Rows are gradients of the defining forms at x.
  std::vector<Vec> jacobian_at(const ProjPoint& x) const;
  int jacobian_rank_at(const ProjPoint& x) const;
  bool is_smooth_point(const ProjPoint& x) const;
  /// Image of a source point under the parametrization; nullopt when it is
  /// the zero vector.
  std::optional<ProjPoint> push_forward(std::span<const Scalar> source) const;

 private:
  VarietyModel model_;
  Field field_;
  std::vector<MultiPoly> forms_;
  std::vector<std::vector<MultiPoly>> jacobian_;
  std::vector<MultiPoly> param_;
};

struct SamplingConfig {
  int retry_budget = 1000;
  std::uint32_t max_scan_prime = 1u << 16;
  /// Source coordinates for rational push-forward are drawn from [-bound, bound].
  int rational_height = 6;
  std::uint64_t enumeration_budget = 2'000'000;
};

/// A random smooth point of the model. Parametrized models push forward a
/// random source point; hypersurfaces fix all coordinates but one and scan
/// the remaining univariate; codimension-two complete intersections fix all
/// but two and scan one of them; otherwise small fields fall back to
/// enumeration. Throws SamplingExhausted after the retry budget.
ProjPoint sample_smooth_point(const BoundModel& bm, Rng& rng, const SamplingConfig& cfg = {});

/// The F_p points of Z(forms). Throws BudgetExceeded if |P^N(F_p)| > budget.
PointSet enumerate_points(const VarietyModel& m, std::uint32_t p, std::uint64_t budget = 2'000'000);

/// Kernel of the Jacobian at x, ordered as [radial vector, t_1, ..., t_n].
struct TangentFrame {
  ProjPoint base;
  std::vector<Vec> vectors;

  const Vec& radial() const { return vectors.front(); }
};

/// Throws SingularPointError when x is not a smooth point of the model.
TangentFrame tangent_frame(const BoundModel& bm, const ProjPoint& x);

/// Smooth x in `points` whose embedded tangent space contains z.
PointSet tangent_locus(const PrimeModel& pm, std::span<const std::uint32_t> z, const PointSet& points);
PointSet tangent_locus(const VarietyModel& m, const ProjPoint& z, const PointSet& points);

}  // namespace symdiff
