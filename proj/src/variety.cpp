#include "symdiff/variety.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "symdiff/binary_form.hpp"
#include "symdiff/unipoly.hpp"

namespace symdiff {

namespace {

std::uint32_t random_residue(Rng& rng, std::uint32_t p) { return static_cast<std::uint32_t>(rng() % p); }

std::vector<MultiPoly> parse_all(const std::vector<std::string>& texts, std::size_t nvars) {
  std::vector<MultiPoly> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_poly(t, nvars));
  return out;
}

VarietyModel make_model(std::string name, int N, int n, const std::vector<std::string>& forms,
                        std::optional<std::vector<std::string>> param = std::nullopt,
                        std::size_t source_vars = 0) {
  VarietyModel m;
  m.name = std::move(name);
  m.ambient = N;
  m.dim = n;
  m.forms = parse_all(forms, N + 1);
  if (param) m.parametrization = parse_all(*param, source_vars);
  return m;
}

Vec residues_to_vec(Field f, std::span<const std::uint32_t> r) {
  Vec v;
  v.reserve(r.size());
  for (auto x : r) v.push_back(Scalar::from_residue(f, x));
  return v;
}

// F_p points of a hypersurface on a random line parallel to a coordinate axis.
std::optional<ProjPoint> scan_hypersurface(const BoundModel& bm, Rng& rng) {
  const Field F = bm.field();
  const std::uint32_t p = F.characteristic();
  const std::size_t n1 = bm.model().ambient + 1;
  const std::size_t j = rng() % n1;
  Vec a(n1, Scalar::zero(F)), e(n1, Scalar::zero(F));
  bool nonzero = false;
  for (std::size_t i = 0; i < n1; ++i) {
    if (i == j) continue;
    a[i] = Scalar::from_residue(F, random_residue(rng, p));
    nonzero = nonzero || !a[i].is_zero();
  }
  if (!nonzero) return std::nullopt;
  e[j] = Scalar::one(F);
  const BinaryForm bf = restrict_to_line(bm.forms().front(), a, e);
  std::vector<std::uint32_t> c;
  for (const auto& x : bf.coeffs) c.push_back(x.residue());
  const UniPolyMod g(p, std::move(c));
  std::uint32_t t;
  if (g.is_zero()) {
    t = random_residue(rng, p);
  } else {
    std::vector<std::uint32_t> roots;
    for (std::uint32_t x = 0; x < p; ++x)
      if (g.eval(x) == 0) roots.push_back(x);
    if (roots.empty()) return std::nullopt;
    t = roots[rng() % roots.size()];
  }
  a[j] = Scalar::from_residue(F, t);
  return ProjPoint(a);
}

// F_p points of a codimension-two complete intersection on a random affine
// plane spanned by two coordinate directions.
std::optional<ProjPoint> scan_complete_intersection(const BoundModel& bm, Rng& rng) {
  const Field F = bm.field();
  const std::uint32_t p = F.characteristic();
  const std::size_t n1 = bm.model().ambient + 1;
  const std::size_t j1 = rng() % n1;
  std::size_t j2 = rng() % (n1 - 1);
  if (j2 >= j1) ++j2;
  std::vector<MultiPoly> subs;
  bool nonzero = false;
  for (std::size_t i = 0; i < n1; ++i) {
    if (i == j1) {
      subs.push_back(MultiPoly::variable(F, 2, 0));
    } else if (i == j2) {
      subs.push_back(MultiPoly::variable(F, 2, 1));
    } else {
      Scalar c = Scalar::from_residue(F, random_residue(rng, p));
      nonzero = nonzero || !c.is_zero();
      subs.push_back(MultiPoly::constant(F, 2, c));
    }
  }
  if (!nonzero) return std::nullopt;
  std::vector<MultiPoly> planar;
  for (const auto& f : bm.forms()) planar.push_back(f.compose(subs));

  auto univariate_at = [&](const MultiPoly& g, std::uint32_t t) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(std::max(g.degree(), 0)) + 1, 0);
    for (const auto& [e, coef] : g.terms())
      c[e[1]] = (c[e[1]] + std::uint64_t(coef.residue()) * mod_pow(t, e[0], p)) % p;
    return UniPolyMod(p, std::vector<std::uint32_t>(c.begin(), c.end()));
  };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> solutions;
  for (std::uint32_t t = 0; t < p; ++t) {
    UniPolyMod g = UniPolyMod::gcd(univariate_at(planar[0], t), univariate_at(planar[1], t));
    if (g.is_zero()) {
      solutions.emplace_back(t, random_residue(rng, p));
    } else if (g.degree() == 1) {
      const auto& c = g.coeffs();  // monic: u + c0
      solutions.emplace_back(t, c[0] == 0 ? 0 : p - c[0]);
    } else if (g.degree() > 1) {
      for (std::uint32_t u = 0; u < p; ++u)
        if (g.eval(u) == 0) solutions.emplace_back(t, u);
    }
  }
  if (solutions.empty()) return std::nullopt;
  const auto [t, u] = solutions[rng() % solutions.size()];
  Vec z;
  for (std::size_t i = 0; i < n1; ++i) {
    if (i == j1)
      z.push_back(Scalar::from_residue(F, t));
    else if (i == j2)
      z.push_back(Scalar::from_residue(F, u));
    else
      z.push_back(subs[i].coefficient(Exponent{0, 0}));
  }
  return ProjPoint(std::move(z));
}

}  // namespace

// ---------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(Vec coords) : coords_(std::move(coords)) {
  auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& c) { return !c.is_zero(); });
  if (lead == coords_.end()) throw std::invalid_argument("the zero vector is not a projective point");
  if (!lead->is_one()) {
    const Scalar inv = lead->inverse();
    for (auto& c : coords_) c *= inv;
  }
}

ProjPoint ProjPoint::from_ints(Field f, std::initializer_list<long long> coords) {
  Vec v;
  for (auto c : coords) v.emplace_back(f, c);
  return ProjPoint(std::move(v));
}

std::vector<std::uint32_t> ProjPoint::residues() const {
  std::vector<std::uint32_t> r;
  r.reserve(coords_.size());
  for (const auto& c : coords_) r.push_back(c.residue());
  return r;
}

std::string ProjPoint::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) out += (i ? ":" : "") + coords_[i].to_string();
  return out + "]";
}

// ------------------------------------------------------------- VarietyModel

int VarietyModel::max_degree() const {
  int d = 0;
  for (const auto& f : forms) d = std::max(d, f.degree());
  return d;
}

std::size_t VarietyModel::source_vars() const {
  return parametrization && !parametrization->empty() ? parametrization->front().nvars() : 0;
}

void VarietyModel::validate() const {
  if (ambient < 1 || dim < 0 || dim > ambient)
    throw std::invalid_argument("model " + name + ": need 0 <= dim <= ambient, ambient >= 1");
  for (const auto& f : forms) {
    if (f.nvars() != static_cast<std::size_t>(ambient + 1))
      throw std::invalid_argument("model " + name + ": form in wrong number of variables");
    if (f.is_zero()) throw std::invalid_argument("model " + name + ": zero defining form");
    if (!f.is_homogeneous()) throw std::invalid_argument("model " + name + ": inhomogeneous form " + f.to_string());
  }
  if (parametrization) {
    if (parametrization->size() != static_cast<std::size_t>(ambient + 1))
      throw std::invalid_argument("model " + name + ": parametrization needs N+1 components");
    for (const auto& f : forms)
      if (!f.compose(*parametrization).is_zero())
        throw std::invalid_argument("model " + name + ": form " + f.to_string() +
                                    " does not vanish on the parametrization");
  }
}

VarietyModel model_from_json(const nlohmann::json& j) {
  VarietyModel m;
  m.name = j.value("name", std::string("unnamed"));
  m.ambient = j.at("ambient").get<int>();
  m.dim = j.at("dim").get<int>();
  for (const auto& f : j.at("forms")) m.forms.push_back(parse_poly(f.get<std::string>(), m.ambient + 1));
  if (j.contains("parametrization") && !j.at("parametrization").is_null()) {
    std::vector<std::string> texts = j.at("parametrization").get<std::vector<std::string>>();
    std::size_t nv = j.value("source_vars", std::size_t{0});
    for (const auto& t : texts) nv = std::max(nv, count_variables(t));
    m.parametrization = parse_all(texts, std::max<std::size_t>(nv, 1));
  }
  m.validate();
  return m;
}

nlohmann::json model_to_json(const VarietyModel& m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["ambient"] = m.ambient;
  j["dim"] = m.dim;
  j["forms"] = nlohmann::json::array();
  for (const auto& f : m.forms) j["forms"].push_back(f.to_string('z'));
  if (m.parametrization) {
    j["parametrization"] = nlohmann::json::array();
    for (const auto& f : *m.parametrization) j["parametrization"].push_back(f.to_string('x'));
    j["source_vars"] = m.source_vars();
  } else {
    j["parametrization"] = nullptr;
  }
  return j;
}

VarietyModel load_model(const std::filesystem::path& path) {
  const std::string s = path.string();
  if (s.rfind("builtin:", 0) == 0) return models::builtin(s.substr(8));
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + s);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file " + s + ": " + e.what());
  }
  return model_from_json(j);
}

namespace models {

VarietyModel quadric_surface() {
  // Segre embedding P^1 x P^1: (x0,x1) x (x2,x3)
  return make_model("quadric-surface", 3, 2, {"z0*z3 - z1*z2"},
                    std::vector<std::string>{"x0*x2", "x0*x3", "x1*x2", "x1*x3"}, 4);
}

VarietyModel fermat(int degree, int ambient) {
  std::string f;
  for (int i = 0; i <= ambient; ++i) f += (i ? " + z" : "z") + std::to_string(i) + "^" + std::to_string(degree);
  return make_model("fermat-d" + std::to_string(degree) + "-P" + std::to_string(ambient), ambient, ambient - 1, {f});
}

VarietyModel nodal_cubic() { return make_model("nodal-cubic", 2, 1, {"z2^2*z0 - z1^3 - z1^2*z0"}); }

VarietyModel conic() {
  return make_model("conic", 2, 1, {"z0*z2 - z1^2"}, std::vector<std::string>{"x0^2", "x0*x1", "x1^2"}, 2);
}

VarietyModel hyperplane(int ambient) {
  std::vector<std::string> param{"0"};
  for (int i = 0; i < ambient; ++i) param.push_back("x" + std::to_string(i));
  return make_model("hyperplane-P" + std::to_string(ambient), ambient, ambient - 1, {"z0"}, param, ambient);
}

VarietyModel projective_space(int ambient) {
  return make_model("P" + std::to_string(ambient), ambient, ambient, {});
}

VarietyModel twisted_cubic() {
  return make_model("twisted-cubic", 3, 1, {"z0*z2 - z1^2", "z0*z3 - z1*z2", "z1*z3 - z2^2"},
                    std::vector<std::string>{"x0^3", "x0^2*x1", "x0*x1^2", "x1^3"}, 2);
}

VarietyModel veronese_surface() {
  // coordinates are the monomials x0^2, x0x1, x0x2, x1^2, x1x2, x2^2; the
  // forms are the 2x2 minors of the symmetric matrix [[z0,z1,z2],[z1,z3,z4],[z2,z4,z5]]
  return make_model("veronese-surface", 5, 2,
                    {"z0*z3 - z1^2", "z0*z4 - z1*z2", "z0*z5 - z2^2", "z1*z4 - z2*z3", "z1*z5 - z2*z4",
                     "z3*z5 - z4^2"},
                    std::vector<std::string>{"x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"}, 3);
}

VarietyModel segre_p1_p2() {
  return make_model("segre-p1-p2", 5, 3, {"z0*z4 - z1*z3", "z0*z5 - z2*z3", "z1*z5 - z2*z4"},
                    std::vector<std::string>{"x0*x2", "x0*x3", "x0*x4", "x1*x2", "x1*x3", "x1*x4"}, 5);
}

VarietyModel quadric_pencil_ci() {
  // the pencil discriminant det(A - l*I) has discriminant 2^11 * 3^2, so the
  // intersection is smooth in every characteristic p >= 5
  return make_model("quadric-pencil-ci", 5, 3,
                    {"z0*z1 + z2*z3 + z3^2 + z4^2", "z0^2 + z1^2 + z2^2 + z3^2 + z4^2 + z5^2"});
}

std::vector<std::string> builtin_names() {
  return {"quadric-surface",  "fermat-cubic-surface", "fermat-quartic-surface", "fermat-sextic-surface",
          "nodal-cubic",      "conic",                "hyperplane-p3",          "twisted-cubic",
          "veronese-surface", "segre-p1-p2",          "quadric-pencil-ci"};
}

VarietyModel builtin(const std::string& name) {
  VarietyModel m;
  if (name == "quadric-surface") m = quadric_surface();
  else if (name == "fermat-cubic-surface") m = fermat(3, 3);
  else if (name == "fermat-quartic-surface") m = fermat(4, 3);
  else if (name == "fermat-sextic-surface") m = fermat(6, 3);
  else if (name == "nodal-cubic") m = nodal_cubic();
  else if (name == "conic") m = conic();
  else if (name == "hyperplane-p3") m = hyperplane(3);
  else if (name == "twisted-cubic") m = twisted_cubic();
  else if (name == "veronese-surface") m = veronese_surface();
  else if (name == "segre-p1-p2") m = segre_p1_p2();
  else if (name == "quadric-pencil-ci") m = quadric_pencil_ci();
  else throw std::invalid_argument("unknown built-in model: " + name);
  if (name.rfind("fermat", 0) == 0) m.name = name;
  m.validate();
  return m;
}

}  // namespace models

// ------------------------------------------------------------ mod-p kernels

ModForm::ModForm(const MultiPoly& f) : p_(f.field().characteristic()) {
  if (!f.field().is_prime()) throw FieldMismatch("ModForm needs a prime-field polynomial");
  for (const auto& [e, c] : f.terms()) terms_.push_back({c.residue(), e});
}

std::uint32_t ModForm::eval(std::span<const std::uint32_t> z) const {
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = t.coeff;
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      for (std::uint32_t k = 0; k < t.exp[i]; ++k) v = v * z[i] % p_;
    acc += v;
  }
  return static_cast<std::uint32_t>(acc % p_);
}

int rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint64_t inv = mod_inverse(rows[rank][col], p);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const std::uint64_t f = rows[r][col] * inv % p;
      for (std::size_t c = col; c < ncols; ++c)
        rows[r][c] = static_cast<std::uint32_t>((rows[r][c] + (p - f) * rows[rank][c]) % p);
    }
    ++rank;
  }
  return rank;
}

PrimeModel::PrimeModel(const VarietyModel& m, std::uint32_t p) : p_(p), ambient_(m.ambient), codim_(m.codim()) {
  const Field F = Field::prime(p);
  for (const auto& f : m.forms) {
    const MultiPoly fp = f.reduce(F);
    polys_.push_back(fp);
    forms_.emplace_back(fp);
    std::vector<ModForm> g;
    for (int i = 0; i <= m.ambient; ++i) g.emplace_back(fp.derivative(i));
    grads_.push_back(std::move(g));
  }
}

bool PrimeModel::vanishes(std::span<const std::uint32_t> z) const {
  return std::all_of(forms_.begin(), forms_.end(), [&](const ModForm& f) { return f.eval(z) == 0; });
}

std::vector<std::vector<std::uint32_t>> PrimeModel::jacobian(std::span<const std::uint32_t> z) const {
  std::vector<std::vector<std::uint32_t>> j;
  for (const auto& g : grads_) {
    std::vector<std::uint32_t> row;
    for (const auto& d : g) row.push_back(d.eval(z));
    j.push_back(std::move(row));
  }
  return j;
}

int PrimeModel::jacobian_rank(std::span<const std::uint32_t> z) const { return rank_mod_p(jacobian(z), p_); }

bool PrimeModel::is_smooth(std::span<const std::uint32_t> z) const {
  return vanishes(z) && jacobian_rank(z) == codim_;
}

bool PrimeModel::tangent_contains(std::span<const std::uint32_t> x, std::span<const std::uint32_t> z) const {
  for (const auto& g : grads_) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (z[i]) acc += std::uint64_t(g[i].eval(x)) * z[i] % p_;
    if (acc % p_) return false;
  }
  return true;
}

// -------------------------------------------------------------- BoundModel

BoundModel::BoundModel(VarietyModel m, Field f) : model_(std::move(m)), field_(f) {
  for (const auto& g : model_.forms) {
    forms_.push_back(g.reduce(f));
    std::vector<MultiPoly> row;
    for (int i = 0; i <= model_.ambient; ++i) row.push_back(forms_.back().derivative(i));
    jacobian_.push_back(std::move(row));
  }
  if (model_.parametrization)
    for (const auto& g : *model_.parametrization) param_.push_back(g.reduce(f));
}

bool BoundModel::contains(const ProjPoint& x) const {
  return std::all_of(forms_.begin(), forms_.end(), [&](const MultiPoly& f) { return f.evaluate(x.coords()).is_zero(); });
}

std::vector<Vec> BoundModel::jacobian_at(const ProjPoint& x) const {
  std::vector<Vec> rows;
  for (const auto& r : jacobian_) {
    Vec v;
    for (const auto& d : r) v.push_back(d.evaluate(x.coords()));
    rows.push_back(std::move(v));
  }
  return rows;
}

int BoundModel::jacobian_rank_at(const ProjPoint& x) const {
  return static_cast<int>(rank_of(field_, model_.ambient + 1, jacobian_at(x)));
}

bool BoundModel::is_smooth_point(const ProjPoint& x) const {
  return contains(x) && jacobian_rank_at(x) == model_.codim();
}

std::optional<ProjPoint> BoundModel::push_forward(std::span<const Scalar> source) const {
  if (param_.empty()) throw std::logic_error("model " + model_.name + " has no parametrization");
  Vec z;
  bool nonzero = false;
  for (const auto& g : param_) {
    z.push_back(g.evaluate(source));
    nonzero = nonzero || !z.back().is_zero();
  }
  if (!nonzero) return std::nullopt;
  return ProjPoint(std::move(z));
}

// ---------------------------------------------------------------- sampling

ProjPoint sample_smooth_point(const BoundModel& bm, Rng& rng, const SamplingConfig& cfg) {
  const VarietyModel& m = bm.model();
  const Field F = bm.field();
  const std::uint32_t p = F.characteristic();
  std::optional<std::vector<std::uint64_t>> enumerated;

  for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    std::optional<ProjPoint> cand;
    if (m.parametrization) {
      Vec src;
      for (std::size_t i = 0; i < m.source_vars(); ++i) {
        if (F.is_prime())
          src.push_back(Scalar::from_residue(F, random_residue(rng, p)));
        else
          src.emplace_back(F, static_cast<long long>(rng() % (2 * cfg.rational_height + 1)) - cfg.rational_height);
      }
      cand = bm.push_forward(src);
    } else if (F.is_rational()) {
      throw SamplingExhausted("model " + m.name + ": sampling over Q needs a parametrization");
    } else if (m.forms.empty()) {
      std::vector<std::uint32_t> z(m.ambient + 1);
      for (auto& c : z) c = random_residue(rng, p);
      if (std::any_of(z.begin(), z.end(), [](auto c) { return c != 0; })) cand = ProjPoint(residues_to_vec(F, z));
    } else if (m.forms.size() == 1 && m.codim() == 1 && p <= cfg.max_scan_prime) {
      cand = scan_hypersurface(bm, rng);
    } else if (m.forms.size() == 2 && m.codim() == 2 && p <= cfg.max_scan_prime) {
      cand = scan_complete_intersection(bm, rng);
    } else {
      if (!enumerated) {
        const ProjectiveSpace space(p, m.ambient);
        if (space.size() > cfg.enumeration_budget)
          throw SamplingExhausted("model " + m.name + ": no sampling strategy over " + F.name());
        const PrimeModel pm(m, p);
        enumerated.emplace();
        for (auto idx : enumerate_points(m, p, cfg.enumeration_budget).members())
          if (pm.is_smooth(space.point(idx))) enumerated->push_back(idx);
        if (enumerated->empty())
          throw SamplingExhausted("model " + m.name + " has no smooth F_" + std::to_string(p) + " points");
      }
      const ProjectiveSpace space(p, m.ambient);
      cand = ProjPoint(residues_to_vec(F, space.point((*enumerated)[rng() % enumerated->size()])));
    }
    if (cand && bm.is_smooth_point(*cand)) return *cand;
  }
  throw SamplingExhausted("model " + m.name + ": no smooth point found over " + F.name() + " after " +
                          std::to_string(cfg.retry_budget) + " attempts");
}

PointSet enumerate_points(const VarietyModel& m, std::uint32_t p, std::uint64_t budget) {
  const ProjectiveSpace space(p, m.ambient);
  if (space.size() > budget)
    throw BudgetExceeded("|P^" + std::to_string(m.ambient) + "(F_" + std::to_string(p) + ")| = " +
                         std::to_string(space.size()) + " exceeds the enumeration budget " + std::to_string(budget));
  const PrimeModel pm(m, p);
  PointSet out(space);
  for (std::uint64_t idx = 0; idx < space.size(); ++idx)
    if (pm.vanishes(space.point(idx))) out.insert(idx);
  return out;
}

TangentFrame tangent_frame(const BoundModel& bm, const ProjPoint& x) {
  const Field F = bm.field();
  const std::size_t n1 = bm.model().ambient + 1;
  if (!bm.contains(x)) throw SingularPointError("point " + x.to_string() + " is not on " + bm.model().name);
  ConstraintMatrix jac(F, n1);
  for (const auto& row : bm.jacobian_at(x)) jac.append_row(row);
  if (static_cast<int>(jac.rank()) != bm.model().codim())
    throw SingularPointError("Jacobian rank " + std::to_string(jac.rank()) + " at " + x.to_string() +
                             ", expected " + std::to_string(bm.model().codim()));
  TangentFrame frame{x, {x.coords()}};
  ConstraintMatrix span(F, n1);
  span.append_row(x.coords());
  for (auto& v : kernel_basis(jac).vectors) {
    const auto before = span.rank();
    if (span.append_row(v) > before) frame.vectors.push_back(std::move(v));
  }
  return frame;
}

PointSet tangent_locus(const PrimeModel& pm, std::span<const std::uint32_t> z, const PointSet& points) {
  PointSet out(points.space());
  for (auto idx : points.members()) {
    const auto x = points.space().point(idx);
    if (pm.is_smooth(x) && pm.tangent_contains(x, z)) out.insert(idx);
  }
  return out;
}

PointSet tangent_locus(const VarietyModel& m, const ProjPoint& z, const PointSet& points) {
  const PrimeModel pm(m, points.space().prime());
  return tangent_locus(pm, z.residues(), points);
}

}  // namespace symdiff
