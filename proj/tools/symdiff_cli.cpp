#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "symdiff/plurigenera.hpp"
#include "symdiff/scenarios.hpp"
#include "symdiff/secant.hpp"
#include "symdiff/sections.hpp"

using namespace symdiff;

namespace {

struct Options {
  std::string model;
  int m = 2;
  int k = 2;
  std::uint64_t prime = 32003;
  std::uint64_t seed = 1;
  int batches = 40;
  int batch_size = 5;
  int window = 3;
  int nprimes = 3;
  int kmax = 1;
  double threshold = 0.95;
  int trials = 200;
  int mmax = 12;
  std::string format = "both";
  std::string dir = "scenarios";
  std::string out = "report.json";
  std::uint64_t budget = 2'000'000;
};

std::uint32_t small_prime(std::uint64_t p) {
  Field::prime(p);
  return static_cast<std::uint32_t>(p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symdiff: twisted symmetric differentials and secant geometry over finite fields"};
  app.require_subcommand(1);
  Options o;

  auto* dim = app.add_subcommand("dimension", "estimate dim H0(X, S^m Omega^1_X(k))");
  dim->add_option("--model", o.model, "model file or builtin:<name>")->required();
  dim->add_option("--m", o.m)->required();
  dim->add_option("--k", o.k)->required();
  dim->add_option("--prime", o.prime, "first prime");
  dim->add_option("--seed", o.seed);
  dim->add_option("--batches", o.batches, "batch budget per prime");
  dim->add_option("--batch-size", o.batch_size, "points per batch");
  dim->add_option("--window", o.window, "unchanged batches needed to stop");
  dim->add_option("--nprimes", o.nprimes);

  auto* tri = app.add_subcommand("trisecant", "iterate the t-trisecant construction over F_p");
  tri->add_option("--model", o.model)->required();
  tri->add_option("--prime", o.prime)->required();
  tri->add_option("--kmax", o.kmax);
  tri->add_option("--threshold", o.threshold);
  tri->add_option("--budget", o.budget, "max |P^N(F_p)|");

  auto* zak = app.add_subcommand("zak", "secant points off X without a tangent point");
  zak->add_option("--model", o.model)->required();
  zak->add_option("--prime", o.prime)->required();
  zak->add_option("--trials", o.trials);
  zak->add_option("--seed", o.seed);
  zak->add_option("--budget", o.budget);

  auto* env = app.add_subcommand("envelope", "quadrics through X(F_p)");
  env->add_option("--model", o.model)->required();
  env->add_option("--prime", o.prime)->required();
  env->add_option("--budget", o.budget);

  auto* plu = app.add_subcommand("plurigenera", "invariant monomial counts and their jump");
  plu->add_option("--mmax", o.mmax)->required();
  plu->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "both"}));

  auto* suite = app.add_subcommand("suite", "run every scenario in a directory");
  suite->add_option("--dir", o.dir);
  suite->add_option("--out", o.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dim->parsed()) {
      EstimateConfig cfg;
      cfg.first_prime = o.prime;
      cfg.nprimes = o.nprimes;
      cfg.seed = o.seed;
      cfg.max_batches = o.batches;
      cfg.batch_size = o.batch_size;
      cfg.window = o.window;
      std::cout << estimate_dimension(load_model(o.model), o.m, o.k, cfg).to_json().dump(2) << '\n';
    } else if (tri->parsed()) {
      const VarietyModel m = load_model(o.model);
      const auto p = small_prime(o.prime);
      const auto states = iterate_cone_variety(m, p, o.kmax, o.budget);
      std::cout << cone_iteration_json(m, p, states, o.threshold).dump(2) << '\n';
    } else if (zak->parsed()) {
      std::cout << zak_check(load_model(o.model), small_prime(o.prime), o.trials, o.seed, o.budget).to_json().dump(2)
                << '\n';
    } else if (env->parsed()) {
      const VarietyModel m = load_model(o.model);
      const auto p = small_prime(o.prime);
      const SubspaceBasis basis = quadric_envelope(m, p, o.budget);
      const auto monos = quadric_monomials(m.ambient);
      nlohmann::json qs = nlohmann::json::array();
      for (const auto& v : basis.vectors) {
        MultiPoly q(Field::prime(p), m.ambient + 1);
        for (std::size_t c = 0; c < monos.size(); ++c) q.add_term(monos[c], v[c]);
        qs.push_back(q.to_string());
      }
      std::cout << nlohmann::json{{"model", m.name}, {"prime", p}, {"dimension", basis.dimension()}, {"quadrics", qs}}.dump(2)
                << '\n';
    } else if (plu->parsed()) {
      const JumpTable t = jump_table(o.mmax);
      if (o.format != "json") std::cout << t.to_text();
      if (o.format != "text") std::cout << t.to_json().dump(2) << '\n';
    } else if (suite->parsed()) {
      const SuiteReport rep = run_suite(load_suite(o.dir));
      std::ofstream out(o.out);
      if (!out) throw std::runtime_error("cannot write " + o.out);
      out << rep.to_json().dump(2) << '\n';
      for (const auto& r : rep.reports) std::cout << to_string(r.outcome) << "  " << r.name << "  " << r.detail << '\n';
      for (const auto& [name, msg] : rep.errors) std::cout << "error  " << name << "  " << msg << '\n';
      return rep.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
