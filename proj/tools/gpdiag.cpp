// gpdiag: steady states, entanglement and geometric phase of the cascade source.
//
//   gpdiag recipe fig5 --out out --jobs 8
//   gpdiag sweep --config sweep.ini
//   gpdiag steady --omega1 6 --omega2 6 --scheme I

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "gpdiag/csv.hpp"
#include "gpdiag/errors.hpp"
#include "gpdiag/parallel.hpp"
#include "gpdiag/photonstate.hpp"
#include "gpdiag/recipes.hpp"
#include "gpdiag/sweep.hpp"

namespace fs = std::filesystem;
using namespace gpdiag;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

void report(const RunSummary& s) {
  std::cerr << "gpdiag: " << s.rows << " rows in " << s.files.size() << " file(s), " << s.undefined_fields
            << " undefined field(s)\n";
}

void print_matrix(const CMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j)
      std::printf("  (%s, %s)", format_number(m(i, j).real()).c_str(),
                  format_number(m(i, j).imag()).c_str());
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phase and entanglement diagnostics for a three-level cascade photon source"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir = "out";
  std::size_t samples = 601;
  unsigned jobs = default_jobs();
  std::optional<double> gamma2, gamma3;
  auto* samples_opt = app.add_option("--samples", samples, "Samples per axis")->check(CLI::Range(3, 100000));
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--gamma2", gamma2, "Override the decay rate of |2>")->check(CLI::NonNegativeNumber);
  app.add_option("--gamma3", gamma3, "Override the decay rate of |3> (scheme I / custom only)")
      ->check(CLI::NonNegativeNumber);

  auto* recipe = app.add_subcommand("recipe", "Write the CSV panels of a figure");
  std::string recipe_id;
  recipe->add_option("id", recipe_id, "fig2 | fig3a | fig3b | fig4 | fig5 | fig6")->required();

  auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
  std::string config_path;
  sweep->add_option("--config", config_path, "Config file")->required();

  auto* steady = app.add_subcommand("steady", "Print the steady two-photon state at one parameter point");
  double o1 = 0.0, o2 = 0.0, d1 = 0.0, d2 = 0.0;
  std::string scheme = "I";
  steady->add_option("--omega1", o1)->required();
  steady->add_option("--omega2", o2)->required();
  steady->add_option("--delta1", d1);
  steady->add_option("--delta2", d2);
  steady->add_option("--scheme", scheme, "I | II")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (recipe->parsed()) {
      const RecipeOptions opt{samples, jobs, gamma2, gamma3};
      report(run_recipe(parse_recipe(recipe_id), out_dir, opt));
    } else if (sweep->parsed()) {
      SweepSpec spec = load_config(config_path);
      if (gamma2) spec.base.gamma2 = *gamma2;
      if (gamma3) {
        if (spec.scheme == Scheme::II && *gamma3 != 0.0) throw ConfigError("scheme II requires gamma3 = 0");
        spec.base.gamma3 = *gamma3;
      }
      if (samples_opt->count()) {
        if (spec.axis1) spec.axis1->samples = samples;
        if (spec.axis2) spec.axis2->samples = samples;
      }
      fs::path target = spec.output;
      if (target.is_relative()) {
        fs::create_directories(out_dir);
        target = fs::path(out_dir) / target;
      }
      report(run_sweep(spec, target, jobs));
    } else if (steady->parsed()) {
      const Scheme s = parse_scheme(scheme);
      SystemParams p = SystemParams::for_scheme(s, o1, o2, d1, d2);
      if (gamma2) p.gamma2 = *gamma2;
      if (gamma3 && s != Scheme::II) p.gamma3 = *gamma3;
      const auto photon = atomic_to_photon(steady_state(p));
      const auto obs = observe(p);
      std::printf("two-photon density matrix, basis |00>, |01>, |11> (re, im):\n");
      print_matrix(photon.rho.matrix());
      std::printf("eigenvalues: %s %s %s\n", format_number(obs.lambdas[0]).c_str(),
                  format_number(obs.lambdas[1]).c_str(), format_number(obs.lambdas[2]).c_str());
      std::printf("purity: %s\n", format_number(obs.purity).c_str());
      std::printf("concurrence: %s\n", format_number(obs.concurrence).c_str());
    }
  } catch (const NumericalError& e) {
    std::cerr << "gpdiag: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "gpdiag: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
