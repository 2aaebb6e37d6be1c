#include "gpdiag/recipes.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>

#include "gpdiag/analytic.hpp"
#include "gpdiag/errors.hpp"
#include "gpdiag/parallel.hpp"
#include "gpdiag/photonstate.hpp"

namespace gpdiag {

namespace fs = std::filesystem;

namespace {

constexpr std::array kRecipes{Recipe::fig2, Recipe::fig3a, Recipe::fig3b, Recipe::fig4, Recipe::fig5, Recipe::fig6};

constexpr std::array<Fig5Panel, 5> kFig5{{
    {"ab", 6.0, 6.0, 0.0},
    {"cd", 3.0, 6.0, 0.0},
    {"ef", 6.0, 3.0, 0.0},
    {"gh", 6.0, 6.0, 3.0},
    {"ij", 1.5, 6.0, 0.0},
}};

constexpr double kDriveRef = 6.0;
constexpr double kFig2Range = 6.0;
constexpr double kFig3Range = 6.0;
constexpr double kFig4Delta = 0.5;
constexpr double kFig4Angle = 0.3;
constexpr double kFig6Delta = 2.0;
constexpr double kFig6Diff = 4.0;

SystemParams scheme_params(Scheme s, double o1, double o2, double d1, double d2, const RecipeOptions& opt) {
  SystemParams p = SystemParams::for_scheme(s, o1, o2, d1, d2);
  if (opt.gamma2) p.gamma2 = *opt.gamma2;
  if (opt.gamma3 && s != Scheme::II) p.gamma3 = *opt.gamma3;
  return p;
}

// Counts empty fields across every file of a recipe.
struct Collector {
  RunSummary summary;

  void add(const fs::path& path, const CsvWriter& csv) {
    summary.files.push_back(path);
    summary.rows += csv.rows();
    summary.undefined_fields += csv.empty_fields();
  }
};

void write_meta(const fs::path& path, const std::vector<std::string>& lines, Collector& c) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
  c.summary.files.push_back(path);
}

std::string range_line(std::string_view name, double a, double b, std::size_t n) {
  return std::string(name) + " = [" + format_number(a) + ", " + format_number(b) + "] x " + std::to_string(n);
}

void write_grid(const fs::path& path, const std::vector<std::string>& header, const Grid2D& g, Collector& c) {
  CsvWriter csv(path, header);
  for (std::size_t i = 0; i < g.x.size(); ++i)
    for (std::size_t j = 0; j < g.y.size(); ++j) {
      const std::array<CsvField, 3> row{g.x[i], g.y[j], g.at(i, j)};
      csv.row(row);
    }
  c.add(path, csv);
}

void run_fig2(const fs::path& dir, const RecipeOptions& opt, Collector& c) {
  const auto delta = linspace(-kFig2Range, kFig2Range, opt.samples);
  std::vector<std::string> meta{"recipe = fig2", range_line("delta1", delta.front(), delta.back(), delta.size()),
                                "delta2 = 0"};
  const std::array<std::pair<double, double>, 2> drives{{{6.0, 6.0}, {3.0, 6.0}}};
  for (auto [o1, o2] : drives) {
    for (Scheme s : {Scheme::I, Scheme::II}) {
      std::vector<std::optional<PointObservables>> pts(delta.size());
      parallel_for(delta.size(), opt.jobs, [&](std::size_t i) {
        try {
          pts[i] = observe(scheme_params(s, o1, o2, delta[i], 0.0, opt));
        } catch (const NumericalError&) {
        }
      });
      const std::string name = "fig2_scheme" + std::string(scheme_name(s)) + "_omega1_" + format_number(o1) +
                               "_omega2_" + format_number(o2) + ".csv";
      const std::vector<std::string> header{"delta", "lambda1", "lambda2", "lambda3"};
      CsvWriter csv(dir / name, header);
      for (std::size_t i = 0; i < delta.size(); ++i) {
        std::array<CsvField, 4> row{delta[i], std::nullopt, std::nullopt, std::nullopt};
        if (pts[i])
          for (std::size_t k = 0; k < 3; ++k) row[k + 1] = pts[i]->lambdas[k];
        csv.row(row);
      }
      c.add(dir / name, csv);
      meta.push_back("panel " + name + ": scheme " + std::string(scheme_name(s)) + ", omega1 = " + format_number(o1) +
                     ", omega2 = " + format_number(o2));
    }
  }
  write_meta(dir / "fig2_meta.txt", meta, c);
}

void run_fig3(Scheme s, const fs::path& dir, const RecipeOptions& opt, Collector& c) {
  const std::string id = s == Scheme::II ? "fig3a" : "fig3b";
  Grid2D g{linspace(-kFig3Range, kFig3Range, opt.samples), linspace(-kFig3Range, kFig3Range, opt.samples), {}};
  g.z.resize(g.x.size() * g.y.size());
  parallel_for(g.z.size(), opt.jobs, [&](std::size_t idx) {
    const double d = g.x[idx / g.y.size()];
    const double diff = g.y[idx % g.y.size()];
    try {
      g.z[idx] = observe(scheme_params(s, kDriveRef + diff, kDriveRef, d, 0.0, opt)).concurrence;
    } catch (const NumericalError&) {
    }
  });
  write_grid(dir / (id + ".csv"), {"delta", "omega1_minus_omega2", "concurrence"}, g, c);
  write_meta(dir / (id + "_meta.txt"),
             {"recipe = " + id, "scheme = " + std::string(scheme_name(s)),
              range_line("delta (delta1, delta2 = 0)", g.x.front(), g.x.back(), g.x.size()),
              range_line("omega1_minus_omega2 (omega2 = 6)", g.y.front(), g.y.back(), g.y.size())},
             c);
}

void run_fig4(const fs::path& dir, const RecipeOptions& opt, Collector& c) {
  const auto delta = linspace(-kFig4Delta, kFig4Delta, opt.samples);
  const auto dx = linspace(-kFig4Angle, kFig4Angle, opt.samples);
  const double rabi = std::hypot(kDriveRef, kDriveRef);
  const double gamma2 = opt.gamma2.value_or(kDefaultGamma2);
  const std::vector<std::string> header{"delta_offset", "dX", "dgamma_dDelta"};
  std::vector<std::string> meta{"recipe = fig4", "rabi_norm = " + format_number(rabi),
                                "gamma2 = " + format_number(gamma2),
                                range_line("delta_offset (reduced detuning)", delta.front(), delta.back(), delta.size()),
                                range_line("dX", dx.front(), dx.back(), dx.size()),
                                "mixing angle |X0 + dX| (reflection symmetric)"};
  struct Panel {
    Scheme scheme;
    const char* x0_tag;
    double x0;
  };
  const std::array<Panel, 4> panels{{{Scheme::II, "0", 0.0},
                                     {Scheme::II, "pi4", std::numbers::pi / 4.0},
                                     {Scheme::I, "0", 0.0},
                                     {Scheme::I, "pi4", std::numbers::pi / 4.0}}};
  for (const auto& panel : panels) {
    const double gamma3 = panel.scheme == Scheme::II ? 0.0 : opt.gamma3.value_or(kSchemeOneGamma3);
    const std::string name =
        "fig4_scheme" + std::string(scheme_name(panel.scheme)) + "_X0_" + panel.x0_tag + ".csv";
    write_grid(dir / name, header, resonance_slope_surface(panel.x0, delta, dx, rabi, gamma2, gamma3, opt.jobs), c);
    meta.push_back("panel " + name + ": scheme " + std::string(scheme_name(panel.scheme)) +
                   ", gamma3 = " + format_number(gamma3) + ", X0 = " + format_number(panel.x0));
  }
  write_meta(dir / "fig4_meta.txt", meta, c);
}

void run_fig5(const fs::path& dir, const RecipeOptions& opt, Collector& c) {
  const auto panels = fig5_panels();
  std::vector<std::vector<CurvePoint>> curves(panels.size()), slopes(panels.size());
  parallel_for(panels.size(), opt.jobs, [&](std::size_t k) {
    try {
      curves[k] = gp_curve(fig5_path(panels[k], opt.samples, opt));
      slopes[k] = gp_derivative(curves[k]);
    } catch (const NumericalError&) {
      curves[k].clear();
      slopes[k].clear();
    }
  });
  std::vector<std::string> meta{"recipe = fig5", "scheme = I",
                                range_line("delta1", kFig5Start, kFig5End, opt.samples)};
  const auto delta = linspace(kFig5Start, kFig5End, opt.samples);
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto name = std::string("fig5_") + panels[k].tag + ".csv";
    const std::vector<std::string> header{"delta1", "gamma_g", "dgamma"};
    CsvWriter csv(dir / name, header);
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const CsvField g = curves[k].empty() ? std::nullopt : curves[k][i].value;
      const CsvField d = slopes[k].empty() ? std::nullopt : slopes[k][i].value;
      const std::array<CsvField, 3> row{delta[i], g, d};
      csv.row(row);
    }
    c.add(dir / name, csv);
    meta.push_back("panel " + name + ": omega1 = " + format_number(panels[k].omega1) +
                   ", omega2 = " + format_number(panels[k].omega2) + ", delta2 = " + format_number(panels[k].delta2));
  }
  write_meta(dir / "fig5_meta.txt", meta, c);
}

void run_fig6(const fs::path& dir, const RecipeOptions& opt, Collector& c) {
  const auto delta = linspace(-kFig6Delta, kFig6Delta, opt.samples);
  const auto diff = linspace(-kFig6Diff, kFig6Diff, opt.samples);
  const auto map = gamma_stability_map(delta, diff, opt);
  write_grid(dir / "fig6.csv", {"delta", "omega1_minus_omega2", "gamma_g_change_percent"}, map.percent, c);
  write_meta(dir / "fig6_meta.txt",
             {"recipe = fig6", "scheme = I", range_line("delta (delta1, delta2 = 0)", delta.front(), delta.back(), delta.size()),
              range_line("omega1_minus_omega2 (omega2 = 6)", diff.front(), diff.back(), diff.size()),
              "gamma_g accumulated along delta1 from " + format_number(delta.front()),
              "reference gamma_g(delta = 0, omega1 = omega2) = " + format_number(map.reference)},
             c);
}

}  // namespace

Recipe parse_recipe(std::string_view name) {
  for (Recipe r : kRecipes)
    if (recipe_name(r) == name) return r;
  throw ContractViolation("unknown recipe '" + std::string(name) + "'");
}

std::string_view recipe_name(Recipe r) {
  switch (r) {
    case Recipe::fig2: return "fig2";
    case Recipe::fig3a: return "fig3a";
    case Recipe::fig3b: return "fig3b";
    case Recipe::fig4: return "fig4";
    case Recipe::fig5: return "fig5";
    case Recipe::fig6: return "fig6";
  }
  return "fig2";
}

std::span<const Recipe> all_recipes() { return kRecipes; }

std::span<const Fig5Panel> fig5_panels() { return kFig5; }

PathSpec fig5_path(const Fig5Panel& panel, std::size_t samples, const RecipeOptions& opt) {
  return PathSpec{scheme_params(Scheme::I, panel.omega1, panel.omega2, 0.0, panel.delta2, opt), ControlParam::delta1,
                  kFig5Start, kFig5End, samples};
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2) throw ContractViolation("linspace needs at least 2 points");
  return PathSpec{SystemParams{}, ControlParam::delta1, a, b, n}.values();
}

Grid2D resonance_slope_surface(double x0, std::span<const double> delta, std::span<const double> dx, double rabi_norm,
                               double gamma2, double gamma3, unsigned jobs) {
  if (delta.size() < 3) throw ContractViolation("resonance_slope_surface needs at least 3 detunings");
  // Real positive on |00>: the dark state (-sin X0, 0, cos X0) up to sign.
  CVector reference = dark_state(x0);
  for (auto& a : reference) a = -a;

  Grid2D g{{delta.begin(), delta.end()}, {dx.begin(), dx.end()}, {}};
  g.z.resize(delta.size() * dx.size());
  parallel_for(dx.size(), jobs, [&](std::size_t j) {
    // Reflecting X -> -X is a unitary relabelling that only shifts the
    // phase by a constant, so slopes at negative angles equal those at |X|.
    const double x = std::abs(x0 + dx[j]);
    std::vector<CurvePoint> curve(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) {
      curve[i].s = delta[i];
      try {
        SystemParams p = ideal_system(x, delta[i], rabi_norm, gamma2);
        p.gamma3 = gamma3;
        const auto photon = atomic_to_photon(steady_state(p));
        curve[i].value = dominant_state_phase(reference, photon.rho);
      } catch (const NumericalError&) {
      }
    }
    unwrap(curve);
    const auto slope = gp_derivative(curve);
    for (std::size_t i = 0; i < delta.size(); ++i) g.z[i * dx.size() + j] = slope[i].value;
  });
  return g;
}

StabilityMap gamma_stability_map(std::span<const double> delta, std::span<const double> diff,
                                 const RecipeOptions& opt) {
  if (delta.size() < 2 || !(delta.front() < 0.0 && delta.back() > 0.0))
    throw ContractViolation("gamma_stability_map: detuning range must straddle 0");
  const double h = (delta.back() - delta.front()) / static_cast<double>(delta.size() - 1);

  StabilityMap out;
  auto path_for = [&](double d, double end, std::size_t n) {
    return PathSpec{scheme_params(Scheme::I, kDriveRef + d, kDriveRef, 0.0, 0.0, opt), ControlParam::delta1,
                    delta.front(), end, n};
  };
  // Same step as the map so the reference matches the grid cell at Delta = 0.
  const auto n_ref = static_cast<std::size_t>(std::lround(-delta.front() / h)) + 1;
  const auto ref_curve = gp_curve(path_for(0.0, 0.0, std::max<std::size_t>(n_ref, 2)));
  if (!ref_curve.back().value) throw UndefinedPhase("fig6 reference phase is undefined");
  out.reference = *ref_curve.back().value;
  if (out.reference == 0.0) throw UndefinedPhase("fig6 reference phase is zero");

  Grid2D& g = out.percent;
  g.x.assign(delta.begin(), delta.end());
  g.y.assign(diff.begin(), diff.end());
  g.z.resize(g.x.size() * g.y.size());
  parallel_for(diff.size(), opt.jobs, [&](std::size_t j) {
    try {
      const auto curve = gp_curve(path_for(diff[j], delta.back(), delta.size()));
      for (std::size_t i = 0; i < delta.size(); ++i)
        if (curve[i].value)
          g.z[i * diff.size() + j] = 100.0 * (*curve[i].value - out.reference) / std::abs(out.reference);
    } catch (const NumericalError&) {
    }
  });
  return out;
}

RunSummary run_recipe(Recipe r, const fs::path& out_dir, const RecipeOptions& opt) {
  if (opt.samples < 3) throw ContractViolation("recipes need at least 3 samples per axis");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
  Collector c;
  switch (r) {
    case Recipe::fig2: run_fig2(out_dir, opt, c); break;
    case Recipe::fig3a: run_fig3(Scheme::II, out_dir, opt, c); break;
    case Recipe::fig3b: run_fig3(Scheme::I, out_dir, opt, c); break;
    case Recipe::fig4: run_fig4(out_dir, opt, c); break;
    case Recipe::fig5: run_fig5(out_dir, opt, c); break;
    case Recipe::fig6: run_fig6(out_dir, opt, c); break;
  }
  return c.summary;
}

}  // namespace gpdiag
