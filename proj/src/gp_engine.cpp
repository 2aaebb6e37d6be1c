#include "gpdiag/gp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpdiag/errors.hpp"
#include "gpdiag/photonstate.hpp"

namespace gpdiag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAmbiguityTolerance = 1e-6;

// std::arg maps onto [-pi, pi]; fold -pi onto +pi.
double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

SpectralPoint descending_spectrum(const DensityMatrix& rho) {
  const auto es = hermitian_eig(rho.matrix());
  const std::size_t n = es.values.size();
  SpectralPoint pt{std::vector<double>(n), CMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    pt.values[k] = es.values[n - 1 - k];
    pt.vectors.set_column(k, es.vector(n - 1 - k));
  }
  return pt;
}

std::vector<std::size_t> branches_kept(const SpectralTrajectory& traj, std::size_t last) {
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < traj.branches(); ++k)
    if (traj.points.front().values[k] >= traj.eps_lambda && traj.points[last].values[k] >= traj.eps_lambda)
      kept.push_back(k);
  return kept;
}

double step_phase(const SpectralTrajectory& traj, std::size_t j, std::size_t k) {
  return std::arg(inner(traj.vector(j, k), traj.vector(j + 1, k)));
}

// transport[k] holds sum_{i < last} Arg <phi_k(i)|phi_k(i+1)>.
GeometricPhaseResult phase_at(const SpectralTrajectory& traj, std::size_t last,
                              std::span<const double> transport) {
  const auto kept = branches_kept(traj, last);
  if (kept.empty()) throw UndefinedPhase("no eigenvalue branch is populated at both ends of the path");

  GeometricPhaseResult r;
  r.resolution_warning = traj.resolution_warning;
  Complex total = 0.0;
  for (std::size_t k : kept) {
    const Complex overlap = inner(traj.vector(0, k), traj.vector(last, k));
    const Complex z = overlap * std::polar(1.0, -transport[k]);
    const Complex term = std::sqrt(traj.points.front().values[k] * traj.points[last].values[k]) * z;
    r.branch_terms.push_back({k, term});
    total += term;
  }
  r.visibility = std::abs(total);
  if (r.visibility <= kVisibilityEpsilon)
    throw UndefinedPhase("visibility " + std::to_string(r.visibility) + " below threshold");
  r.gamma_g = principal_arg(total);
  return r;
}

}  // namespace

ControlParam parse_control_param(std::string_view name) {
  if (name == "delta1") return ControlParam::delta1;
  if (name == "delta2") return ControlParam::delta2;
  if (name == "omega1") return ControlParam::omega1;
  if (name == "omega2") return ControlParam::omega2;
  throw ContractViolation("unknown control parameter '" + std::string(name) + "'");
}

std::string_view control_param_name(ControlParam p) {
  switch (p) {
    case ControlParam::delta1: return "delta1";
    case ControlParam::delta2: return "delta2";
    case ControlParam::omega1: return "omega1";
    case ControlParam::omega2: return "omega2";
  }
  return "delta1";
}

double get_param(const SystemParams& p, ControlParam which) {
  switch (which) {
    case ControlParam::delta1: return p.delta1;
    case ControlParam::delta2: return p.delta2;
    case ControlParam::omega1: return p.omega1;
    case ControlParam::omega2: return p.omega2;
  }
  return 0.0;
}

SystemParams with_param(SystemParams p, ControlParam which, double value) {
  switch (which) {
    case ControlParam::delta1: p.delta1 = value; break;
    case ControlParam::delta2: p.delta2 = value; break;
    case ControlParam::omega1: p.omega1 = value; break;
    case ControlParam::omega2: p.omega2 = value; break;
  }
  return p;
}

void PathSpec::validate() const {
  if (samples < 2) throw ContractViolation("path needs at least 2 samples");
  if (!(start < end)) throw ContractViolation("path range must satisfy start < end");
  params_at(0).validate();
  params_at(samples - 1).validate();
}

double PathSpec::value_at(std::size_t j) const {
  const double t = static_cast<double>(j) / static_cast<double>(samples - 1);
  return std::lerp(start, end, t);
}

std::vector<double> PathSpec::values() const {
  std::vector<double> v(samples);
  for (std::size_t j = 0; j < samples; ++j) v[j] = value_at(j);
  return v;
}

SystemParams PathSpec::params_at(std::size_t j) const { return with_param(base, varying, value_at(j)); }

std::vector<DensityMatrix> sample_path(const PathSpec& spec) {
  spec.validate();
  std::vector<DensityMatrix> states;
  states.reserve(spec.samples);
  for (std::size_t j = 0; j < spec.samples; ++j) {
    try {
      states.push_back(atomic_to_photon(steady_state(spec.params_at(j))).rho);
    } catch (const DegenerateSteadyState& e) {
      throw DegenerateSteadyState(e.deficiency(), j);
    }
  }
  return states;
}

SpectralTrajectory track_spectrum(std::span<const DensityMatrix> states, double eps_lambda,
                                  std::optional<double> spacing) {
  if (states.size() < 2) throw ContractViolation("track_spectrum needs at least 2 states");
  const std::size_t n = states.front().dim();
  for (const auto& s : states)
    if (s.dim() != n) throw ContractViolation("track_spectrum: states differ in dimension");

  SpectralTrajectory traj;
  traj.eps_lambda = eps_lambda;
  traj.points.reserve(states.size());
  traj.points.push_back(descending_spectrum(states.front()));
  traj.min_overlap.assign(n, 1.0);

  for (std::size_t j = 1; j < states.size(); ++j) {
    const SpectralPoint fresh = descending_spectrum(states[j]);
    const SpectralPoint& prev = traj.points.back();

    std::vector<std::vector<double>> overlap(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m)
        overlap[k][m] = std::abs(inner(prev.vectors.column(k), fresh.vectors.column(m)));

    std::vector<std::size_t> match(n, n);
    std::vector<bool> taken(n, false);
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t bk = n, bm = n;
      double best = -1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (match[k] != n) continue;
        for (std::size_t m = 0; m < n; ++m)
          if (!taken[m] && overlap[k][m] > best) {
            best = overlap[k][m];
            bk = k;
            bm = m;
          }
      }
      const bool populated = prev.values[bk] >= eps_lambda && fresh.values[bm] >= eps_lambda;
      if (populated)
        for (std::size_t m = 0; m < n; ++m)
          if (m != bm && !taken[m] && best - overlap[bk][m] < kAmbiguityTolerance) traj.resolution_warning = true;
      match[bk] = bm;
      taken[bm] = true;
    }

    SpectralPoint pt{std::vector<double>(n), CMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
      pt.values[k] = fresh.values[match[k]];
      pt.vectors.set_column(k, fresh.vectors.column(match[k]));
      traj.min_overlap[k] = std::min(traj.min_overlap[k], overlap[k][match[k]]);
    }
    traj.points.push_back(std::move(pt));
  }

  for (std::size_t k = 0; k < n; ++k)
    if (traj.points.front().values[k] >= eps_lambda && traj.points.back().values[k] >= eps_lambda)
      traj.kept_branches.push_back(k);

  const double h = spacing.value_or(1.0 / static_cast<double>(states.size() - 1));
  for (std::size_t k : traj.kept_branches)
    if (traj.min_overlap[k] < 1.0 - 10.0 * h * h) traj.resolution_warning = true;
  return traj;
}

GeometricPhaseResult mixed_state_gp(const SpectralTrajectory& traj) {
  if (traj.size() == 0) throw ContractViolation("mixed_state_gp: empty trajectory");
  return mixed_state_gp(traj, traj.size() - 1);
}

GeometricPhaseResult mixed_state_gp(const SpectralTrajectory& traj, std::size_t last) {
  if (last >= traj.size()) throw ContractViolation("mixed_state_gp: prefix end out of range");
  std::vector<double> transport(traj.branches(), 0.0);
  for (std::size_t k = 0; k < traj.branches(); ++k)
    for (std::size_t j = 0; j < last; ++j) transport[k] += step_phase(traj, j, k);
  return phase_at(traj, last, transport);
}

double pancharatnam_phase(std::span<const Complex> psi0, std::span<const Complex> psi1) {
  if (std::abs(norm(psi0) - 1.0) > 1e-10 || std::abs(norm(psi1) - 1.0) > 1e-10)
    throw ContractViolation("pancharatnam_phase: states must be normalized");
  const Complex overlap = inner(psi0, psi1);
  if (std::abs(overlap) < kVisibilityEpsilon) throw UndefinedPhase("orthogonal states have no relative phase");
  return principal_arg(overlap);
}

namespace {

CVector anchored_dominant(const DensityMatrix& rho, std::size_t anchor) {
  const auto es = hermitian_eig(rho.matrix());
  CVector v = es.vector(es.values.size() - 1);
  if (anchor >= v.size()) throw ContractViolation("dominant_state_phase: anchor out of range");
  const double mag = std::abs(v[anchor]);
  if (mag < 1e-12) throw UndefinedPhase("gauge anchor amplitude vanishes");
  const Complex rephase = std::conj(v[anchor]) / mag;
  for (auto& x : v) x *= rephase;
  return v;
}

}  // namespace

double dominant_state_phase(const DensityMatrix& reference, const DensityMatrix& state, std::size_t anchor) {
  return pancharatnam_phase(anchored_dominant(reference, anchor), anchored_dominant(state, anchor));
}

double dominant_state_phase(std::span<const Complex> reference, const DensityMatrix& state, std::size_t anchor) {
  if (reference.size() != state.dim()) throw ContractViolation("dominant_state_phase: dimension mismatch");
  return pancharatnam_phase(reference, anchored_dominant(state, anchor));
}

void unwrap(std::vector<CurvePoint>& curve) {
  std::optional<double> prev;
  for (auto& pt : curve) {
    if (!pt.value) continue;
    if (prev) *pt.value -= kTwoPi * std::round((*pt.value - *prev) / kTwoPi);
    prev = pt.value;
  }
}

std::vector<CurvePoint> gp_curve(const SpectralTrajectory& traj, std::span<const double> s) {
  if (s.size() != traj.size()) throw ContractViolation("gp_curve: abscissa length mismatch");
  std::vector<CurvePoint> curve(traj.size());
  std::vector<double> transport(traj.branches(), 0.0);
  curve[0] = {s[0], 0.0};
  for (std::size_t j = 1; j < traj.size(); ++j) {
    for (std::size_t k = 0; k < traj.branches(); ++k) transport[k] += step_phase(traj, j - 1, k);
    curve[j].s = s[j];
    try {
      curve[j].value = phase_at(traj, j, transport).gamma_g;
    } catch (const UndefinedPhase&) {
      curve[j].value.reset();
    }
  }
  unwrap(curve);
  return curve;
}

std::vector<CurvePoint> gp_curve(const PathSpec& spec) {
  const auto states = sample_path(spec);
  const double h = (spec.end - spec.start) / static_cast<double>(spec.samples - 1);
  const auto traj = track_spectrum(states, kBranchEpsilon, h);
  const auto s = spec.values();
  return gp_curve(traj, s);
}

std::vector<CurvePoint> gp_derivative(std::span<const CurvePoint> curve) {
  const std::size_t m = curve.size();
  if (m < 3) throw ContractViolation("gp_derivative needs at least 3 points");
  const double h = (curve[m - 1].s - curve[0].s) / static_cast<double>(m - 1);
  if (!(h > 0.0)) throw ContractViolation("gp_derivative: abscissae must increase");
  for (std::size_t j = 1; j < m; ++j)
    if (std::abs((curve[j].s - curve[j - 1].s) - h) > 1e-9 * h)
      throw ContractViolation("gp_derivative: non-uniform spacing");

  auto at = [&](std::ptrdiff_t j) -> std::optional<double> {
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(m)) return std::nullopt;
    return curve[static_cast<std::size_t>(j)].value;
  };

  std::vector<CurvePoint> out(m);
  for (std::size_t u = 0; u < m; ++u) {
    const auto j = static_cast<std::ptrdiff_t>(u);
    out[u].s = curve[u].s;
    const auto f0 = at(j), fm1 = at(j - 1), fp1 = at(j + 1);
    if (!f0) continue;
    if (fm1 && fp1) {
      out[u].value = (*fp1 - *fm1) / (2.0 * h);
    } else if (const auto fp2 = at(j + 2); fp1 && fp2) {
      out[u].value = (-3.0 * *f0 + 4.0 * *fp1 - *fp2) / (2.0 * h);
    } else if (const auto fm2 = at(j - 2); fm1 && fm2) {
      out[u].value = (3.0 * *f0 - 4.0 * *fm1 + *fm2) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace gpdiag
