#include "gpdiag/cascade.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gpdiag/errors.hpp"

namespace gpdiag {

namespace {

constexpr std::size_t kLevels = 3;

// |to><from| on the three-level space.
CMatrix transition(std::size_t to, std::size_t from) {
  CMatrix m(kLevels);
  m(to, from) = 1.0;
  return m;
}

struct Channel {
  double rate;
  CMatrix jump;
};

std::array<Channel, 2> decay_channels(const SystemParams& p) {
  return {Channel{p.gamma2, transition(0, 1)}, Channel{p.gamma3, transition(1, 2)}};
}

}  // namespace

SystemParams SystemParams::for_scheme(Scheme s, double omega1, double omega2, double delta1, double delta2) {
  SystemParams p;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.delta1 = delta1;
  p.delta2 = delta2;
  p.gamma2 = kDefaultGamma2;
  p.gamma3 = s == Scheme::II ? 0.0 : kSchemeOneGamma3;
  return p;
}

double SystemParams::rabi_norm() const noexcept { return std::hypot(omega1, omega2); }

double SystemParams::mixing_angle() const noexcept { return std::atan2(omega1, omega2); }

double SystemParams::reduced_detuning() const noexcept { return two_photon_detuning() / rabi_norm(); }

double SystemParams::reduced_linewidth() const noexcept { return gamma2 / (2.0 * rabi_norm()); }

void SystemParams::validate() const {
  for (double x : {omega1, omega2, delta1, delta2, gamma2, gamma3})
    if (!std::isfinite(x)) throw ContractViolation("system parameters must be finite");
  if (omega1 < 0.0 || omega2 < 0.0) throw ContractViolation("Rabi frequencies must be non-negative");
  if (gamma2 < 0.0 || gamma3 < 0.0) throw ContractViolation("decay rates must be non-negative");
}

Scheme parse_scheme(std::string_view name) {
  if (name == "I" || name == "1") return Scheme::I;
  if (name == "II" || name == "2") return Scheme::II;
  if (name == "custom") return Scheme::Custom;
  throw ContractViolation("unknown scheme '" + std::string(name) + "' (expected I, II or custom)");
}

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::I: return "I";
    case Scheme::II: return "II";
    case Scheme::Custom: return "custom";
  }
  return "custom";
}

CMatrix build_hamiltonian(const SystemParams& p) {
  CMatrix h(kLevels);
  h(1, 1) = -p.delta1;
  h(2, 2) = -(p.delta1 + p.delta2);
  h(0, 1) = h(1, 0) = p.omega1;
  h(1, 2) = h(2, 1) = p.omega2;
  return h;
}

CMatrix lindblad_rhs(const SystemParams& p, const CMatrix& rho) {
  if (rho.dim() != kLevels) throw ContractViolation("lindblad_rhs: expected a 3x3 matrix");
  const CMatrix h = build_hamiltonian(p);
  const Complex minus_i{0.0, -1.0};
  CMatrix out = (h * rho - rho * h) * minus_i;
  for (const auto& [rate, jump] : decay_channels(p)) {
    if (rate == 0.0) continue;
    const CMatrix jd = jump.adjoint();
    const CMatrix jdj = jd * jump;
    CMatrix d = jump * rho * jd - 0.5 * (jdj * rho + rho * jdj);
    out += d * rate;
  }
  return out;
}

CMatrix liouvillian(const SystemParams& p) {
  const CMatrix id = CMatrix::identity(kLevels);
  const CMatrix h = build_hamiltonian(p);
  CMatrix l = (kron(h, id) - kron(id, h.transpose())) * Complex{0.0, -1.0};
  for (const auto& [rate, jump] : decay_channels(p)) {
    if (rate == 0.0) continue;
    const CMatrix jdj = jump.adjoint() * jump;
    CMatrix d = kron(jump, jump.conj()) - 0.5 * (kron(jdj, id) + kron(id, jdj.transpose()));
    l += d * rate;
  }
  return l;
}

AtomicState steady_state(const SystemParams& p) {
  p.validate();
  return AtomicState{DensityMatrix(null_space_unit_trace(liouvillian(p)))};
}

double max_stable_step(const SystemParams& p) {
  const double scale = std::max({1.0, p.omega1, p.omega2, std::abs(p.delta1) + std::abs(p.delta2),
                                 p.gamma2, p.gamma3});
  return 0.01 / scale;
}

CMatrix integrate_rk4(const SystemParams& p, const CMatrix& rho0, double t_final, double dt) {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ContractViolation("evolve: t_final must be >= 0");
  if (!(dt > 0.0)) throw ContractViolation("evolve: step must be positive");
  if (dt > max_stable_step(p) * (1.0 + 1e-12))
    throw ContractViolation("evolve: step " + std::to_string(dt) + " exceeds stability limit " +
                            std::to_string(max_stable_step(p)));
  if (t_final == 0.0) return rho0;

  if (rho0.dim() != kLevels) throw ContractViolation("evolve: expected a 3x3 matrix");

  // Same right-hand side as lindblad_rhs, applied through the Liouvillian on vec(rho).
  constexpr std::size_t n = kLevels * kLevels;
  using State = std::array<Complex, n>;
  const CMatrix l = liouvillian(p);
  const auto apply = [&l](const State& x) {
    State y{};
    for (std::size_t r = 0; r < n; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) acc += l(r, c) * x[c];
      y[r] = acc;
    }
    return y;
  };
  const auto axpy = [](const State& x, double a, const State& k) {
    State y;
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * k[i];
    return y;
  };

  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(steps);
  State x;
  std::copy(rho0.data().begin(), rho0.data().end(), x.begin());
  for (std::size_t s = 0; s < steps; ++s) {
    const State k1 = apply(x);
    const State k2 = apply(axpy(x, 0.5 * h, k1));
    const State k3 = apply(axpy(x, 0.5 * h, k2));
    const State k4 = apply(axpy(x, h, k3));
    for (std::size_t i = 0; i < n; ++i) x[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  CMatrix rho(kLevels);
  std::copy(x.begin(), x.end(), rho.data().begin());
  return rho;
}

AtomicState evolve(const SystemParams& p, const AtomicState& rho0, double t_final, double dt) {
  p.validate();
  CMatrix rho = hermitize(integrate_rk4(p, rho0.rho.matrix(), t_final, dt));
  rho *= 1.0 / rho.trace().real();
  return AtomicState{DensityMatrix(std::move(rho))};
}

}  // namespace gpdiag
