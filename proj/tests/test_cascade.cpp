#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gpdiag/cascade.hpp"
#include "gpdiag/errors.hpp"
#include "support.hpp"

using namespace gpdiag;
using namespace gpdiag::testing;

namespace {

CMatrix projector(std::size_t k) {
  CVector v(3);
  v[k] = 1.0;
  return CMatrix::outer(v, v);
}

// Optical Bloch equations written out element by element (upper triangle),
// levels 0, 1, 2 = |1>, |2>, |3>.
CMatrix bloch_by_hand(const SystemParams& p, const CMatrix& r) {
  const Complex i{0.0, 1.0};
  const double o1 = p.omega1, o2 = p.omega2, d1 = p.delta1, d2 = p.delta2, g2 = p.gamma2, g3 = p.gamma3;
  CMatrix out(3);
  out(0, 0) = -i * o1 * (r(1, 0) - r(0, 1)) + g2 * r(1, 1);
  out(1, 1) = -i * (o1 * (r(0, 1) - r(1, 0)) + o2 * (r(2, 1) - r(1, 2))) - g2 * r(1, 1) + g3 * r(2, 2);
  out(2, 2) = -i * o2 * (r(1, 2) - r(2, 1)) - g3 * r(2, 2);
  out(0, 1) = -i * (o1 * (r(1, 1) - r(0, 0)) + d1 * r(0, 1) - o2 * r(0, 2)) - 0.5 * g2 * r(0, 1);
  out(0, 2) = -i * (o1 * r(1, 2) - o2 * r(0, 1) + (d1 + d2) * r(0, 2)) - 0.5 * g3 * r(0, 2);
  out(1, 2) = -i * (o1 * r(0, 2) + d2 * r(1, 2) + o2 * (r(2, 2) - r(1, 1))) - 0.5 * (g2 + g3) * r(1, 2);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < a; ++b) out(a, b) = std::conj(out(b, a));
  return out;
}

double top_eigenvalue(const DensityMatrix& rho) { return hermitian_eig(rho.matrix()).values.back(); }

}  // namespace

TEST_SUITE("cascade") {
  TEST_CASE("Hamiltonian structure") {
    CHECK(build_hamiltonian(SystemParams::for_scheme(Scheme::I)).max_abs() == 0.0);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
      const CMatrix h = build_hamiltonian(random_params(rng, Scheme::I));
      CHECK(h.hermiticity_error() == 0.0);
      CHECK(h(0, 2) == Complex(0.0));
      CHECK(h(2, 0) == Complex(0.0));
    }

    const auto es = hermitian_eig(build_hamiltonian(SystemParams::for_scheme(Scheme::I, 3.0, 4.0)));
    CHECK(es.values[0] == doctest::Approx(-5.0));
    CHECK(std::abs(es.values[1]) < 1e-13);
    CHECK(es.values[2] == doctest::Approx(5.0));
  }

  TEST_CASE("master equation agrees with the hand-written Bloch equations") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
      const SystemParams p = random_params(rng, rep % 2 ? Scheme::I : Scheme::II);
      const CMatrix rho = random_density(rng, 3);
      CHECK(max_diff(lindblad_rhs(p, rho), bloch_by_hand(p, rho)) < 1e-12);
    }
  }

  TEST_CASE("lindblad_rhs fixed cases") {
    CHECK(lindblad_rhs(SystemParams::for_scheme(Scheme::I), projector(0)).max_abs() == 0.0);

    const SystemParams p = SystemParams::for_scheme(Scheme::I);
    const CMatrix expected = (projector(1) - projector(2)) * Complex(p.gamma3);
    CHECK(max_diff(lindblad_rhs(p, projector(2)), expected) < 1e-15);
  }

  TEST_CASE("trace preservation") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 200; ++rep) {
      const SystemParams p = random_params(rng, rep % 2 ? Scheme::I : Scheme::II);
      CHECK(std::abs(lindblad_rhs(p, random_density(rng, 3)).trace()) <= 1e-12);
    }
  }

  TEST_CASE("Liouvillian matches lindblad_rhs") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
      const SystemParams p = random_params(rng, rep % 2 ? Scheme::I : Scheme::II);
      const CMatrix rho = random_density(rng, 3);
      const CMatrix via_l = unvec(liouvillian(p) * std::span<const Complex>(vec(rho)));
      CHECK(max_diff(via_l, lindblad_rhs(p, rho)) < 1e-12);
    }
    SystemParams zero = SystemParams::for_scheme(Scheme::I);
    zero.gamma2 = zero.gamma3 = 0.0;
    CHECK(liouvillian(zero).max_abs() == 0.0);
  }

  TEST_CASE("vec(identity)^dagger L = 0") {
    std::mt19937_64 rng(14);
    const CVector id = vec(CMatrix::identity(3));
    for (int rep = 0; rep < 10; ++rep) {
      const CMatrix l = liouvillian(random_params(rng, Scheme::I));
      for (std::size_t col = 0; col < 9; ++col) {
        Complex s = 0.0;
        for (std::size_t row = 0; row < 9; ++row) s += std::conj(id[row]) * l(row, col);
        CHECK(std::abs(s) < 1e-13);
      }
    }
  }

  TEST_CASE("dark steady state of the decoherence-free system") {
    const auto rho = steady_state(SystemParams::for_scheme(Scheme::II, 6.0, 6.0)).rho;
    const CVector d{1.0 / std::numbers::sqrt2, 0.0, -1.0 / std::numbers::sqrt2};
    CHECK(max_diff(rho.matrix(), CMatrix::outer(d, d)) < 1e-10);
    const auto es = hermitian_eig(rho.matrix());
    CHECK(std::abs(es.values[0]) < 1e-10);
    CHECK(std::abs(es.values[1]) < 1e-10);
    CHECK(std::abs(es.values[2] - 1.0) < 1e-10);
  }

  TEST_CASE("undriven metastable system relaxes to the ground state") {
    const auto rho = steady_state(SystemParams::for_scheme(Scheme::I)).rho;
    CHECK(max_diff(rho.matrix(), projector(0)) < 1e-12);
  }

  TEST_CASE("null-space steady state matches long-time evolution") {
    const SystemParams p = SystemParams::for_scheme(Scheme::I, 6.0, 6.0);
    const auto ss = steady_state(p).rho;
    const AtomicState ground{DensityMatrix(projector(0))};
    const auto late = evolve(p, ground, 50.0, max_stable_step(p));
    CHECK(max_diff(ss.matrix(), late.rho.matrix()) < 1e-6);
  }

  TEST_CASE("evolve: zero time and free decay") {
    const SystemParams p = SystemParams::for_scheme(Scheme::I);
    const AtomicState excited{DensityMatrix(projector(1))};
    CHECK(max_diff(evolve(p, excited, 0.0, 1e-3).rho.matrix(), projector(1)) == 0.0);
    const auto after = evolve(p, excited, 1.0, max_stable_step(p));
    CHECK(std::abs(after.rho(1, 1).real() - std::exp(-p.gamma2)) < 1e-6);
  }

  TEST_CASE("RK4 converges at fourth order") {
    const SystemParams p = SystemParams::for_scheme(Scheme::I, 6.0, 3.0, 1.0, -0.5);
    const CMatrix rho0 = projector(0);
    const double h = max_stable_step(p);
    const double t = 0.5;
    const CMatrix a = integrate_rk4(p, rho0, t, h);
    const CMatrix b = integrate_rk4(p, rho0, t, h / 2);
    const CMatrix c = integrate_rk4(p, rho0, t, h / 4);
    const double ratio = max_diff(a, b) / max_diff(b, c);
    MESSAGE("successive-difference ratio " << ratio);
    CHECK(ratio > 16.0 / 2.0);
    CHECK(ratio < 16.0 * 2.0);
  }

  TEST_CASE("evolve rejects bad steps") {
    const SystemParams p = SystemParams::for_scheme(Scheme::I, 6.0, 6.0);
    const AtomicState ground{DensityMatrix(projector(0))};
    CHECK_THROWS_AS(evolve(p, ground, 1.0, 10.0 * max_stable_step(p)), ContractViolation);
    CHECK_THROWS_AS(evolve(p, ground, -1.0, 1e-3), ContractViolation);
    CHECK_THROWS_AS(evolve(p, ground, 1.0, 0.0), ContractViolation);
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(steady_state(SystemParams::for_scheme(Scheme::I, -1.0, 1.0)), ContractViolation);
    SystemParams p = SystemParams::for_scheme(Scheme::I, 1.0, 1.0);
    p.gamma3 = -1.0;
    CHECK_THROWS_AS(steady_state(p), ContractViolation);
    p.gamma3 = std::nan("");
    CHECK_THROWS_AS(steady_state(p), ContractViolation);
  }

  TEST_CASE("steady states are positive over a detuning / drive grid") {
    for (Scheme s : {Scheme::I, Scheme::II})
      for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b) {
          const double d1 = -6.0 + 12.0 * a / 19.0;
          const double o1 = 0.5 + 5.5 * b / 19.0;
          const auto es = hermitian_eig(steady_state(SystemParams::for_scheme(s, o1, 6.0, d1, 0.0)).rho.matrix());
          CHECK(es.values.front() >= -1e-10);
        }
  }

  TEST_CASE("dark-state family at two-photon resonance") {
    for (int k = 0; k < 50; ++k) {
      const double x = 0.05 + (std::numbers::pi / 2 - 0.1) * k / 49.0;
      const double r = 6.0;
      const auto rho = steady_state(SystemParams::for_scheme(Scheme::II, r * std::sin(x), r * std::cos(x))).rho;
      const auto es = hermitian_eig(rho.matrix());
      CHECK(std::abs(es.values.back() - 1.0) <= 1e-8);
      const CVector dark{std::cos(x), 0.0, -std::sin(x)};
      CHECK(std::norm(inner(dark, es.vector(2))) >= 1.0 - 1e-8);
    }
  }

  TEST_CASE("metastable system is purest at two-photon resonance") {
    for (auto [o1, o2] : {std::pair{6.0, 6.0}, std::pair{3.0, 6.0}, std::pair{1.5, 6.0}}) {
      double best = -1.0, best_delta = 99.0;
      for (int k = 0; k <= 40; ++k) {
        const double d = -2.0 + 0.1 * k;
        const double top = top_eigenvalue(steady_state(SystemParams::for_scheme(Scheme::I, o1, o2, d, 0.0)).rho);
        if (top > best) best = top, best_delta = d;
      }
      CHECK(std::abs(best_delta) < 1e-12);
      CHECK(best < 1.0);
    }
  }

  TEST_CASE("derived parameters") {
    const SystemParams p = SystemParams::for_scheme(Scheme::II, 6.0, 6.0, 1.0, 2.0);
    CHECK(p.gamma3 == 0.0);
    CHECK(p.two_photon_detuning() == 3.0);
    CHECK(p.rabi_norm() == doctest::Approx(6.0 * std::numbers::sqrt2));
    CHECK(p.mixing_angle() == doctest::Approx(std::numbers::pi / 4));
    CHECK(p.reduced_linewidth() == doctest::Approx(0.3535533906));
    CHECK(parse_scheme("II") == Scheme::II);
    CHECK(parse_scheme("1") == Scheme::I);
    CHECK_THROWS_AS(parse_scheme("III"), ContractViolation);
  }
}
