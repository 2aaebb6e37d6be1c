#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gpdiag/analytic.hpp"
#include "gpdiag/gp_engine.hpp"
#include "gpdiag/photonstate.hpp"
#include "support.hpp"

using namespace gpdiag;
using namespace gpdiag::testing;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRabi = 6.0 * std::numbers::sqrt2;
const double kG21 = kDefaultGamma2 / (2.0 * 6.0 * std::numbers::sqrt2);

DensityMatrix numeric_photon(double x, double dbar) {
  return atomic_to_photon(steady_state(ideal_system(x, dbar, kRabi))).rho;
}

// Dominant eigenvector with a real positive |00> amplitude.
CVector anchored(const DensityMatrix& rho) {
  const auto es = hermitian_eig(rho.matrix());
  CVector v = es.vector(2);
  const Complex ph = std::conj(v[0]) / std::abs(v[0]);
  for (auto& a : v) a *= ph;
  return v;
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("reduced variables") {
    const IdealParams ip = IdealParams::from(SystemParams::for_scheme(Scheme::II, 6.0, 6.0, 0.5, 0.5));
    CHECK(ip.mixing_angle == doctest::Approx(kPi / 4));
    CHECK(ip.reduced_detuning == doctest::Approx(1.0 / kRabi));
    CHECK(ip.reduced_linewidth == doctest::Approx(0.354).epsilon(1e-3));

    const SystemParams back = ideal_system(0.3, 0.2, kRabi);
    const IdealParams round = IdealParams::from(back);
    CHECK(round.mixing_angle == doctest::Approx(0.3));
    CHECK(round.reduced_detuning == doctest::Approx(0.2));
    CHECK(back.gamma3 == 0.0);
  }

  TEST_CASE("ideal density matrix at resonance is the dark-state projector") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2);
    for (int rep = 0; rep < 50; ++rep) {
      const double x = angle(rng);
      const CMatrix m = ideal_density_matrix({x, 0.0, 0.354});
      const CVector d = dark_state(x);
      CHECK(m == CMatrix::outer(d, d));
      CHECK(std::abs(m.trace() - 1.0) < 1e-15);
      CHECK(std::abs(ideal_density_matrix({x, 0.3, 0.354}).trace() - 1.0) < 1e-15);
      CHECK(std::abs(norm(d) - 1.0) < 1e-15);
    }
  }

  TEST_CASE("ideal density matrix agrees with the numerics to second order") {
    const double dbar = 0.01;
    const CMatrix ideal = ideal_density_matrix({kPi / 4, dbar, kG21});
    const CMatrix numeric = numeric_photon(kPi / 4, dbar).matrix();
    CHECK(max_diff(ideal, numeric) <= 5 * dbar * dbar);
  }

  TEST_CASE("dark state") {
    const CVector d0 = dark_state(0.0);
    CHECK(d0[0] == Complex(0.0));
    CHECK(d0[2] == Complex(1.0));
    const CVector d = dark_state(kPi / 4);
    CHECK(d[0].real() == doctest::Approx(-1 / std::numbers::sqrt2));
    CHECK(d[2].real() == doctest::Approx(1 / std::numbers::sqrt2));
  }

  TEST_CASE("pure concurrence equals the Wootters value on the dark state") {
    CHECK(pure_concurrence(kPi / 4) == doctest::Approx(1.0));
    CHECK(pure_concurrence(0.0) == 0.0);
    for (int k = 0; k < 50; ++k) {
      const double x = (kPi / 2) * k / 49.0;
      const CVector d = dark_state(x);
      const auto q = embed_two_qubit(TwoPhotonState{DensityMatrix(CMatrix::outer(d, d))});
      CHECK(std::abs(pure_concurrence(x) - concurrence(q).c) < 1e-10);
    }
  }

  TEST_CASE("beta coefficient, hand-evaluated values") {
    // X = pi/4, g = 0: -(1/8)(1/4)(4 - 0 + cos pi) + 1 * (cos(pi/2) + cos pi) / 16 = -3/32 - 2/32
    CHECK(beta_coefficient(kPi / 4, 0.0) == doctest::Approx(-5.0 / 32.0).epsilon(1e-14));
    // X = pi/4, g^2 = 1/8: -(1/32)(3 + 2) - 1/16
    CHECK(beta_coefficient(kPi / 4, 1 / (2 * std::numbers::sqrt2)) == doctest::Approx(-7.0 / 32.0).epsilon(1e-14));
    CHECK(std::abs(beta_coefficient(kPi / 2, 0.354)) < 1e-15);
    for (int a = 0; a <= 20; ++a)
      for (int b = 0; b <= 20; ++b) CHECK(std::isfinite(beta_coefficient(kPi / 2 * a / 20, b / 20.0)));
  }

  TEST_CASE("beta diagnostic: second-order overlap from the numerics") {
    // Re <psi(0)|psi(d)> = 1 + beta d^2 + O(d^4); symmetric difference removes the odd part.
    const double h = 1e-3;
    for (double x : {kPi / 6, kPi / 4, kPi / 3}) {
      const CVector p0 = anchored(numeric_photon(x, 0.0));
      const double plus = inner(p0, anchored(numeric_photon(x, h))).real();
      const double minus = inner(p0, anchored(numeric_photon(x, -h))).real();
      const double numeric = (plus + minus - 2.0) / (2 * h * h);
      const double rederived = beta_coefficient_rederived(x, kG21);
      const double verbatim = beta_coefficient(x, kG21);
      MESSAGE("X = " << x << ": numeric " << numeric << ", re-derived " << rederived << ", transcribed " << verbatim);
      CHECK(std::abs(numeric - rederived) < 1e-4);
    }
  }

  TEST_CASE("taylor_gp basics") {
    for (double x : {0.0, 0.4, kPi / 4, 1.2})
      for (double dx : {-0.1, 0.0, 0.2}) CHECK(taylor_gp(x, 0.0, dx, 0.354) == 0.0);
    CHECK(std::abs(taylor_gp(kPi / 2, 0.05, 0.1, 0.354)) < 1e-16);

    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2), small(-0.2, 0.2);
    for (int rep = 0; rep < 100; ++rep) {
      const double x = angle(rng), d = small(rng);
      CHECK(std::abs(taylor_gp(x, d, 0.0, kG21) + taylor_gp(x, -d, 0.0, kG21)) <= 1e-12);
    }
  }

  TEST_CASE("taylor_gp leading slope and cross term") {
    for (double x : {kPi / 6, kPi / 4, kPi / 3}) {
      const double d = 1e-7;
      const double slope = taylor_gp(x, d, 0.0, kG21) / d;
      CHECK(std::abs(slope + kG21 * std::pow(std::cos(x), 2)) < 1e-10);

      // mixed derivative at the origin: -g21 C / 4, with C the Wootters value of the dark state
      const double e = 1e-4;
      const double mixed = (taylor_gp(x, e, e, kG21) - taylor_gp(x, e, -e, kG21) - taylor_gp(x, -e, e, kG21) +
                            taylor_gp(x, -e, -e, kG21)) /
                           (4 * e * e);
      const CVector dk = dark_state(x);
      const double c = concurrence(embed_two_qubit(TwoPhotonState{DensityMatrix(CMatrix::outer(dk, dk))})).c;
      CHECK(std::abs(mixed + kG21 * c / 4) < 1e-6);
    }
    CHECK(taylor_gp(kPi / 4, 1e-8, 0.0, 0.354) / 1e-8 == doctest::Approx(-0.354 / 2).epsilon(1e-8));
  }

  TEST_CASE("separable point varies faster than the Bell point") {
    for (double d : {0.02, 0.05, 0.1})
      for (double dx : {-0.1, 0.0, 0.1}) {
        const double e = 1e-6;
        auto slope = [&](double x) { return (taylor_gp(x, d + e, dx, kG21) - taylor_gp(x, d - e, dx, kG21)) / (2 * e); };
        CHECK(std::abs(slope(0.0)) > std::abs(slope(kPi / 4)));
      }
  }

  TEST_CASE("expansion tracks the numeric resonance phase") {
    const double d = 1e-2;
    for (double x : {kPi / 6, kPi / 4, kPi / 3}) {
      const double numeric = dominant_state_phase(numeric_photon(x, 0.0), numeric_photon(x, d));
      const double series = taylor_gp(x, d, 0.0, kG21);
      CHECK(std::abs(numeric - series) <= 0.1 * std::abs(series));
    }
  }
}
