#include "gpdiag/analytic.hpp"

#include <cmath>

namespace gpdiag {

IdealParams IdealParams::from(const SystemParams& p) {
  return {p.mixing_angle(), p.reduced_detuning(), p.reduced_linewidth()};
}

SystemParams ideal_system(double mixing_angle, double reduced_detuning, double rabi_norm, double gamma2) {
  SystemParams p = SystemParams::for_scheme(Scheme::II, rabi_norm * std::sin(mixing_angle),
                                            rabi_norm * std::cos(mixing_angle), reduced_detuning * rabi_norm, 0.0);
  p.gamma2 = gamma2;
  return p;
}

CMatrix ideal_density_matrix(const IdealParams& p) {
  const double s = std::sin(p.mixing_angle);
  const double c = std::cos(p.mixing_angle);
  const double d = p.reduced_detuning;
  CMatrix m(3);
  m(0, 0) = s * s;
  m(0, 1) = d * c * s * s;
  m(0, 2) = -s * c * Complex{1.0, p.reduced_linewidth * d};
  m(1, 1) = 0.0;
  m(1, 2) = -d * c * c * s;
  m(2, 2) = c * c;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return m;
}

CVector dark_state(double mixing_angle) {
  return {-std::sin(mixing_angle), 0.0, std::cos(mixing_angle)};
}

double pure_concurrence(double mixing_angle) { return std::sin(2.0 * mixing_angle); }

double beta_coefficient(double mixing_angle, double g21) {
  const double x = mixing_angle;
  const double g2 = g21 * g21;
  const double cc = pure_concurrence(x);
  const double c4 = std::pow(std::cos(x), 4);
  return -(1.0 / 8.0) * c4 * (4.0 + 16.0 * g2 - (5.0 + 8.0 * g2) * std::cos(2.0 * x) + std::cos(4.0 * x)) +
         cc * cc * ((1.0 + 8.0 * g2) * std::cos(2.0 * x) + std::cos(4.0 * x)) / 16.0;
}

double beta_coefficient_rederived(double mixing_angle, double g21) {
  const double c = std::cos(mixing_angle);
  const double s = std::sin(mixing_angle);
  return -c * c * (g21 * g21 + s * s) / 2.0;
}

double taylor_gp(double mixing_angle, double delta, double dX, double g21) {
  const double c = std::cos(mixing_angle);
  const double num = -g21 * c * c * delta - g21 * pure_concurrence(mixing_angle) * delta * dX / 4.0;
  const double den = 1.0 - dX * dX / 2.0 + beta_coefficient(mixing_angle, g21) * delta * delta;
  return std::atan2(num, den);
}

}  // namespace gpdiag
