#include "spiked/theory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spiked/errors.hpp"

namespace spiked {

Theta::Theta(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError("theta must be a positive finite number, got " + std::to_string(value));
}

namespace theory {
namespace {

// sqrt(z - 2) * sqrt(z + 2) with principal roots: the G ~ 1/z branch on the
// whole cut plane.
Complex branch_root(Complex z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0)
    throw DomainError("semicircle Cauchy transform is undefined on the cut [-2, 2]");
  return std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
}

}  // namespace

double lambda_of_theta(Theta theta) {
  const double t = theta.value();
  return t > 1.0 ? t + 1.0 / t : 2.0;
}

double rho_squared(Theta theta) {
  const double t = theta.value();
  return t > 1.0 ? 1.0 - 1.0 / (t * t) : 0.0;
}

double tau_squared(Theta theta) {
  if (!theta.supercritical())
    throw DomainError("tau is only defined for theta > 1");
  const double t = theta.value();
  return 1.0 / (t * t);
}

double semicircle_density(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

Complex cauchy_transform_sc(Complex z) {
  const Complex root = branch_root(z);
  // For large |z| the difference z - root cancels; use the conjugate form
  // 2 / (z + root), which is algebraically identical.
  return 2.0 / (z + root);
}

Complex cauchy_transform_sc_derivative(Complex z) {
  const Complex root = branch_root(z);
  return 0.5 * (1.0 - z / root);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace theory
}  // namespace spiked
