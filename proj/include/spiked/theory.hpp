#pragma once

#include <complex>

namespace spiked {

using Complex = std::complex<double>;

/// Signal-to-noise ratio of the rank-one spike. Construction rejects
/// non-positive and non-finite values.
class Theta {
 public:
  explicit Theta(double value);
  double value() const noexcept { return value_; }
  bool supercritical() const noexcept { return value_ > 1.0; }

 private:
  double value_;
};

namespace theory {

/// Limit of the top eigenvalue of theta*vv* + W: 2 below the transition,
/// theta + 1/theta above it.
double lambda_of_theta(Theta theta);

/// Limit of |<v_hat, v>|^2: 0 for theta <= 1, else 1 - theta^-2.
double rho_squared(Theta theta);

/// Residual variance 1/theta^2 of the Gaussian surrogate. Only defined above
/// the transition; throws DomainError for theta <= 1.
double tau_squared(Theta theta);

double semicircle_density(double x);

/// Cauchy transform of the semicircle law, (z - sqrt(z^2 - 4)) / 2, on the
/// branch with G(z) ~ 1/z at infinity. Throws DomainError on [-2, 2].
Complex cauchy_transform_sc(Complex z);

/// Derivative (1 - z / sqrt(z^2 - 4)) / 2 on the same branch.
Complex cauchy_transform_sc_derivative(Complex z);

/// Standard normal CDF via erfc.
double std_normal_cdf(double x);

}  // namespace theory
}  // namespace spiked
