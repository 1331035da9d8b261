#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <utility>

#include "spiked/ensembles.hpp"
#include "spiked/theory.hpp"

namespace spiked {

/// Top eigenpair of a Hermitian matrix with its phase fixed.
struct SpectralEstimate {
  double lambda_hat = 0.0;
  CVector v_hat;
  double gap = 0.0;                   // lambda_1 - lambda_2
  std::optional<double> overlap_sq;   // |<v_hat, v>|^2 when a planted v was given
};

/// Rotates v so that its largest-modulus entry (lowest index on ties) is real
/// and positive. v v* is unchanged.
void fix_phase(CVector& v);

/// Dense eigendecomposition. Throws NumericError on non-finite input or when
/// the computed pair misses ||H v - lambda v|| <= 1e-8 ||H||.
SpectralEstimate top_eig(const HermitianMatrix& h);
SpectralEstimate top_eig(const HermitianMatrix& h, const CVector& planted);

/// All eigenvalues in ascending order.
Eigen::VectorXd eigenvalues(const HermitianMatrix& h);
double operator_norm(const HermitianMatrix& h);

/// |<a, b>|^2 for unit vectors. Throws ValidationError on a zero vector or a
/// length mismatch.
double overlap(const CVector& a, const CVector& b);

/// LU factorization of (zI - W) at one shift, reusable across right-hand
/// sides. Real arithmetic is used when W is real and z is on the real line.
class Resolvent {
 public:
  Resolvent(const HermitianMatrix& w, Complex z);
  ~Resolvent();
  Resolvent(Resolvent&&) noexcept;
  Resolvent& operator=(Resolvent&&) noexcept;

  /// x with (zI - W) x = b. Throws SingularShiftError when the shift lies
  /// within 1e-10 of the spectrum or the relative residual exceeds 1e-10.
  CVector solve(const CVector& b) const;
  Complex shift() const noexcept { return z_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Complex z_;
};

CVector resolvent_solve(const HermitianMatrix& w, Complex z, const CVector& b);

/// Largest real root of v* R_W(z) v = 1/theta inside bracket, which must lie
/// strictly right of the spectrum of W. Bisection to a 1e-12 bracket, then a
/// single Newton step using v* R_W(z)^2 v. Throws BracketError when the
/// secular function does not change sign (no outlier in the bracket) or the
/// bracket is not right of spec(W).
double secular_root(const HermitianMatrix& w, const CVector& v, Theta theta, std::pair<double, double> bracket);

/// Bracket [||W|| + margin, ||W|| + theta + 1] for secular_root. Weyl's
/// inequality puts every eigenvalue of theta vv* + W below the upper end.
std::pair<double, double> outlier_bracket(const HermitianMatrix& w, Theta theta, double margin = 0.05);

/// R_W(lambda_hat + i*imag_offset) v, normalized and phase-fixed like top_eig.
CVector eigvec_via_resolvent(const HermitianMatrix& w, double lambda_hat, const CVector& v,
                             double imag_offset = 0.0);

/// |x* R_W(z) y - G_sc(z) x* y| for Re z > 2 + margin.
double local_law_residual(const HermitianMatrix& w, Complex z, const CVector& x, const CVector& y,
                          double margin = 0.1);

}  // namespace spiked
