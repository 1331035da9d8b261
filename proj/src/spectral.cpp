#include "spiked/spectral.hpp"

#include <cmath>
#include <variant>

#include "spiked/errors.hpp"

namespace spiked {
namespace {

using Eigen::Index;

constexpr double kResidualTol = 1e-8;
constexpr double kSolveTol = 1e-10;
constexpr double kMinDistance = 1e-10;

void require_finite(const HermitianMatrix& h) {
  if (!h.entries().allFinite()) throw NumericError("matrix has non-finite entries");
}

// v* R(z) v and ||R(z) v||^2 for real z right of the spectrum, through a
// Cholesky factor of zI - W (which is positive definite exactly there).
struct SecularEval {
  double quad;    // v* R v
  double quad2;   // v* R^2 v
};

class ShiftedCholesky {
 public:
  ShiftedCholesky(const HermitianMatrix& w, double z) : real_(w.is_real()) {
    const auto n = static_cast<Index>(w.size());
    if (real_) {
      Eigen::MatrixXd a = -w.real_entries();
      a.diagonal().array() += z;
      rllt_.compute(a);
      ok_ = rllt_.info() == Eigen::Success;
    } else {
      CMatrix a = -w.entries();
      a.diagonal().array() += Complex(z, 0.0);
      cllt_.compute(a);
      ok_ = cllt_.info() == Eigen::Success;
    }
    (void)n;
  }

  bool positive_definite() const { return ok_; }

  SecularEval evaluate(const CVector& v) const {
    if (real_ && v.imag().isZero(0.0)) {
      const Eigen::VectorXd y = rllt_.matrixL().solve(v.real());
      const Eigen::VectorXd x = rllt_.matrixU().solve(y);
      return {y.squaredNorm(), x.squaredNorm()};
    }
    if (real_) {
      const Eigen::VectorXd yr = rllt_.matrixL().solve(v.real());
      const Eigen::VectorXd yi = rllt_.matrixL().solve(v.imag());
      const Eigen::VectorXd xr = rllt_.matrixU().solve(yr);
      const Eigen::VectorXd xi = rllt_.matrixU().solve(yi);
      return {yr.squaredNorm() + yi.squaredNorm(), xr.squaredNorm() + xi.squaredNorm()};
    }
    const CVector y = cllt_.matrixL().solve(v);
    const CVector x = cllt_.matrixU().solve(y);
    return {y.squaredNorm(), x.squaredNorm()};
  }

 private:
  bool real_;
  bool ok_ = false;
  Eigen::LLT<Eigen::MatrixXd> rllt_;
  Eigen::LLT<CMatrix> cllt_;
};

}  // namespace

void fix_phase(CVector& v) {
  Index best = 0;
  double best_mod = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mod) {
      best_mod = m;
      best = i;
    }
  }
  if (best_mod <= 0.0) return;
  const Complex rot = std::conj(v(best)) / best_mod;
  v *= rot;
  v(best) = Complex(std::abs(v(best)), 0.0);
}

double overlap(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw ValidationError("overlap of vectors with different lengths");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ValidationError("overlap with a zero vector");
  return std::norm(a.dot(b)) / (na * na * nb * nb);
}

SpectralEstimate top_eig(const HermitianMatrix& h) {
  require_finite(h);
  const auto n = static_cast<Index>(h.size());
  if (n < 2) throw ValidationError("top_eig needs n >= 2");
  SpectralEstimate est;
  Eigen::VectorXd evals;
  if (h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real_entries());
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
    evals = solver.eigenvalues();
    est.v_hat = solver.eigenvectors().col(n - 1).cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.entries());
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
    evals = solver.eigenvalues();
    est.v_hat = solver.eigenvectors().col(n - 1);
  }
  est.lambda_hat = evals(n - 1);
  est.gap = evals(n - 1) - evals(n - 2);
  est.v_hat.normalize();
  fix_phase(est.v_hat);

  const double norm_h = std::max(std::abs(evals(0)), std::abs(evals(n - 1)));
  const double residual = (h.entries() * est.v_hat - est.lambda_hat * est.v_hat).norm();
  if (residual > kResidualTol * std::max(norm_h, 1e-300))
    throw NumericError("top eigenpair residual " + std::to_string(residual) + " exceeds tolerance");
  return est;
}

SpectralEstimate top_eig(const HermitianMatrix& h, const CVector& planted) {
  SpectralEstimate est = top_eig(h);
  est.overlap_sq = overlap(est.v_hat, planted);
  return est;
}

Eigen::VectorXd eigenvalues(const HermitianMatrix& h) {
  require_finite(h);
  if (h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real_entries(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.entries(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double operator_norm(const HermitianMatrix& h) {
  const Eigen::VectorXd ev = eigenvalues(h);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

struct Resolvent::Impl {
  std::variant<Eigen::PartialPivLU<Eigen::MatrixXd>, Eigen::PartialPivLU<CMatrix>> lu;
  CMatrix shifted;
  double norm1 = 0.0;
};

Resolvent::Resolvent(const HermitianMatrix& w, Complex z) : impl_(std::make_unique<Impl>()), z_(z) {
  require_finite(w);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("resolvent shift must be finite");
  impl_->shifted = -w.entries();
  impl_->shifted.diagonal().array() += z;
  impl_->norm1 = impl_->shifted.cwiseAbs().colwise().sum().maxCoeff();
  double rcond = 0.0;
  if (w.is_real() && z.imag() == 0.0) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(impl_->shifted.real());
    rcond = lu.rcond();
    impl_->lu = std::move(lu);
  } else {
    Eigen::PartialPivLU<CMatrix> lu(impl_->shifted);
    rcond = lu.rcond();
    impl_->lu = std::move(lu);
  }
  // rcond * ||A||_1 estimates 1 / ||A^-1||_1, i.e. the distance to spec(W)
  // up to a dimension factor.
  if (!(rcond * impl_->norm1 > kMinDistance))
    throw SingularShiftError("shift is within 1e-10 of the spectrum (estimated distance " +
                             std::to_string(rcond * impl_->norm1) + ")");
}

Resolvent::~Resolvent() = default;
Resolvent::Resolvent(Resolvent&&) noexcept = default;
Resolvent& Resolvent::operator=(Resolvent&&) noexcept = default;

CVector Resolvent::solve(const CVector& b) const {
  if (b.size() != impl_->shifted.rows()) throw ValidationError("right-hand side has the wrong length");
  CVector x;
  if (const auto* lu = std::get_if<Eigen::PartialPivLU<Eigen::MatrixXd>>(&impl_->lu)) {
    x.resize(b.size());
    const Eigen::VectorXd re = lu->solve(b.real());
    const Eigen::VectorXd im = lu->solve(b.imag());
    x.real() = re;
    x.imag() = im;
  } else {
    x = std::get<Eigen::PartialPivLU<CMatrix>>(impl_->lu).solve(b);
  }
  if (!x.allFinite()) throw SingularShiftError("resolvent solve produced non-finite values");
  const double bnorm = b.norm();
  const double residual = (impl_->shifted * x - b).norm();
  if (bnorm > 0.0 && residual > kSolveTol * bnorm)
    throw SingularShiftError("resolvent solve relative residual " + std::to_string(residual / bnorm) +
                             " exceeds 1e-10");
  return x;
}

CVector resolvent_solve(const HermitianMatrix& w, Complex z, const CVector& b) {
  return Resolvent(w, z).solve(b);
}

double secular_root(const HermitianMatrix& w, const CVector& v, Theta theta, std::pair<double, double> bracket) {
  require_finite(w);
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw BracketError("secular bracket must satisfy lo < hi");
  if (v.size() != static_cast<Index>(w.size())) throw ValidationError("spike dimension does not match W");
  const double target = 1.0 / theta.value();

  auto eval = [&](double z) {
    ShiftedCholesky chol(w, z);
    if (!chol.positive_definite())
      throw BracketError("secular bracket is not strictly right of the spectrum of W");
    return chol.evaluate(v);
  };

  const double f_lo = eval(lo).quad - target;
  const double f_hi = eval(hi).quad - target;
  // f is strictly decreasing right of the spectrum
  if (!(f_lo > 0.0 && f_hi < 0.0))
    throw BracketError("secular function has no sign change over [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]: no outlier eigenvalue");

  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (eval(mid).quad - target > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double z = 0.5 * (lo + hi);
  const SecularEval e = eval(z);
  const double polished = z + (e.quad - target) / e.quad2;  // f' = -v* R^2 v
  return (polished >= lo && polished <= hi) ? polished : z;
}

std::pair<double, double> outlier_bracket(const HermitianMatrix& w, Theta theta, double margin) {
  const double norm_w = operator_norm(w);
  return {norm_w + margin, norm_w + theta.value() + 1.0};
}

CVector eigvec_via_resolvent(const HermitianMatrix& w, double lambda_hat, const CVector& v, double imag_offset) {
  CVector x = resolvent_solve(w, Complex(lambda_hat, imag_offset), v);
  const double nx = x.norm();
  if (nx == 0.0) throw NumericError("resolvent image of v vanished");
  x /= nx;
  fix_phase(x);
  return x;
}

double local_law_residual(const HermitianMatrix& w, Complex z, const CVector& x, const CVector& y, double margin) {
  if (!(margin > 0.0)) throw DomainError("local-law margin must be positive");
  if (!(z.real() > 2.0 + margin))
    throw DomainError("local-law residual requires Re z > 2 + margin");
  const CVector ry = resolvent_solve(w, z, y);
  const Complex quad = x.dot(ry);  // x* R y
  return std::abs(quad - theory::cauchy_transform_sc(z) * x.dot(y));
}

}  // namespace spiked
