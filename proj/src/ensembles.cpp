#include "spiked/ensembles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "spiked/errors.hpp"

namespace spiked {
namespace {

using Eigen::Index;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

// Unit-variance real draw from the entry law.
double unit_draw(EntryLaw law, Rng& rng) {
  switch (law) {
    case EntryLaw::gaussian:
      return rng.normal();
    case EntryLaw::rademacher:
      return rng.coin(0.5) ? 1.0 : -1.0;
    case EntryLaw::uniform_centered:
      return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
  }
  return 0.0;
}

struct Pooled {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double stderr_of_mean() const {
    if (count < 2) return 0.0;
    const double c = static_cast<double>(count);
    const double var = std::max(0.0, (sum_sq - sum * sum / c) / (c - 1.0));
    return std::sqrt(var / c);
  }
};

MomentCheck equality_check(std::string name, const Pooled& pooled, double target, double slack) {
  const double tol = slack + 4.0 * pooled.stderr_of_mean();
  const double measured = pooled.mean();
  return {std::move(name), measured, target, tol, std::abs(measured - target) <= tol};
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix entries, bool is_real)
    : entries_(std::move(entries)), is_real_(is_real) {
  if (entries_.rows() != entries_.cols()) throw ValidationError("Hermitian matrix must be square");
  const Index n = entries_.rows();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const Complex a = entries_(i, j);
      if (entries_(j, i) != std::conj(a))
        throw ValidationError("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (is_real_ && a.imag() != 0.0)
        throw ValidationError("matrix flagged real has a non-zero imaginary part at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
    }
  }
}

HermitianMatrix HermitianMatrix::zero(std::size_t n, bool is_real) {
  return HermitianMatrix(CMatrix::Zero(static_cast<Index>(n), static_cast<Index>(n)), is_real);
}

HermitianMatrix HermitianMatrix::from_real(const RMatrix& entries) {
  return HermitianMatrix(entries.cast<Complex>(), true);
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::goe: return "GOE";
    case EnsembleKind::gue: return "GUE";
    case EnsembleKind::generalized_wigner: return "GeneralizedWigner";
    case EnsembleKind::weakly_wigner: return "WeaklyWigner";
  }
  return "?";
}

std::string to_string(EntryLaw law) {
  switch (law) {
    case EntryLaw::gaussian: return "gaussian";
    case EntryLaw::rademacher: return "rademacher";
    case EntryLaw::uniform_centered: return "uniform-centered";
  }
  return "?";
}

std::string to_string(Field field) { return field == Field::real ? "R" : "C"; }

EnsembleKind parse_ensemble_kind(const std::string& text) {
  const std::string t = lower(text);
  if (t == "goe") return EnsembleKind::goe;
  if (t == "gue") return EnsembleKind::gue;
  if (t == "generalizedwigner" || t == "generalized-wigner") return EnsembleKind::generalized_wigner;
  if (t == "weaklywigner" || t == "weakly-wigner") return EnsembleKind::weakly_wigner;
  throw ValidationError("unknown ensemble kind '" + text + "'");
}

EntryLaw parse_entry_law(const std::string& text) {
  const std::string t = lower(text);
  if (t == "gaussian") return EntryLaw::gaussian;
  if (t == "rademacher") return EntryLaw::rademacher;
  if (t == "uniform-centered" || t == "uniform") return EntryLaw::uniform_centered;
  throw ValidationError("unknown entry law '" + text + "'");
}

Field parse_field(const std::string& text) {
  const std::string t = lower(text);
  if (t == "r" || t == "real") return Field::real;
  if (t == "c" || t == "complex") return Field::complex;
  throw ValidationError("unknown field '" + text + "' (expected R or C)");
}

EnsembleSpec EnsembleSpec::goe(std::size_t n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::goe;
  s.n = n;
  s.field = Field::real;
  s.profile_bound = 2.0;
  return s;
}

EnsembleSpec EnsembleSpec::gue(std::size_t n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::gue;
  s.n = n;
  s.field = Field::complex;
  return s;
}

EnsembleSpec EnsembleSpec::flat(std::size_t n, EntryLaw law, Field field) {
  EnsembleSpec s;
  s.kind = EnsembleKind::generalized_wigner;
  s.n = n;
  s.entry_law = law;
  s.field = field;
  return s;
}

RMatrix EnsembleSpec::profile() const {
  const auto m = static_cast<Index>(n);
  if (variance_profile) return *variance_profile;
  return RMatrix::Constant(m, m, 1.0 / static_cast<double>(n));
}

double EnsembleSpec::diagonal_variance(std::size_t i) const {
  const double flat = 1.0 / static_cast<double>(n);
  if (kind == EnsembleKind::goe) return 2.0 * flat;
  if (kind == EnsembleKind::gue) return flat;
  if (variance_profile) return (*variance_profile)(static_cast<Index>(i), static_cast<Index>(i));
  return flat;
}

void validate_profile(const EnsembleSpec& spec) {
  if (spec.n == 0) throw ValidationError("ensemble dimension must be >= 1");
  if (!spec.variance_profile) return;
  const RMatrix& s = *spec.variance_profile;
  const auto n = static_cast<Index>(spec.n);
  if (s.rows() != n || s.cols() != n) throw ValidationError("variance profile has the wrong shape");
  const double gamma = spec.profile_bound;
  std::vector<Index> bad_rows;
  for (Index i = 0; i < n; ++i) {
    bool ok = true;
    for (Index j = 0; j < n; ++j) {
      const double scaled = static_cast<double>(n) * s(i, j);
      if (s(i, j) < 0.0 || s(i, j) != s(j, i) || scaled < 1.0 / gamma - 1e-12 || scaled > gamma + 1e-12) ok = false;
    }
    if (spec.kind == EnsembleKind::generalized_wigner && std::abs(s.row(i).sum() - 1.0) > 1e-12) ok = false;
    if (!ok) bad_rows.push_back(i);
  }
  if (!bad_rows.empty()) {
    std::ostringstream msg;
    msg << "invalid variance profile; violated rows:";
    for (Index r : bad_rows) msg << ' ' << r;
    throw ValidationError(msg.str());
  }
}

SpikeConfig::SpikeConfig(double theta_, CVector v_) : theta(theta_), v(std::move(v_)) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("spike strength must be finite and >= 0");
  if (v.size() == 0 || std::abs(v.norm() - 1.0) > 1e-12) throw ValidationError("spike direction must be a unit vector");
}

HermitianMatrix sample_goe(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("GOE dimension must be >= 1");
  const auto m = static_cast<Index>(n);
  const double off = std::sqrt(1.0 / static_cast<double>(n));
  const double diag = std::sqrt(2.0 / static_cast<double>(n));
  CMatrix w(m, m);
  for (Index i = 0; i < m; ++i) {
    w(i, i) = diag * rng.normal();
    for (Index j = i + 1; j < m; ++j) {
      const double x = off * rng.normal();
      w(i, j) = x;
      w(j, i) = x;
    }
  }
  return HermitianMatrix(std::move(w), true);
}

HermitianMatrix sample_gue(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("GUE dimension must be >= 1");
  const auto m = static_cast<Index>(n);
  const double part = std::sqrt(1.0 / (2.0 * static_cast<double>(n)));
  const double diag = std::sqrt(1.0 / static_cast<double>(n));
  CMatrix w(m, m);
  for (Index i = 0; i < m; ++i) {
    w(i, i) = diag * rng.normal();
    for (Index j = i + 1; j < m; ++j) {
      const double re = part * rng.normal();
      const double im = part * rng.normal();
      w(i, j) = Complex(re, im);
      w(j, i) = Complex(re, -im);
    }
  }
  return HermitianMatrix(std::move(w), false);
}

HermitianMatrix sample_generalized_wigner(const EnsembleSpec& spec, Rng& rng) {
  validate_profile(spec);
  const auto m = static_cast<Index>(spec.n);
  const RMatrix prof = spec.profile();
  const bool real = spec.field == Field::real;
  CMatrix w(m, m);
  for (Index i = 0; i < m; ++i) {
    w(i, i) = std::sqrt(prof(i, i)) * unit_draw(spec.entry_law, rng);
    for (Index j = i + 1; j < m; ++j) {
      const double sigma = std::sqrt(prof(i, j));
      Complex x;
      if (real) {
        x = sigma * unit_draw(spec.entry_law, rng);
      } else {
        const double re = unit_draw(spec.entry_law, rng);
        const double im = unit_draw(spec.entry_law, rng);
        x = sigma * std::sqrt(0.5) * Complex(re, im);
      }
      w(i, j) = x;
      w(j, i) = std::conj(x);
    }
  }
  return HermitianMatrix(std::move(w), real);
}

HermitianMatrix sample(const EnsembleSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case EnsembleKind::goe: return sample_goe(spec.n, rng);
    case EnsembleKind::gue: return sample_gue(spec.n, rng);
    case EnsembleKind::generalized_wigner:
    case EnsembleKind::weakly_wigner: return sample_generalized_wigner(spec, rng);
  }
  throw ValidationError("unknown ensemble kind");
}

GroupMatrix sample_truth_or_haar(const GroupKind& group, const std::vector<GroupElement>& x, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("truth-or-Haar probability must lie in [0, 1]");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("truth-or-Haar model needs n >= 2");
  GroupMatrix y(group, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // both draws are always consumed so the stream layout does not depend on p
      const bool truth = rng.coin(p);
      const GroupElement noise = haar_sample(group, rng);
      y(i, j) = truth ? multiply(group, x[i], inverse(group, x[j])) : noise;
      y(j, i) = inverse(group, y(i, j));
    }
  }
  return y;
}

HermitianMatrix build_spiked(const SpikeConfig& config, const HermitianMatrix& w) {
  const auto n = static_cast<Index>(w.size());
  if (config.v.size() != n) throw ValidationError("spike dimension does not match the noise matrix");
  const CVector& v = config.v;
  CMatrix h = w.entries();
  for (Index i = 0; i < n; ++i) {
    h(i, i) += config.theta * std::norm(v(i));
    for (Index j = i + 1; j < n; ++j) {
      const Complex s = config.theta * v(i) * std::conj(v(j));
      h(i, j) += s;
      h(j, i) = std::conj(h(i, j));
    }
  }
  const bool real = w.is_real() && v.imag().isZero(0.0);
  return HermitianMatrix(std::move(h), real);
}

HermitianMatrix sync_observation_matrix(const GroupKind& group, const GroupMatrix& y) {
  const auto n = static_cast<Index>(y.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix h(n, n);
  for (Index i = 0; i < n; ++i) {
    h(i, i) = scale * chi(group, y(static_cast<std::size_t>(i), static_cast<std::size_t>(i))).real();
    for (Index j = i + 1; j < n; ++j) {
      const Complex c = scale * chi(group, y(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      h(i, j) = c;
      h(j, i) = std::conj(c);
    }
  }
  return HermitianMatrix(std::move(h), group.real_characters());
}

bool WeaklyWignerReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const MomentCheck& c) { return c.passed; });
}

WeaklyWignerReport validate_weakly_wigner(const std::vector<HermitianMatrix>& samples, Field field, double eps_w,
                                          double c_w) {
  if (samples.empty()) throw ValidationError("weakly-Wigner validation needs at least one sample");
  const std::size_t n = samples.front().size();
  const double nd = static_cast<double>(n);
  const double slack = c_w * std::pow(nd, -1.0 - eps_w);

  Pooled re_mean, im_mean, re2, im2, reim, abs2, diag2;
  double max_imag = 0.0;
  for (const auto& s : samples) {
    if (s.size() != n) throw ValidationError("samples have different dimensions");
    const CMatrix& w = s.entries();
    for (Index i = 0; i < w.rows(); ++i) {
      diag2.add(std::norm(w(i, i)));
      for (Index j = i + 1; j < w.cols(); ++j) {
        const Complex x = w(i, j);
        re_mean.add(x.real());
        im_mean.add(x.imag());
        re2.add(x.real() * x.real());
        im2.add(x.imag() * x.imag());
        reim.add(x.real() * x.imag());
        abs2.add(std::norm(x));
        max_imag = std::max(max_imag, std::abs(x.imag()));
      }
    }
  }

  WeaklyWignerReport report{field, {}};
  report.checks.push_back(equality_check("centered_real", re_mean, 0.0, slack));
  report.checks.push_back(equality_check("centered_imag", im_mean, 0.0, slack));
  {
    const double tol = 4.0 * diag2.stderr_of_mean();
    report.checks.push_back({"diagonal_second_moment", diag2.mean(), c_w / nd, tol, diag2.mean() <= c_w / nd + tol});
  }
  if (field == Field::real) {
    report.checks.push_back(equality_check("offdiag_second_moment", abs2, 1.0 / nd, slack));
    report.checks.push_back({"imaginary_part_zero", max_imag, 0.0, 0.0, max_imag == 0.0});
  } else {
    report.checks.push_back(equality_check("re_second_moment", re2, 0.5 / nd, slack));
    report.checks.push_back(equality_check("im_second_moment", im2, 0.5 / nd, slack));
    report.checks.push_back(equality_check("re_im_cross_moment", reim, 0.0, slack));
  }
  return report;
}

}  // namespace spiked
