#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spiked/group.hpp"
#include "spiked/rng.hpp"

namespace spiked {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

enum class Field { real, complex };

/// Dense Hermitian matrix. The constructor checks entries(j, i) ==
/// conj(entries(i, j)) exactly, and zero imaginary parts when is_real.
class HermitianMatrix {
 public:
  HermitianMatrix(CMatrix entries, bool is_real);
  static HermitianMatrix zero(std::size_t n, bool is_real = true);
  static HermitianMatrix from_real(const RMatrix& entries);

  const CMatrix& entries() const noexcept { return entries_; }
  bool is_real() const noexcept { return is_real_; }
  Field field() const noexcept { return is_real_ ? Field::real : Field::complex; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  RMatrix real_entries() const { return entries_.real(); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double trace() const { return entries_.diagonal().real().sum(); }

 private:
  CMatrix entries_;
  bool is_real_;
};

enum class EnsembleKind { goe, gue, generalized_wigner, weakly_wigner };
enum class EntryLaw { gaussian, rademacher, uniform_centered };

std::string to_string(EnsembleKind kind);
std::string to_string(EntryLaw law);
std::string to_string(Field field);
EnsembleKind parse_ensemble_kind(const std::string& text);
EntryLaw parse_entry_law(const std::string& text);
Field parse_field(const std::string& text);

/// Law of a noise matrix. variance_profile holds sigma_ij^2; when absent the
/// flat profile 1/n is used. tail_param, profile_bound, eps_w and c_w are
/// validation metadata (xi_W, gamma_W, epsilon_W, C_W).
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::goe;
  std::size_t n = 0;
  EntryLaw entry_law = EntryLaw::gaussian;
  Field field = Field::real;
  std::optional<RMatrix> variance_profile;
  double tail_param = 1.0;
  double profile_bound = 1.0;
  double eps_w = 0.5;
  double c_w = 4.0;

  static EnsembleSpec goe(std::size_t n);
  static EnsembleSpec gue(std::size_t n);
  static EnsembleSpec flat(std::size_t n, EntryLaw law, Field field);

  /// Explicit sigma_ij^2 for off-diagonal entries of this law (GOE and GUE
  /// included; their diagonals differ, see diagonal_variance).
  RMatrix profile() const;
  /// Variance of W_ii.
  double diagonal_variance(std::size_t i) const;
};

/// Throws ValidationError listing every violated row when a generalized
/// Wigner profile is not symmetric, nonnegative, stochastic or within the
/// gamma_W bounds.
void validate_profile(const EnsembleSpec& spec);

/// Rank-one spike theta * v v*. theta may be 0 (no signal).
struct SpikeConfig {
  SpikeConfig(double theta, CVector v);
  double theta;
  CVector v;
};

HermitianMatrix sample_goe(std::size_t n, Rng& rng);
HermitianMatrix sample_gue(std::size_t n, Rng& rng);
HermitianMatrix sample_generalized_wigner(const EnsembleSpec& spec, Rng& rng);
/// Dispatches on spec.kind.
HermitianMatrix sample(const EnsembleSpec& spec, Rng& rng);

/// Truth-or-Haar observation: Y_ij = x_i x_j^-1 with probability p, else an
/// independent Haar element, for i < j; Y_ii = e; Y_ji = Y_ij^-1.
GroupMatrix sample_truth_or_haar(const GroupKind& group, const std::vector<GroupElement>& x, double p,
                                 Rng& rng);

/// theta * v v* + W.
HermitianMatrix build_spiked(const SpikeConfig& config, const HermitianMatrix& w);

/// H_ij = chi(Y_ij) / sqrt(n). Real iff the group is Z/2.
HermitianMatrix sync_observation_matrix(const GroupKind& group, const GroupMatrix& y);

struct MomentCheck {
  std::string name;
  double measured;
  double target;
  double tolerance;
  bool passed;
};

struct WeaklyWignerReport {
  Field field;
  std::vector<MomentCheck> checks;
  bool passed() const;
};

/// Empirical weakly-Wigner check over a set of samples. Pooled moments of
/// the off-diagonal entries are compared with 1/n (real) or 1/(2n) per part
/// (complex); allowed deviation is C_W n^(-1-eps_W) plus four standard errors
/// of the pooled estimate. The diagonal must satisfy E W_ii^2 <= C_W / n.
WeaklyWignerReport validate_weakly_wigner(const std::vector<HermitianMatrix>& samples, Field field,
                                          double eps_w, double c_w);

}  // namespace spiked
