#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spiked/config.hpp"
#include "spiked/ensembles.hpp"
#include "spiked/single_letter.hpp"
#include "spiked/spectral.hpp"

namespace spiked {

struct TrialRecord {
  std::size_t theta_index = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // trial key; streams are derived from it by name
  double empirical_loss = 0.0;
  double lambda_hat = 0.0;
  double overlap_sq = 0.0;
};

struct ThetaSummary {
  double theta = 0.0;
  double mean_loss = 0.0;
  double std_loss = 0.0;  // sample standard deviation across trials
  std::optional<double> prediction_mean;  // absent for theta <= 1
  std::optional<double> prediction_stderr;
  std::uint64_t prediction_seed = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ThetaSummary> summaries;
  std::vector<TrialRecord> trials;  // ordered by (theta_index, trial)
  std::string library_version = SPIKED_VERSION;
};

struct RunOptions {
  unsigned threads = 1;
};

/// Trial key for (theta index, trial index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t theta_index, std::size_t trial);
/// Named stream inside a trial: "signal", "noise".
std::uint64_t stream_seed(std::uint64_t master_seed, std::size_t theta_index, std::size_t trial,
                          std::string_view stream);

/// One full pipeline run: Haar signal, noisy observation, top eigenvector,
/// rounded estimate, average loss.
TrialRecord run_trial(const ExperimentConfig& config, std::size_t theta_index, std::size_t trial);

/// Runs every (theta, trial) cell plus one single-letter prediction per
/// theta. Output is independent of options.threads.
ExperimentReport run_sweep(const ExperimentConfig& config, const RunOptions& options = {});

struct PairComparison {
  std::size_t i = 0;
  std::size_t j = 0;
  double mean_a = 0.0;
  double stderr_a = 0.0;
  double mean_b = 0.0;
  double stderr_b = 0.0;
  double difference = 0.0;       // mean_a - mean_b
  double combined_stderr = 0.0;  // sqrt(stderr_a^2 + stderr_b^2)
};

struct UniversalityReport {
  UniversalityConfig config;
  std::vector<PairComparison> pairs;
  /// max over pairs of |difference| / combined_stderr.
  double max_standardized_difference() const;
  double max_abs_difference() const;
};

/// Throws ValidationError unless both laws have the same field, identical
/// off-diagonal second moments of the real and imaginary parts, and
/// diagonal variances within C_W / n.
void check_moment_match(const EnsembleSpec& a, const EnsembleSpec& b);

/// Throws ValidationError when max |v_i| > n^(-1/4).
void check_delocalized(const CVector& v);

CVector make_signal(SignalShape shape, std::size_t n, Field field, std::uint64_t seed);

/// Estimates E phi(Re(n v_hat_i conj(v_hat_j))) under both laws for each
/// requested pair, from `trials` independent spiked samples each.
UniversalityReport run_universality_ab(const UniversalityConfig& config, const RunOptions& options = {});

/// Same comparison with an explicit direction v.
std::vector<PairComparison> compare_entry_statistics(const EnsembleSpec& spec_a, const EnsembleSpec& spec_b,
                                                     const CVector& v, Theta theta, TestFunction phi,
                                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                                     std::size_t trials, std::uint64_t seed,
                                                     const RunOptions& options = {});

}  // namespace spiked
