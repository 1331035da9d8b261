#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "spiked/ensembles.hpp"
#include "spiked/sync.hpp"
#include "spiked/theory.hpp"

namespace spiked {

struct SingleLetterEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(n_samples)
  std::size_t n_samples = 0;
  double theta = 0.0;
  std::string descriptor;  // group/loss/round, or "general"
};

struct MonteCarloOptions {
  std::size_t n_samples = 1'000'000;
  std::uint64_t seed = 0;
  /// Samples per rng stream. Part of the reproducibility key together with
  /// the seed; the thread count is not.
  std::size_t chunk_size = 1 << 16;
  unsigned threads = 1;
};

inline constexpr std::size_t kMinMonteCarloSamples = 1000;

/// Monte Carlo estimate of
///   E loss(x y^-1, Round((rho chi(x) + tau g) * conj(rho chi(y) + tau h)))
/// over x, y ~ Haar(G) and g, h ~ N_F(0, 1), F = R iff G = Z/2.
/// Throws DomainError for theta <= 1.
SingleLetterEstimate mc_single_letter_sync(const GroupKind& group, Theta theta, const RoundSpec& round,
                                           const LossSpec& loss, const MonteCarloOptions& options);

/// Draws one value of sqrt(n) v_i from the prior mu.
using ScalarLaw = std::function<Complex(Rng&)>;
/// psi(v conj(w), z).
using PairFunction = std::function<double(Complex, Complex)>;

/// Monte Carlo estimate of E psi(v conj(w), (rho v + tau g)(rho conj(w) + tau h))
/// over v, w ~ mu and g, h ~ N_F(0, 1).
SingleLetterEstimate mc_single_letter_general(const ScalarLaw& mu, const PairFunction& psi, Field field,
                                              Theta theta, const MonteCarloOptions& options);

/// 2q(1 - q) with q = Phi(-sqrt(theta^2 - 1)): the limit for Z/2 with sign
/// rounding and mismatch loss.
double closed_form_z2_mismatch(Theta theta);

}  // namespace spiked
