#include "spiked/single_letter.hpp"

#include <cmath>
#include <vector>

#include "spiked/errors.hpp"
#include "spiked/parallel.hpp"

namespace spiked {
namespace {

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  // Chan et al. pairwise update.
  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    count += other.count;
  }
};

void check_options(const MonteCarloOptions& options) {
  if (options.n_samples < kMinMonteCarloSamples)
    throw ValidationError("Monte Carlo estimates need at least 1000 samples");
  if (options.chunk_size == 0) throw ValidationError("chunk size must be positive");
}

// Splits n_samples into fixed chunks, each with its own stream, and reduces
// them in chunk order.
template <typename Sampler>
SingleLetterEstimate run_chunks(const MonteCarloOptions& options, Sampler&& draw) {
  const std::size_t chunks = (options.n_samples + options.chunk_size - 1) / options.chunk_size;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    Rng rng(derive_seed(options.seed, {c}, "single-letter"));
    const std::size_t begin = c * options.chunk_size;
    const std::size_t end = std::min(options.n_samples, begin + options.chunk_size);
    Moments m;
    for (std::size_t s = begin; s < end; ++s) m.add(draw(rng));
    partial[c] = m;
  });
  Moments total;
  for (const Moments& m : partial) total.merge(m);
  SingleLetterEstimate est;
  est.mean = total.mean;
  est.n_samples = total.count;
  const double n = static_cast<double>(total.count);
  est.std_error = std::sqrt(total.m2 / (n - 1.0)) / std::sqrt(n);
  return est;
}

Complex gaussian(Field field, Rng& rng) {
  return field == Field::real ? Complex(rng.normal(), 0.0) : rng.complex_normal();
}

}  // namespace

SingleLetterEstimate mc_single_letter_sync(const GroupKind& group, Theta theta, const RoundSpec& round,
                                           const LossSpec& loss, const MonteCarloOptions& options) {
  if (!theta.supercritical()) throw DomainError("single-letter formula requires theta > 1");
  check_compatible(group, round);
  check_compatible(group, loss);
  check_options(options);
  const double rho = std::sqrt(theory::rho_squared(theta));
  const double tau = std::sqrt(theory::tau_squared(theta));
  const Field field = group.real_characters() ? Field::real : Field::complex;

  SingleLetterEstimate est = run_chunks(options, [&](Rng& rng) {
    const GroupElement x = haar_sample(group, rng);
    const GroupElement y = haar_sample(group, rng);
    const Complex g = gaussian(field, rng);
    const Complex h = gaussian(field, rng);
    const Complex z = (rho * chi(group, x) + tau * g) * std::conj(rho * chi(group, y) + tau * h);
    return evaluate_loss(group, loss, multiply(group, x, inverse(group, y)), round_to_group(group, z, round));
  });
  est.theta = theta.value();
  est.descriptor = group.name() + "/" + loss.name() + "/" + round.name();
  return est;
}

SingleLetterEstimate mc_single_letter_general(const ScalarLaw& mu, const PairFunction& psi, Field field,
                                              Theta theta, const MonteCarloOptions& options) {
  if (!theta.supercritical()) throw DomainError("single-letter formula requires theta > 1");
  check_options(options);
  const double rho = std::sqrt(theory::rho_squared(theta));
  const double tau = std::sqrt(theory::tau_squared(theta));

  SingleLetterEstimate est = run_chunks(options, [&](Rng& rng) {
    const Complex v = mu(rng);
    const Complex w = mu(rng);
    const Complex g = gaussian(field, rng);
    const Complex h = gaussian(field, rng);
    return psi(v * std::conj(w), (rho * v + tau * g) * (rho * std::conj(w) + tau * h));
  });
  est.theta = theta.value();
  est.descriptor = "general";
  return est;
}

double closed_form_z2_mismatch(Theta theta) {
  if (!theta.supercritical()) throw DomainError("closed form requires theta > 1");
  const double t = theta.value();
  const double q = theory::std_normal_cdf(-std::sqrt(t * t - 1.0));
  return 2.0 * q * (1.0 - q);
}

}  // namespace spiked
