#include "spiked/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spiked/errors.hpp"
#include "spiked/parallel.hpp"
#include "spiked/sync.hpp"

namespace spiked {
namespace {

struct MeanStd {
  double mean;
  double std;
};

MeanStd mean_std(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t theta_index, std::size_t trial) {
  return derive_seed(master_seed, {theta_index, trial}, "trial");
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::size_t theta_index, std::size_t trial,
                          std::string_view stream) {
  return derive_seed(master_seed, {theta_index, trial}, stream);
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t theta_index, std::size_t trial) {
  const GroupKind& group = config.group;
  const double theta = config.theta_grid.at(theta_index);
  const std::size_t n = config.n;

  Rng signal_rng(stream_seed(config.master_seed, theta_index, trial, "signal"));
  Rng noise_rng(stream_seed(config.master_seed, theta_index, trial, "noise"));
  const std::vector<GroupElement> x = haar_samples(group, n, signal_rng);
  const CVector v = signal_vector(group, x);

  std::optional<HermitianMatrix> h;
  if (config.noise_model == NoiseModel::truth_or_haar) {
    const double p = theta / std::sqrt(static_cast<double>(n));
    const GroupMatrix y = sample_truth_or_haar(group, x, p, noise_rng);
    h.emplace(sync_observation_matrix(group, y));
  } else {
    const HermitianMatrix w = group.real_characters() ? sample_goe(n, noise_rng) : sample_gue(n, noise_rng);
    h.emplace(build_spiked(SpikeConfig(theta, v), w));
  }

  SpectralEstimate est;
  try {
    est = top_eig(*h, v);
  } catch (const NumericError& e) {
    throw NumericError("theta index " + std::to_string(theta_index) + ", trial " + std::to_string(trial) + ": " +
                       e.what());
  }
  const GroupMatrix m = pairwise_matrix(group, x);
  const GroupMatrix m_hat = estimate_M(est.v_hat, group, config.round);

  TrialRecord rec;
  rec.theta_index = theta_index;
  rec.trial = trial;
  rec.seed = trial_seed(config.master_seed, theta_index, trial);
  rec.empirical_loss = average_loss(m, m_hat, config.loss);
  rec.lambda_hat = est.lambda_hat;
  rec.overlap_sq = est.overlap_sq.value_or(0.0);
  return rec;
}

ExperimentReport run_sweep(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  const std::size_t thetas = config.theta_grid.size();
  const std::size_t cells = thetas * config.trials;

  report.trials.resize(cells);
  parallel_for(cells, options.threads, [&](std::size_t cell) {
    report.trials[cell] = run_trial(config, cell / config.trials, cell % config.trials);
  });

  report.summaries.resize(thetas);
  for (std::size_t t = 0; t < thetas; ++t) {
    ThetaSummary& s = report.summaries[t];
    s.theta = config.theta_grid[t];
    std::vector<double> losses;
    for (std::size_t k = 0; k < config.trials; ++k) losses.push_back(report.trials[t * config.trials + k].empirical_loss);
    const MeanStd ms = mean_std(losses);
    s.mean_loss = ms.mean;
    s.std_loss = ms.std;
    s.prediction_seed = derive_seed(config.master_seed, {t}, "prediction");
    if (s.theta > 1.0) {
      MonteCarloOptions mc;
      mc.n_samples = config.mc_samples;
      mc.seed = s.prediction_seed;
      mc.threads = options.threads;
      const SingleLetterEstimate est =
          mc_single_letter_sync(config.group, Theta(s.theta), config.round, config.loss, mc);
      s.prediction_mean = est.mean;
      s.prediction_stderr = est.std_error;
    }
  }
  return report;
}

double UniversalityReport::max_standardized_difference() const {
  double worst = 0.0;
  for (const auto& p : pairs) {
    const double z = p.combined_stderr > 0.0 ? std::abs(p.difference) / p.combined_stderr
                                             : (p.difference == 0.0 ? 0.0 : INFINITY);
    worst = std::max(worst, z);
  }
  return worst;
}

double UniversalityReport::max_abs_difference() const {
  double worst = 0.0;
  for (const auto& p : pairs) worst = std::max(worst, std::abs(p.difference));
  return worst;
}

void check_moment_match(const EnsembleSpec& a, const EnsembleSpec& b) {
  if (a.n != b.n) throw ValidationError("ensembles have different dimensions");
  if (a.field != b.field) throw ValidationError("ensembles are over different fields");
  validate_profile(a);
  validate_profile(b);
  const RMatrix pa = a.profile();
  const RMatrix pb = b.profile();
  const auto n = static_cast<Eigen::Index>(a.n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(pa(i, j) - pb(i, j)) > 1e-15 * std::max(pa(i, j), pb(i, j)))
        throw ValidationError("off-diagonal second moments differ at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
  const double nd = static_cast<double>(a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    if (a.diagonal_variance(i) > a.c_w / nd || b.diagonal_variance(i) > b.c_w / nd)
      throw ValidationError("diagonal variance exceeds C_W / n at row " + std::to_string(i));
  }
}

void check_delocalized(const CVector& v) {
  const double bound = std::pow(static_cast<double>(v.size()), -0.25);
  const double sup = v.cwiseAbs().maxCoeff();
  if (sup > bound)
    throw ValidationError("signal is not delocalized: max |v_i| = " + std::to_string(sup) + " > n^(-1/4) = " +
                          std::to_string(bound));
}

CVector make_signal(SignalShape shape, std::size_t n, Field field, std::uint64_t seed) {
  const auto m = static_cast<Eigen::Index>(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector v(m);
  Rng rng(seed);
  switch (shape) {
    case SignalShape::flat:
      v.setConstant(Complex(scale, 0.0));
      break;
    case SignalShape::random_sign:
      for (Eigen::Index i = 0; i < m; ++i) v(i) = rng.coin(0.5) ? scale : -scale;
      break;
    case SignalShape::random_phase:
      if (field == Field::real) throw ValidationError("random-phase signal needs a complex field");
      for (Eigen::Index i = 0; i < m; ++i) v(i) = std::polar(scale, 2.0 * std::numbers::pi * rng.uniform());
      break;
    case SignalShape::e1:
      v.setZero();
      v(0) = 1.0;
      break;
  }
  return v;
}

std::vector<PairComparison> compare_entry_statistics(const EnsembleSpec& spec_a, const EnsembleSpec& spec_b,
                                                     const CVector& v, Theta theta, TestFunction phi,
                                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                                     std::size_t trials, std::uint64_t seed,
                                                     const RunOptions& options) {
  check_moment_match(spec_a, spec_b);
  check_delocalized(v);
  if (static_cast<std::size_t>(v.size()) != spec_a.n) throw ValidationError("signal length does not match n");
  const SpikeConfig spike(theta.value(), v);
  const double nd = static_cast<double>(spec_a.n);

  // values[side][trial][pair]
  std::vector<std::vector<double>> values_a(trials), values_b(trials);
  parallel_for(2 * trials, options.threads, [&](std::size_t cell) {
    const bool side_a = cell < trials;
    const std::size_t t = side_a ? cell : cell - trials;
    Rng rng(derive_seed(seed, {t}, side_a ? "ensemble-a" : "ensemble-b"));
    const HermitianMatrix w = sample(side_a ? spec_a : spec_b, rng);
    const SpectralEstimate est = top_eig(build_spiked(spike, w));
    std::vector<double> row;
    row.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
      const Complex entry = nd * est.v_hat(static_cast<Eigen::Index>(i)) *
                            std::conj(est.v_hat(static_cast<Eigen::Index>(j)));
      row.push_back(apply(phi, entry.real()));
    }
    (side_a ? values_a : values_b)[t] = std::move(row);
  });

  std::vector<PairComparison> out;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<double> xa, xb;
    for (std::size_t t = 0; t < trials; ++t) {
      xa.push_back(values_a[t][p]);
      xb.push_back(values_b[t][p]);
    }
    const MeanStd a = mean_std(xa);
    const MeanStd b = mean_std(xb);
    PairComparison c;
    c.i = pairs[p].first;
    c.j = pairs[p].second;
    c.mean_a = a.mean;
    c.stderr_a = a.std / std::sqrt(static_cast<double>(trials));
    c.mean_b = b.mean;
    c.stderr_b = b.std / std::sqrt(static_cast<double>(trials));
    c.difference = c.mean_a - c.mean_b;
    c.combined_stderr = std::hypot(c.stderr_a, c.stderr_b);
    out.push_back(c);
  }
  return out;
}

UniversalityReport run_universality_ab(const UniversalityConfig& config, const RunOptions& options) {
  config.validate();
  UniversalityReport report;
  report.config = config;
  const CVector v = make_signal(config.signal, config.n, config.spec_a.field,
                                derive_seed(config.master_seed, {}, "signal"));
  auto pairs = config.pairs;
  if (pairs.empty()) {
    Rng rng(derive_seed(config.master_seed, {}, "pairs"));
    while (pairs.size() < config.random_pairs) {
      const std::size_t i = rng.below(config.n);
      const std::size_t j = rng.below(config.n);
      if (i == j) continue;
      if (std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) != pairs.end()) continue;
      pairs.emplace_back(i, j);
    }
    report.config.pairs = pairs;
  }
  report.pairs = compare_entry_statistics(config.spec_a, config.spec_b, v, Theta(config.theta), config.phi, pairs,
                                          config.trials, derive_seed(config.master_seed, {}, "trials"), options);
  return report;
}

}  // namespace spiked
