#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spiked/ensembles.hpp"
#include "spiked/group.hpp"
#include "spiked/sync.hpp"

namespace spiked {

enum class NoiseModel { truth_or_haar, gaussian_additive };

std::string to_string(NoiseModel model);
NoiseModel parse_noise_model(const std::string& text);

struct ExperimentConfig {
  GroupKind group = GroupKind::cyclic(2);
  std::size_t n = 500;
  std::vector<double> theta_grid;
  std::size_t trials = 10;
  NoiseModel noise_model = NoiseModel::truth_or_haar;
  RoundSpec round{};
  LossSpec loss = LossSpec::mismatch();
  std::size_t mc_samples = 1'000'000;
  std::uint64_t master_seed = 0;
  std::string out_dir = ".";
  std::string report_name = "report";

  /// Throws ValidationError: trials >= 1, n >= 2, theta > 0, loss and round
  /// compatible with the group, and p = theta / sqrt(n) <= 1 for
  /// truth-or-Haar.
  void validate() const;
};

/// Grid 1.1, 1.2, ..., 4.0.
std::vector<double> default_theta_grid();

/// Parses "1.5, 2, 2.5" or an inclusive range "start:stop:step".
std::vector<double> parse_theta_grid(const std::string& text);

/// Flat "key = value" file; '#' starts a comment. Duplicate or unknown keys
/// are errors.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  /// Throws ValidationError naming every key not in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

ExperimentConfig parse_experiment_config(const KeyValueFile& file);
ExperimentConfig load_experiment_config(const std::string& path);

/// phi applied to Re(n * v_hat_i * conj(v_hat_j)).
enum class TestFunction { tanh, cos, gauss };
std::string to_string(TestFunction phi);
TestFunction parse_test_function(const std::string& text);
double apply(TestFunction phi, double x);

/// How the planted direction is built: all 1/sqrt(n), seeded random signs,
/// seeded random phases (complex fields only), or the localized e_1.
enum class SignalShape { flat, random_sign, random_phase, e1 };
std::string to_string(SignalShape shape);
SignalShape parse_signal_shape(const std::string& text);

struct UniversalityConfig {
  EnsembleSpec spec_a = EnsembleSpec::goe(400);
  EnsembleSpec spec_b = EnsembleSpec::flat(400, EntryLaw::rademacher, Field::real);
  std::size_t n = 400;
  double theta = 2.0;
  TestFunction phi = TestFunction::tanh;
  SignalShape signal = SignalShape::random_sign;
  /// Explicit pairs; when empty, random_pairs distinct off-diagonal pairs are drawn.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t random_pairs = 10;
  std::size_t trials = 200;
  std::uint64_t master_seed = 0;
  std::string out_dir = ".";
  std::string report_name = "universality";

  void validate() const;
};

UniversalityConfig parse_universality_config(const KeyValueFile& file);
UniversalityConfig load_universality_config(const std::string& path);

}  // namespace spiked
