#pragma once

#include "json.hpp"
#include <string>

#include "spiked/harness.hpp"

namespace spiked {

/// Column order of the sweep CSV.
inline constexpr const char* kSweepCsvHeader =
    "group,n,noise_model,theta,trial,seed,empirical_loss,prediction_mean,prediction_stderr";

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

std::string sweep_csv(const ExperimentReport& report);
nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport sweep_report_from_json(const nlohmann::json& j);

/// The experiment fields of a config; output paths are not echoed so the
/// report bytes do not depend on where they are written.
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

std::string universality_csv(const UniversalityReport& report);
nlohmann::json to_json(const UniversalityReport& report);

/// Serialized JSON text (two-space indent, trailing newline).
std::string dump(const nlohmann::json& j);

/// Writes text to path, creating parent directories. Throws Error naming the
/// path on failure.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace spiked
