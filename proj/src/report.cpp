#include "spiked/report.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spiked/errors.hpp"

namespace spiked {

using nlohmann::json;

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf.data(), ptr);
}

std::string sweep_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  const ExperimentConfig& c = report.config;
  for (const TrialRecord& t : report.trials) {
    const ThetaSummary& s = report.summaries.at(t.theta_index);
    out << c.group.name() << ',' << c.n << ',' << to_string(c.noise_model) << ',' << format_double(s.theta) << ','
        << t.trial << ',' << t.seed << ',' << format_double(t.empirical_loss) << ','
        << (s.prediction_mean ? format_double(*s.prediction_mean) : "") << ','
        << (s.prediction_stderr ? format_double(*s.prediction_stderr) : "") << '\n';
  }
  return out.str();
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["group"] = c.group.name();
  j["n"] = c.n;
  j["theta_grid"] = c.theta_grid;
  j["trials"] = c.trials;
  j["noise_model"] = to_string(c.noise_model);
  j["round"] = c.round.name();
  j["loss"] = c.loss.name();
  if (c.loss.kind == LossSpec::Kind::custom_table) j["loss_table"] = c.loss.table;
  j["mc_samples"] = c.mc_samples;
  j["master_seed"] = c.master_seed;
  return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.group = GroupKind::parse(j.at("group").get<std::string>());
    c.n = j.at("n").get<std::size_t>();
    c.theta_grid = j.at("theta_grid").get<std::vector<double>>();
    c.trials = j.at("trials").get<std::size_t>();
    c.noise_model = parse_noise_model(j.at("noise_model").get<std::string>());
    c.round = RoundSpec::parse(j.at("round").get<std::string>());
    c.loss = LossSpec::parse(j.at("loss").get<std::string>());
    if (j.contains("loss_table")) c.loss.table = j.at("loss_table").get<std::vector<double>>();
    c.mc_samples = j.at("mc_samples").get<std::size_t>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config in report: ") + e.what());
  }
}

json to_json(const ExperimentReport& r) {
  json j;
  j["library_version"] = r.library_version;
  j["config"] = to_json(r.config);
  json summaries = json::array();
  for (const ThetaSummary& s : r.summaries) {
    json e;
    e["theta"] = s.theta;
    e["mean_loss"] = s.mean_loss;
    e["std_loss"] = s.std_loss;
    e["prediction_mean"] = s.prediction_mean ? json(*s.prediction_mean) : json(nullptr);
    e["prediction_stderr"] = s.prediction_stderr ? json(*s.prediction_stderr) : json(nullptr);
    e["prediction_seed"] = s.prediction_seed;
    summaries.push_back(std::move(e));
  }
  j["summaries"] = std::move(summaries);
  json trials = json::array();
  for (const TrialRecord& t : r.trials) {
    json e;
    e["theta_index"] = t.theta_index;
    e["trial"] = t.trial;
    e["seed"] = t.seed;
    e["empirical_loss"] = t.empirical_loss;
    e["lambda_hat"] = t.lambda_hat;
    e["overlap_sq"] = t.overlap_sq;
    trials.push_back(std::move(e));
  }
  j["trials"] = std::move(trials);
  return j;
}

ExperimentReport sweep_report_from_json(const json& j) {
  try {
    ExperimentReport r;
    r.library_version = j.at("library_version").get<std::string>();
    r.config = experiment_config_from_json(j.at("config"));
    for (const json& e : j.at("summaries")) {
      ThetaSummary s;
      s.theta = e.at("theta").get<double>();
      s.mean_loss = e.at("mean_loss").get<double>();
      s.std_loss = e.at("std_loss").get<double>();
      if (!e.at("prediction_mean").is_null()) s.prediction_mean = e.at("prediction_mean").get<double>();
      if (!e.at("prediction_stderr").is_null()) s.prediction_stderr = e.at("prediction_stderr").get<double>();
      s.prediction_seed = e.at("prediction_seed").get<std::uint64_t>();
      r.summaries.push_back(s);
    }
    for (const json& e : j.at("trials")) {
      TrialRecord t;
      t.theta_index = e.at("theta_index").get<std::size_t>();
      t.trial = e.at("trial").get<std::size_t>();
      t.seed = e.at("seed").get<std::uint64_t>();
      t.empirical_loss = e.at("empirical_loss").get<double>();
      t.lambda_hat = e.at("lambda_hat").get<double>();
      t.overlap_sq = e.at("overlap_sq").get<double>();
      if (t.theta_index >= r.summaries.size()) throw ValidationError("trial refers to a missing theta index");
      r.trials.push_back(t);
    }
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed sweep report: ") + e.what());
  }
}

std::string universality_csv(const UniversalityReport& report) {
  std::ostringstream out;
  out << "i,j,mean_a,stderr_a,mean_b,stderr_b,difference,combined_stderr\n";
  for (const PairComparison& p : report.pairs) {
    out << p.i << ',' << p.j << ',' << format_double(p.mean_a) << ',' << format_double(p.stderr_a) << ','
        << format_double(p.mean_b) << ',' << format_double(p.stderr_b) << ',' << format_double(p.difference) << ','
        << format_double(p.combined_stderr) << '\n';
  }
  return out.str();
}

namespace {

json to_json(const EnsembleSpec& s) {
  return json{{"kind", to_string(s.kind)},
              {"n", s.n},
              {"entry_law", to_string(s.entry_law)},
              {"field", to_string(s.field)},
              {"profile_bound", s.profile_bound},
              {"eps_w", s.eps_w},
              {"c_w", s.c_w}};
}

}  // namespace

json to_json(const UniversalityReport& r) {
  const UniversalityConfig& c = r.config;
  json cfg{{"n", c.n},
           {"theta", c.theta},
           {"phi", to_string(c.phi)},
           {"signal", to_string(c.signal)},
           {"trials", c.trials},
           {"master_seed", c.master_seed},
           {"a", to_json(c.spec_a)},
           {"b", to_json(c.spec_b)}};
  json pairs = json::array();
  for (const PairComparison& p : r.pairs) {
    pairs.push_back(json{{"i", p.i},
                         {"j", p.j},
                         {"mean_a", p.mean_a},
                         {"stderr_a", p.stderr_a},
                         {"mean_b", p.mean_b},
                         {"stderr_b", p.stderr_b},
                         {"difference", p.difference},
                         {"combined_stderr", p.combined_stderr}});
  }
  return json{{"library_version", SPIKED_VERSION},
              {"config", std::move(cfg)},
              {"pairs", std::move(pairs)},
              {"max_abs_difference", r.max_abs_difference()},
              {"max_standardized_difference", r.max_standardized_difference()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw Error("cannot create directory for '" + path + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace spiked
