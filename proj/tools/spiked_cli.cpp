// Command-line front end: sweep, universality, predict, plot.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "spiked/config.hpp"
#include "spiked/errors.hpp"
#include "spiked/harness.hpp"
#include "spiked/plot.hpp"
#include "spiked/report.hpp"
#include "spiked/single_letter.hpp"

namespace fs = std::filesystem;
using namespace spiked;

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kValidationFailure = 2;

std::set<std::string> parse_formats(const std::string& text, const std::set<std::string>& allowed) {
  std::set<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "all") return allowed;
    if (!allowed.count(item)) throw ValidationError("unsupported format '" + item + "'");
    out.insert(item);
  }
  if (out.empty()) throw ValidationError("no output format selected");
  return out;
}

std::string join(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

void print_written(const std::string& path) { std::cout << "wrote " << path << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiked Hermitian matrix simulation and verification toolkit"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "all";
  unsigned threads = 1;
  app.add_option("--seed", seed, "Override the master seed");
  app.add_option("--out-dir", out_dir, "Override the output directory");
  app.add_option("--format", format, "Comma list of csv, json, svg, or all");
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency); does not change results");

  auto* sweep = app.add_subcommand("sweep", "Run a theta sweep of the rounded spectral estimator");
  std::string sweep_config;
  sweep->add_option("config", sweep_config, "Experiment config file")->required();

  auto* univ = app.add_subcommand("universality", "Compare entry statistics of v_hat under two noise laws");
  std::string univ_config;
  univ->add_option("config", univ_config, "Universality config file")->required();

  auto* predict = app.add_subcommand("predict", "Monte Carlo single-letter prediction");
  std::string group_text = "Z/2", loss_text, round_text = "nearest-character";
  double theta = 2.0;
  std::size_t samples = 1'000'000;
  predict->add_option("--group", group_text, "Z/L or U(1)");
  predict->add_option("--theta", theta, "Signal strength (> 1)")->required();
  predict->add_option("--loss", loss_text, "mismatch or one-minus-cos (default: natural loss of the group)");
  predict->add_option("--round", round_text, "nearest-character or phase");
  predict->add_option("--samples", samples, "Monte Carlo samples");

  auto* plot = app.add_subcommand("plot", "Render one or more sweep reports to SVG");
  std::vector<std::string> plot_inputs;
  std::string plot_output;
  plot->add_option("reports", plot_inputs, "Sweep report JSON files (same group)")->required();
  plot->add_option("-o,--output", plot_output, "Output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationFailure;
  }

  try {
    if (*sweep) {
      ExperimentConfig config = load_experiment_config(sweep_config);
      if (seed) config.master_seed = *seed;
      if (!out_dir.empty()) config.out_dir = out_dir;
      const auto formats = parse_formats(format, {"csv", "json", "svg"});
      const auto start = std::chrono::steady_clock::now();
      const ExperimentReport report = run_sweep(config, RunOptions{threads});
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string base = join(config.out_dir, config.report_name);
      if (formats.count("csv")) {
        write_file(base + ".csv", sweep_csv(report));
        print_written(base + ".csv");
      }
      if (formats.count("json")) {
        write_file(base + ".json", dump(to_json(report)));
        print_written(base + ".json");
      }
      if (formats.count("svg")) {
        write_file(base + ".svg", render_svg({report}));
        print_written(base + ".svg");
      }
      // wall time lives outside the report so report bytes stay reproducible
      write_file(base + ".timing.json",
                 dump(nlohmann::json{{"wall_seconds", seconds}, {"threads", threads}}));
      return 0;
    }
    if (*univ) {
      UniversalityConfig config = load_universality_config(univ_config);
      if (seed) config.master_seed = *seed;
      if (!out_dir.empty()) config.out_dir = out_dir;
      const auto formats = parse_formats(format, {"csv", "json"});
      const UniversalityReport report = run_universality_ab(config, RunOptions{threads});
      const std::string base = join(config.out_dir, config.report_name);
      if (formats.count("csv")) {
        write_file(base + ".csv", universality_csv(report));
        print_written(base + ".csv");
      }
      if (formats.count("json")) {
        write_file(base + ".json", dump(to_json(report)));
        print_written(base + ".json");
      }
      std::cout << "max |difference| = " << report.max_abs_difference()
                << ", max |difference| / combined stderr = " << report.max_standardized_difference() << '\n';
      return 0;
    }
    if (*predict) {
      const GroupKind group = GroupKind::parse(group_text);
      const LossSpec loss = loss_text.empty() ? LossSpec::default_for(group) : LossSpec::parse(loss_text);
      const RoundSpec round = RoundSpec::parse(round_text);
      MonteCarloOptions mc;
      mc.n_samples = samples;
      mc.seed = seed.value_or(0);
      mc.threads = threads;
      const SingleLetterEstimate est = mc_single_letter_sync(group, Theta(theta), round, loss, mc);
      nlohmann::json j{{"group", group.name()},   {"theta", theta},       {"loss", loss.name()},
                       {"round", round.name()},   {"mean", est.mean},     {"stderr", est.std_error},
                       {"n_samples", est.n_samples}, {"seed", mc.seed}};
      if (group == GroupKind::cyclic(2) && loss.kind == LossSpec::Kind::mismatch)
        j["closed_form"] = closed_form_z2_mismatch(Theta(theta));
      std::cout << dump(j);
      return 0;
    }
    if (*plot) {
      std::vector<ExperimentReport> reports;
      for (const auto& path : plot_inputs)
        reports.push_back(sweep_report_from_json(nlohmann::json::parse(read_file(path))));
      std::string target = plot_output;
      if (target.empty()) {
        fs::path p(plot_inputs.front());
        p.replace_extension(".svg");
        target = out_dir.empty() ? p.string() : join(out_dir, p.filename().string());
      }
      write_file(target, render_svg(reports));
      print_written(target);
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return 0;
}
