#include "spiked/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spiked/errors.hpp"

namespace spiked {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string normalize(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value))
    throw ValidationError("'" + key + "': not a number: '" + text + "'");
  return value;
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ValidationError("'" + key + "': not a non-negative integer: '" + text + "'");
  return value;
}

std::vector<double> parse_table(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_double("loss_table", item));
  return out;
}

EnsembleSpec parse_ensemble(const KeyValueFile& file, const std::string& prefix, std::size_t n) {
  const auto kind_text = file.get(prefix + "kind");
  if (!kind_text) throw ValidationError("missing key '" + prefix + "kind'");
  const EnsembleKind kind = parse_ensemble_kind(*kind_text);
  EnsembleSpec spec;
  if (kind == EnsembleKind::goe) {
    spec = EnsembleSpec::goe(n);
  } else if (kind == EnsembleKind::gue) {
    spec = EnsembleSpec::gue(n);
  } else {
    spec = EnsembleSpec::flat(n, EntryLaw::gaussian, Field::real);
    spec.kind = kind;
  }
  if (auto v = file.get(prefix + "entry_law")) spec.entry_law = parse_entry_law(*v);
  if (auto v = file.get(prefix + "field")) spec.field = parse_field(*v);
  if (auto v = file.get(prefix + "profile_bound")) spec.profile_bound = to_double(prefix + "profile_bound", *v);
  if (auto v = file.get(prefix + "eps_w")) spec.eps_w = to_double(prefix + "eps_w", *v);
  if (auto v = file.get(prefix + "c_w")) spec.c_w = to_double(prefix + "c_w", *v);
  if (kind == EnsembleKind::goe && spec.field != Field::real) throw ValidationError("GOE is real");
  if (kind == EnsembleKind::gue && spec.field != Field::complex) throw ValidationError("GUE is complex");
  return spec;
}

}  // namespace

std::string to_string(NoiseModel model) {
  return model == NoiseModel::truth_or_haar ? "truth-or-haar" : "gaussian-additive";
}

NoiseModel parse_noise_model(const std::string& text) {
  const std::string t = normalize(text);
  if (t == "truth-or-haar") return NoiseModel::truth_or_haar;
  if (t == "gaussian-additive" || t == "gaussian") return NoiseModel::gaussian_additive;
  throw ValidationError("unknown noise model '" + text + "'");
}

std::vector<double> default_theta_grid() { return parse_theta_grid("1.1:4.0:0.1"); }

std::vector<double> parse_theta_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ValidationError("theta range must be start:stop:step");
    const double start = to_double("theta_grid", parts[0]);
    const double stop = to_double("theta_grid", parts[1]);
    const double step = to_double("theta_grid", parts[2]);
    if (!(step > 0.0) || stop < start) throw ValidationError("theta range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
      // round to 12 decimals so 1.1 + 3 * 0.1 prints as 1.4
      const double raw = start + static_cast<double>(k) * step;
      grid.push_back(std::round(raw * 1e12) / 1e12);
    }
  } else {
    for (const auto& item : split(text, ',')) grid.push_back(to_double("theta_grid", item));
  }
  if (grid.empty()) throw ValidationError("theta grid is empty");
  return grid;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw ValidationError("n must be >= 2");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (theta_grid.empty()) throw ValidationError("theta grid is empty");
  check_compatible(group, round);
  check_compatible(group, loss);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double t : theta_grid) {
    if (!(t > 0.0)) throw ValidationError("theta values must be positive");
    if (noise_model == NoiseModel::truth_or_haar && t / root_n > 1.0)
      throw ValidationError("p = theta / sqrt(n) exceeds 1 for theta = " + std::to_string(t));
  }
  if (mc_samples < 1000) throw ValidationError("mc_samples must be >= 1000");
}

KeyValueFile KeyValueFile::parse(std::string_view text) {
  KeyValueFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    if (!file.entries_.emplace(key, value).second)
      throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

void KeyValueFile::require_known(const std::vector<std::string>& allowed) const {
  std::string unknown;
  for (const auto& [key, value] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) throw ValidationError("unknown config keys: " + unknown);
}

ExperimentConfig parse_experiment_config(const KeyValueFile& file) {
  file.require_known({"group", "n", "theta_grid", "trials", "noise_model", "round", "loss", "loss_table",
                      "mc_samples", "master_seed", "out_dir", "report_name"});
  ExperimentConfig c;
  if (auto v = file.get("group")) c.group = GroupKind::parse(*v);
  if (auto v = file.get("n")) c.n = to_u64("n", *v);
  c.theta_grid = file.get("theta_grid") ? parse_theta_grid(*file.get("theta_grid")) : default_theta_grid();
  if (auto v = file.get("trials")) c.trials = to_u64("trials", *v);
  if (auto v = file.get("noise_model")) c.noise_model = parse_noise_model(*v);
  c.round = file.get("round") ? RoundSpec::parse(*file.get("round")) : RoundSpec{};
  c.loss = file.get("loss") ? LossSpec::parse(*file.get("loss")) : LossSpec::default_for(c.group);
  if (auto v = file.get("loss_table")) {
    if (c.loss.kind != LossSpec::Kind::custom_table) throw ValidationError("loss_table requires loss = custom-table");
    c.loss.table = parse_table(*v);
  }
  if (auto v = file.get("mc_samples")) c.mc_samples = to_u64("mc_samples", *v);
  if (auto v = file.get("master_seed")) c.master_seed = to_u64("master_seed", *v);
  if (auto v = file.get("out_dir")) c.out_dir = *v;
  if (auto v = file.get("report_name")) c.report_name = *v;
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(KeyValueFile::load(path));
}

std::string to_string(TestFunction phi) {
  switch (phi) {
    case TestFunction::tanh: return "tanh";
    case TestFunction::cos: return "cos";
    case TestFunction::gauss: return "gauss";
  }
  return "?";
}

TestFunction parse_test_function(const std::string& text) {
  const std::string t = normalize(text);
  if (t == "tanh") return TestFunction::tanh;
  if (t == "cos") return TestFunction::cos;
  if (t == "gauss") return TestFunction::gauss;
  throw ValidationError("unknown test function '" + text + "' (expected tanh, cos or gauss)");
}

double apply(TestFunction phi, double x) {
  switch (phi) {
    case TestFunction::tanh: return std::tanh(x);
    case TestFunction::cos: return std::cos(x);
    case TestFunction::gauss: return std::exp(-0.5 * x * x);
  }
  return 0.0;
}

std::string to_string(SignalShape shape) {
  switch (shape) {
    case SignalShape::flat: return "flat";
    case SignalShape::random_sign: return "random-sign";
    case SignalShape::random_phase: return "random-phase";
    case SignalShape::e1: return "e1";
  }
  return "?";
}

SignalShape parse_signal_shape(const std::string& text) {
  const std::string t = normalize(text);
  if (t == "flat") return SignalShape::flat;
  if (t == "random-sign") return SignalShape::random_sign;
  if (t == "random-phase") return SignalShape::random_phase;
  if (t == "e1") return SignalShape::e1;
  throw ValidationError("unknown signal shape '" + text + "'");
}

void UniversalityConfig::validate() const {
  if (n < 2) throw ValidationError("n must be >= 2");
  if (trials < 2) throw ValidationError("universality comparison needs >= 2 trials");
  if (!(theta > 0.0)) throw ValidationError("theta must be positive");
  if (spec_a.n != n || spec_b.n != n) throw ValidationError("ensemble dimensions must equal n");
  for (const auto& [i, j] : pairs)
    if (i >= n || j >= n) throw ValidationError("pair index out of range");
  if (pairs.empty() && random_pairs == 0) throw ValidationError("no (i, j) pairs requested");
  if (pairs.empty() && random_pairs > n * (n - 1)) throw ValidationError("more random pairs than off-diagonal entries");
}

UniversalityConfig parse_universality_config(const KeyValueFile& file) {
  std::vector<std::string> allowed = {"n", "theta", "phi", "signal", "pairs", "random_pairs", "trials",
                                      "master_seed", "out_dir", "report_name"};
  for (const std::string p : {"a.", "b."})
    for (const std::string k : {"kind", "entry_law", "field", "profile_bound", "eps_w", "c_w"}) allowed.push_back(p + k);
  file.require_known(allowed);

  UniversalityConfig c;
  if (auto v = file.get("n")) c.n = to_u64("n", *v);
  c.spec_a = parse_ensemble(file, "a.", c.n);
  c.spec_b = parse_ensemble(file, "b.", c.n);
  if (auto v = file.get("theta")) c.theta = to_double("theta", *v);
  if (auto v = file.get("phi")) c.phi = parse_test_function(*v);
  if (auto v = file.get("signal")) c.signal = parse_signal_shape(*v);
  if (auto v = file.get("pairs")) {
    for (const auto& item : split(*v, ',')) {
      const auto dash = item.find('-');
      if (dash == std::string::npos) throw ValidationError("pairs must look like 'i-j, k-l'");
      c.pairs.emplace_back(to_u64("pairs", item.substr(0, dash)), to_u64("pairs", item.substr(dash + 1)));
    }
  }
  if (auto v = file.get("random_pairs")) c.random_pairs = to_u64("random_pairs", *v);
  if (auto v = file.get("trials")) c.trials = to_u64("trials", *v);
  if (auto v = file.get("master_seed")) c.master_seed = to_u64("master_seed", *v);
  if (auto v = file.get("out_dir")) c.out_dir = *v;
  if (auto v = file.get("report_name")) c.report_name = *v;
  c.validate();
  return c;
}

UniversalityConfig load_universality_config(const std::string& path) {
  return parse_universality_config(KeyValueFile::load(path));
}

}  // namespace spiked
