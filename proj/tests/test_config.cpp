#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "spiked/config.hpp"
#include "spiked/errors.hpp"

using namespace spiked;

namespace {

ExperimentConfig parse(std::string_view text) { return parse_experiment_config(KeyValueFile::parse(text)); }

}  // namespace

TEST_CASE("key-value parsing") {
  const auto f = KeyValueFile::parse("# header\n  n = 40  \n\ngroup=Z/3 # trailing\n");
  CHECK(f.get("n") == "40");
  CHECK(f.get("group") == "Z/3");
  CHECK_FALSE(f.get("trials").has_value());
  CHECK(f.entries().size() == 2);

  CHECK_THROWS_AS(KeyValueFile::parse("n = 1\nn = 2\n"), ValidationError);
  CHECK_THROWS_AS(KeyValueFile::parse("just words\n"), ValidationError);
  CHECK_THROWS_AS(KeyValueFile::parse(" = 3\n"), ValidationError);
  CHECK_THROWS_AS(KeyValueFile::load("/nonexistent/spiked.cfg"), ValidationError);

  try {
    KeyValueFile::parse("zeta = 1\nalpha = 2\nn = 3\n").require_known({"n"});
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "unknown config keys: alpha, zeta");
  }
}

TEST_CASE("theta grids") {
  const auto grid = default_theta_grid();
  REQUIRE(grid.size() == 30);
  CHECK(grid.front() == 1.1);
  CHECK(grid.back() == 4.0);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(grid[k] == doctest::Approx(1.1 + 0.1 * double(k)).epsilon(1e-14));
  CHECK(grid[3] == 1.4);

  CHECK(parse_theta_grid("1.5, 2,2.5") == std::vector<double>{1.5, 2.0, 2.5});
  CHECK(parse_theta_grid("2:3:0.5") == std::vector<double>{2.0, 2.5, 3.0});
  CHECK(parse_theta_grid("2:2:1") == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_theta_grid("2:1:0.5"), ValidationError);
  CHECK_THROWS_AS(parse_theta_grid("1:2:0"), ValidationError);
  CHECK_THROWS_AS(parse_theta_grid("1:2"), ValidationError);
  CHECK_THROWS_AS(parse_theta_grid("1.5, abc"), ValidationError);
}

TEST_CASE("experiment config") {
  const auto c = parse(
      "group = Z/5\nn = 200\ntheta_grid = 1.5, 2\ntrials = 3\nnoise_model = gaussian-additive\n"
      "mc_samples = 5000\nmaster_seed = 99\nreport_name = r\n");
  CHECK(c.group == GroupKind::cyclic(5));
  CHECK(c.n == 200);
  CHECK(c.theta_grid == std::vector<double>{1.5, 2.0});
  CHECK(c.trials == 3);
  CHECK(c.noise_model == NoiseModel::gaussian_additive);
  CHECK(c.loss == LossSpec::mismatch());
  CHECK(c.round.kind == RoundSpec::Kind::nearest_character);
  CHECK(c.mc_samples == 5000);
  CHECK(c.master_seed == 99);
  CHECK(c.report_name == "r");

  const auto d = parse("");
  CHECK(d.group == GroupKind::cyclic(2));
  CHECK(d.n == 500);
  CHECK(d.theta_grid == default_theta_grid());
  CHECK(d.noise_model == NoiseModel::truth_or_haar);

  const auto u = parse("group = U(1)\nround = phase\n");
  CHECK(u.loss == LossSpec::one_minus_cos());

  const auto t = parse("group = Z/2\nloss = custom-table\nloss_table = 0, 1, 2, 0\n");
  CHECK(t.loss.table == std::vector<double>{0, 1, 2, 0});
}

TEST_CASE("experiment config errors") {
  CHECK_THROWS_AS(parse("colour = red\n"), ValidationError);
  CHECK_THROWS_AS(parse("n = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse("n = -4\n"), ValidationError);
  CHECK_THROWS_AS(parse("n = 12abc\n"), ValidationError);
  CHECK_THROWS_AS(parse("trials = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("group = Z/1\n"), ValidationError);
  CHECK_THROWS_AS(parse("group = SO(3)\n"), ValidationError);
  CHECK_THROWS_AS(parse("noise_model = laplace\n"), ValidationError);
  CHECK_THROWS_AS(parse("group = U(1)\nloss = mismatch\n"), ValidationError);
  CHECK_THROWS_AS(parse("group = Z/3\nround = phase\n"), ValidationError);
  CHECK_THROWS_AS(parse("loss = custom-table\nloss_table = 0, 1\n"), ValidationError);
  CHECK_THROWS_AS(parse("loss_table = 0, 1, 1, 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("theta_grid = 0, 1\n"), ValidationError);
  CHECK_THROWS_AS(parse("mc_samples = 10\n"), ValidationError);

  // p = theta / sqrt(n) must not exceed 1 under truth-or-Haar
  CHECK_THROWS_AS(parse("n = 4\ntheta_grid = 2.5\n"), ValidationError);
  CHECK_NOTHROW(parse("n = 4\ntheta_grid = 2\n"));
  CHECK_NOTHROW(parse("n = 4\ntheta_grid = 2.5\nnoise_model = gaussian-additive\n"));
}

TEST_CASE("config file on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "spiked_config_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "sweep.cfg").string();
  std::ofstream(path) << "group = Z/3\nn = 50\ntheta_grid = 2\n";
  const auto c = load_experiment_config(path);
  CHECK(c.group == GroupKind::cyclic(3));
  CHECK(c.n == 50);
  std::filesystem::remove_all(dir);
}

TEST_CASE("test functions and signal shapes") {
  CHECK(apply(TestFunction::tanh, 0.5) == std::tanh(0.5));
  CHECK(apply(TestFunction::cos, 0.5) == std::cos(0.5));
  CHECK(apply(TestFunction::gauss, 2.0) == doctest::Approx(std::exp(-2.0)));
  for (auto phi : {TestFunction::tanh, TestFunction::cos, TestFunction::gauss})
    CHECK(parse_test_function(to_string(phi)) == phi);
  for (auto s : {SignalShape::flat, SignalShape::random_sign, SignalShape::random_phase, SignalShape::e1})
    CHECK(parse_signal_shape(to_string(s)) == s);
  CHECK_THROWS_AS(parse_test_function("sin"), ValidationError);
  CHECK(parse_noise_model(to_string(NoiseModel::truth_or_haar)) == NoiseModel::truth_or_haar);
}

TEST_CASE("universality config") {
  const auto c = parse_universality_config(KeyValueFile::parse(
      "n = 60\ntheta = 2.5\nphi = cos\nsignal = flat\npairs = 0-1, 5-7\ntrials = 20\n"
      "a.kind = gue\nb.kind = generalized-wigner\nb.entry_law = rademacher\nb.field = complex\n"));
  CHECK(c.n == 60);
  CHECK(c.theta == 2.5);
  CHECK(c.phi == TestFunction::cos);
  CHECK(c.signal == SignalShape::flat);
  REQUIRE(c.pairs.size() == 2);
  CHECK(c.pairs[1] == std::pair<std::size_t, std::size_t>{5, 7});
  CHECK(c.spec_a.kind == EnsembleKind::gue);
  CHECK(c.spec_a.n == 60);
  CHECK(c.spec_b.entry_law == EntryLaw::rademacher);
  CHECK(c.spec_b.field == Field::complex);

  const std::string ab = "a.kind = goe\nb.kind = generalized-wigner\nb.entry_law = rademacher\n";
  const auto d = parse_universality_config(KeyValueFile::parse(ab));
  CHECK(d.n == 400);
  CHECK(d.trials == 200);
  CHECK(d.spec_a.kind == EnsembleKind::goe);
  CHECK(d.spec_b.entry_law == EntryLaw::rademacher);

  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse("a.kind = goe\n")), ValidationError);
  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse(ab + "a.field = complex\n")), ValidationError);
  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse(ab + "pairs = 0-400\n")), ValidationError);
  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse(ab + "pairs = 3\n")), ValidationError);
  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse(ab + "trials = 1\n")), ValidationError);
  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse(ab + "c.kind = goe\n")), ValidationError);
  CHECK_THROWS_AS(parse_universality_config(KeyValueFile::parse(ab + "n = 3\nrandom_pairs = 7\n")), ValidationError);
}
