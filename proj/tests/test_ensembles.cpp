#include <cmath>

#include "doctest.h"
#include "spiked/ensembles.hpp"
#include "spiked/errors.hpp"
#include "spiked/spectral.hpp"
#include "spiked/sync.hpp"

using namespace spiked;

namespace {

struct Sample {
  double mean = 0.0;
  double se = 0.0;
};

Sample summarize(const std::vector<double>& xs) {
  double s = 0.0, ss = 0.0;
  for (double x : xs) s += x;
  const double m = s / xs.size();
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (xs.size() - 1) / xs.size())};
}

std::vector<double> upper_entries(const HermitianMatrix& w, bool squared_modulus) {
  std::vector<double> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      out.push_back(squared_modulus ? std::norm(w(i, j)) : w(i, j).real());
  return out;
}

}  // namespace

TEST_CASE("Hermitian construction invariant") {
  CMatrix a(2, 2);
  a << 1.0, Complex(0, 1), Complex(0, -1), 2.0;
  CHECK_NOTHROW(HermitianMatrix(a, false));
  CHECK_THROWS_AS(HermitianMatrix(a, true), ValidationError);
  a(1, 0) = Complex(0, 1);
  CHECK_THROWS_AS(HermitianMatrix(a, false), ValidationError);
  CMatrix b(2, 3);
  CHECK_THROWS_AS(HermitianMatrix(b, false), ValidationError);
}

TEST_CASE("GOE sampler") {
  Rng unused(1);
  CHECK_THROWS_AS(sample_goe(0, unused), DomainError);

  std::vector<double> scalars;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    Rng rng(s);
    scalars.push_back(std::norm(sample_goe(1, rng)(0, 0)));
  }
  const Sample var1 = summarize(scalars);
  CHECK(std::abs(var1.mean - 2.0) <= 3 * var1.se);

  Rng rng(7);
  const std::size_t n = 200;
  const HermitianMatrix w = sample_goe(n, rng);
  CHECK(w.is_real());
  const auto off = upper_entries(w, false);
  const double count = off.size();
  // four standard errors of the mean of n(n-1)/2 entries with variance 1/n
  CHECK(std::abs(summarize(off).mean) <= 4.0 / (std::sqrt(double(n)) * std::sqrt(count)));

  int inside = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng r(100 + s);
    const double norm = operator_norm(sample_goe(500, r));
    inside += norm >= 1.8 && norm <= 2.2;
  }
  CHECK(inside >= 9);
}

TEST_CASE("GUE sampler") {
  std::vector<double> scalars;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    Rng rng(s);
    const Complex x = sample_gue(1, rng)(0, 0);
    CHECK(x.imag() == 0.0);
    scalars.push_back(std::norm(x));
  }
  const Sample var1 = summarize(scalars);
  CHECK(std::abs(var1.mean - 1.0) <= 3 * var1.se);

  Rng rng(9);
  const HermitianMatrix w = sample_gue(200, rng);
  CHECK_FALSE(w.is_real());
  const Sample abs2 = summarize(upper_entries(w, true));
  CHECK(std::abs(abs2.mean - 1.0 / 200) <= 3 * abs2.se);
  for (std::size_t i = 0; i < 200; ++i)
    for (std::size_t j = 0; j < 200; ++j) CHECK(w(j, i) == std::conj(w(i, j)));
}

TEST_CASE("sampler determinism") {
  Rng a(123), b(123);
  CHECK(sample_gue(50, a).entries() == sample_gue(50, b).entries());
  const auto spec = EnsembleSpec::flat(40, EntryLaw::uniform_centered, Field::complex);
  Rng c(5), d(5);
  CHECK(sample(spec, c).entries() == sample(spec, d).entries());
}

TEST_CASE("generalized Wigner sampler") {
  Rng rng(3);
  const auto w = sample_generalized_wigner(EnsembleSpec::flat(2, EntryLaw::rademacher, Field::real), rng);
  CHECK(std::abs(std::abs(w(0, 1).real()) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(std::abs(w(0, 0).real()) - 1.0 / std::sqrt(2.0)) < 1e-15);

  // flat gaussian over R matches GOE off the diagonal
  Rng r1(4);
  const auto g = sample_generalized_wigner(EnsembleSpec::flat(300, EntryLaw::gaussian, Field::real), r1);
  CHECK(g.is_real());
  const Sample v = summarize(upper_entries(g, true));
  CHECK(std::abs(v.mean - 1.0 / 300) <= 3 * v.se);

  // flat-profile entry variance at n = 500 for every entry law
  for (EntryLaw law : {EntryLaw::gaussian, EntryLaw::rademacher, EntryLaw::uniform_centered}) {
    for (Field field : {Field::real, Field::complex}) {
      Rng r(77);
      const auto x = sample_generalized_wigner(EnsembleSpec::flat(500, law, field), r);
      const Sample s = summarize(upper_entries(x, true));
      // Rademacher moduli are constant, so allow for summation rounding
      CHECK(std::abs(s.mean - 1.0 / 500) <= 5 * s.se + 1e-12);
    }
  }

  // uniform-centered entries stay inside +-sqrt(3) sigma
  Rng r2(6);
  const auto u = sample_generalized_wigner(EnsembleSpec::flat(50, EntryLaw::uniform_centered, Field::real), r2);
  CHECK(u.entries().cwiseAbs().maxCoeff() <= std::sqrt(3.0 / 50) + 1e-15);
}

TEST_CASE("semicircle spectral moments for flat Rademacher") {
  Rng rng(42);
  const auto w = sample_generalized_wigner(EnsembleSpec::flat(1000, EntryLaw::rademacher, Field::real), rng);
  const Eigen::VectorXd ev = eigenvalues(w);
  const double m2 = ev.array().square().mean();
  const double m4 = ev.array().square().square().mean();
  CHECK(std::abs(m2 - 1.0) <= 0.05);
  CHECK(std::abs(m4 - 2.0) <= 0.1);
}

TEST_CASE("variance profile validation lists rows") {
  EnsembleSpec spec = EnsembleSpec::flat(3, EntryLaw::gaussian, Field::real);
  RMatrix p = RMatrix::Constant(3, 3, 1.0 / 3);
  p(1, 2) = p(2, 1) = 0.5;
  spec.variance_profile = p;
  spec.profile_bound = 2.0;
  try {
    validate_profile(spec);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("rows: 1 2") != std::string::npos);
  }
  Rng rng(1);
  CHECK_THROWS_AS(sample_generalized_wigner(spec, rng), ValidationError);

  // a valid two-block profile
  RMatrix q(4, 4);
  q << 0.3, 0.2, 0.3, 0.2, 0.2, 0.3, 0.2, 0.3, 0.3, 0.2, 0.3, 0.2, 0.2, 0.3, 0.2, 0.3;
  spec = EnsembleSpec::flat(4, EntryLaw::gaussian, Field::real);
  spec.variance_profile = q;
  spec.profile_bound = 1.25;
  CHECK_NOTHROW(validate_profile(spec));
  spec.profile_bound = 1.1;
  CHECK_THROWS_AS(validate_profile(spec), ValidationError);
}

TEST_CASE("truth-or-Haar sampler") {
  const auto z5 = GroupKind::cyclic(5);
  Rng rng(8);
  const auto x = haar_samples(z5, 60, rng);
  const auto m = pairwise_matrix(z5, x);

  Rng r1(1);
  const auto y1 = sample_truth_or_haar(z5, x, 1.0, r1);
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = 0; j < 60; ++j) CHECK(y1(i, j) == m(i, j));
  CHECK(y1.is_group_hermitian());

  CHECK_THROWS_AS(sample_truth_or_haar(z5, x, 1.5, r1), DomainError);
  CHECK_THROWS_AS(sample_truth_or_haar(z5, x, -0.1, r1), DomainError);
  CHECK_THROWS_AS(sample_truth_or_haar(z5, {Residue{0}}, 0.5, r1), DomainError);

  auto agreement = [](const GroupMatrix& a, const GroupMatrix& b) {
    std::size_t hit = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j, ++total) hit += a(i, j) == b(i, j);
    return std::pair{double(hit) / total, double(total)};
  };

  // p = 0: pure Haar, agreement 1/L
  Rng r0(2);
  const auto x0 = haar_samples(z5, 400, r0);
  const auto [rate0, total0] = agreement(sample_truth_or_haar(z5, x0, 0.0, r0), pairwise_matrix(z5, x0));
  CHECK(std::abs(rate0 - 0.2) <= 3 * std::sqrt(0.2 * 0.8 / total0));

  const auto z2 = GroupKind::cyclic(2);
  Rng r2(3);
  const auto x2 = haar_samples(z2, 2000, r2);
  const auto [rate2, total2] = agreement(sample_truth_or_haar(z2, x2, 0.5, r2), pairwise_matrix(z2, x2));
  CHECK(std::abs(rate2 - 0.75) <= 0.02);
  CHECK(std::abs(rate2 - 0.75) <= 3 * std::sqrt(0.75 * 0.25 / total2));

  for (int l : {3, 7}) {
    const auto g = GroupKind::cyclic(l);
    Rng r(10 + l);
    const auto xs = haar_samples(g, 500, r);
    const double p = 0.3;
    const auto [rate, total] = agreement(sample_truth_or_haar(g, xs, p, r), pairwise_matrix(g, xs));
    const double expect = p + (1 - p) / l;
    CHECK(std::abs(rate - expect) <= 3 * std::sqrt(expect * (1 - expect) / total));
  }
}

TEST_CASE("build_spiked") {
  CVector e1 = CVector::Zero(3);
  e1(0) = 1.0;
  const auto h = build_spiked(SpikeConfig(2.0, e1), HermitianMatrix::zero(3));
  CHECK(h(0, 0) == Complex(2.0, 0.0));
  CHECK(h.entries().cwiseAbs().sum() == 2.0);
  CHECK(h.is_real());

  Rng rng(4);
  const auto w = sample_gue(30, rng);
  CVector v = CVector::Zero(30);
  for (int i = 0; i < 30; ++i) v(i) = std::polar(1.0 / std::sqrt(30.0), 0.3 * i);
  CHECK(build_spiked(SpikeConfig(0.0, v), w).entries() == w.entries());
  const auto hs = build_spiked(SpikeConfig(1.7, v), w);
  CHECK_FALSE(hs.is_real());
  CHECK(std::abs(hs.trace() - (1.7 + w.trace())) <= 1e-10);

  CHECK_THROWS_AS(build_spiked(SpikeConfig(1.0, e1), w), ValidationError);
  CHECK_THROWS_AS(SpikeConfig(1.0, 2.0 * e1), ValidationError);
  CHECK_THROWS_AS(SpikeConfig(-1.0, e1), DomainError);
}

TEST_CASE("sync observation matrix") {
  Rng rng(12);
  const auto z2 = GroupKind::cyclic(2);
  const auto x2 = haar_samples(z2, 50, rng);
  const auto h2 = sync_observation_matrix(z2, sample_truth_or_haar(z2, x2, 0.3, rng));
  CHECK(h2.is_real());
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) CHECK(std::abs(std::abs(h2(i, j).real()) - 1 / std::sqrt(50.0)) < 1e-15);

  const auto u1 = GroupKind::circle();
  const auto xu = haar_samples(u1, 50, rng);
  const auto hu = sync_observation_matrix(u1, sample_truth_or_haar(u1, xu, 0.3, rng));
  CHECK_FALSE(hu.is_real());
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) CHECK(std::abs(std::abs(hu(i, j)) - 1 / std::sqrt(50.0)) < 1e-15);
}

TEST_CASE("conditional mean of the sync observation is theta vv*") {
  const std::size_t n = 400;
  const double theta = 2.0;
  const double p = theta / std::sqrt(double(n));
  const auto z5 = GroupKind::cyclic(5);
  Rng rng(31);
  const auto x = haar_samples(z5, n, rng);
  const CVector v = signal_vector(z5, x);
  const std::vector<std::pair<std::size_t, std::size_t>> subset = {{0, 1}, {3, 17}, {10, 399}, {100, 200},
                                                                   {57, 58}, {250, 7}, {390, 12}, {5, 6}};
  const int reps = 300;
  std::vector<std::vector<Complex>> draws(subset.size());
  for (int r = 0; r < reps; ++r) {
    const auto h = sync_observation_matrix(z5, sample_truth_or_haar(z5, x, p, rng));
    for (std::size_t k = 0; k < subset.size(); ++k) draws[k].push_back(h(subset[k].first, subset[k].second));
  }
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const auto [i, j] = subset[k];
    const Complex target = theta * v(i) * std::conj(v(j));
    std::vector<double> re, im;
    for (const Complex& c : draws[k]) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    const Sample sr = summarize(re);
    const Sample si = summarize(im);
    CHECK(std::abs(sr.mean - target.real()) <= 3 * sr.se);
    CHECK(std::abs(si.mean - target.imag()) <= 3 * si.se);
  }
}

TEST_CASE("weakly Wigner validation") {
  std::vector<HermitianMatrix> gue, goe;
  for (std::uint64_t s = 0; s < 3; ++s) {
    Rng r(s);
    gue.push_back(sample_gue(300, r));
    goe.push_back(sample_goe(300, r));
  }
  CHECK(validate_weakly_wigner(gue, Field::complex, 0.5, 4.0).passed());
  CHECK(validate_weakly_wigner(goe, Field::real, 0.5, 4.0).passed());
  // a real matrix has no imaginary variance, so it fails the complex checks
  CHECK_FALSE(validate_weakly_wigner(goe, Field::complex, 0.5, 4.0).passed());
  // and GUE has imaginary parts
  CHECK_FALSE(validate_weakly_wigner(gue, Field::real, 0.5, 4.0).passed());
  // a variance off by a factor of two is caught
  std::vector<HermitianMatrix> scaled;
  scaled.emplace_back(std::sqrt(2.0) * goe.front().entries(), true);
  CHECK_FALSE(validate_weakly_wigner(scaled, Field::real, 0.5, 4.0).passed());

  // centered truth-or-Haar noise W = H - theta vv*
  for (const auto& g : {GroupKind::cyclic(2), GroupKind::cyclic(5), GroupKind::circle()}) {
    const std::size_t n = 400;
    const double theta = 2.0;
    Rng rng(99);
    const auto x = haar_samples(g, n, rng);
    const CVector v = signal_vector(g, x);
    std::vector<HermitianMatrix> centered;
    for (int r = 0; r < 2; ++r) {
      const auto h = sync_observation_matrix(g, sample_truth_or_haar(g, x, theta / std::sqrt(double(n)), rng));
      CMatrix w = h.entries();
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) -= theta * v(i) * std::conj(v(j));
      // restore exact symmetry of the subtraction
      for (Eigen::Index i = 0; i < w.rows(); ++i) {
        w(i, i) = w(i, i).real();
        for (Eigen::Index j = i + 1; j < w.cols(); ++j) w(j, i) = std::conj(w(i, j));
      }
      centered.emplace_back(std::move(w), g.real_characters());
    }
    const Field f = g.real_characters() ? Field::real : Field::complex;
    const auto report = validate_weakly_wigner(centered, f, 0.5, 4.0);
    INFO(g.name());
    for (const auto& c : report.checks) {
      INFO(c.name << " measured " << c.measured << " target " << c.target << " tol " << c.tolerance);
      CHECK(c.passed);
    }
  }
}
