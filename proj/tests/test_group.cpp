#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "spiked/errors.hpp"
#include "spiked/group.hpp"

using namespace spiked;

TEST_CASE("group kinds") {
  CHECK(GroupKind::parse("Z/5") == GroupKind::cyclic(5));
  CHECK(GroupKind::parse("z2") == GroupKind::cyclic(2));
  CHECK(GroupKind::parse("U(1)") == GroupKind::circle());
  CHECK(GroupKind::cyclic(7).name() == "Z/7");
  CHECK(GroupKind::circle().name() == "U(1)");
  CHECK_THROWS_AS(GroupKind::cyclic(1), ValidationError);
  CHECK_THROWS_AS(GroupKind::parse("SO(3)"), ValidationError);
  CHECK(GroupKind::cyclic(2).real_characters());
  CHECK_FALSE(GroupKind::cyclic(3).real_characters());
  CHECK_FALSE(GroupKind::circle().real_characters());
}

TEST_CASE("canonical representatives") {
  const auto z5 = GroupKind::cyclic(5);
  CHECK(make_element(z5, -1) == GroupElement(Residue{4}));
  CHECK(make_element(z5, 12) == GroupElement(Residue{2}));
  CHECK_THROWS_AS(make_element(z5, 0.5), ValidationError);
  const auto u1 = GroupKind::circle();
  const double a = std::get<Angle>(make_element(u1, -0.5)).radians;
  CHECK(a == doctest::Approx(2 * std::numbers::pi - 0.5));
  CHECK(std::get<Angle>(make_element(u1, 7.0)).radians == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK(std::get<Angle>(inverse(u1, Angle{0.0})).radians == 0.0);
  CHECK_FALSE(std::signbit(std::get<Angle>(inverse(u1, Angle{0.0})).radians));
}

TEST_CASE("characters") {
  const auto z2 = GroupKind::cyclic(2);
  CHECK(chi(z2, Residue{0}) == Complex(1, 0));
  CHECK(chi(z2, Residue{1}) == Complex(-1, 0));
  CHECK(chi(GroupKind::cyclic(4), Residue{1}) == Complex(0, 1));
  CHECK(std::abs(chi(GroupKind::circle(), Angle{std::numbers::pi}) - Complex(-1, 0)) < 1e-15);
  CHECK_THROWS_AS(chi(z2, Angle{1.0}), ValidationError);

  Rng rng(11);
  for (const auto& g : {GroupKind::cyclic(2), GroupKind::cyclic(5), GroupKind::cyclic(12), GroupKind::circle()}) {
    for (int s = 0; s < 200; ++s) {
      const GroupElement x = haar_sample(g, rng);
      const GroupElement y = haar_sample(g, rng);
      const Complex lhs = chi(g, multiply(g, x, y));
      const Complex rhs = chi(g, x) * chi(g, y);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
      CHECK(std::abs(std::abs(chi(g, x)) - 1.0) < 1e-15);
      CHECK(std::abs(chi(g, inverse(g, x)) - std::conj(chi(g, x))) < 1e-12);
    }
  }
  // injective on Z/L
  for (int l = 2; l <= 24; ++l) {
    const auto g = GroupKind::cyclic(l);
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b) CHECK(std::abs(chi(g, Residue{a}) - chi(g, Residue{b})) > 1e-3);
  }
}

TEST_CASE("Haar sampling") {
  Rng rng(2024);
  const auto z2 = GroupKind::cyclic(2);
  const int draws = 10000;
  int zeros = 0;
  for (int i = 0; i < draws; ++i) zeros += std::get<Residue>(haar_sample(z2, rng)).value == 0;
  const double se = std::sqrt(0.25 / draws);
  CHECK(std::abs(zeros / double(draws) - 0.5) <= 3 * se);

  double sum_cos = 0.0;
  for (int i = 0; i < draws; ++i) sum_cos += std::cos(std::get<Angle>(haar_sample(GroupKind::circle(), rng)).radians);
  CHECK(std::abs(sum_cos / draws) <= 3 * std::sqrt(0.5 / draws));

  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(std::get<Residue>(haar_sample(GroupKind::cyclic(5), rng)).value);
  CHECK(seen.size() == 5);
}

TEST_CASE("pairwise matrix") {
  const auto z3 = GroupKind::cyclic(3);
  const auto m = pairwise_matrix(z3, {Residue{0}, Residue{1}});
  CHECK(m(0, 1) == GroupElement(Residue{2}));
  CHECK(m(1, 0) == GroupElement(Residue{1}));
  CHECK(m.is_group_hermitian());

  const auto same = pairwise_matrix(z3, {Residue{2}, Residue{2}, Residue{2}});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(same(i, j) == identity(z3));

  CHECK_THROWS_AS(pairwise_matrix(z3, {Residue{0}}), ValidationError);

  Rng rng(5);
  for (const auto& g : {GroupKind::cyclic(7), GroupKind::circle()}) {
    const auto x = haar_samples(g, 30, rng);
    const auto mm = pairwise_matrix(g, x);
    CHECK(mm.is_group_hermitian());
    for (std::size_t i = 0; i < 30; i += 3)
      for (std::size_t j = 1; j < 30; j += 4)
        for (std::size_t k = 2; k < 30; k += 5) {
          const Complex lhs = chi(g, multiply(g, mm(i, j), mm(j, k)));
          CHECK(std::abs(lhs - chi(g, mm(i, k))) < 1e-12);
        }
  }
}
