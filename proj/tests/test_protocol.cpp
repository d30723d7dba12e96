#include <array>
#include <random>
#include <vector>

#include "doctest.h"
#include "icbell/infotheory.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/oracle.hpp"
#include "icbell/protocol.hpp"

using namespace icbell;

TEST_CASE("mixed radix ranking is little endian") {
  const std::array<int, 3> digits{1, 0, 2};
  CHECK(rank_of(digits, 3) == 19);
  std::array<int, 3> back{};
  unrank(19, 3, 3, back);
  CHECK(back == digits);
  CHECK(ipow(4, 3) == 64);
  CHECK(ipow(7, 0) == 1);
}

TEST_CASE("protocol constructor validates tables") {
  CHECK_THROWS_AS(Protocol(2, 2, 2, {0, 1, 1}, {0, 1, 0, 1}, {0, 0}), InvalidArity);
  CHECK_THROWS_AS(Protocol(2, 2, 2, {0, 1, 1, 2}, {0, 1, 0, 1}, {0, 0}), InvalidArity);
  CHECK_THROWS_AS(Protocol(2, 2, 2, {0, 1, 1, 0}, {0, 1, 0, 2}, {0, 0}), InvalidArity);
  CHECK_THROWS_AS(Protocol(2, 2, 2, {0, 1, 1, 0}, {0, 1, 0, 1}, {0}), InvalidArity);
}

TEST_CASE("two-input protocol tables") {
  const Protocol p = van_dam();
  CHECK(p.f == std::vector<int>{0, 1, 1, 0});
  CHECK(p.h == std::vector<int>{0, 1, 0, 1});
  CHECK(p.r == std::vector<int>{0, 0});
  CHECK(is_balanced_h(p));

  const SignedCoefficients c = coefficients_nn22(p);
  CHECK(c.at(0, 0) == 2);
  CHECK(c.at(0, 1) == 2);
  CHECK(c.at(1, 0) == 2);
  CHECK(c.at(1, 1) == -2);

  const Protocol q = d2dd_protocol(2);
  CHECK(q.f == p.f);
  CHECK(q.h == p.h);
}

TEST_CASE("canonical three-input coefficients") {
  const SignedCoefficients c = coefficients_nn22(canonical_nn22(3));
  const long expected[3][3] = {{2, -2, -2}, {2, -2, 2}, {4, 4, 0}};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) CHECK(c.at(j, i) == expected[j][i]);
}

TEST_CASE("d-ary coefficient counts for the two-input protocol") {
  const CoefficientTable c = coefficients_nndd(van_dam());
  CHECK(c.at(0, 0, 0) == 2);
  CHECK(c.at(0, 0, 1) == 0);
  CHECK(c.at(1, 0, 0) == 2);
  CHECK(c.at(1, 0, 1) == 0);
  CHECK(c.at(0, 1, 0) == 2);
  CHECK(c.at(0, 1, 1) == 0);
  CHECK(c.at(1, 1, 0) == 0);
  CHECK(c.at(1, 1, 1) == 2);
  // Column sums count the whole input space.
  for (int i = 0; i < 2; ++i) {
    long total = 0;
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) total += c.at(j, i, l);
    CHECK(total == 4);
  }
}

TEST_CASE("compatibility checks") {
  CHECK_NOTHROW(check_compatible(pr_box(), van_dam()));
  CHECK_THROWS_AS(check_compatible(white_noise(3, 2), van_dam()), ShapeMismatch);
  CHECK_THROWS_AS(check_compatible(white_noise(2, 3), van_dam()), AlphabetMismatch);
}

TEST_CASE("perfect guessing on the PR box") {
  const NSBox pr = pr_box();
  const Protocol p = van_dam();
  const Channel noiseless = Channel::binary_symmetric(1.0);
  const InputDistribution u = InputDistribution::uniform(2, 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(guessing_probability(pr, p, noiseless, u, i) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(noiseless_guess_bias(pr, p, i) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("enumerated guessing probability matches the closed form") {
  const BiasTable t = BiasTable::binary({{0.3, -0.2}, {0.5, 0.9}});
  const NSBox box = box_from_biases(t);
  const Protocol p = van_dam();
  const double e_c = 0.7;
  const Channel ch = Channel::binary_symmetric(e_c);
  const InputDistribution u = InputDistribution::uniform(2, 2);
  for (int i = 0; i < 2; ++i) {
    const double enumerated = guessing_probability(box, p, ch, u, i);
    CHECK(enumerated ==
          doctest::Approx(guessing_probability_closed_nn22(t, p, e_c, i)).epsilon(1e-12));
    CHECK(enumerated ==
          doctest::Approx(0.5 + 0.5 * e_c * noiseless_guess_bias(box, p, i))
              .epsilon(1e-12));
  }
}

TEST_CASE("r offsets flip the decoding sign") {
  const BiasTable t = BiasTable::binary({{0.3, -0.2}, {0.5, 0.9}});
  const NSBox box = box_from_biases(t);
  const Protocol plain = van_dam();
  const Protocol flipped(2, 2, 2, plain.f, plain.h, {1, 0});
  CHECK(noiseless_guess_bias(box, flipped, 0) ==
        doctest::Approx(-noiseless_guess_bias(box, plain, 0)).epsilon(1e-14));
  CHECK(noiseless_guess_bias(box, flipped, 1) ==
        doctest::Approx(noiseless_guess_bias(box, plain, 1)).epsilon(1e-14));
}

TEST_CASE("error distribution agrees with its Fourier closed form") {
  std::mt19937_64 rng(42);

  // Binary case over a noisy channel.
  const BiasTable t2 = sample_binary_bias_table(2, 2, rng);
  const NSBox box2 = box_from_biases(t2);
  const Channel ch2 = Channel::binary_symmetric(0.6);
  for (int i = 0; i < 2; ++i) {
    const auto direct = error_distribution(box2, van_dam(), ch2, i);
    const auto closed = error_distribution_closed_form(t2, van_dam(), ch2, i);
    for (int k = 0; k < 2; ++k)
      CHECK(direct[k] == doctest::Approx(closed[k]).epsilon(1e-12));
  }

  // Ternary case over a clock channel.
  const Protocol p3 = d2dd_protocol(3);
  const BiasTable t3 = sample_dary_bias_table(3, 2, 3, rng);
  const NSBox box3 = box_from_biases(t3);
  const std::vector<double> free_params{0.6, 0.2};
  const Channel ch3 = Channel::clock(3, free_params);
  for (int i = 0; i < 2; ++i) {
    const auto direct = error_distribution(box3, p3, ch3, i);
    const auto closed = error_distribution_closed_form(t3, p3, ch3, i);
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      CHECK(direct[k] == doctest::Approx(closed[k]).epsilon(1e-12));
      sum += direct[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}
