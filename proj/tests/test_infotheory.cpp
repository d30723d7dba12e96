#include <cmath>
#include <vector>

#include "doctest.h"
#include "icbell/infotheory.hpp"

using namespace icbell;

namespace {
// h(1/4) = 2 - (3/4) log2 3.
constexpr double kEntropyQuarter = 0.8112781244591328;
}  // namespace

TEST_CASE("shannon entropy of basic distributions") {
  const std::vector<double> uniform4{0.25, 0.25, 0.25, 0.25};
  CHECK(shannon_entropy(uniform4) == doctest::Approx(2.0).epsilon(1e-15));
  const std::vector<double> point{1.0};
  CHECK(shannon_entropy(point) == doctest::Approx(0.0).epsilon(1e-15));
  const std::vector<double> skew{0.25, 0.75};
  CHECK(shannon_entropy(skew) == doctest::Approx(kEntropyQuarter).epsilon(1e-14));

  const std::vector<double> negative{1.25, -0.25};
  CHECK_THROWS_AS(shannon_entropy(negative), NegativeProbability);
  const std::vector<double> short_sum{0.25, 0.25};
  CHECK_THROWS_AS(shannon_entropy(short_sum), NormalizationError);
}

TEST_CASE("binary entropy endpoints and value") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(kEntropyQuarter).epsilon(1e-14));
  CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
}

TEST_CASE("capacity complement is accurate near zero bias") {
  CHECK(one_minus_binary_entropy_half(0.0) == 0.0);
  CHECK(one_minus_binary_entropy_half(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one_minus_binary_entropy_half(0.5) ==
        doctest::Approx(1.0 - kEntropyQuarter).epsilon(1e-14));
  CHECK(one_minus_binary_entropy_half(-0.5) ==
        doctest::Approx(one_minus_binary_entropy_half(0.5)).epsilon(1e-15));
  // Leading term x^2 / (2 ln 2); at x = 1e-4 the relative correction is ~x^2/6.
  const double x = 1e-4;
  CHECK(one_minus_binary_entropy_half(x) ==
        doctest::Approx(x * x / (2.0 * std::log(2.0))).epsilon(1e-6));
}

TEST_CASE("mutual information from joint tables") {
  const std::vector<std::vector<double>> correlated{{3.0 / 8, 1.0 / 8},
                                                    {1.0 / 8, 3.0 / 8}};
  CHECK(mutual_information(correlated) ==
        doctest::Approx(1.0 - kEntropyQuarter).epsilon(1e-14));

  const std::vector<std::vector<double>> independent{{0.21, 0.09}, {0.49, 0.21}};
  CHECK(mutual_information(independent) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<std::vector<double>> perfect{{0.5, 0.0}, {0.0, 0.5}};
  CHECK(mutual_information(perfect) == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<std::vector<double>> column{{0.5}, {0.5}};
  CHECK(mutual_information(column) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(mutual_information({{0.5, 0.1}, {0.1, 0.1}}), NormalizationError);
}

TEST_CASE("binary symmetric channel") {
  const Channel ch = Channel::binary_symmetric(0.5);
  CHECK(ch.alphabet() == 2);
  CHECK(ch.noise()[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ch.noise()[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ch.transition(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ch.transition(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ch.correct_bias() == doctest::Approx(0.5).epsilon(1e-15));
  // Symmetric channel capacity equals 1 - h((1+e_c)/2).
  CHECK(ch.capacity() == doctest::Approx(one_minus_binary_entropy_half(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(Channel::binary_symmetric(1.5), DomainError);
}

TEST_CASE("clock channel mirror symmetry and capacity") {
  const std::vector<double> noiseless{1.0, 0.0};
  const Channel ch3 = Channel::clock(3, noiseless);
  CHECK(ch3.noise() == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(ch3.capacity() == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
  CHECK(ch3.transition(2, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(ch3.correct_bias(), DomainError);

  const std::vector<double> mirrored{0.4, 0.2, 0.2, 0.2};
  CHECK(Channel::clock_full(4, mirrored).capacity() > 0.0);
  const std::vector<double> lopsided{0.4, 0.3, 0.2, 0.1};
  CHECK_THROWS_AS(Channel::clock_full(4, lopsided), DomainError);
  const std::vector<double> wrong_count{0.5, 0.5};
  CHECK_THROWS_AS(Channel::clock(5, wrong_count), ShapeMismatch);
}

TEST_CASE("transmit builds the channel joint") {
  const Channel ch = Channel::binary_symmetric(1.0);
  const std::vector<double> input{0.3, 0.7};
  const auto joint = transmit(ch, input);
  CHECK(joint[0][0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(joint[0][1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(joint[1][1] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(mutual_information(joint) ==
        doctest::Approx(shannon_entropy(input)).epsilon(1e-14));
}

TEST_CASE("input distributions") {
  const InputDistribution u = InputDistribution::uniform(2, 2);
  const std::vector<int> s01{0, 1};
  CHECK(u.prob(s01) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(u.is_uniform());

  const InputDistribution c = InputDistribution::correlated_pair(0.5);
  const std::vector<int> s00{0, 0};
  CHECK(c.prob(s00) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(c.prob(s01) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(c.epsilon() == 0.5);
  CHECK_THROWS_AS(InputDistribution::correlated_pair(1.2), InvalidEpsilon);
}
