#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "icbell/inequality.hpp"
#include "icbell/infotheory.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/oracle.hpp"
#include "icbell/protocol.hpp"

using namespace icbell;

TEST_CASE("guess joint and information sum on the PR box") {
  const NSBox pr = pr_box();
  const Protocol p = van_dam();
  const InputDistribution u = InputDistribution::uniform(2, 2);

  const auto joint = guess_joint(pr, p, Channel::binary_symmetric(1.0), u, 0);
  CHECK(joint[0][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(joint[0][1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(mutual_information(joint) == doctest::Approx(1.0).epsilon(1e-12));

  const double e_c = 0.6;
  const ICEvaluation ev = ic_lhs(pr, p, Channel::binary_symmetric(e_c), u);
  const double cap = one_minus_binary_entropy_half(e_c);
  REQUIRE(ev.per_i.size() == 2);
  CHECK(ev.per_i[0] == doctest::Approx(cap).epsilon(1e-12));
  CHECK(ev.per_i[1] == doctest::Approx(cap).epsilon(1e-12));
  CHECK(ev.lhs_bits == doctest::Approx(2.0 * cap).epsilon(1e-12));
  CHECK(ev.capacity_bits == doctest::Approx(cap).epsilon(1e-14));
  CHECK(ev.gap == doctest::Approx(cap).epsilon(1e-12));
}

TEST_CASE("white noise carries no information") {
  const ICEvaluation ev = ic_lhs(white_noise(2, 2), van_dam(),
                                 Channel::binary_symmetric(0.4),
                                 InputDistribution::uniform(2, 2));
  CHECK(ev.lhs_bits == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev.gap < 0.0);
}

TEST_CASE("error-entropy bound lies below the information sum") {
  const Protocol p = van_dam();
  const Channel ch = Channel::binary_symmetric(0.7);

  // Equality on the PR box, where the error is independent of the guess.
  const double ic_pr = ic_lhs(pr_box(), p, ch, InputDistribution::uniform(2, 2)).lhs_bits;
  CHECK(fano_lhs(pr_box(), p, ch) == doctest::Approx(ic_pr).epsilon(1e-12));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const NSBox box = box_from_biases(sample_binary_bias_table(2, 2, rng));
    const double fano = fano_lhs(box, p, ch);
    const double ic = ic_lhs(box, p, ch, InputDistribution::uniform(2, 2)).lhs_bits;
    CHECK(fano <= ic + 1e-12);
  }
}

TEST_CASE("information ratio and its zero-noise limit") {
  const NSBox pr = pr_box();
  const Protocol p = van_dam();
  CHECK_THROWS_AS(lhopital_ratio(pr, p, 0.0), DegenerateChannel);
  CHECK(lhopital_ratio(pr, p, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(lhopital_ratio(pr, p, 0.01) - 2.0) < 1e-3);
  CHECK(lhopital_limit(pr, p) == doctest::Approx(2.0).epsilon(1e-9));

  std::mt19937_64 rng(22);
  const QuadraticInequality q = from_protocol_nn22(p);
  for (int trial = 0; trial < 20; ++trial) {
    const BiasTable t = sample_binary_bias_table(2, 2, rng);
    const NSBox box = box_from_biases(t);
    const double limit = lhopital_limit(box, p);
    double direct = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double b = noiseless_guess_bias(box, p, i);
      direct += b * b;
    }
    CHECK(limit == doctest::Approx(direct).epsilon(1e-9));
    CHECK(limit == doctest::Approx(evaluate(q, t).lhs / q.bound).epsilon(1e-9));
  }
}

TEST_CASE("chained information for correlated inputs") {
  const Protocol p = van_dam();
  const Channel ch = Channel::binary_symmetric(0.5);
  std::mt19937_64 rng(23);

  for (int trial = 0; trial < 10; ++trial) {
    const NSBox box = box_from_biases(sample_binary_bias_table(2, 2, rng));
    // Chaining conditions the second guess on a_0, which cannot lose
    // information; at eps = 0 it majorizes the unconditioned sum.
    const double chained = correlated_ic_lhs(box, p, ch, 0.0).lhs_bits;
    const double plain = ic_lhs(box, p, ch, InputDistribution::uniform(2, 2)).lhs_bits;
    CHECK(chained >= plain - 1e-12);
    // In the zero-noise ratio limit the two statements coincide. The chained
    // ratio is assembled from entropy differences, so its extrapolation noise
    // floor is ~1e-9, far above the closed-form path's.
    CHECK(correlated_lhopital_limit(box, p, 0.0) ==
          doctest::Approx(lhopital_limit(box, p)).epsilon(1e-7));
  }

  // At eps = 1 the second digit repeats the first, so its term vanishes.
  const NSBox pr = pr_box();
  const ICEvaluation edge = correlated_ic_lhs(pr, p, ch, 1.0);
  REQUIRE(edge.per_i.size() == 2);
  CHECK(edge.per_i[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(edge.lhs_bits == doctest::Approx(edge.per_i[0]).epsilon(1e-12));

  // The limit reproduces a quarter of the correlated quadratic form.
  const double eps = 0.4;
  const BiasTable t = biases(pr);
  CHECK(correlated_lhopital_limit(pr, p, eps) ==
        doctest::Approx(evaluate(correlated_2222(eps), t).lhs / 4.0).epsilon(1e-7));
}

TEST_CASE("ratio gap closed forms") {
  const std::vector<double> pr_vec{1.0, 1.0};
  CHECK(ratio_gap(pr_vec, 0.5) ==
        doctest::Approx(one_minus_binary_entropy_half(0.5)).epsilon(1e-13));

  const std::vector<double> super{0.8, 0.8};
  CHECK(ratio_gap_second(super, 0.0) ==
        doctest::Approx((0.8 * 0.8 * 2.0 - 1.0) / std::log(2.0)).epsilon(1e-12));

  const std::vector<double> sub{0.6, 0.6};
  for (double e_c : {0.0, 0.3, -0.3, 0.6, -0.6, 0.9}) {
    CHECK(ratio_gap(sub, e_c) <= 1e-12);
    CHECK(ratio_gap_second(sub, e_c) <= 1e-12);
  }
}

TEST_CASE("concavity report matches finite differences") {
  const std::vector<double> e_vec{0.5, 0.7, 0.3};
  const std::vector<double> samples{-0.8, -0.4, 0.0, 0.4, 0.8};
  const ConcavityReport report = concavity_check(e_vec, samples);
  REQUIRE(report.f_second.size() == samples.size());
  REQUIRE(report.f_second_fd.size() == samples.size());
  CHECK(report.sum_sq == doctest::Approx(0.25 + 0.49 + 0.09).epsilon(1e-15));
  for (std::size_t k = 0; k < samples.size(); ++k)
    CHECK(report.f_second[k] == doctest::Approx(report.f_second_fd[k]).epsilon(1e-5));
}

TEST_CASE("randomized validation is deterministic and clean") {
  const QuadraticInequality q = uffink();
  const Protocol p = van_dam();
  const ValidationReport a = validate_inequality(q, p, 60, 31, 1);
  CHECK(a.sign_disagreements == 0);
  CHECK(a.max_limit_error <= 1e-6);

  const ValidationReport b = validate_inequality(q, p, 60, 31, 4);
  CHECK(b.sign_disagreements == a.sign_disagreements);
  CHECK(b.max_limit_error == a.max_limit_error);

  const ValidationReport c = validate_random_protocols(2, 2, 40, 33, 2);
  CHECK(c.sign_disagreements == 0);
  CHECK(c.max_limit_error <= 1e-6);
}

TEST_CASE("samplers produce valid objects deterministically") {
  CHECK(rng_for_trial(7, 3)() == rng_for_trial(7, 3)());
  CHECK(rng_for_trial(7, 3)() != rng_for_trial(7, 4)());

  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const BiasTable b = sample_binary_bias_table(3, 2, rng);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 2; ++i) CHECK(std::abs(b.e(j, i)) <= 1.0);
    CHECK_NOTHROW(box_from_biases(b));

    const BiasTable t = sample_dary_bias_table(2, 2, 4, rng);
    CHECK_NOTHROW(t.validate());
    CHECK_NOTHROW(box_from_biases(t));

    const Protocol p = sample_protocol_nn22(3, 3, rng);
    CHECK(p.n == 3);
    CHECK(p.table_size() == 8);
  }
}
