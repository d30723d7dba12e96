#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "icbell/inequality.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/oracle.hpp"
#include "icbell/protocol.hpp"

using namespace icbell;

namespace {

double lhs_of(const QuadraticInequality& q, const BiasTable& t) {
  return evaluate(q, t).lhs;
}

}  // namespace

TEST_CASE("uffink endpoints") {
  const QuadraticInequality q = uffink();
  CHECK(q.bound == 4.0);

  const Evaluation pr = evaluate(q, biases(pr_box()));
  CHECK(pr.lhs == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(pr.violation == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(pr.violated);

  const double s = 1.0 / std::sqrt(2.0);
  const Evaluation tsirelson = evaluate(q, BiasTable::binary({{s, s}, {s, -s}}));
  CHECK(tsirelson.lhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_FALSE(tsirelson.violated);

  const Evaluation local =
      evaluate(q, biases(local_deterministic(std::vector<int>{0, 1},
                                             std::vector<int>{0, 0})));
  CHECK_FALSE(local.violated);
}

TEST_CASE("two-input member of the general family is the uffink form") {
  const QuadraticInequality a = uffink();
  const QuadraticInequality b = result1_nn22(2);
  CHECK(b.bound == 4.0);
  for (int i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < a.coeffs[i].size(); ++k)
      CHECK(b.coeffs[i][k] == a.coeffs[i][k]);
}

TEST_CASE("three-input family values on the extremal box") {
  const BiasTable t = biases(max_violation_nn22(3));
  const Evaluation direct = evaluate(result1_nn22(3), t);
  CHECK(direct.bound == 16.0);
  CHECK(direct.lhs == 36.0);
  CHECK(direct.violation == 20.0);

  const Evaluation scaled = evaluate(from_protocol_nn22(canonical_nn22(3)), t);
  CHECK(scaled.bound == 64.0);
  CHECK(scaled.lhs == 144.0);
  CHECK(scaled.violation == 80.0);
}

TEST_CASE("protocol form is four times the reduced form on random tables") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 4}) {
    const QuadraticInequality reduced = result1_nn22(n);
    const QuadraticInequality full = from_protocol_nn22(canonical_nn22(n));
    for (int trial = 0; trial < 25; ++trial) {
      const BiasTable t = sample_binary_bias_table(n, n, rng);
      CHECK(lhs_of(full, t) == doctest::Approx(4.0 * lhs_of(reduced, t)).epsilon(1e-12));
    }
    CHECK(full.bound == 4.0 * reduced.bound);
  }
}

TEST_CASE("d-ary family sizes and binary reduction") {
  CHECK(d2dd_family(2).size() == 1);
  CHECK(d2dd_family(5).size() == 2);
  CHECK(d2dd_family(5)[1].bound == 625.0);

  // Folding e^1 = -e^0 turns the d = 2 member into twice the uffink form.
  const QuadraticInequality member = d2dd_family(2)[0];
  const QuadraticInequality base = uffink();
  CHECK(member.bound == 16.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const std::complex<double> folded =
          member.coeffs[i][j * 2] - member.coeffs[i][j * 2 + 1];
      CHECK(folded.real() == doctest::Approx(2.0 * base.coeffs[i][j * 2].real())
                                 .epsilon(1e-15));
      CHECK(folded.imag() == doctest::Approx(0.0).epsilon(1e-15));
    }

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const BiasTable t = sample_binary_bias_table(2, 2, rng);
    CHECK(lhs_of(member, t) == doctest::Approx(4.0 * lhs_of(base, t)).epsilon(1e-12));
  }
}

TEST_CASE("general d-ary form scales the binary and two-input generators") {
  std::mt19937_64 rng(7);

  // d = 2: the transform reduces to the signed coefficients, factor 4 in LHS.
  for (int n : {2, 3}) {
    const Protocol p = canonical_nn22(n);
    const QuadraticInequality general = nndd_from_protocol(p, 1);
    const QuadraticInequality binary = from_protocol_nn22(p);
    CHECK(general.bound == 4.0 * binary.bound);
    for (int trial = 0; trial < 25; ++trial) {
      const BiasTable t = sample_binary_bias_table(n, n, rng);
      CHECK(lhs_of(general, t) ==
            doctest::Approx(4.0 * lhs_of(binary, t)).epsilon(1e-12));
    }
  }

  // n = 2: the protocol form is d^2 times the closed family member.
  for (int d : {3, 4, 5}) {
    const Protocol p = d2dd_protocol(d);
    const auto family = d2dd_family(d);
    for (int t_idx = 1; t_idx <= d / 2; ++t_idx) {
      const QuadraticInequality general = nndd_from_protocol(p, t_idx);
      const QuadraticInequality closed = family[t_idx - 1];
      const double factor = static_cast<double>(d) * d;
      CHECK(general.bound == doctest::Approx(factor * closed.bound).epsilon(1e-12));
      for (int trial = 0; trial < 10; ++trial) {
        const BiasTable t = sample_dary_bias_table(d, 2, d, rng);
        CHECK(lhs_of(general, t) ==
              doctest::Approx(factor * lhs_of(closed, t)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("conjugation variants differ for d >= 3 and agree for d = 2") {
  std::mt19937_64 rng(8);
  const Protocol p2 = van_dam();
  const BiasTable t2 = sample_binary_bias_table(2, 2, rng);
  CHECK(lhs_of(nndd_from_protocol(p2, 1, NnddVariant::Derivation), t2) ==
        doctest::Approx(lhs_of(nndd_from_protocol(p2, 1, NnddVariant::TwoPhasePrint), t2))
            .epsilon(1e-12));

  const Protocol p3 = d2dd_protocol(3);
  double spread = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const BiasTable t = sample_dary_bias_table(3, 2, 3, rng);
    spread = std::max(
        spread,
        std::abs(lhs_of(nndd_from_protocol(p3, 1, NnddVariant::Derivation), t) -
                 lhs_of(nndd_from_protocol(p3, 1, NnddVariant::TwoPhasePrint), t)));
  }
  CHECK(spread > 1e-6);
}

TEST_CASE("correlated family coefficients") {
  const QuadraticInequality base = correlated_2222(0.0);
  const QuadraticInequality ref = uffink();
  for (int i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < ref.coeffs[i].size(); ++k)
      CHECK(base.coeffs[i][k] == ref.coeffs[i][k]);

  // At eps = 1 the second bracket vanishes and the first doubles e00.
  const QuadraticInequality edge = correlated_2222(1.0);
  CHECK(edge.coeffs[0][0].real() == 2.0);
  CHECK(edge.coeffs[0][2].real() == 0.0);
  CHECK(edge.coeffs[1][0].real() == 0.0);
  const Evaluation pr = evaluate(edge, biases(pr_box()));
  CHECK(pr.lhs == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_FALSE(pr.violated);

  CHECK_THROWS_AS(correlated_2222(1.5), InvalidEpsilon);
}

TEST_CASE("epsilon envelope closed form at the witness biases") {
  const BiasTable t = BiasTable::binary({{1.0, 0.9}, {-0.2, -0.9}});
  const EnvelopeResult env = epsilon_envelope(t);
  CHECK(env.eps == doctest::Approx(8.0 / 15.0).epsilon(1e-12));
  CHECK(env.max_lhs == doctest::Approx(4.392).epsilon(1e-12));
  CHECK(env.max_lhs ==
        doctest::Approx(evaluate(correlated_2222(env.eps), t).lhs).epsilon(1e-12));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const BiasTable s = sample_binary_bias_table(2, 2, rng);
    const EnvelopeResult e = epsilon_envelope(s);
    CHECK(e.max_lhs >= lhs_of(uffink(), s) - 1e-12);
    CHECK(e.max_lhs >=
          evaluate(correlated_2222(0.7), s).lhs - 1e-12);
  }
}

TEST_CASE("quantum realizability test") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(tlm_quantum(s, s, s, -s));
  CHECK(tlm_quantum(1.0, 1.0, 1.0, 1.0));
  CHECK_FALSE(tlm_quantum(1.0, 1.0, 1.0, -1.0));
  CHECK_FALSE(tlm_quantum(1.0, 0.9, -0.2, -0.9));
  CHECK(tlm_quantum(0.5, 0.4, -0.1, -0.4));
  CHECK_THROWS_AS(tlm_quantum(1.4, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("canonical keys are sign, scale and order normalized") {
  const SignedCoefficients raw{2, 2, {-2, 4, 2, -4}};
  const auto key = canonical_key(raw);
  const std::vector<std::vector<long>> expected{{1, -1}, {2, -2}};
  CHECK(key == expected);

  // Row-permuted and negated copies share the key.
  const SignedCoefficients permuted{2, 2, {4, -2, -4, 2}};
  CHECK(canonical_key(permuted) == expected);
}
