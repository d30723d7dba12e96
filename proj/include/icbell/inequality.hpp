#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "icbell/nsbox.hpp"
#include "icbell/protocol.hpp"

namespace icbell {

// A quadratic correlation inequality
//   sum_i | sum_{j,m} w^m_{j,i} e^m_{j,i} |^2 <= bound
// with one complex coefficient vector per Bob setting i, indexed j*d + m.
// Real binary forms put the whole coefficient on m = 0.
struct QuadraticInequality {
  std::string family;
  std::map<std::string, double> params;
  int n_a, n_b, d;
  std::vector<std::vector<std::complex<double>>> coeffs;  // [i][j*d + m]
  double bound;
};

struct Evaluation {
  double lhs;
  double bound;
  double violation;  // max(0, lhs - bound)
  bool violated;     // violation > tol
};

// (e00 + e10)^2 + (e01 - e11)^2 <= 4.
QuadraticInequality uffink();

// sum_i (e_{0,i} + sum_{j=1}^{n-i} (-1)^{[j = n-i]} 2^(j-1) e_{j,i})^2 <= 4^(n-1),
// with the empty j = n term at i = 0 dropped.
QuadraticInequality result1_nn22(int n);

// sum_i (sum_j c_{j,i} e_{j,i})^2 <= 4^n from the protocol's signed coefficients.
QuadraticInequality from_protocol_nn22(const Protocol& p);

// One inequality per Fourier index t in 1..floor(d/2):
//   sum_{i=0,1} | sum_{j,k} e^{(i.j (+) k)}_{j,i} w^{k t} |^2 <= d^4.
std::vector<QuadraticInequality> d2dd_family(int d);

// The d-ary coefficient transform enters conjugated (the derivation's form,
// which reduces to the d2dd family) or unconjugated (as printed in the
// two-phase statement). They differ for d >= 3; both are valid, being the
// same protocol read with the additive-inverse decoder.
enum class NnddVariant { Derivation, TwoPhasePrint };

// sum_i | sum_j conj(C_{j,i}(t)) E_{j,i}(t) |^2 <= d^(2(n+1)) with
// C_{j,i}(t) = sum_l c^l_{j,i} w^{lt} and E the bias transform.
QuadraticInequality nndd_from_protocol(const Protocol& p, int t,
                                       NnddVariant variant = NnddVariant::Derivation);

// ((1+eps) e00 + (1-eps) e10)^2 + (1-eps^2)(e01 - e11)^2 <= 4.
QuadraticInequality correlated_2222(double eps);

Evaluation evaluate(const QuadraticInequality& q, const BiasTable& t, double tol = 1e-9);

// max over eps in [-1,1] of the correlated_2222 LHS at fixed biases, in closed
// form: the LHS is A + 2B eps + C eps^2 with A = (e00+e10)^2 + s^2,
// B = e00^2 - e10^2, C = (e00-e10)^2 - s^2, s = e01 - e11.
struct EnvelopeResult {
  double max_lhs;
  double eps;  // maximizer
};
EnvelopeResult epsilon_envelope(const BiasTable& t);

// Quantum realizability of 2222 full correlations:
// |asin e00 + asin e01 + asin e10 + asin e11 - 2 asin e_{j,i}| <= pi for all
// four choices of the doubled term.
bool tlm_quantum(double e00, double e01, double e10, double e11, double tol = 1e-9);
bool tlm_quantum(const BiasTable& t, double tol = 1e-9);

// Deduplication key: per-i rows sign-fixed (first nonzero positive), the whole
// table divided by the gcd of its entries, rows sorted lexicographically.
std::vector<std::vector<long>> canonical_key(const SignedCoefficients& c);

}  // namespace icbell
