#pragma once

#include <span>
#include <vector>

#include "icbell/infotheory.hpp"
#include "icbell/nsbox.hpp"

namespace icbell {

// Little-endian mixed-radix ranking: rank(a) = sum_i a_i d^i, a_0 least
// significant. All protocol tables are stored in this order.
long rank_of(std::span<const int> digits, int d);
void unrank(long rank, int n, int d, std::span<int> digits);
long ipow(int base, int exp);

// An encoding/decoding strategy for the guessing game: Alice holds n digits
// over [d], uses box setting alpha = f(a), sends x = h(a) (+) A through the
// channel; Bob uses beta = b and outputs g = x' (+) B (+) r(b).
//
// h is stored as the table literally added to A. Constructors that follow a
// source convention of the form x = hbar(a) (+) A convert the sign on entry,
// so at runtime there is exactly one convention.
struct Protocol {
  int n;        // number of Alice inputs (Bob settings run over [n])
  int d;        // input/outcome alphabet
  int n_alpha;  // number of Alice box settings (codomain of f)
  std::vector<int> f;  // size d^n, values in [n_alpha]
  std::vector<int> h;  // size d^n, values in [d]
  std::vector<int> r;  // size n, values in [d]

  Protocol(int n, int d, int n_alpha, std::vector<int> f, std::vector<int> h,
           std::vector<int> r);
  long table_size() const { return ipow(d, n); }
};

// n = 2, d = 2: f = a_0 xor a_1, h = a_0, r = 0. The two guessed bits ride on
// one transmitted bit.
Protocol van_dam();
// n inputs over bits: h(a) = a_0 and
// f(a) = n - 1 - sum_{i=1}^{n-1} prod_{l=1}^{i} (a_0 xor a_l),
// so f(a) = 0 exactly when a_0 xor a_l = 1 for every l >= 1.
Protocol canonical_nn22(int n);
// n = 2 over [d]: alpha = (a_1 - a_0) mod d, x = a_0 (+) A (stored h(a) = a_0),
// r = 0. Alice has d box settings, Bob two. d = 2 reduces to van_dam().
Protocol d2dd_protocol(int d);

// Signed binary coefficients c_{j,i} = sum_k [f(k)=j] (-1)^(h(k) xor k_i),
// indexed [j][i]. Requires d = 2; r is ignored (it only flips the sign of a
// squared bracket).
struct SignedCoefficients {
  int n_alpha, n_b;
  std::vector<long> c;  // [j * n_b + i]
  long at(int j, int i) const { return c[j * n_b + i]; }
};
SignedCoefficients coefficients_nn22(const Protocol& p);

// d-ary coefficient counts
//   c^l_{j,i} = #{ k in [d]^n : f(k) = j, hbar(k) (+) k_i = l (+) r(i) }
// where hbar = -h mod d is the source-convention encoder table. They satisfy
// sum_{j,l} c^l_{j,i} = d^n for every i.
struct CoefficientTable {
  int n_alpha, n_b, d;
  std::vector<long> c;  // [(j * n_b + i) * d + l]
  long at(int j, int i, int l) const { return c[(j * n_b + i) * d + l]; }
};
CoefficientTable coefficients_nndd(const Protocol& p);

// Every value of h attained equally often (d^(n-1) times).
bool is_balanced_h(const Protocol& p);

// Throws AlphabetMismatch/ShapeMismatch unless the box offers n_alpha Alice
// settings, n Bob settings and d x d outcomes matching the protocol.
void check_compatible(const NSBox& box, const Protocol& p);

// Pr(g = a_i | b = i) by exact enumeration of inputs, box outcomes and
// channel noise.
double guessing_probability(const NSBox& box, const Protocol& p, const Channel& ch,
                            const InputDistribution& inputs, int i);

// Closed form for d = 2 with uniform inputs:
// 1/2 + (-1)^r(i) (e_c/2) 2^(-n) sum_j c_{j,i} e_{j,i}.
double guessing_probability_closed_nn22(const BiasTable& t, const Protocol& p,
                                        double e_c, int i);

// Signed decoding bias 2 Pr(g = a_i | b = i) - 1 for a noiseless bit channel;
// the guessing probability is 1/2 + (e_c/2) times this. d = 2 only.
double noiseless_guess_bias(const NSBox& box, const Protocol& p, int i);

// Distribution of the decoding error E = g (-) a_i given b = i (uniform
// inputs), by exact enumeration.
std::vector<double> error_distribution(const NSBox& box, const Protocol& p,
                                       const Channel& ch, int i);

// Same distribution from the Fourier closed form
//   Pr(E = k | b = i) = (1/d)(1 + sum_{t>=1} phat(t) u_t(i) w^(-kt)),
//   u_t(i) = d^-(n+1) sum_j conj(C_{j,i}(t)) E_{j,i}(t),
// with C the coefficient transform and E the bias transform.
std::vector<double> error_distribution_closed_form(const BiasTable& t,
                                                   const Protocol& p,
                                                   const Channel& ch, int i);

}  // namespace icbell
