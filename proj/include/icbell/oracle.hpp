#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "icbell/inequality.hpp"
#include "icbell/infotheory.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/protocol.hpp"

namespace icbell {

// Everything in this header evaluates the information-based statement the
// quadratic inequalities are derived from, by exact enumeration (no
// sampling), so it is an independent check on the coefficient machinery.

struct ICEvaluation {
  double lhs_bits;
  double capacity_bits;
  double gap;                 // lhs - capacity; positive means the statement fails
  std::vector<double> per_i;  // per-guess mutual information terms
};

// Joint distribution of (a_i, g) given b = i, by enumeration.
std::vector<std::vector<double>> guess_joint(const NSBox& box, const Protocol& p,
                                             const Channel& ch,
                                             const InputDistribution& inputs, int i);

// sum_i I(a_i ; g | b = i) against the channel capacity.
ICEvaluation ic_lhs(const NSBox& box, const Protocol& p, const Channel& ch,
                    const InputDistribution& inputs);

// I(a_0; g | b=0) + I(a_1; g | b=1, a_0) for the correlated input pair
// Pr(a_0, a_1) = (1 + (-1)^(a_0 xor a_1) eps)/4. The chained second term is
// >= the unconditioned one, so this is a stronger statement than ic_lhs even
// at eps = 0; the two agree in the e_c -> 0 ratio limit.
ICEvaluation correlated_ic_lhs(const NSBox& box, const Protocol& p, const Channel& ch,
                               double eps);

// sum_i (log2 d - H(E | b = i)): the error-entropy lower bound on ic_lhs
// (valid for uniform inputs). For d = 2 this is n - sum_i h(Pr(g = a_i)).
double fano_lhs(const NSBox& box, const Protocol& p, const Channel& ch);

// [n - sum_i h(Pr(g=a_i|b=i))] / [1 - h((1+e_c)/2)] over a binary symmetric
// channel. The guessing probability is affine in e_c, so the numerator is
// evaluated from the noiseless decoding biases without cancellation.
// Throws DegenerateChannel at e_c = 0.
double lhopital_ratio(const NSBox& box, const Protocol& p, double e_c);

// e_c -> 0 limit via two-level Richardson extrapolation on
// e_c in {h, h/2, h/4}; equals sum_i (decoding bias_i)^2 up to O(h^6).
double lhopital_limit(const NSBox& box, const Protocol& p, double h = 1e-2);

// Same procedure for the correlated statement at fixed eps; the limit equals
// the correlated quadratic LHS / 4.
double correlated_lhopital_limit(const NSBox& box, const Protocol& p, double eps,
                                 double h = 1e-2);

// F(e_c) = n - sum_i h(1/2 + e_c e_i / 2) - 1 + h((1+e_c)/2): the guessing
// statement minus capacity along the noise parameter.
double ratio_gap(std::span<const double> e_vec, double e_c);
// Closed-form F''(e_c) = [sum_i e_i^2/(1 - e_c^2 e_i^2) - 1/(1 - e_c^2)] / ln 2.
double ratio_gap_second(std::span<const double> e_vec, double e_c);

struct ConcavityReport {
  std::vector<double> e_vector;
  double sum_sq;
  std::vector<double> e_c_samples;
  std::vector<double> f_values;
  std::vector<double> f_second;     // closed form
  std::vector<double> f_second_fd;  // central finite difference, step 1e-4
};
ConcavityReport concavity_check(std::span<const double> e_vec,
                                std::span<const double> e_c_samples);

// Randomized cross-validation of a quadratic inequality against the
// extrapolated information ratio on boxes sampled from random bias tables.
struct ValidationReport {
  std::uint64_t seed;
  int trials;
  int sign_disagreements;  // outside the margin band
  double margin_band;
  double max_limit_error;  // max |extrapolated limit - lhs/bound|
};
ValidationReport validate_inequality(const QuadraticInequality& q, const Protocol& p,
                                     int trials, std::uint64_t seed, int jobs = 1,
                                     double margin_band = 1e-4);

// Same cross-validation with the protocol itself resampled per trial: f, h, r
// drawn uniformly over their table spaces and the inequality regenerated from
// the sampled protocol.
ValidationReport validate_random_protocols(int n, int n_alpha, int trials,
                                           std::uint64_t seed, int jobs = 1,
                                           double margin_band = 1e-4);

// Deterministic per-trial generator derivation (splitmix64 of seed, index).
std::mt19937_64 rng_for_trial(std::uint64_t seed, std::uint64_t index);

// Uniform f in [n_alpha]^(2^n), h in [2]^(2^n), r in [2]^n.
Protocol sample_protocol_nn22(int n, int n_alpha, std::mt19937_64& rng);

// Full-correlation binary bias table, entries uniform on [-1, 1]; always
// yields a valid box through box_from_biases.
BiasTable sample_binary_bias_table(int n_a, int n_b, std::mt19937_64& rng);
// d-ary table from per-setting-pair uniform simplex draws of Pr(A (+) B = k).
BiasTable sample_dary_bias_table(int n_a, int n_b, int d, std::mt19937_64& rng);

}  // namespace icbell
