#pragma once

#include <span>
#include <vector>

#include "icbell/errors.hpp"

namespace icbell {

inline constexpr double kProbTol = 1e-9;

// All entropic quantities are in bits.

// H(p) = -sum p log2 p with 0 log 0 = 0. Validates normalization and sign.
double shannon_entropy(std::span<const double> dist, double tol = kProbTol);

// h(p) = H({p, 1-p}) for p in [0, 1].
double binary_entropy(double p);

// 1 - h((1+x)/2) for x in [-1, 1], evaluated as
// ((1+x)log2(1+x) + (1-x)log2(1-x))/2 so that no precision is lost near x = 0.
// This is the capacity of a binary symmetric channel with correctness bias x.
double one_minus_binary_entropy_half(double x);

// I(X;Y) = H(X) + H(Y) - H(X,Y) from a joint table joint[x][y].
// Rectangular tables allowed; zero rows/columns contribute nothing.
double mutual_information(const std::vector<std::vector<double>>& joint,
                          double tol = kProbTol);

enum class ChannelKind { BinarySymmetric, Clock };

// A noisy classical channel on the alphabet [d]. Both kinds are additive:
// Pr(x' = x (+) l) = noise()[l] with the clock symmetry p_l = p_{d-l}, so the
// transition matrix is T[x'][x] = p_{D(x',x)} with D the cyclic distance.
class Channel {
 public:
  // d = 2, correctness bias e_c in [-1, 1]: diagonal (1+e_c)/2, off (1-e_c)/2.
  static Channel binary_symmetric(double e_c);
  // Free parameters p_0..p_{floor(d/2)}; the remaining entries are mirrored.
  static Channel clock(int d, std::span<const double> p_free);
  // Full length-d list; validates the mirror symmetry p_l = p_{d-l}.
  static Channel clock_full(int d, std::span<const double> p, double tol = kProbTol);

  int alphabet() const { return d_; }
  ChannelKind kind() const { return kind_; }
  const std::vector<double>& noise() const { return p_; }  // offset distribution
  double transition(int x_out, int x_in) const;            // T[x'][x]
  // Correctness bias: 2 p_0 - 1 for d = 2. Throws DomainError otherwise.
  double correct_bias() const;

  // log2 d + sum_l p_l log2 p_l (symmetric-channel capacity).
  double capacity() const;

 private:
  Channel(ChannelKind kind, int d, std::vector<double> p);
  ChannelKind kind_;
  int d_;
  std::vector<double> p_;
};

// Joint distribution of (input, output): joint[x][x'] = in[x] T[x'][x].
std::vector<std::vector<double>> transmit(const Channel& ch,
                                          std::span<const double> input,
                                          double tol = kProbTol);

// Distribution of Alice's input string a^(n) over [d]^n.
class InputDistribution {
 public:
  // Independent uniform digits.
  static InputDistribution uniform(int n, int d);
  // n = 2, d = 2, Pr(a_0 = l, a_1 = m) = (1 + (-1)^(l^m) eps)/4.
  static InputDistribution correlated_pair(double eps);

  int n() const { return n_; }
  int d() const { return d_; }
  bool is_uniform() const { return uniform_; }
  double epsilon() const { return eps_; }
  // digits holds (a_0, ..., a_{n-1}).
  double prob(std::span<const int> digits) const;

 private:
  InputDistribution(int n, int d, bool uniform, double eps);
  int n_;
  int d_;
  bool uniform_;
  double eps_;
};

}  // namespace icbell
