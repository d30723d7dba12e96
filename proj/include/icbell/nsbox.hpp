#pragma once

#include <array>
#include <span>
#include <vector>

#include "icbell/errors.hpp"
#include "icbell/infotheory.hpp"

namespace icbell {

// Bipartite conditional distribution P(a, b | alpha, beta) with n_a x n_b
// settings and d_a x d_b outcomes, validated to be normalized, nonnegative
// and nonsignaling on construction.
class NSBox {
 public:
  // table is indexed [alpha][beta][a][b], flattened row-major.
  NSBox(int n_a, int n_b, int d_a, int d_b, std::vector<double> table,
        double tol = kProbTol);

  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }

  double p(int a, int b, int alpha, int beta) const {
    return table_[index(alpha, beta, a, b)];
  }
  // Setting-independent single-party marginals (nonsignaling guarantees this).
  double marginal_a(int a, int alpha) const;
  double marginal_b(int b, int beta) const;

  const std::vector<double>& table() const { return table_; }
  // Largest nonsignaling residual |sum_b P(a,b|alpha,beta) - sum_b P(a,b|alpha,beta')|.
  double nonsignaling_residual() const;

 private:
  int index(int alpha, int beta, int a, int b) const {
    return ((alpha * n_b_ + beta) * d_a_ + a) * d_b_ + b;
  }
  int n_a_, n_b_, d_a_, d_b_;
  std::vector<double> table_;
};

// Correlation biases e^k_{j,i} = d Pr(A (+) B = k | alpha = j, beta = i) - 1
// for equal outcome alphabets d_a = d_b = d ((+) is mod-d addition).
// For d = 2 the scalar shorthand e_{j,i} := e^0_{j,i} = 2 Pr(A = B | j, i) - 1.
class BiasTable {
 public:
  BiasTable(int n_a, int n_b, int d);  // all-zero table
  // Binary shorthand constructor: e[j][i] fills e^0 = e, e^1 = -e.
  static BiasTable binary(const std::vector<std::vector<double>>& e);

  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int d() const { return d_; }

  double& at(int j, int i, int k) { return e_[(j * n_b_ + i) * d_ + k]; }
  double at(int j, int i, int k) const { return e_[(j * n_b_ + i) * d_ + k]; }
  double e(int j, int i) const { return at(j, i, 0); }

  // Throws InvalidBias unless every e^k >= -1 and sum_k e^k = 0 per setting pair.
  void validate(double tol = kProbTol) const;

 private:
  int n_a_, n_b_, d_;
  std::vector<double> e_;
};

// Outcome-0 marginals and (0,0) joints; joint is indexed [i][j] with i the
// Bob setting (row) and j the Alice setting (column).
struct CollinsGisinTable {
  std::vector<double> pa;                  // Pr(A_j = 0)
  std::vector<double> pb;                  // Pr(B_i = 0)
  std::vector<std::vector<double>> joint;  // Pr(A_j = 0, B_i = 0)
};

// Requires d_a = d_b; throws DimensionMismatch otherwise.
BiasTable biases(const NSBox& box);

// Uniform-marginal box P(a,b|j,i) = (1 + e^{a (+) b}_{j,i}) / d^2.
// Round trip: biases(box_from_biases(t)) == t.
NSBox box_from_biases(const BiasTable& t, double tol = kProbTol);

// Convex combination; boxes must share the same shape.
NSBox mix(std::span<const NSBox> boxes, std::span<const double> weights,
          double tol = kProbTol);

// Binary-outcome boxes only.
CollinsGisinTable to_collins_gisin(const NSBox& box);
NSBox from_collins_gisin(const CollinsGisinTable& cg, double tol = kProbTol);

// --- catalog ---

// n_a = n_b = d_a = d_b = 2, A xor B = alpha.beta, uniform marginals.
NSBox pr_box();
// n settings per party, d outcomes, all entries 1/d^2.
NSBox white_noise(int n, int d);
// A = a_map[alpha], B = b_map[beta]; outcome alphabets d_a, d_b.
NSBox local_deterministic(std::span<const int> a_map, std::span<const int> b_map,
                          int d_a = 2, int d_b = 2);
// Full-correlation box with e_{0,i} = 1 and e_{j,i} = (-1)^{[j = n-i]} for j > 0;
// it maximally violates the n-input quadratic family.
NSBox max_violation_nn22(int n);
// {PR, local A=alpha B=0, local A=alpha B=beta}: the mixture family behind the
// (q1, q2) region scan.
std::array<NSBox, 3> fig2_boxes();
// The two PR-like 3322 boxes and the white-noise point of the 3322 study.
NSBox cg3322_p1();
NSBox cg3322_p2();
NSBox cg3322_pN();

}  // namespace icbell
