#include "icbell/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace icbell {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double xlog2x(double p) {
  return p > 0.0 ? p * std::log2(p) : 0.0;
}

void check_distribution(std::span<const double> dist, double tol) {
  double sum = 0.0;
  for (double p : dist) {
    if (p < -tol) throw NegativeProbability("probability entry " + std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol)
    throw NormalizationError("distribution sums to " + std::to_string(sum));
}

}  // namespace

double shannon_entropy(std::span<const double> dist, double tol) {
  check_distribution(dist, tol);
  double h = 0.0;
  for (double p : dist) h -= xlog2x(p);
  return h;
}

double binary_entropy(double p) {
  if (p < -kProbTol || p > 1.0 + kProbTol)
    throw DomainError("binary_entropy argument " + std::to_string(p));
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double one_minus_binary_entropy_half(double x) {
  if (std::abs(x) > 1.0 + kProbTol)
    throw DomainError("bias argument " + std::to_string(x));
  x = std::clamp(x, -1.0, 1.0);
  if (x == 1.0 || x == -1.0) return 1.0;
  // (1+x)log(1+x) + (1-x)log(1-x) is O(x^2); log1p keeps it accurate there.
  return ((1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x)) / (2.0 * kLn2);
}

double mutual_information(const std::vector<std::vector<double>>& joint, double tol) {
  if (joint.empty() || joint[0].empty()) throw ShapeMismatch("empty joint table");
  const size_t cols = joint[0].size();
  std::vector<double> px(joint.size(), 0.0), py(cols, 0.0);
  double sum = 0.0;
  for (size_t x = 0; x < joint.size(); ++x) {
    if (joint[x].size() != cols) throw ShapeMismatch("ragged joint table");
    for (size_t y = 0; y < cols; ++y) {
      const double p = joint[x][y];
      if (p < -tol) throw NegativeProbability("joint entry " + std::to_string(p));
      px[x] += p;
      py[y] += p;
      sum += p;
    }
  }
  if (std::abs(sum - 1.0) > tol)
    throw NormalizationError("joint sums to " + std::to_string(sum));
  double h_xy = 0.0;
  for (const auto& row : joint)
    for (double p : row) h_xy -= xlog2x(p);
  double h_x = 0.0, h_y = 0.0;
  for (double p : px) h_x -= xlog2x(p);
  for (double p : py) h_y -= xlog2x(p);
  return h_x + h_y - h_xy;
}

Channel::Channel(ChannelKind kind, int d, std::vector<double> p)
    : kind_(kind), d_(d), p_(std::move(p)) {}

Channel Channel::binary_symmetric(double e_c) {
  if (std::abs(e_c) > 1.0 + kProbTol)
    throw DomainError("correctness bias " + std::to_string(e_c));
  e_c = std::clamp(e_c, -1.0, 1.0);
  return Channel(ChannelKind::BinarySymmetric, 2,
                 {(1.0 + e_c) / 2.0, (1.0 - e_c) / 2.0});
}

Channel Channel::clock(int d, std::span<const double> p_free) {
  if (d < 2) throw DomainError("channel alphabet must have d >= 2");
  const int half = d / 2;
  if (static_cast<int>(p_free.size()) != half + 1)
    throw ShapeMismatch("clock channel expects floor(d/2)+1 free parameters");
  std::vector<double> full(d);
  for (int m = 0; m <= half; ++m) full[m] = p_free[m];
  for (int m = half + 1; m < d; ++m) full[m] = p_free[d - m];
  return clock_full(d, full);
}

Channel Channel::clock_full(int d, std::span<const double> p, double tol) {
  if (d < 2) throw DomainError("channel alphabet must have d >= 2");
  if (static_cast<int>(p.size()) != d)
    throw ShapeMismatch("clock channel expects d noise entries");
  for (int m = 1; m < d; ++m)
    if (std::abs(p[m] - p[d - m]) > tol)
      throw DomainError("clock channel requires p_m = p_{d-m}");
  check_distribution(p, tol);
  return Channel(d == 2 ? ChannelKind::BinarySymmetric : ChannelKind::Clock, d,
                 std::vector<double>(p.begin(), p.end()));
}

double Channel::transition(int x_out, int x_in) const {
  const int l = ((x_out - x_in) % d_ + d_) % d_;
  return p_[l];
}

double Channel::correct_bias() const {
  if (d_ != 2) throw DomainError("correctness bias is defined for d = 2 only");
  return 2.0 * p_[0] - 1.0;
}

double Channel::capacity() const {
  double s = 0.0;
  for (double p : p_) s += xlog2x(p);
  return std::log2(static_cast<double>(d_)) + s;
}

std::vector<std::vector<double>> transmit(const Channel& ch,
                                          std::span<const double> input,
                                          double tol) {
  if (static_cast<int>(input.size()) != ch.alphabet())
    throw ShapeMismatch("input alphabet does not match the channel");
  check_distribution(input, tol);
  const int d = ch.alphabet();
  std::vector<std::vector<double>> joint(d, std::vector<double>(d, 0.0));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) joint[x][y] = input[x] * ch.transition(y, x);
  return joint;
}

InputDistribution::InputDistribution(int n, int d, bool uniform, double eps)
    : n_(n), d_(d), uniform_(uniform), eps_(eps) {}

InputDistribution InputDistribution::uniform(int n, int d) {
  if (n < 1 || d < 2) throw InvalidDistribution("need n >= 1 inputs over d >= 2 symbols");
  return InputDistribution(n, d, true, 0.0);
}

InputDistribution InputDistribution::correlated_pair(double eps) {
  if (std::abs(eps) > 1.0 + kProbTol)
    throw InvalidEpsilon("correlation parameter " + std::to_string(eps));
  return InputDistribution(2, 2, false, std::clamp(eps, -1.0, 1.0));
}

double InputDistribution::prob(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) != n_)
    throw ShapeMismatch("input string has wrong length");
  for (int a : digits)
    if (a < 0 || a >= d_) throw DomainError("input digit out of range");
  if (uniform_) {
    double p = 1.0;
    for (int k = 0; k < n_; ++k) p /= d_;
    return p;
  }
  const int parity = digits[0] ^ digits[1];
  return (1.0 + (parity == 0 ? eps_ : -eps_)) / 4.0;
}

}  // namespace icbell
