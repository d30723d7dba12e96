#include "icbell/nsbox.hpp"

#include <cmath>
#include <string>

namespace icbell {

NSBox::NSBox(int n_a, int n_b, int d_a, int d_b, std::vector<double> table, double tol)
    : n_a_(n_a), n_b_(n_b), d_a_(d_a), d_b_(d_b), table_(std::move(table)) {
  if (n_a < 1 || n_b < 1 || d_a < 2 || d_b < 2)
    throw ShapeMismatch("box needs at least one setting and two outcomes per party");
  if (table_.size() != static_cast<size_t>(n_a) * n_b * d_a * d_b)
    throw ShapeMismatch("box table has " + std::to_string(table_.size()) + " entries");
  for (double p : table_)
    if (p < -tol) throw NegativeProbability("box entry " + std::to_string(p));
  for (int alpha = 0; alpha < n_a_; ++alpha)
    for (int beta = 0; beta < n_b_; ++beta) {
      double sum = 0.0;
      for (int a = 0; a < d_a_; ++a)
        for (int b = 0; b < d_b_; ++b) sum += p(a, b, alpha, beta);
      if (std::abs(sum - 1.0) > tol)
        throw NormalizationError("setting pair (" + std::to_string(alpha) + "," +
                                 std::to_string(beta) + ") sums to " + std::to_string(sum));
    }
  if (nonsignaling_residual() > tol)
    throw SignalingError("nonsignaling residual " + std::to_string(nonsignaling_residual()));
}

double NSBox::marginal_a(int a, int alpha) const {
  double sum = 0.0;
  for (int b = 0; b < d_b_; ++b) sum += p(a, b, alpha, 0);
  return sum;
}

double NSBox::marginal_b(int b, int beta) const {
  double sum = 0.0;
  for (int a = 0; a < d_a_; ++a) sum += p(a, b, 0, beta);
  return sum;
}

double NSBox::nonsignaling_residual() const {
  double worst = 0.0;
  // Alice's marginal must not depend on beta.
  for (int alpha = 0; alpha < n_a_; ++alpha)
    for (int a = 0; a < d_a_; ++a) {
      double ref = 0.0;
      for (int b = 0; b < d_b_; ++b) ref += p(a, b, alpha, 0);
      for (int beta = 1; beta < n_b_; ++beta) {
        double m = 0.0;
        for (int b = 0; b < d_b_; ++b) m += p(a, b, alpha, beta);
        worst = std::max(worst, std::abs(m - ref));
      }
    }
  // Bob's marginal must not depend on alpha.
  for (int beta = 0; beta < n_b_; ++beta)
    for (int b = 0; b < d_b_; ++b) {
      double ref = 0.0;
      for (int a = 0; a < d_a_; ++a) ref += p(a, b, 0, beta);
      for (int alpha = 1; alpha < n_a_; ++alpha) {
        double m = 0.0;
        for (int a = 0; a < d_a_; ++a) m += p(a, b, alpha, beta);
        worst = std::max(worst, std::abs(m - ref));
      }
    }
  return worst;
}

BiasTable::BiasTable(int n_a, int n_b, int d)
    : n_a_(n_a), n_b_(n_b), d_(d), e_(static_cast<size_t>(n_a) * n_b * d, 0.0) {
  if (n_a < 1 || n_b < 1 || d < 2) throw ShapeMismatch("bias table shape invalid");
}

BiasTable BiasTable::binary(const std::vector<std::vector<double>>& e) {
  if (e.empty() || e[0].empty()) throw ShapeMismatch("empty bias matrix");
  BiasTable t(static_cast<int>(e.size()), static_cast<int>(e[0].size()), 2);
  for (int j = 0; j < t.n_a_; ++j) {
    if (static_cast<int>(e[j].size()) != t.n_b_) throw ShapeMismatch("ragged bias matrix");
    for (int i = 0; i < t.n_b_; ++i) {
      t.at(j, i, 0) = e[j][i];
      t.at(j, i, 1) = -e[j][i];
    }
  }
  return t;
}

void BiasTable::validate(double tol) const {
  for (int j = 0; j < n_a_; ++j)
    for (int i = 0; i < n_b_; ++i) {
      double sum = 0.0;
      for (int k = 0; k < d_; ++k) {
        const double v = at(j, i, k);
        if (v < -1.0 - tol || v > d_ - 1.0 + tol)
          throw InvalidBias("bias entry " + std::to_string(v) + " out of range");
        sum += v;
      }
      if (std::abs(sum) > tol)
        throw InvalidBias("bias components at (" + std::to_string(j) + "," +
                          std::to_string(i) + ") sum to " + std::to_string(sum));
    }
}

BiasTable biases(const NSBox& box) {
  if (box.d_a() != box.d_b())
    throw DimensionMismatch("biases need equal outcome alphabets");
  const int d = box.d_a();
  BiasTable t(box.n_a(), box.n_b(), d);
  for (int j = 0; j < box.n_a(); ++j)
    for (int i = 0; i < box.n_b(); ++i)
      for (int k = 0; k < d; ++k) {
        double pr = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            if ((a + b) % d == k) pr += box.p(a, b, j, i);
        t.at(j, i, k) = d * pr - 1.0;
      }
  return t;
}

NSBox box_from_biases(const BiasTable& t, double tol) {
  t.validate(tol);
  const int d = t.d();
  std::vector<double> table;
  table.reserve(static_cast<size_t>(t.n_a()) * t.n_b() * d * d);
  for (int j = 0; j < t.n_a(); ++j)
    for (int i = 0; i < t.n_b(); ++i)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          table.push_back((1.0 + t.at(j, i, (a + b) % d)) / (d * d));
  return NSBox(t.n_a(), t.n_b(), d, d, std::move(table), tol);
}

NSBox mix(std::span<const NSBox> boxes, std::span<const double> weights, double tol) {
  if (boxes.empty() || boxes.size() != weights.size())
    throw InvalidWeights("need one weight per box");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -tol) throw InvalidWeights("negative weight " + std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol)
    throw InvalidWeights("weights sum to " + std::to_string(sum));
  const NSBox& first = boxes[0];
  for (const NSBox& b : boxes)
    if (b.n_a() != first.n_a() || b.n_b() != first.n_b() || b.d_a() != first.d_a() ||
        b.d_b() != first.d_b())
      throw ShapeMismatch("mixture components differ in shape");
  std::vector<double> table(first.table().size(), 0.0);
  for (size_t m = 0; m < boxes.size(); ++m)
    for (size_t idx = 0; idx < table.size(); ++idx)
      table[idx] += weights[m] * boxes[m].table()[idx];
  return NSBox(first.n_a(), first.n_b(), first.d_a(), first.d_b(), std::move(table), tol);
}

CollinsGisinTable to_collins_gisin(const NSBox& box) {
  if (box.d_a() != 2 || box.d_b() != 2)
    throw DimensionMismatch("Collins-Gisin form needs binary outcomes");
  CollinsGisinTable cg;
  cg.pa.resize(box.n_a());
  cg.pb.resize(box.n_b());
  for (int j = 0; j < box.n_a(); ++j) cg.pa[j] = box.marginal_a(0, j);
  for (int i = 0; i < box.n_b(); ++i) cg.pb[i] = box.marginal_b(0, i);
  cg.joint.assign(box.n_b(), std::vector<double>(box.n_a(), 0.0));
  for (int i = 0; i < box.n_b(); ++i)
    for (int j = 0; j < box.n_a(); ++j) cg.joint[i][j] = box.p(0, 0, j, i);
  return cg;
}

NSBox from_collins_gisin(const CollinsGisinTable& cg, double tol) {
  const int n_a = static_cast<int>(cg.pa.size());
  const int n_b = static_cast<int>(cg.pb.size());
  if (n_a < 1 || n_b < 1 || static_cast<int>(cg.joint.size()) != n_b)
    throw InvalidCG("joint table must have one row per Bob setting");
  for (const auto& row : cg.joint)
    if (static_cast<int>(row.size()) != n_a)
      throw InvalidCG("joint table must have one column per Alice setting");
  std::vector<double> table(static_cast<size_t>(n_a) * n_b * 4, 0.0);
  for (int j = 0; j < n_a; ++j)
    for (int i = 0; i < n_b; ++i) {
      const double pj = cg.joint[i][j];
      const double p01 = cg.pa[j] - pj;
      const double p10 = cg.pb[i] - pj;
      const double p11 = 1.0 - cg.pa[j] - cg.pb[i] + pj;
      const size_t base = (static_cast<size_t>(j) * n_b + i) * 4;
      table[base + 0] = pj;
      table[base + 1] = p01;
      table[base + 2] = p10;
      table[base + 3] = p11;
    }
  try {
    return NSBox(n_a, n_b, 2, 2, std::move(table), tol);
  } catch (const Error& err) {
    throw InvalidCG(std::string("no valid box: ") + err.what());
  }
}

NSBox pr_box() {
  std::vector<double> table(16, 0.0);
  for (int alpha = 0; alpha < 2; ++alpha)
    for (int beta = 0; beta < 2; ++beta)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (alpha & beta))
            table[((alpha * 2 + beta) * 2 + a) * 2 + b] = 0.5;
  return NSBox(2, 2, 2, 2, std::move(table));
}

NSBox white_noise(int n, int d) {
  if (n < 1 || d < 2) throw ShapeMismatch("white noise needs n >= 1, d >= 2");
  std::vector<double> table(static_cast<size_t>(n) * n * d * d, 1.0 / (d * d));
  return NSBox(n, n, d, d, std::move(table));
}

NSBox local_deterministic(std::span<const int> a_map, std::span<const int> b_map,
                          int d_a, int d_b) {
  const int n_a = static_cast<int>(a_map.size());
  const int n_b = static_cast<int>(b_map.size());
  if (n_a < 1 || n_b < 1) throw ShapeMismatch("empty outcome map");
  for (int a : a_map)
    if (a < 0 || a >= d_a) throw DomainError("Alice outcome out of range");
  for (int b : b_map)
    if (b < 0 || b >= d_b) throw DomainError("Bob outcome out of range");
  std::vector<double> table(static_cast<size_t>(n_a) * n_b * d_a * d_b, 0.0);
  for (int alpha = 0; alpha < n_a; ++alpha)
    for (int beta = 0; beta < n_b; ++beta)
      table[((alpha * n_b + beta) * d_a + a_map[alpha]) * d_b + b_map[beta]] = 1.0;
  return NSBox(n_a, n_b, d_a, d_b, std::move(table));
}

NSBox max_violation_nn22(int n) {
  if (n < 2) throw ShapeMismatch("family starts at n = 2");
  std::vector<std::vector<double>> e(n, std::vector<double>(n, 1.0));
  for (int i = 0; i < n; ++i)
    for (int j = 1; j < n; ++j)
      if (j == n - i) e[j][i] = -1.0;
  return box_from_biases(BiasTable::binary(e));
}

std::array<NSBox, 3> fig2_boxes() {
  const int id[2] = {0, 1};
  const int zero[2] = {0, 0};
  return {pr_box(), local_deterministic(id, zero), local_deterministic(id, id)};
}

namespace {

NSBox box_from_half_table(const std::vector<std::vector<double>>& joint_x2) {
  CollinsGisinTable cg;
  cg.pa = {0.5, 0.5, 0.5};
  cg.pb = {0.5, 0.5, 0.5};
  cg.joint.assign(3, std::vector<double>(3, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cg.joint[i][j] = joint_x2[i][j] / 2.0;
  return from_collins_gisin(cg);
}

}  // namespace

NSBox cg3322_p1() {
  return box_from_half_table({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

NSBox cg3322_p2() {
  return box_from_half_table({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

NSBox cg3322_pN() {
  CollinsGisinTable cg;
  cg.pa = {0.5, 0.5, 0.5};
  cg.pb = {0.5, 0.5, 0.5};
  cg.joint.assign(3, std::vector<double>(3, 0.25));
  return from_collins_gisin(cg);
}

}  // namespace icbell
