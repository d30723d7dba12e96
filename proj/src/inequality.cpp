#include "icbell/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace icbell {

namespace {

std::vector<std::vector<std::complex<double>>> zero_coeffs(int n_b, int n_a, int d) {
  return std::vector<std::vector<std::complex<double>>>(
      n_b, std::vector<std::complex<double>>(static_cast<size_t>(n_a) * d, 0.0));
}

std::complex<double> root_of_unity(int d, long power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(((power % d) + d) % d) / d;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

QuadraticInequality uffink() {
  QuadraticInequality q{"uffink", {}, 2, 2, 2, zero_coeffs(2, 2, 2), 4.0};
  q.coeffs[0][0 * 2] = 1.0;  // e00
  q.coeffs[0][1 * 2] = 1.0;  // e10
  q.coeffs[1][0 * 2] = 1.0;  // e01
  q.coeffs[1][1 * 2] = -1.0; // e11
  return q;
}

QuadraticInequality result1_nn22(int n) {
  if (n < 2) throw InvalidArity("family starts at n = 2");
  QuadraticInequality q{"result1_nn22", {{"n", static_cast<double>(n)}},
                        n, n, 2, zero_coeffs(n, n, 2),
                        std::pow(4.0, n - 1)};
  for (int i = 0; i < n; ++i) {
    q.coeffs[i][0] = 1.0;  // e_{0,i}
    for (int j = 1; j <= n - i && j < n; ++j) {
      const double mag = std::ldexp(1.0, j - 1);  // 2^(j-1)
      q.coeffs[i][static_cast<size_t>(j) * 2] = (j == n - i) ? -mag : mag;
    }
  }
  return q;
}

QuadraticInequality from_protocol_nn22(const Protocol& p) {
  const SignedCoefficients c = coefficients_nn22(p);
  QuadraticInequality q{"protocol_nn22",
                        {{"n", static_cast<double>(p.n)}},
                        p.n_alpha, p.n, 2, zero_coeffs(p.n, p.n_alpha, 2),
                        std::pow(4.0, p.n)};
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n_alpha; ++j)
      q.coeffs[i][static_cast<size_t>(j) * 2] = static_cast<double>(c.at(j, i));
  return q;
}

std::vector<QuadraticInequality> d2dd_family(int d) {
  if (d < 2) throw InvalidArity("alphabet must have d >= 2");
  std::vector<QuadraticInequality> out;
  for (int t = 1; t <= d / 2; ++t) {
    QuadraticInequality q{"d2dd",
                          {{"d", static_cast<double>(d)}, {"t", static_cast<double>(t)}},
                          d, 2, d, zero_coeffs(2, d, d),
                          std::pow(static_cast<double>(d), 4)};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < d; ++j)
        for (int m = 0; m < d; ++m)
          // superscript i.j (+) k with transmitted phase w^{kt}: k = m (-) i.j.
          q.coeffs[i][static_cast<size_t>(j) * d + m] =
              root_of_unity(d, static_cast<long>(t) * (m - i * j));
    out.push_back(std::move(q));
  }
  return out;
}

QuadraticInequality nndd_from_protocol(const Protocol& p, int t, NnddVariant variant) {
  if (t < 1 || t > p.d / 2) throw InvalidPhaseIndex("t must lie in 1..floor(d/2)");
  const CoefficientTable c = coefficients_nndd(p);
  const int d = p.d;
  QuadraticInequality q{"nndd",
                        {{"n", static_cast<double>(p.n)},
                         {"d", static_cast<double>(d)},
                         {"t", static_cast<double>(t)},
                         {"variant", variant == NnddVariant::Derivation ? 0.0 : 1.0}},
                        p.n_alpha, p.n, d, zero_coeffs(p.n, p.n_alpha, d),
                        std::pow(static_cast<double>(d), 2 * (p.n + 1))};
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n_alpha; ++j) {
      std::complex<double> cj = 0.0;
      for (int l = 0; l < d; ++l)
        cj += static_cast<double>(c.at(j, i, l)) * root_of_unity(d, static_cast<long>(t) * l);
      if (variant == NnddVariant::Derivation) cj = std::conj(cj);
      for (int m = 0; m < d; ++m)
        q.coeffs[i][static_cast<size_t>(j) * d + m] =
            cj * root_of_unity(d, static_cast<long>(t) * m);
    }
  return q;
}

QuadraticInequality correlated_2222(double eps) {
  if (std::abs(eps) > 1.0 + kProbTol) throw InvalidEpsilon("eps outside [-1, 1]");
  eps = std::clamp(eps, -1.0, 1.0);
  QuadraticInequality q{"correlated_2222", {{"eps", eps}}, 2, 2, 2, zero_coeffs(2, 2, 2), 4.0};
  q.coeffs[0][0 * 2] = 1.0 + eps;
  q.coeffs[0][1 * 2] = 1.0 - eps;
  const double root = std::sqrt(std::max(0.0, 1.0 - eps * eps));
  q.coeffs[1][0 * 2] = root;
  q.coeffs[1][1 * 2] = -root;
  return q;
}

Evaluation evaluate(const QuadraticInequality& q, const BiasTable& t, double tol) {
  if (t.n_a() != q.n_a || t.n_b() != q.n_b) throw ShapeMismatch("bias table settings");
  if (t.d() != q.d) throw DimensionMismatch("bias table alphabet");
  double lhs = 0.0;
  for (int i = 0; i < q.n_b; ++i) {
    std::complex<double> bracket = 0.0;
    for (int j = 0; j < q.n_a; ++j)
      for (int m = 0; m < q.d; ++m)
        bracket += q.coeffs[i][static_cast<size_t>(j) * q.d + m] * t.at(j, i, m);
    lhs += std::norm(bracket);
  }
  const double violation = std::max(0.0, lhs - q.bound);
  return Evaluation{lhs, q.bound, violation, violation > tol};
}

EnvelopeResult epsilon_envelope(const BiasTable& t) {
  if (t.n_a() != 2 || t.n_b() != 2 || t.d() != 2)
    throw ShapeMismatch("envelope is defined for 2222 bias tables");
  const double e00 = t.e(0, 0), e10 = t.e(1, 0), s = t.e(0, 1) - t.e(1, 1);
  const double a = (e00 + e10) * (e00 + e10) + s * s;
  const double b = e00 * e00 - e10 * e10;
  const double c = (e00 - e10) * (e00 - e10) - s * s;
  auto lhs_at = [&](double eps) { return a + 2.0 * b * eps + c * eps * eps; };
  EnvelopeResult best{lhs_at(1.0), 1.0};
  if (const double at_minus = lhs_at(-1.0); at_minus > best.max_lhs)
    best = {at_minus, -1.0};
  if (c < 0.0) {
    const double vertex = -b / c;
    if (std::abs(vertex) <= 1.0) {
      if (const double at_vertex = lhs_at(vertex); at_vertex > best.max_lhs)
        best = {at_vertex, vertex};
    }
  }
  return best;
}

bool tlm_quantum(double e00, double e01, double e10, double e11, double tol) {
  for (double e : {e00, e01, e10, e11})
    if (std::abs(e) > 1.0 + tol) throw DomainError("bias outside [-1, 1]");
  const double s = std::asin(std::clamp(e00, -1.0, 1.0)) +
                   std::asin(std::clamp(e01, -1.0, 1.0)) +
                   std::asin(std::clamp(e10, -1.0, 1.0)) +
                   std::asin(std::clamp(e11, -1.0, 1.0));
  for (double e : {e00, e01, e10, e11})
    if (std::abs(s - 2.0 * std::asin(std::clamp(e, -1.0, 1.0))) > std::numbers::pi + tol)
      return false;
  return true;
}

bool tlm_quantum(const BiasTable& t, double tol) {
  if (t.n_a() != 2 || t.n_b() != 2 || t.d() != 2)
    throw ShapeMismatch("quantum boundary test is for 2222 bias tables");
  return tlm_quantum(t.e(0, 0), t.e(0, 1), t.e(1, 0), t.e(1, 1), tol);
}

std::vector<std::vector<long>> canonical_key(const SignedCoefficients& c) {
  std::vector<std::vector<long>> rows(c.n_b, std::vector<long>(c.n_alpha, 0));
  long g = 0;
  for (int i = 0; i < c.n_b; ++i) {
    for (int j = 0; j < c.n_alpha; ++j) rows[i][j] = c.at(j, i);
    for (long v : rows[i]) {
      if (v != 0) {
        if (v < 0)
          for (long& w : rows[i]) w = -w;
        break;
      }
    }
    for (long v : rows[i]) g = std::gcd(g, std::abs(v));
  }
  if (g > 1)
    for (auto& row : rows)
      for (long& v : row) v /= g;
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace icbell
