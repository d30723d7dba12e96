#include "icbell/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace icbell {

long rank_of(std::span<const int> digits, int d) {
  long rank = 0, place = 1;
  for (int a : digits) {
    if (a < 0 || a >= d) throw DomainError("digit out of range");
    rank += a * place;
    place *= d;
  }
  return rank;
}

void unrank(long rank, int n, int d, std::span<int> digits) {
  if (static_cast<int>(digits.size()) != n) throw ShapeMismatch("digit buffer size");
  for (int i = 0; i < n; ++i) {
    digits[i] = static_cast<int>(rank % d);
    rank /= d;
  }
}

long ipow(int base, int exp) {
  long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

Protocol::Protocol(int n_, int d_, int n_alpha_, std::vector<int> f_,
                   std::vector<int> h_, std::vector<int> r_)
    : n(n_), d(d_), n_alpha(n_alpha_), f(std::move(f_)), h(std::move(h_)), r(std::move(r_)) {
  if (n < 1 || d < 2 || n_alpha < 1) throw InvalidArity("need n >= 1, d >= 2, n_alpha >= 1");
  const long size = table_size();
  if (static_cast<long>(f.size()) != size || static_cast<long>(h.size()) != size)
    throw InvalidArity("f and h must have d^n entries");
  if (static_cast<int>(r.size()) != n) throw InvalidArity("r must have n entries");
  for (int v : f)
    if (v < 0 || v >= n_alpha) throw InvalidArity("f value out of range");
  for (int v : h)
    if (v < 0 || v >= d) throw InvalidArity("h value out of range");
  for (int v : r)
    if (v < 0 || v >= d) throw InvalidArity("r value out of range");
}

Protocol van_dam() {
  return Protocol(2, 2, 2, {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0});
}

Protocol canonical_nn22(int n) {
  if (n < 2) throw InvalidArity("canonical protocol starts at n = 2");
  const long size = ipow(2, n);
  std::vector<int> f(size), h(size);
  std::vector<int> digits(n);
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, n, 2, digits);
    h[rank] = digits[0];
    int leading = 0, prod = 1;
    for (int i = 1; i < n; ++i) {
      prod &= digits[0] ^ digits[i];
      leading += prod;
    }
    f[rank] = n - 1 - leading;
  }
  return Protocol(n, 2, n, std::move(f), std::move(h), std::vector<int>(n, 0));
}

Protocol d2dd_protocol(int d) {
  if (d < 2) throw InvalidArity("alphabet must have d >= 2");
  const long size = static_cast<long>(d) * d;
  std::vector<int> f(size), h(size);
  std::vector<int> digits(2);
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, 2, d, digits);
    f[rank] = ((digits[1] - digits[0]) % d + d) % d;
    h[rank] = digits[0];
  }
  return Protocol(2, d, d, std::move(f), std::move(h), {0, 0});
}

SignedCoefficients coefficients_nn22(const Protocol& p) {
  if (p.d != 2) throw AlphabetMismatch("signed coefficients are binary-only");
  SignedCoefficients out{p.n_alpha, p.n, std::vector<long>(static_cast<size_t>(p.n_alpha) * p.n, 0)};
  const long size = p.table_size();
  std::vector<int> digits(p.n);
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, p.n, 2, digits);
    const int j = p.f[rank];
    for (int i = 0; i < p.n; ++i)
      out.c[j * p.n + i] += ((p.h[rank] ^ digits[i]) == 0) ? 1 : -1;
  }
  return out;
}

CoefficientTable coefficients_nndd(const Protocol& p) {
  CoefficientTable out{p.n_alpha, p.n, p.d,
                       std::vector<long>(static_cast<size_t>(p.n_alpha) * p.n * p.d, 0)};
  const long size = p.table_size();
  std::vector<int> digits(p.n);
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, p.n, p.d, digits);
    const int j = p.f[rank];
    for (int i = 0; i < p.n; ++i) {
      // hbar(k) (+) k_i = l (+) r(i) with hbar = -h mod d.
      const int l = ((digits[i] - p.h[rank] - p.r[i]) % p.d + p.d) % p.d;
      ++out.c[(j * p.n + i) * p.d + l];
    }
  }
  return out;
}

bool is_balanced_h(const Protocol& p) {
  std::vector<long> counts(p.d, 0);
  for (int v : p.h) ++counts[v];
  return std::all_of(counts.begin(), counts.end(),
                     [&](long c) { return c == p.table_size() / p.d; });
}

void check_compatible(const NSBox& box, const Protocol& p) {
  if (box.d_a() != p.d || box.d_b() != p.d)
    throw AlphabetMismatch("box outcomes do not match the protocol alphabet");
  if (box.n_a() != p.n_alpha || box.n_b() != p.n)
    throw ShapeMismatch("box settings do not match the protocol");
}

double guessing_probability(const NSBox& box, const Protocol& p, const Channel& ch,
                            const InputDistribution& inputs, int i) {
  check_compatible(box, p);
  if (ch.alphabet() != p.d) throw AlphabetMismatch("channel alphabet");
  if (inputs.n() != p.n || inputs.d() != p.d)
    throw InvalidDistribution("input distribution shape");
  if (i < 0 || i >= p.n) throw DomainError("Bob input out of range");
  const int d = p.d;
  const long size = p.table_size();
  std::vector<int> digits(p.n);
  double pr = 0.0;
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, p.n, d, digits);
    const double w = inputs.prob(digits);
    if (w == 0.0) continue;
    const int alpha = p.f[rank];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double pab = box.p(a, b, alpha, i);
        if (pab == 0.0) continue;
        const int x = (p.h[rank] + a) % d;
        // g = x' (+) B (+) r(i); success means g = a_i.
        const int want_xp = ((digits[i] - b - p.r[i]) % d + d) % d;
        pr += w * pab * ch.transition(want_xp, x);
      }
  }
  return pr;
}

double guessing_probability_closed_nn22(const BiasTable& t, const Protocol& p,
                                        double e_c, int i) {
  if (p.d != 2 || t.d() != 2) throw AlphabetMismatch("closed form is binary-only");
  if (t.n_a() != p.n_alpha || t.n_b() != p.n) throw ShapeMismatch("bias table shape");
  if (i < 0 || i >= p.n) throw DomainError("Bob input out of range");
  const SignedCoefficients c = coefficients_nn22(p);
  double s = 0.0;
  for (int j = 0; j < p.n_alpha; ++j) s += static_cast<double>(c.at(j, i)) * t.e(j, i);
  const double sign = p.r[i] == 0 ? 1.0 : -1.0;
  return 0.5 + sign * (e_c / 2.0) * s / static_cast<double>(p.table_size());
}

double noiseless_guess_bias(const NSBox& box, const Protocol& p, int i) {
  check_compatible(box, p);
  if (p.d != 2) throw AlphabetMismatch("decoding bias is binary-only");
  if (i < 0 || i >= p.n) throw DomainError("Bob input out of range");
  const long size = p.table_size();
  std::vector<int> digits(p.n);
  double bias = 0.0;
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, p.n, 2, digits);
    const int alpha = p.f[rank];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int g = (p.h[rank] + a + b + p.r[i]) % 2;
        bias += box.p(a, b, alpha, i) * (g == digits[i] ? 1.0 : -1.0);
      }
  }
  return bias / static_cast<double>(size);
}

std::vector<double> error_distribution(const NSBox& box, const Protocol& p,
                                       const Channel& ch, int i) {
  check_compatible(box, p);
  if (ch.alphabet() != p.d) throw AlphabetMismatch("channel alphabet");
  if (i < 0 || i >= p.n) throw DomainError("Bob input out of range");
  const int d = p.d;
  const long size = p.table_size();
  const double w = 1.0 / static_cast<double>(size);
  std::vector<int> digits(p.n);
  std::vector<double> dist(d, 0.0);
  for (long rank = 0; rank < size; ++rank) {
    unrank(rank, p.n, d, digits);
    const int alpha = p.f[rank];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double pab = box.p(a, b, alpha, i);
        if (pab == 0.0) continue;
        const int x = (p.h[rank] + a) % d;
        for (int l = 0; l < d; ++l) {
          const double pn = ch.noise()[l];
          if (pn == 0.0) continue;
          const int e = ((x + l + b + p.r[i] - digits[i]) % d + d) % d;
          dist[e] += w * pab * pn;
        }
      }
  }
  return dist;
}

std::vector<double> error_distribution_closed_form(const BiasTable& t,
                                                   const Protocol& p,
                                                   const Channel& ch, int i) {
  if (t.d() != p.d || ch.alphabet() != p.d) throw AlphabetMismatch("alphabets differ");
  if (t.n_a() != p.n_alpha || t.n_b() != p.n) throw ShapeMismatch("bias table shape");
  if (i < 0 || i >= p.n) throw DomainError("Bob input out of range");
  const int d = p.d;
  const CoefficientTable c = coefficients_nndd(p);
  const double norm = 1.0 / static_cast<double>(d * p.table_size());
  const std::complex<double> im(0.0, 1.0);
  const double tau = 2.0 * std::numbers::pi / d;
  std::vector<std::complex<double>> spectrum(d, 0.0);
  spectrum[0] = 1.0;
  for (int ft = 1; ft < d; ++ft) {
    std::complex<double> phat = 0.0;
    for (int l = 0; l < d; ++l) phat += ch.noise()[l] * std::exp(im * (tau * ft * l));
    std::complex<double> u = 0.0;
    for (int j = 0; j < p.n_alpha; ++j) {
      std::complex<double> cj = 0.0, ej = 0.0;
      for (int l = 0; l < d; ++l) cj += static_cast<double>(c.at(j, i, l)) * std::exp(im * (tau * ft * l));
      for (int m = 0; m < d; ++m) ej += t.at(j, i, m) * std::exp(im * (tau * ft * m));
      u += std::conj(cj) * ej;
    }
    spectrum[ft] = norm * u * phat;
  }
  std::vector<double> dist(d, 0.0);
  for (int k = 0; k < d; ++k) {
    std::complex<double> v = 0.0;
    for (int ft = 0; ft < d; ++ft) v += spectrum[ft] * std::exp(-im * (tau * ft * k));
    dist[k] = v.real() / d;
  }
  return dist;
}

}  // namespace icbell
