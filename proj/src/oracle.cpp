#include "icbell/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "icbell/parallel.hpp"

namespace icbell {

namespace {

constexpr double kLn2 = 0.6931471805599453;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<std::vector<double>> guess_joint(const NSBox& box, const Protocol& p,
                                             const Channel& ch,
                                             const InputDistribution& inputs, int i) {
  check_compatible(box, p);
  if (ch.alphabet() != p.d) throw AlphabetMismatch("channel alphabet");
  if (inputs.n() != p.n || inputs.d() != p.d)
    throw InvalidDistribution("input distribution shape");
  if (i < 0 || i >= p.n) throw DomainError("Bob input out of range");
  const int d = p.d;
  const long size = p.table_size();
  std::vector<int> digits(p.n);
  std::vector<std::vector<double>> joint(d, std::vector<double>(d, 0.0));
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
        for (int l = 0; l < d; ++l) {
          const double pn = ch.noise()[l];
          if (pn == 0.0) continue;
          const int g = (x + l + b + p.r[i]) % d;
          joint[digits[i]][g] += w * pab * pn;
        }
      }
  }
  return joint;
}

ICEvaluation ic_lhs(const NSBox& box, const Protocol& p, const Channel& ch,
                    const InputDistribution& inputs) {
  ICEvaluation out;
  out.per_i.reserve(p.n);
  double lhs = 0.0;
  for (int i = 0; i < p.n; ++i) {
    const double term = mutual_information(guess_joint(box, p, ch, inputs, i));
    out.per_i.push_back(term);
    lhs += term;
  }
  out.lhs_bits = lhs;
  out.capacity_bits = ch.capacity();
  out.gap = lhs - out.capacity_bits;
  return out;
}

ICEvaluation correlated_ic_lhs(const NSBox& box, const Protocol& p, const Channel& ch,
                               double eps) {
  check_compatible(box, p);
  if (p.n != 2 || p.d != 2) throw InvalidArity("correlated statement is for n = 2 bits");
  if (ch.alphabet() != 2) throw AlphabetMismatch("channel alphabet");
  const InputDistribution inputs = InputDistribution::correlated_pair(eps);

  // First term: I(a_0 ; g | b = 0).
  const double term0 = mutual_information(guess_joint(box, p, ch, inputs, 0));

  // Second term: sum_l Pr(a_0 = l) I(a_1 ; g | b = 1, a_0 = l).
  double term1 = 0.0;
  for (int l = 0; l < 2; ++l) {
    int digits[2] = {l, 0};
    double pl = 0.0;
    for (int m = 0; m < 2; ++m) {
      digits[1] = m;
      pl += inputs.prob(digits);
    }
    if (pl == 0.0) continue;
    std::vector<std::vector<double>> joint(2, std::vector<double>(2, 0.0));
    for (int m = 0; m < 2; ++m) {
      digits[1] = m;
      const double w = inputs.prob(digits) / pl;
      if (w == 0.0) continue;
      const long rank = rank_of(digits, 2);
      const int alpha = p.f[rank];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double pab = box.p(a, b, alpha, 1);
          if (pab == 0.0) continue;
          const int x = (p.h[rank] + a) % 2;
          for (int noise = 0; noise < 2; ++noise) {
            const int g = (x + noise + b + p.r[1]) % 2;
            joint[m][g] += w * pab * ch.noise()[noise];
          }
        }
    }
    term1 += pl * mutual_information(joint);
  }

  ICEvaluation out;
  out.per_i = {term0, term1};
  out.lhs_bits = term0 + term1;
  out.capacity_bits = ch.capacity();
  out.gap = out.lhs_bits - out.capacity_bits;
  return out;
}

double fano_lhs(const NSBox& box, const Protocol& p, const Channel& ch) {
  const double logd = std::log2(static_cast<double>(p.d));
  double lhs = 0.0;
  for (int i = 0; i < p.n; ++i)
    lhs += logd - shannon_entropy(error_distribution(box, p, ch, i));
  return lhs;
}

double lhopital_ratio(const NSBox& box, const Protocol& p, double e_c) {
  if (p.d != 2) throw AlphabetMismatch("ratio is defined over the bit channel");
  if (e_c == 0.0) throw DegenerateChannel("zero-capacity channel");
  if (std::abs(e_c) > 1.0) throw DomainError("correctness bias outside [-1, 1]");
  double num = 0.0;
  for (int i = 0; i < p.n; ++i)
    num += one_minus_binary_entropy_half(e_c * noiseless_guess_bias(box, p, i));
  return num / one_minus_binary_entropy_half(e_c);
}

namespace {

double richardson_limit(double r_h, double r_h2, double r_h4) {
  // The ratio is an even series in e_c, so halving the step divides the
  // leading error term by 4.
  const double a1 = (4.0 * r_h2 - r_h) / 3.0;
  const double a2 = (4.0 * r_h4 - r_h2) / 3.0;
  return (16.0 * a2 - a1) / 15.0;
}

}  // namespace

double lhopital_limit(const NSBox& box, const Protocol& p, double h) {
  if (h <= 0.0 || h > 0.5) throw DomainError("extrapolation step out of range");
  return richardson_limit(lhopital_ratio(box, p, h), lhopital_ratio(box, p, h / 2),
                          lhopital_ratio(box, p, h / 4));
}

double correlated_lhopital_limit(const NSBox& box, const Protocol& p, double eps,
                                 double h) {
  if (h <= 0.0 || h > 0.5) throw DomainError("extrapolation step out of range");
  auto ratio = [&](double e_c) {
    const Channel ch = Channel::binary_symmetric(e_c);
    return correlated_ic_lhs(box, p, ch, eps).lhs_bits /
           one_minus_binary_entropy_half(e_c);
  };
  return richardson_limit(ratio(h), ratio(h / 2), ratio(h / 4));
}

double ratio_gap(std::span<const double> e_vec, double e_c) {
  if (std::abs(e_c) > 1.0) throw DomainError("correctness bias outside [-1, 1]");
  double f = -one_minus_binary_entropy_half(e_c);
  for (double e : e_vec) {
    if (std::abs(e) > 1.0 + kProbTol) throw DomainError("bias outside [-1, 1]");
    f += one_minus_binary_entropy_half(e_c * std::clamp(e, -1.0, 1.0));
  }
  return f;
}

double ratio_gap_second(std::span<const double> e_vec, double e_c) {
  if (std::abs(e_c) >= 1.0) throw DomainError("second derivative needs |e_c| < 1");
  double f = -1.0 / (1.0 - e_c * e_c);
  for (double e : e_vec) {
    if (std::abs(e) > 1.0 + kProbTol) throw DomainError("bias outside [-1, 1]");
    f += e * e / (1.0 - e_c * e_c * e * e);
  }
  return f / kLn2;
}

ConcavityReport concavity_check(std::span<const double> e_vec,
                                std::span<const double> e_c_samples) {
  constexpr double kFdStep = 1e-4;
  ConcavityReport report;
  report.e_vector.assign(e_vec.begin(), e_vec.end());
  report.sum_sq = 0.0;
  for (double e : e_vec) report.sum_sq += e * e;
  report.e_c_samples.assign(e_c_samples.begin(), e_c_samples.end());
  for (double e_c : e_c_samples) {
    if (std::abs(e_c) + kFdStep >= 1.0)
      throw DomainError("finite-difference stencil leaves (-1, 1)");
    report.f_values.push_back(ratio_gap(e_vec, e_c));
    report.f_second.push_back(ratio_gap_second(e_vec, e_c));
    const double fp = ratio_gap(e_vec, e_c + kFdStep);
    const double f0 = ratio_gap(e_vec, e_c);
    const double fm = ratio_gap(e_vec, e_c - kFdStep);
    report.f_second_fd.push_back((fp - 2.0 * f0 + fm) / (kFdStep * kFdStep));
  }
  return report;
}

std::mt19937_64 rng_for_trial(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index + 1)));
}

BiasTable sample_binary_bias_table(int n_a, int n_b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::vector<double>> e(n_a, std::vector<double>(n_b));
  for (auto& row : e)
    for (double& v : row) v = uni(rng);
  return BiasTable::binary(e);
}

BiasTable sample_dary_bias_table(int n_a, int n_b, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  BiasTable t(n_a, n_b, d);
  std::vector<double> q(d);
  for (int j = 0; j < n_a; ++j)
    for (int i = 0; i < n_b; ++i) {
      double sum = 0.0;
      for (double& v : q) {
        v = -std::log(1.0 - uni(rng));  // exponential draws normalize to the simplex
        sum += v;
      }
      for (int k = 0; k < d; ++k) t.at(j, i, k) = d * q[k] / sum - 1.0;
    }
  return t;
}

namespace {

template <typename TrialFn>
ValidationReport run_validation(int trials, std::uint64_t seed, int jobs,
                                double margin_band, TrialFn&& trial_fn) {
  if (trials < 1) throw DomainError("need at least one trial");
  std::vector<double> limit_err(trials, 0.0);
  std::vector<int> disagree(trials, 0);
  parallel_for(trials, jobs, [&](std::int64_t trial) {
    std::mt19937_64 rng = rng_for_trial(seed, static_cast<std::uint64_t>(trial));
    double normalized = 0.0, limit = 0.0;
    trial_fn(rng, normalized, limit);
    limit_err[trial] = std::abs(limit - normalized);
    const double s_ineq = normalized - 1.0, s_oracle = limit - 1.0;
    if ((s_ineq > margin_band && s_oracle < -margin_band) ||
        (s_ineq < -margin_band && s_oracle > margin_band))
      disagree[trial] = 1;
  });
  ValidationReport report{seed, trials, 0, margin_band, 0.0};
  for (int t = 0; t < trials; ++t) {
    report.sign_disagreements += disagree[t];
    report.max_limit_error = std::max(report.max_limit_error, limit_err[t]);
  }
  return report;
}

}  // namespace

ValidationReport validate_inequality(const QuadraticInequality& q, const Protocol& p,
                                     int trials, std::uint64_t seed, int jobs,
                                     double margin_band) {
  if (q.d != 2 || p.d != 2) throw AlphabetMismatch("validation runs on the bit alphabet");
  return run_validation(trials, seed, jobs, margin_band,
                        [&](std::mt19937_64& rng, double& normalized, double& limit) {
                          const BiasTable t = sample_binary_bias_table(q.n_a, q.n_b, rng);
                          const NSBox box = box_from_biases(t);
                          normalized = evaluate(q, t).lhs / q.bound;
                          limit = lhopital_limit(box, p);
                        });
}

Protocol sample_protocol_nn22(int n, int n_alpha, std::mt19937_64& rng) {
  const long size = ipow(2, n);
  std::uniform_int_distribution<int> pick_alpha(0, n_alpha - 1);
  std::uniform_int_distribution<int> pick_bit(0, 1);
  std::vector<int> f(size), h(size), r(n);
  for (int& v : f) v = pick_alpha(rng);
  for (int& v : h) v = pick_bit(rng);
  for (int& v : r) v = pick_bit(rng);
  return Protocol(n, 2, n_alpha, std::move(f), std::move(h), std::move(r));
}

ValidationReport validate_random_protocols(int n, int n_alpha, int trials,
                                           std::uint64_t seed, int jobs,
                                           double margin_band) {
  return run_validation(trials, seed, jobs, margin_band,
                        [&](std::mt19937_64& rng, double& normalized, double& limit) {
                          const Protocol p = sample_protocol_nn22(n, n_alpha, rng);
                          const QuadraticInequality q = from_protocol_nn22(p);
                          const BiasTable t = sample_binary_bias_table(n_alpha, n, rng);
                          const NSBox box = box_from_biases(t);
                          normalized = evaluate(q, t).lhs / q.bound;
                          limit = lhopital_limit(box, p);
                        });
}

}  // namespace icbell
