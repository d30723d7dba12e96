// Times the serial reference implementations against their OpenMP
// counterparts and asserts that both produce identical results. The three
// kernels with parallel paths are the exhaustive 3322 protocol search, the
// Fig.-2 region scan, and the randomized oracle-vs-inequality validation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "icbell/experiments.hpp"
#include "icbell/inequality.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/oracle.hpp"
#include "icbell/protocol.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void check(bool ok, const char* what) {
  if (!ok) {
    ++failures;
    std::fprintf(stderr, "MISMATCH: %s\n", what);
  }
}

void row(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s %10.3f s %10.3f s %8.2fx\n", name, serial_s, parallel_s,
              serial_s / parallel_s);
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads available: %d\n", threads);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

  using namespace icbell;

  {
    auto t0 = Clock::now();
    const Search3322Outcome serial = search_3322_serial();
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    const Search3322Outcome parallel = search_3322_parallel(threads);
    const double tp = seconds_since(t0);
    row("3322 exhaustive search", ts, tp);
    check(serial.gain_max == parallel.gain_max &&
              serial.optima_count == parallel.optima_count &&
              serial.optimal_keys == parallel.optimal_keys,
          "3322 search results differ between serial and parallel runs");
  }

  {
    const double step = 0.0025;
    auto t0 = Clock::now();
    const RegionScan serial = scan_region_serial(step);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    const RegionScan parallel = scan_region(step, threads);
    const double tp = seconds_since(t0);
    row("region scan (step 0.0025)", ts, tp);
    bool same = serial.points.size() == parallel.points.size();
    for (std::size_t i = 0; same && i < serial.points.size(); ++i) {
      const RegionPoint& a = serial.points[i];
      const RegionPoint& b = parallel.points[i];
      same = a.q1 == b.q1 && a.q2 == b.q2 && a.uffink_lhs == b.uffink_lhs &&
             a.envelope_lhs == b.envelope_lhs && a.envelope_eps == b.envelope_eps;
    }
    check(same, "region scans differ between serial and parallel runs");
  }

  {
    const QuadraticInequality q = uffink();
    const Protocol p = van_dam();
    const int trials = 2000;
    const std::uint64_t seed = 99;
    auto t0 = Clock::now();
    const ValidationReport serial = validate_inequality(q, p, trials, seed, 1);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    const ValidationReport parallel =
        validate_inequality(q, p, trials, seed, threads);
    const double tp = seconds_since(t0);
    row("oracle validation (2000)", ts, tp);
    check(serial.sign_disagreements == parallel.sign_disagreements &&
              std::abs(serial.max_limit_error - parallel.max_limit_error) == 0.0,
          "validation reports differ between serial and parallel runs");
  }

  if (failures != 0) {
    std::fprintf(stderr, "%d kernel(s) disagree\n", failures);
    return 1;
  }
  std::puts("all parallel kernels match their serial references");
  return 0;
}
