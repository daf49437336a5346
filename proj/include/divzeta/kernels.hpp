#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference in `serial::` and an OpenMP version in `omp::`. The public
// operations call the OpenMP kernels; tests and benchmarks compare the two.
//
// Floating-point reductions in `omp::` split the index range into a fixed
// number of chunks (independent of the thread count), sum each chunk in
// order, then add the chunk totals in order. Results are therefore
// bit-identical from run to run and across OMP_NUM_THREADS settings.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include <omp.h>

namespace divzeta::kernels {

inline constexpr std::int64_t kReductionChunks = 512;

/// Accumulators of one pass over the Selberg window.
struct SelbergSums {
  double j = 0.0;         ///< int (S - M)^2
  double s_sq = 0.0;      ///< int S^2
  double s_m = 0.0;       ///< int S M
  double m_sq = 0.0;      ///< int M^2
  std::int64_t segments = 0;

  SelbergSums& operator+=(const SelbergSums& o) {
    j += o.j;
    s_sq += o.s_sq;
    s_m += o.s_m;
    m_sq += o.m_sq;
    segments += o.segments;
    return *this;
  }
};

/// Short-interval problem description shared by the Selberg kernels.
/// `prefix[n]` = sum_{m <= n} d_k(m); `expected(t)` = M_k(t, h).
struct SelbergProblem {
  std::span<const std::uint64_t> prefix;
  std::function<double(double)> expected;
  double h = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Complex-valued weight w(a, n) for the smoothed double sum.
using PairWeight = std::function<std::complex<double>(std::int64_t a, std::int64_t n)>;

namespace serial {

/// C(a) = sum_{n <= x} d(n) d(n + a) for a in [a_lo, a_hi].
std::vector<std::uint64_t> correlate_direct(std::span<const std::uint64_t> values, std::uint64_t x,
                                            std::uint64_t a_lo, std::uint64_t a_hi);

/// sum_{n_lo(a) <= n <= x} d(n) d(n + a) with n_lo(a) = max(1, ceil(lower + h - a)), 0 <= a < h.
std::vector<std::uint64_t> window_correlation(std::span<const std::uint64_t> values, std::uint64_t x,
                                              double lower, double h);

/// Exact-piecewise integration: S(t) is constant between the breakpoints
/// t in Z and t in Z - h; each piece is integrated by 4-point Gauss-Legendre.
SelbergSums selberg_piecewise(const SelbergProblem& problem);

/// Midpoint rule with the given step.
SelbergSums selberg_sampled(const SelbergProblem& problem, double step);

/// Composite Simpson on [lo, hi] with n_panels (even) panels.
double simpson(const std::function<double(double)>& f, double lo, double hi, std::int64_t n_panels);

/// sum_{0 <= a <= a_max} sum_{n_lo < n <= n_hi} d(n) d(n + a) w(a, n).
std::complex<double> weighted_pair_sum(std::span<const std::uint64_t> values, std::int64_t n_lo, std::int64_t n_hi,
                                       std::int64_t a_max, const PairWeight& weight);

} // namespace serial

namespace omp {

std::vector<std::uint64_t> correlate_direct(std::span<const std::uint64_t> values, std::uint64_t x,
                                            std::uint64_t a_lo, std::uint64_t a_hi);
std::vector<std::uint64_t> window_correlation(std::span<const std::uint64_t> values, std::uint64_t x,
                                              double lower, double h);
SelbergSums selberg_piecewise(const SelbergProblem& problem);
SelbergSums selberg_sampled(const SelbergProblem& problem, double step);
double simpson(const std::function<double(double)>& f, double lo, double hi, std::int64_t n_panels);
std::complex<double> weighted_pair_sum(std::span<const std::uint64_t> values, std::int64_t n_lo, std::int64_t n_hi,
                                       std::int64_t a_max, const PairWeight& weight);

} // namespace omp

/// Deterministic chunked reduction: `partial(lo, hi)` sums indices [lo, hi).
template <typename Acc, typename Partial>
Acc chunked_reduce(std::int64_t begin, std::int64_t end, Partial&& partial) {
  const std::int64_t n = end - begin;
  if (n <= 0) return Acc{};
  const std::int64_t chunks = std::min<std::int64_t>(kReductionChunks, n);
  std::vector<Acc> parts(static_cast<std::size_t>(chunks));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = begin + n * c / chunks;
    const std::int64_t hi = begin + n * (c + 1) / chunks;
    try {
      parts[static_cast<std::size_t>(c)] = partial(lo, hi);
    } catch (...) {
#pragma omp critical(divzeta_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Acc total{};
  for (const auto& p : parts) total += p;
  return total;
}

} // namespace divzeta::kernels
