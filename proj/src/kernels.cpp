#include "divzeta/kernels.hpp"

#include "divzeta/errors.hpp"

#include <algorithm>
#include <cmath>

namespace divzeta::kernels {

namespace {

constexpr double kGaussNodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                   0.8611363115940526};
constexpr double kGaussWeights[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                     0.3478548451374538};

void require_span(std::span<const std::uint64_t> values, std::uint64_t last_index) {
  if (last_index >= values.size()) throw RangeError("kernel: table too small for the requested range");
}

double interval_sum(const SelbergProblem& p, double t) {
  const auto hi = static_cast<std::size_t>(std::floor(t + p.h));
  const auto lo = static_cast<std::size_t>(std::floor(t));
  return static_cast<double>(p.prefix[hi] - p.prefix[lo]);
}

void add_segment(const SelbergProblem& p, double a, double b, SelbergSums& acc) {
  if (!(b > a)) return;
  const double s = interval_sum(p, 0.5 * (a + b));
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double int_m = 0.0, int_m2 = 0.0, int_j = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double m = p.expected(mid + half * kGaussNodes[i]);
    const double w = half * kGaussWeights[i];
    int_m += w * m;
    int_m2 += w * m * m;
    int_j += w * (s - m) * (s - m);
  }
  acc.j += int_j;
  acc.s_sq += s * s * (b - a);
  acc.s_m += s * int_m;
  acc.m_sq += int_m2;
  ++acc.segments;
}

// Unit cells [m, m + 1) for m in [m_lo, m_hi), clipped to [lower, upper].
SelbergSums selberg_cells(const SelbergProblem& p, std::int64_t m_lo, std::int64_t m_hi) {
  const double offset = std::ceil(p.h) - p.h;  // fractional position of the Z - h breakpoints
  SelbergSums acc;
  for (std::int64_t m = m_lo; m < m_hi; ++m) {
    const double c0 = std::max(static_cast<double>(m), p.lower);
    const double c1 = std::min(static_cast<double>(m + 1), p.upper);
    if (!(c1 > c0)) continue;
    const double split = static_cast<double>(m) + offset;
    if (offset > 0.0 && split > c0 && split < c1) {
      add_segment(p, c0, split, acc);
      add_segment(p, split, c1, acc);
    } else {
      add_segment(p, c0, c1, acc);
    }
  }
  return acc;
}

void check_problem(const SelbergProblem& p) {
  if (!(p.h > 0.0) || !(p.lower > 0.0) || !(p.upper > p.lower))
    throw DomainError("selberg kernel: need h > 0 and 0 < lower < upper");
  if (static_cast<double>(p.prefix.size()) <= std::floor(p.upper + p.h))
    throw RangeError("selberg kernel: prefix table does not cover upper + h");
}

struct SampledGrid {
  std::int64_t n;
  double step;
};

SampledGrid sampled_grid(const SelbergProblem& p, double step) {
  if (!(step > 0.0)) throw DomainError("selberg_sampled: step must be > 0");
  const auto n = std::max<std::int64_t>(1, std::llround((p.upper - p.lower) / step));
  return {n, (p.upper - p.lower) / static_cast<double>(n)};
}

SelbergSums sampled_range(const SelbergProblem& p, const SampledGrid& g, std::int64_t lo, std::int64_t hi) {
  SelbergSums acc;
  for (std::int64_t i = lo; i < hi; ++i) {
    const double t = p.lower + (static_cast<double>(i) + 0.5) * g.step;
    const double s = interval_sum(p, t);
    const double m = p.expected(t);
    acc.j += (s - m) * (s - m) * g.step;
    acc.s_sq += s * s * g.step;
    acc.s_m += s * m * g.step;
    acc.m_sq += m * m * g.step;
    ++acc.segments;
  }
  return acc;
}

double simpson_weight(std::int64_t i, std::int64_t n) {
  if (i == 0 || i == n) return 1.0;
  return (i % 2) ? 4.0 : 2.0;
}

void check_simpson(double lo, double hi, std::int64_t n_panels) {
  if (n_panels < 2 || n_panels % 2 != 0) throw DomainError("simpson: n_panels must be even and >= 2");
  if (!(hi >= lo)) throw DomainError("simpson: need hi >= lo");
}

std::complex<double> pair_range(std::span<const std::uint64_t> values, std::int64_t n_from, std::int64_t n_to,
                                std::int64_t a_max, const PairWeight& weight) {
  std::complex<double> acc = 0.0;
  for (std::int64_t n = n_from; n < n_to; ++n) {
    const double dn = static_cast<double>(values[static_cast<std::size_t>(n)]);
    for (std::int64_t a = 0; a <= a_max; ++a) {
      const double prod = dn * static_cast<double>(values[static_cast<std::size_t>(n + a)]);
      acc += prod * weight(a, n);
    }
  }
  return acc;
}

} // namespace

// ---------------------------------------------------------------------------
namespace serial {

std::vector<std::uint64_t> correlate_direct(std::span<const std::uint64_t> values, std::uint64_t x,
                                            std::uint64_t a_lo, std::uint64_t a_hi) {
  if (a_hi < a_lo) return {};
  require_span(values, x + a_hi);
  std::vector<std::uint64_t> out(a_hi - a_lo + 1, 0);
  for (std::uint64_t a = a_lo; a <= a_hi; ++a) {
    std::uint64_t sum = 0;
    for (std::uint64_t n = 1; n <= x; ++n) sum += values[n] * values[n + a];
    out[a - a_lo] = sum;
  }
  return out;
}

std::vector<std::uint64_t> window_correlation(std::span<const std::uint64_t> values, std::uint64_t x,
                                              double lower, double h) {
  const auto a_count = static_cast<std::uint64_t>(std::ceil(h));
  if (a_count == 0) return {};
  require_span(values, x + a_count - 1);
  std::vector<std::uint64_t> out(a_count, 0);
  for (std::uint64_t a = 0; a < a_count; ++a) {
    const double first = std::ceil(lower + h - static_cast<double>(a));
    const std::uint64_t n_lo = first < 1.0 ? 1 : static_cast<std::uint64_t>(first);
    std::uint64_t sum = 0;
    for (std::uint64_t n = n_lo; n <= x; ++n) sum += values[n] * values[n + a];
    out[a] = sum;
  }
  return out;
}

SelbergSums selberg_piecewise(const SelbergProblem& problem) {
  check_problem(problem);
  return selberg_cells(problem, static_cast<std::int64_t>(std::floor(problem.lower)),
                       static_cast<std::int64_t>(std::ceil(problem.upper)));
}

SelbergSums selberg_sampled(const SelbergProblem& problem, double step) {
  check_problem(problem);
  const SampledGrid g = sampled_grid(problem, step);
  return sampled_range(problem, g, 0, g.n);
}

double simpson(const std::function<double(double)>& f, double lo, double hi, std::int64_t n_panels) {
  check_simpson(lo, hi, n_panels);
  const double width = (hi - lo) / static_cast<double>(n_panels);
  double sum = 0.0;
  for (std::int64_t i = 0; i <= n_panels; ++i)
    sum += simpson_weight(i, n_panels) * f(lo + width * static_cast<double>(i));
  return sum * width / 3.0;
}

std::complex<double> weighted_pair_sum(std::span<const std::uint64_t> values, std::int64_t n_lo, std::int64_t n_hi,
                                       std::int64_t a_max, const PairWeight& weight) {
  if (n_hi <= n_lo) return 0.0;
  require_span(values, static_cast<std::uint64_t>(n_hi + a_max));
  return pair_range(values, n_lo + 1, n_hi + 1, a_max, weight);
}

} // namespace serial

// ---------------------------------------------------------------------------
namespace omp {

std::vector<std::uint64_t> correlate_direct(std::span<const std::uint64_t> values, std::uint64_t x,
                                            std::uint64_t a_lo, std::uint64_t a_hi) {
  if (a_hi < a_lo) return {};
  require_span(values, x + a_hi);
  const auto count = static_cast<std::int64_t>(a_hi - a_lo + 1);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(count), 0);
  const std::uint64_t* v = values.data();
  // integer sums are order independent; no chunking needed
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t a = a_lo + static_cast<std::uint64_t>(i);
    std::uint64_t sum = 0;
#pragma omp simd reduction(+ : sum)
    for (std::uint64_t n = 1; n <= x; ++n) sum += v[n] * v[n + a];
    out[static_cast<std::size_t>(i)] = sum;
  }
  return out;
}

std::vector<std::uint64_t> window_correlation(std::span<const std::uint64_t> values, std::uint64_t x,
                                              double lower, double h) {
  const auto a_count = static_cast<std::int64_t>(std::ceil(h));
  if (a_count <= 0) return {};
  require_span(values, x + static_cast<std::uint64_t>(a_count) - 1);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(a_count), 0);
  const std::uint64_t* v = values.data();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a = 0; a < a_count; ++a) {
    const double first = std::ceil(lower + h - static_cast<double>(a));
    const std::uint64_t n_lo = first < 1.0 ? 1 : static_cast<std::uint64_t>(first);
    const auto shift = static_cast<std::uint64_t>(a);
    std::uint64_t sum = 0;
#pragma omp simd reduction(+ : sum)
    for (std::uint64_t n = n_lo; n <= x; ++n) sum += v[n] * v[n + shift];
    out[static_cast<std::size_t>(a)] = sum;
  }
  return out;
}

SelbergSums selberg_piecewise(const SelbergProblem& problem) {
  check_problem(problem);
  return chunked_reduce<SelbergSums>(static_cast<std::int64_t>(std::floor(problem.lower)),
                                     static_cast<std::int64_t>(std::ceil(problem.upper)),
                                     [&](std::int64_t lo, std::int64_t hi) { return selberg_cells(problem, lo, hi); });
}

SelbergSums selberg_sampled(const SelbergProblem& problem, double step) {
  check_problem(problem);
  const SampledGrid g = sampled_grid(problem, step);
  return chunked_reduce<SelbergSums>(
      0, g.n, [&](std::int64_t lo, std::int64_t hi) { return sampled_range(problem, g, lo, hi); });
}

double simpson(const std::function<double(double)>& f, double lo, double hi, std::int64_t n_panels) {
  check_simpson(lo, hi, n_panels);
  const double width = (hi - lo) / static_cast<double>(n_panels);
  const double sum = chunked_reduce<double>(0, n_panels + 1, [&](std::int64_t a, std::int64_t b) {
    double s = 0.0;
    for (std::int64_t i = a; i < b; ++i) s += simpson_weight(i, n_panels) * f(lo + width * static_cast<double>(i));
    return s;
  });
  return sum * width / 3.0;
}

std::complex<double> weighted_pair_sum(std::span<const std::uint64_t> values, std::int64_t n_lo, std::int64_t n_hi,
                                       std::int64_t a_max, const PairWeight& weight) {
  if (n_hi <= n_lo) return 0.0;
  require_span(values, static_cast<std::uint64_t>(n_hi + a_max));
  return chunked_reduce<std::complex<double>>(n_lo + 1, n_hi + 1, [&](std::int64_t lo, std::int64_t hi) {
    return pair_range(values, lo, hi, a_max, weight);
  });
}

} // namespace omp

} // namespace divzeta::kernels
