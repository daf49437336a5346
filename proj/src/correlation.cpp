#include "divzeta/correlation.hpp"

#include "divzeta/errors.hpp"
#include "divzeta/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>

#include <fftw3.h>
#include <fmt/format.h>

namespace divzeta {

std::uint64_t CorrelationSeries::at(std::uint64_t a) const {
  if (a < a_lo || a > a_hi) throw RangeError(fmt::format("CorrelationSeries: shift {} outside [{}, {}]", a, a_lo, a_hi));
  return values[a - a_lo];
}

double CorrelationSeries::delta_at(std::uint64_t a) const {
  if (!has_deltas()) throw DomainError("CorrelationSeries: no main term attached");
  if (a < a_lo || a > a_hi) throw RangeError(fmt::format("CorrelationSeries: shift {} outside [{}, {}]", a, a_lo, a_hi));
  return deltas[a - a_lo];
}

const char* to_string(CorrelationMode mode) { return mode == CorrelationMode::fft ? "fft" : "direct"; }

CorrelationMode parse_correlation_mode(const std::string& text) {
  if (text == "direct") return CorrelationMode::direct;
  if (text == "fft") return CorrelationMode::fft;
  throw DomainError("unknown correlation mode '" + text + "'");
}

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

RealBuffer alloc_real(std::size_t n) { return RealBuffer(fftw_alloc_real(n)); }
ComplexBuffer alloc_complex(std::size_t n) { return ComplexBuffer(fftw_alloc_complex(n)); }

double limb_norm(std::span<const std::uint64_t> x, int shift, std::uint64_t mask) {
  long double s = 0.0L;
  for (auto v : x) {
    const auto limb = static_cast<long double>((v >> shift) & mask);
    s += limb * limb;
  }
  return static_cast<double>(std::sqrt(s));
}

} // namespace

FftCorrelation fft_cross_correlate(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v,
                                   std::uint64_t max_lag) {
  if (u.empty()) return {std::vector<std::uint64_t>(max_lag + 1, 0), 0.0, 1};
  if (v.size() < u.size() + max_lag) throw RangeError("fft_cross_correlate: v too short for the requested lags");
  v = v.first(u.size() + max_lag);

  const std::size_t n = std::bit_ceil(u.size() + max_lag + 1);
  const std::size_t spectrum = n / 2 + 1;
  const double log_n = std::log2(static_cast<double>(n));

  std::uint64_t peak = 0;
  for (auto x : u) peak = std::max(peak, x);
  for (auto x : v) peak = std::max(peak, x);
  const int total_bits = std::max(1, static_cast<int>(std::bit_width(peak)));

  // Smallest limb count whose error bound clears the rounding limit.
  constexpr double kErrorConstant = 3.0;
  constexpr int kMaxLimbs = 6;
  int limbs = 0, bits = 0;
  for (int l = 1; l <= kMaxLimbs; ++l) {
    const int b = (total_bits + l - 1) / l;
    const std::uint64_t mask = b >= 64 ? ~0ull : ((1ull << b) - 1);
    std::vector<double> nu(l), nv(l);
    for (int i = 0; i < l; ++i) {
      nu[i] = limb_norm(u, i * b, mask);
      nv[i] = limb_norm(v, i * b, mask);
    }
    double worst = 0.0;
    for (int s = 0; s <= 2 * (l - 1); ++s) {
      double bound = 0.0;
      for (int i = std::max(0, s - l + 1); i <= std::min(s, l - 1); ++i) bound += nu[i] * nv[s - i];
      worst = std::max(worst, kErrorConstant * std::numeric_limits<double>::epsilon() * log_n * bound);
    }
    if (worst < kFftRoundingLimit) {
      limbs = l;
      bits = b;
      break;
    }
  }
  if (limbs == 0)
    throw ConsistencyError(fmt::format("fft_cross_correlate: no limb split up to {} keeps the rounding error below {}",
                                       kMaxLimbs, kFftRoundingLimit));
  const std::uint64_t mask = bits >= 64 ? ~0ull : ((1ull << bits) - 1);

  RealBuffer real = alloc_real(n);
  std::vector<ComplexBuffer> spec_u, spec_v;
  ComplexBuffer product = alloc_complex(spectrum);
  Plan forward, backward;
  {
    std::lock_guard lock(fftw_planner_mutex());
    // FFTW_ESTIMATE keeps plans, and therefore rounding, reproducible.
    forward.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), real.get(), product.get(), FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), product.get(), real.get(), FFTW_ESTIMATE));
  }

  auto transform = [&](std::span<const std::uint64_t> x, int limb) {
    std::fill(real.get(), real.get() + n, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) real[i] = static_cast<double>((x[i] >> (limb * bits)) & mask);
    ComplexBuffer out = alloc_complex(spectrum);
    fftw_execute_dft_r2c(forward.get(), real.get(), out.get());
    return out;
  };
  for (int i = 0; i < limbs; ++i) {
    spec_u.push_back(transform(u, i));
    spec_v.push_back(transform(v, i));
  }

  FftCorrelation result;
  result.limbs = limbs;
  result.lags.assign(max_lag + 1, 0);
  const double scale = 1.0 / static_cast<double>(n);
  for (int s = 0; s <= 2 * (limbs - 1); ++s) {
    std::fill(reinterpret_cast<double*>(product.get()), reinterpret_cast<double*>(product.get()) + 2 * spectrum, 0.0);
    for (int i = std::max(0, s - limbs + 1); i <= std::min(s, limbs - 1); ++i) {
      const fftw_complex* a = spec_u[i].get();
      const fftw_complex* b = spec_v[s - i].get();
      for (std::size_t f = 0; f < spectrum; ++f) {
        // conj(U) V
        product[f][0] += a[f][0] * b[f][0] + a[f][1] * b[f][1];
        product[f][1] += a[f][0] * b[f][1] - a[f][1] * b[f][0];
      }
    }
    fftw_execute_dft_c2r(backward.get(), product.get(), real.get());
    for (std::uint64_t lag = 0; lag <= max_lag; ++lag) {
      const double r = real[lag] * scale;
      const double nearest = std::round(r);
      result.max_rounding_distance = std::max(result.max_rounding_distance, std::abs(r - nearest));
      result.lags[lag] += static_cast<std::uint64_t>(std::max(nearest, 0.0)) << (s * bits);
    }
  }
  if (result.max_rounding_distance > kFftRoundingLimit)
    throw ConsistencyError(fmt::format("fft_cross_correlate: rounding distance {} exceeds {}",
                                       result.max_rounding_distance, kFftRoundingLimit));
  return result;
}

CorrelationSeries correlate(const DivisorTable& table, std::uint64_t x, std::uint64_t a_lo, std::uint64_t a_hi,
                            CorrelationMode mode) {
  if (x == 0) throw DomainError("correlate: x must be >= 1");
  if (a_hi < a_lo) throw DomainError("correlate: empty shift range");
  if (x + a_hi > table.n_max())
    throw RangeError(fmt::format("correlate: x + max shift = {} exceeds table n_max = {}", x + a_hi, table.n_max()));

  CorrelationSeries out;
  out.k = table.k();
  out.x = x;
  out.a_lo = a_lo;
  out.a_hi = a_hi;
  out.mode = mode;

  const auto values = table.values();
  if (mode == CorrelationMode::direct) {
    out.values = kernels::omp::correlate_direct(values, x, a_lo, a_hi);
    return out;
  }

  const auto u = values.subspan(1, x);
  const auto v = values.subspan(1, x + a_hi);
  FftCorrelation fc = fft_cross_correlate(u, v, a_hi);
  out.values.assign(fc.lags.begin() + static_cast<std::ptrdiff_t>(a_lo), fc.lags.end());
  out.max_rounding_distance = fc.max_rounding_distance;
  out.fft_limbs = fc.limbs;
  return out;
}

std::uint64_t correlate_negative_shift(const DivisorTable& table, std::uint64_t x, std::uint64_t a) {
  if (x > table.n_max()) throw RangeError("correlate_negative_shift: x exceeds table");
  if (a >= x) return 0;
  const auto v = table.values();
  std::uint64_t sum = 0;
  for (std::uint64_t n = 1; n + a <= x; ++n) sum += v[n] * v[n + a];
  return sum;
}

void attach_deltas(CorrelationSeries& series, const CorrelationMainTerm& main_term) {
  if (main_term.k() != series.k) throw DomainError("attach_deltas: main term built for a different k");
  if (main_term.x() != static_cast<double>(series.x)) throw DomainError("attach_deltas: main term built for a different x");
  series.deltas.resize(series.values.size());
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const auto a = static_cast<std::int64_t>(series.a_lo + i);
    series.deltas[i] = static_cast<double>(series.values[i]) - main_term(a);
  }
  series.provider_id = main_term.provider_id();
  series.q_cutoff = main_term.q_cutoff();
  series.main_tail_bound = main_term.tail_bound();
  series.conjectural = series.k >= 3;
}

CorrelationSeries delta(CorrelationSeries series, const CoefficientProvider& provider, std::uint64_t q_cutoff) {
  const CorrelationMainTerm main_term(series.k, static_cast<double>(series.x), q_cutoff, provider);
  attach_deltas(series, main_term);
  return series;
}

} // namespace divzeta
