#pragma once

#include "divzeta/divisor_sieve.hpp"
#include "divzeta/main_term.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace divzeta {

enum class CorrelationMode { direct, fft };

/// C_k(a) = sum_{n <= x} d_k(n) d_k(n + a) over a contiguous shift range,
/// optionally with the remainders Delta_k(x, a) = C_k(a) - x P_{2k-2}(log x).
struct CorrelationSeries {
  unsigned k = 0;
  std::uint64_t x = 0;
  std::uint64_t a_lo = 0;
  std::uint64_t a_hi = 0;
  CorrelationMode mode = CorrelationMode::direct;
  std::vector<std::uint64_t> values;  ///< values[a - a_lo]

  /// fft mode: largest |r - round(r)| over all limb products.
  double max_rounding_distance = 0.0;
  int fft_limbs = 0;

  // Filled by attach_deltas().
  std::vector<double> deltas;
  std::string provider_id;
  std::uint64_t q_cutoff = 0;
  double main_tail_bound = 0.0;
  /// k >= 3: the main term is not a theorem.
  bool conjectural = false;

  std::uint64_t at(std::uint64_t a) const;
  double delta_at(std::uint64_t a) const;
  bool has_deltas() const { return !deltas.empty(); }
};

/// Largest tolerated rounding distance in fft mode; limbs are chosen so the
/// a-priori error bound stays below it.
inline constexpr double kFftRoundingLimit = 0.25;

CorrelationSeries correlate(const DivisorTable& table, std::uint64_t x, std::uint64_t a_lo, std::uint64_t a_hi,
                            CorrelationMode mode);

/// Cross-correlation r[a] = sum_{0 <= i < u.size()} u[i] v[i + a] for 0 <= a <= max_lag,
/// exact, via real FFTs. Inputs are split into base-2^b limbs until the
/// floating-point error bound is under kFftRoundingLimit.
struct FftCorrelation {
  std::vector<std::uint64_t> lags;
  double max_rounding_distance = 0.0;
  int limbs = 1;
};
FftCorrelation fft_cross_correlate(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v,
                                   std::uint64_t max_lag);

/// Fills deltas with C_k(a) minus the main term for each shift.
void attach_deltas(CorrelationSeries& series, const CorrelationMainTerm& main_term);
CorrelationSeries delta(CorrelationSeries series, const CoefficientProvider& provider, std::uint64_t q_cutoff = 200);

/// C_k(-a) = sum_{n <= x} d_k(n) d_k(n - a) = sum_{n <= x - a} d_k(n) d_k(n + a), a >= 0.
std::uint64_t correlate_negative_shift(const DivisorTable& table, std::uint64_t x, std::uint64_t a);

const char* to_string(CorrelationMode mode);
CorrelationMode parse_correlation_mode(const std::string& text);

} // namespace divzeta
