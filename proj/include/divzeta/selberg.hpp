#pragma once

#include "divzeta/correlation.hpp"
#include "divzeta/divisor_sieve.hpp"
#include "divzeta/kernels.hpp"
#include "divzeta/main_term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace divzeta {

enum class SelbergMode { exact_piecewise, sampled };

const char* to_string(SelbergMode mode);
SelbergMode parse_selberg_mode(const std::string& text);

struct SelbergOptions {
  double step = 0.01;  ///< sampled mode
  /// Exponent c of the trivial bound x h^2 (log x)^c; defaults to 2k - 1.
  std::optional<double> trivial_exponent;
  /// Also run the other mode and record the relative disagreement.
  bool cross_check = false;
};

/// J_k(x, h) = int_{h x^eps}^{x} |sum_{t < n <= t+h} d_k(n) - M_k(t, h)|^2 dt.
struct SelbergResult {
  unsigned k = 0;
  double x = 0.0;
  double h = 0.0;
  double epsilon = 0.0;
  double lower_limit = 0.0;
  double value = 0.0;
  SelbergMode mode = SelbergMode::exact_piecewise;
  double step = 0.0;
  double trivial_exponent = 0.0;
  double trivial_bound = 0.0;
  kernels::SelbergSums sums;
  /// |J_piecewise - J_sampled| / J_piecewise when cross-checked, else NaN.
  double mode_disagreement = 0.0;
  bool within_trivial_bound() const { return value <= trivial_bound; }
};

/// Prefix sums D(n) = sum_{m <= n} d_k(m), D(0) = 0.
std::vector<std::uint64_t> prefix_sums(const DivisorTable& table);

SelbergResult selberg_integral(const DivisorTable& table, double x, double h, double epsilon,
                               SelbergMode mode = SelbergMode::exact_piecewise, const SelbergOptions& options = {});

/// Both sides of the dispersion identity on actual data.
///
///   lhs        = J_k(x, h)
///   quad_form  = int S(t)^2 dt over the window
///   window_sum = sum_{|a| < h} S(a) C_window(a), pairs whose overlap interval
///                lies inside [h x^eps, x]
///   boundary   = quad_form - window_sum (pairs straddling either end)
///   rhs_full   = window_sum - int M_k(t, h)^2 dt
///   rhs_delta  = sum_{|a| < h} S(a) Delta_k(x, a) with global correlations
///   eq1_sum    = sum_{|a| < h} S(a) x P_{2k-2}(log x; a)
///   eq1_main   = h^2 int_{h x^eps}^x R_k(1, log t)^2 dt
struct DispersionRecord {
  unsigned k = 0;
  double x = 0.0;
  double h = 0.0;
  double lower_limit = 0.0;
  double lhs = 0.0;
  double quad_form = 0.0;
  double window_sum = 0.0;
  double boundary = 0.0;
  double int_m_sq = 0.0;
  double rhs_full = 0.0;
  double rhs_delta = 0.0;
  double eq1_sum = 0.0;
  double eq1_main = 0.0;
  std::uint64_t max_dk = 0;
  double residual = 0.0;           ///< |lhs - rhs_full|
  double tail_budget = 0.0;        ///< 4 h^2 (max d_k)^2
  double diagonal_budget = 0.0;    ///< x h
  double budget() const { return tail_budget + diagonal_budget; }
  bool within_budget() const { return residual <= budget(); }
  bool has_delta = false;
  std::string provider_id;
};

/// `provider` may be null: the Delta-side quantities are then left at zero
/// with has_delta = false.
DispersionRecord dispersion_decompose(const DivisorTable& table, double x, double h, double epsilon,
                                      const CoefficientProvider* provider, std::uint64_t q_cutoff = 200);

/// The summation-exchange chain behind the double-average statistic.
struct DoubleSumCheck {
  unsigned k = 0;
  std::uint64_t x = 0;
  std::uint64_t t = 0;
  double total = 0.0;           ///< (1/t) sum_{h<=t} sum_{a<=t} Delta
  double mean_part = 0.0;       ///< (1/t) sum_{h<=t} sum_{a<=h} Delta
  double double_part = 0.0;     ///< (1/t) sum_{h<=t} sum_{h<a<=t} Delta
  double exchanged = 0.0;       ///< (1/t) sum_{a<=t} (t - a + 1) Delta
  double cesaro = 0.0;          ///< (1/t) sum (t-a) Delta + (1/t) sum Delta
  double split_residual = 0.0;  ///< total - mean_part - double_part
  double exchange_residual = 0.0;
  bool weights_exact = false;   ///< integer coefficient of every Delta(a) matches t - a + 1
  bool correlation_exact = false;  ///< the same rearrangement on integer C_k(a), in 128-bit arithmetic
  double symmetric = 0.0;       ///< sum_{0<=|a|<=t} (t - |a|) Delta_k(x, a)
  double selberg = 0.0;         ///< J_k(x, t)
  double symmetric_residual = 0.0;
  double diagonal = 0.0;        ///< Delta_k(x, 0)
  double max_tail = 0.0;        ///< max_a |Delta_k(x,-a) - Delta_k(x,a)|
  double diagonal_budget = 0.0; ///< t x (log x)^{k^2 - 1}
  double tail_budget = 0.0;     ///< t^3 (max d_k)^2
  bool within_budget() const { return symmetric_residual <= diagonal_budget + tail_budget; }
};

DoubleSumCheck double_sum_identity_check(const DivisorTable& table, std::uint64_t x, std::uint64_t t,
                                         const CoefficientProvider& provider, std::uint64_t q_cutoff = 200,
                                         double epsilon = 0.05);

struct GridSpec {
  unsigned x_points = 8;
  unsigned t_points = 8;
};

struct GTildeProbe {
  std::uint64_t x = 0;
  std::uint64_t t = 0;
  double j_part = 0.0;      ///< J_k(x, t) / t
  double delta_part = 0.0;  ///< |sum_{h<=t} sum_{h<a<=t} Delta_k(x, a)| / t
  double trivial_j_bound = 0.0;  ///< trivial bound on J_k(x, t), divided by t
  double total() const { return j_part + delta_part; }
};

struct DoubleAverageReport {
  unsigned k = 0;
  double M = 0.0;
  double M_prime = 0.0;
  double T = 0.0;
  double epsilon = 0.0;
  double H = 0.0;
  std::string provider_id;
  std::uint64_t q_cutoff = 0;
  GridSpec grid;
  std::vector<GTildeProbe> probes;
  double g_tilde = 0.0;   ///< max over the grid; a lower bound for the true sup
  double j_part = 0.0;    ///< components at the arg-sup
  double delta_part = 0.0;
  std::uint64_t argsup_x = 0;
  std::uint64_t argsup_t = 0;
  double tails_estimate = 0.0;  ///< H^2
  double theorem_side = 0.0;    ///< T (1 + g_tilde / M)
  bool conjectural = false;
};

/// Table length needed by g_tilde for these parameters.
std::uint64_t g_tilde_table_size(double M_prime, double M, double T, double epsilon);

DoubleAverageReport g_tilde(const DivisorTable& table, double M, double M_prime, double T, double epsilon,
                            const CoefficientProvider& provider, std::uint64_t q_cutoff = 200,
                            const GridSpec& grid = {});

} // namespace divzeta
