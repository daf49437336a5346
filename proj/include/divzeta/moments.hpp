#pragma once

#include "divzeta/divisor_sieve.hpp"
#include "divzeta/main_term.hpp"
#include "divzeta/selberg.hpp"
#include "divzeta/zeta.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace divzeta {

struct MomentEstimate {
  unsigned k = 0;
  double T = 0.0;
  double sigma = 0.5;
  double value = 0.0;
  double step = 0.0;
  double error_estimate = 0.0;  ///< |I(step / 2) - I(step)|
};

/// 0.05 / log(2 + T): keeps several samples per mean zero spacing.
double default_moment_step(double T);

/// int_0^T |zeta(1/2 + it)|^{2k} dt by composite Simpson. T <= 1e5.
MomentEstimate moment_on_line(unsigned k, double T, std::optional<double> step = {}, const ZetaConfig& config = {});

/// int_0^T |zeta(sigma + it)|^{2k} dt, 1/2 < sigma < 1, Euler-Maclaurin integrand.
MomentEstimate moment_off_line(unsigned k, double sigma, double T, std::optional<double> step = {});

/// |zeta(sigma + it)|^{2k}
double moment_integrand(unsigned k, double sigma, double t, const ZetaConfig& config = {});

/// C^infinity bump: 0 outside (T/2, 2T), 1 on [3T/4, 4T/3], smoothstep
/// e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}) on the two ramps.
class BumpFunction {
public:
  explicit BumpFunction(double T);
  double T() const { return T_; }
  double operator()(double t) const;
  double support_lo() const { return 0.5 * T_; }
  double support_hi() const { return 2.0 * T_; }
  double plateau_lo() const { return 0.75 * T_; }
  double plateau_hi() const { return 4.0 * T_ / 3.0; }
  /// int phi = 25 T / 24 (each ramp contributes half its length).
  double integral() const { return 25.0 * T_ / 24.0; }
  /// int phi(t) e^{i omega t} dt by adaptive Gauss-Kronrod on the ramps and
  /// closed form on the plateau.
  std::complex<double> fourier(double omega) const;

  static double smoothstep(double x);

private:
  double T_;
};

struct CarlsonEntry {
  unsigned k;
  int theta_num;
  int theta_den;
  double theta() const { return static_cast<double>(theta_num) / theta_den; }
  /// theta = 2 sigma - 1
  double sigma() const { return (1.0 + theta()) / 2.0; }
};

inline constexpr std::array<CarlsonEntry, 3> kCarlsonTable{{{3, 1, 6}, {4, 1, 4}, {5, 11, 30}}};
std::optional<CarlsonEntry> carlson_entry(unsigned k);

struct SmoothedMoment {
  unsigned k = 0;
  double M = 0.0;
  double M_prime = 0.0;
  double T = 0.0;
  double epsilon = 0.0;
  double H = 0.0;           ///< shift range, M^{1+eps} / T
  std::int64_t a_max = 0;
  double value = 0.0;       ///< real part
  double imag = 0.0;        ///< imaginary part of the one-sided sum
  double symmetrized_imag = 0.0;  ///< |Im| of the +-a sum relative to its real part
  int chebyshev_nodes = 0;
  double interpolation_error = 0.0;  ///< max relative check error of the F(omega) interpolant
};

struct SmoothedOptions {
  /// Relative accuracy demanded of the F(omega) interpolant.
  double interpolation_tolerance = 1e-11;
};

/// (1/M) sum_{0<=a<=H} sum_{M<n<=M'} d_k(n) d_k(n+a) int phi(t) e^{ita/n} dt.
SmoothedMoment smoothed_moment(const DivisorTable& table, double M, double M_prime, double T, double epsilon,
                               const SmoothedOptions& options = {});

struct TheoremReportOptions {
  double epsilon = 0.05;
  unsigned m_points = 4;
  GridSpec grid;
  std::uint64_t q_cutoff = 200;
  std::optional<double> step;
};

struct TheoremReport {
  unsigned k = 0;
  double T = 0.0;
  double epsilon = 0.0;
  MomentEstimate lhs;
  std::vector<DoubleAverageReport> m_grid;
  double max_g_over_m = 0.0;
  double rhs_shape = 0.0;          ///< T (1 + max g_tilde / M)
  double tail_figure = 0.0;        ///< T^{k/2 - 1}
  double tail_exponent = 0.0;      ///< k/2 - 1
  bool admissible = false;         ///< tail figure << T, i.e. k <= 4
  std::optional<CarlsonEntry> carlson;
  bool conjectural = false;
  std::string provider_id;
};

/// M values of the report grid: logarithmic in [T^{1+eps}, max(T^{k/2}, T^{1+eps})].
std::vector<double> theorem_m_grid(unsigned k, double T, double epsilon, unsigned m_points);
std::uint64_t theorem_report_table_size(unsigned k, double T, double epsilon, unsigned m_points);

/// Tail figure T^{k/2-1} and whether it stays << T.
double tail_figure(unsigned k, double T);
bool tail_admissible(unsigned k);

TheoremReport theorem_report(unsigned k, double T, const DivisorTable& table, const CoefficientProvider& provider,
                             const TheoremReportOptions& options = {});

} // namespace divzeta
