#include "divzeta/moments.hpp"

#include "divzeta/errors.hpp"
#include "divzeta/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

namespace divzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOnLineCeiling = 1e5;

std::int64_t simpson_panels(double T, double step) {
  const auto n = static_cast<std::int64_t>(std::ceil(T / step));
  return std::max<std::int64_t>(2, n + (n % 2));
}

MomentEstimate run_moment(unsigned k, double sigma, double T, double step, const std::function<double(double)>& f) {
  MomentEstimate m;
  m.k = k;
  m.T = T;
  m.sigma = sigma;
  m.step = step;
  if (T == 0.0) return m;
  const std::int64_t n = simpson_panels(T, step);
  m.step = T / static_cast<double>(n);
  m.value = kernels::omp::simpson(f, 0.0, T, n);
  m.error_estimate = std::abs(kernels::omp::simpson(f, 0.0, T, 2 * n) - m.value);
  return m;
}

void check_moment_args(unsigned k, double T, double step) {
  if (k == 0) throw DomainError("moment: k must be >= 1");
  if (!(T >= 0.0)) throw DomainError("moment: T must be >= 0");
  if (!(step > 0.0)) throw DomainError("moment: step must be > 0");
}

} // namespace

double default_moment_step(double T) { return 0.05 / std::log(2.0 + T); }

double moment_integrand(unsigned k, double sigma, double t, const ZetaConfig& config) {
  const double z = sigma == 0.5 ? std::abs(zeta_critical(t, 1e-6, config)) : std::abs(zeta({sigma, t}, 1e-10));
  return std::pow(z, 2.0 * k);
}

MomentEstimate moment_on_line(unsigned k, double T, std::optional<double> step, const ZetaConfig& config) {
  const double h = step.value_or(default_moment_step(T));
  check_moment_args(k, T, h);
  if (T > kOnLineCeiling) throw DomainError(fmt::format("moment_on_line: T = {} above the ceiling {}", T, kOnLineCeiling));
  return run_moment(k, 0.5, T, h, [k, &config](double t) { return moment_integrand(k, 0.5, t, config); });
}

MomentEstimate moment_off_line(unsigned k, double sigma, double T, std::optional<double> step) {
  const double h = step.value_or(default_moment_step(T));
  check_moment_args(k, T, h);
  if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("moment_off_line: need 1/2 < sigma < 1");
  if (T > kOnLineCeiling) throw DomainError(fmt::format("moment_off_line: T = {} above the ceiling {}", T, kOnLineCeiling));
  return run_moment(k, sigma, T, h, [k, sigma](double t) { return moment_integrand(k, sigma, t); });
}

// ---------------------------------------------------------------------------

BumpFunction::BumpFunction(double T) : T_(T) {
  if (!(T > 0.0)) throw DomainError("BumpFunction: T must be positive");
}

double BumpFunction::smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double BumpFunction::operator()(double t) const {
  if (t <= support_lo() || t >= support_hi()) return 0.0;
  if (t < plateau_lo()) return smoothstep((t - support_lo()) / (plateau_lo() - support_lo()));
  if (t <= plateau_hi()) return 1.0;
  return smoothstep((support_hi() - t) / (support_hi() - plateau_hi()));
}

std::complex<double> BumpFunction::fourier(double omega) const {
  using boost::math::quadrature::gauss_kronrod;
  auto ramp = [&](double lo, double hi) {
    const double re = gauss_kronrod<double, 61>::integrate(
        [&](double t) { return (*this)(t) * std::cos(omega * t); }, lo, hi, 15, 1e-14);
    const double im = gauss_kronrod<double, 61>::integrate(
        [&](double t) { return (*this)(t) * std::sin(omega * t); }, lo, hi, 15, 1e-14);
    return std::complex<double>(re, im);
  };
  const double a = plateau_lo(), b = plateau_hi();
  std::complex<double> plateau;
  if (std::abs(omega) * (b - a) < 1e-8)
    plateau = (b - a) * std::polar(1.0, omega * (a + b) / 2.0);
  else
    plateau = (std::polar(1.0, omega * b) - std::polar(1.0, omega * a)) / std::complex<double>(0.0, omega);
  return ramp(support_lo(), a) + plateau + ramp(b, support_hi());
}

std::optional<CarlsonEntry> carlson_entry(unsigned k) {
  for (const auto& e : kCarlsonTable)
    if (e.k == k) return e;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

// Chebyshev interpolant of a complex function on [-w, w].
class ChebyshevSeries {
public:
  ChebyshevSeries(const std::function<std::complex<double>(double)>& f, double w, int degree) : w_(w) {
    std::vector<std::complex<double>> values(degree + 1);
    std::vector<double> nodes(degree + 1);
    for (int j = 0; j <= degree; ++j) nodes[j] = std::cos(kPi * j / degree);
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j <= degree; ++j) values[j] = f(w * nodes[j]);
    coeffs_.assign(degree + 1, 0.0);
    for (int m = 0; m <= degree; ++m) {
      std::complex<double> s = 0.0;
      for (int j = 0; j <= degree; ++j) {
        const double weight = (j == 0 || j == degree) ? 0.5 : 1.0;
        s += weight * values[j] * std::cos(kPi * m * j / degree);
      }
      coeffs_[m] = s * (2.0 / degree);
    }
    coeffs_.front() *= 0.5;
    coeffs_.back() *= 0.5;
  }

  std::complex<double> operator()(double omega) const {
    const double x = omega / w_;
    std::complex<double> b1 = 0.0, b2 = 0.0;
    for (std::size_t m = coeffs_.size(); m-- > 1;) {
      const std::complex<double> b0 = coeffs_[m] + 2.0 * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return coeffs_[0] + x * b1 - b2;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

private:
  double w_;
  std::vector<std::complex<double>> coeffs_;
};

} // namespace

SmoothedMoment smoothed_moment(const DivisorTable& table, double M, double M_prime, double T, double epsilon,
                               const SmoothedOptions& options) {
  if (!(M > 0.0 && T > 0.0)) throw DomainError("smoothed_moment: M and T must be positive");
  if (!(M < M_prime && M_prime <= 2.0 * M)) throw DomainError("smoothed_moment: need M < M' <= 2M");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("smoothed_moment: epsilon must lie in [0, 1)");

  SmoothedMoment out;
  out.k = table.k();
  out.M = M;
  out.M_prime = M_prime;
  out.T = T;
  out.epsilon = epsilon;
  out.H = std::pow(M, 1.0 + epsilon) / T;
  out.a_max = static_cast<std::int64_t>(std::floor(out.H));

  const auto n_lo = static_cast<std::int64_t>(std::floor(M));
  const auto n_hi = static_cast<std::int64_t>(std::floor(M_prime));
  if (static_cast<std::uint64_t>(n_hi + out.a_max) > table.n_max())
    throw RangeError(fmt::format("smoothed_moment: M' + H = {} exceeds table n_max = {}", n_hi + out.a_max, table.n_max()));

  const BumpFunction phi(T);
  const double w = std::max(static_cast<double>(out.a_max) / static_cast<double>(n_lo + 1), 1e-300);
  const auto F = [&phi](double omega) { return phi.fourier(omega); };
  const double scale = phi.integral();

  // Double the degree until the interpolant reproduces F at off-node points.
  std::optional<ChebyshevSeries> series;
  for (int degree = 16; degree <= 1024; degree *= 2) {
    ChebyshevSeries s(F, w, degree);
    double err = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double omega = w * std::cos(kPi * (i + 0.5 + 0.37 * (i % 3)) / 8.0);
      err = std::max(err, std::abs(s(omega) - F(omega)) / scale);
    }
    out.interpolation_error = err;
    if (err < options.interpolation_tolerance) {
      series.emplace(std::move(s));
      break;
    }
  }
  if (!series)
    throw NumericalError(fmt::format("smoothed_moment: F(omega) interpolant did not reach {} (last error {})",
                                     options.interpolation_tolerance, out.interpolation_error));
  out.chebyshev_nodes = series->degree() + 1;

  const auto values = table.values();
  const ChebyshevSeries& Fi = *series;
  const auto one_sided = kernels::omp::weighted_pair_sum(
      values, n_lo, n_hi, out.a_max, [&Fi](std::int64_t a, std::int64_t n) {
        return Fi(static_cast<double>(a) / static_cast<double>(n));
      });
  const auto symmetric = kernels::omp::weighted_pair_sum(
      values, n_lo, n_hi, out.a_max, [&Fi](std::int64_t a, std::int64_t n) {
        const double omega = static_cast<double>(a) / static_cast<double>(n);
        return a == 0 ? Fi(0.0) : Fi(omega) + Fi(-omega);
      });
  out.value = one_sided.real() / M;
  out.imag = one_sided.imag() / M;
  out.symmetrized_imag = std::abs(symmetric.imag()) / std::max(std::abs(symmetric.real()), 1e-300);
  return out;
}

// ---------------------------------------------------------------------------

double tail_figure(unsigned k, double T) { return std::pow(T, k / 2.0 - 1.0); }

bool tail_admissible(unsigned k) { return k / 2.0 - 1.0 <= 1.0; }

std::vector<double> theorem_m_grid(unsigned k, double T, double epsilon, unsigned m_points) {
  if (m_points == 0) throw DomainError("theorem_m_grid: need at least one M");
  const double lo = std::pow(T, 1.0 + epsilon);
  const double hi = std::max(std::pow(T, k / 2.0), lo);
  std::vector<double> grid;
  if (m_points == 1 || hi == lo) return {lo};
  for (unsigned i = 0; i < m_points; ++i) grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (m_points - 1)));
  return grid;
}

std::uint64_t theorem_report_table_size(unsigned k, double T, double epsilon, unsigned m_points) {
  std::uint64_t need = 0;
  for (double M : theorem_m_grid(k, T, epsilon, m_points)) need = std::max(need, g_tilde_table_size(2.0 * M, M, T, epsilon));
  return need;
}

TheoremReport theorem_report(unsigned k, double T, const DivisorTable& table, const CoefficientProvider& provider,
                             const TheoremReportOptions& options) {
  if (table.k() != k) throw DomainError("theorem_report: table built for a different k");
  const std::uint64_t need = theorem_report_table_size(k, T, options.epsilon, options.m_points);
  if (table.n_max() < need)
    throw RangeError(fmt::format("theorem_report: table n_max = {} is below the required {}", table.n_max(), need));

  TheoremReport r;
  r.k = k;
  r.T = T;
  r.epsilon = options.epsilon;
  r.lhs = moment_on_line(k, T, options.step);
  for (double M : theorem_m_grid(k, T, options.epsilon, options.m_points)) {
    r.m_grid.push_back(g_tilde(table, M, 2.0 * M, T, options.epsilon, provider, options.q_cutoff, options.grid));
    r.max_g_over_m = std::max(r.max_g_over_m, r.m_grid.back().g_tilde / M);
  }
  r.rhs_shape = T * (1.0 + r.max_g_over_m);
  r.tail_exponent = k / 2.0 - 1.0;
  r.tail_figure = tail_figure(k, T);
  r.admissible = tail_admissible(k);
  r.carlson = carlson_entry(k);
  r.conjectural = k >= 3;
  r.provider_id = provider.id();
  return r;
}

} // namespace divzeta
