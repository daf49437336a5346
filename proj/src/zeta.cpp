#include "divzeta/zeta.hpp"

#include "divzeta/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <fmt/format.h>

namespace divzeta {

namespace {

#include "riemann_siegel_coefficients.inc"

constexpr double kPi = std::numbers::pi;

template <std::size_t N>
double horner(const double (&c)[N], double w) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * w + c[i];
  return acc;
}

constexpr int kMaxBernoulli = 80;

// B_{2j} / (2j)!, j = 1 .. kMaxBernoulli
const std::array<double, kMaxBernoulli + 1>& bernoulli_ratios() {
  static const auto table = [] {
    std::array<double, kMaxBernoulli + 1> r{};
    for (int j = 1; j <= kMaxBernoulli; ++j)
      r[j] = boost::math::bernoulli_b2n<double>(j) / boost::math::factorial<double>(2 * j);
    return r;
  }();
  return table;
}

bool euler_maclaurin(std::complex<double> s, long n_terms, double accuracy, std::complex<double>& out) {
  using C = std::complex<double>;
  const double N = static_cast<double>(n_terms);
  C sum = 0.0;
  for (long n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const C n_pow = std::exp(-s * std::log(N));  // N^{-s}
  sum += n_pow * N / (s - 1.0) + 0.5 * n_pow;

  const auto& b = bernoulli_ratios();
  C rising = s;                     // s (s+1) ... (s+2j-2)
  C scale = n_pow / N;              // N^{-s-2j+1}
  double previous = INFINITY;
  for (int j = 1; j <= kMaxBernoulli; ++j) {
    if (j > 1) {
      rising *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
      scale /= N * N;
    }
    const C term = b[j] * rising * scale;
    const double size = std::abs(term);
    if (size > previous) return false;  // asymptotic series turned; need larger N
    sum += term;
    if (size < accuracy * 1e-2) {
      out = sum;
      return true;
    }
    previous = size;
  }
  return false;
}

} // namespace

std::complex<double> zeta(std::complex<double> s, double accuracy) {
  if (s == std::complex<double>(1.0, 0.0)) throw DomainError("zeta: pole at s = 1");
  if (!(accuracy > 0.0)) throw DomainError("zeta: accuracy must be positive");
  long n_terms = 15 + static_cast<long>(std::ceil(std::abs(s.imag()) / kPi));
  for (int attempt = 0; attempt < 6; ++attempt, n_terms *= 2) {
    std::complex<double> out;
    if (euler_maclaurin(s, n_terms, accuracy, out)) return out;
  }
  throw NumericalError(fmt::format("zeta: Euler-Maclaurin failed to reach {} at s = {}+{}i", accuracy, s.real(), s.imag()));
}

double riemann_siegel_theta(double t) {
  if (t < 10.0) throw DomainError("riemann_siegel_theta: asymptotic series needs t >= 10");
  const double t2 = t * t;
  return t / 2.0 * std::log(t / (2.0 * kPi)) - t / 2.0 - kPi / 8.0 +
         1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2) +
         127.0 / (430080.0 * t * t2 * t2 * t2);
}

double hardy_z_riemann_siegel(double t, double* error_estimate) {
  if (t < 10.0) throw DomainError("hardy_z_riemann_siegel: needs t >= 10");
  const double tau = std::sqrt(t / (2.0 * kPi));
  const auto n_main = static_cast<long>(std::floor(tau));
  const double theta = riemann_siegel_theta(t);

  double main = 0.0;
  for (long n = 1; n <= n_main; ++n) {
    const double ln = std::log(static_cast<double>(n));
    main += std::cos(theta - t * ln) / std::sqrt(static_cast<double>(n));
  }
  main *= 2.0;

  const double w = tau - static_cast<double>(n_main) - 0.5;
  const double u = 1.0 / tau;  // (t / 2 pi)^{-1/2}
  const double c[5] = {horner(kRiemannSiegelC0, w), horner(kRiemannSiegelC1, w), horner(kRiemannSiegelC2, w),
                       horner(kRiemannSiegelC3, w), horner(kRiemannSiegelC4, w)};
  double corr = 0.0, power = 1.0, last = 0.0;
  for (double ck : c) {
    last = ck * power;
    corr += last;
    power *= u;
  }
  const double sign = (n_main - 1) % 2 == 0 ? 1.0 : -1.0;
  const double pre = sign / std::sqrt(tau);  // (t/2pi)^{-1/4}
  if (error_estimate != nullptr) *error_estimate = std::abs(pre * last);
  return main + pre * corr;
}

double hardy_z(double t, const ZetaConfig& config) {
  if (t < 10.0) throw DomainError("hardy_z: needs t >= 10");
  if (t >= config.rs_threshold) return hardy_z_riemann_siegel(t);
  const double theta = riemann_siegel_theta(t);
  return (std::polar(1.0, theta) * zeta({0.5, t})).real();
}

std::complex<double> zeta_critical(double t, double accuracy, const ZetaConfig& config) {
  if (std::abs(t) > config.ceiling)
    throw NumericalError(fmt::format("zeta_critical: |t| = {} exceeds the configured ceiling {}", std::abs(t), config.ceiling));
  if (t < 0.0) return std::conj(zeta_critical(-t, accuracy, config));
  if (t < config.rs_threshold) return zeta({0.5, t}, accuracy);
  double err = 0.0;
  const double z = hardy_z_riemann_siegel(t, &err);
  if (err > accuracy) {
    // corrections not yet small enough; Euler-Maclaurin is still affordable here
    if (t <= 1e5) return zeta({0.5, t}, accuracy);
    throw NumericalError(fmt::format("zeta_critical: accuracy {} unreachable at t = {}", accuracy, t));
  }
  return std::polar(z, -riemann_siegel_theta(t));
}

} // namespace divzeta
