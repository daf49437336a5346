#include "divzeta/errors.hpp"
#include "divzeta/moments.hpp"
#include "divzeta/zeta.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace divzeta;

TEST_SUITE("moments") {

TEST_CASE("on the critical line") {
  CHECK(moment_on_line(1, 0.0).value == 0.0);
  const auto a = moment_on_line(1, 500.0);
  const auto b = moment_on_line(1, 1000.0);
  CHECK(a.value > 0.0);
  CHECK(b.value > a.value);
  CHECK(a.error_estimate <= 1e-6 * a.value);

  const auto fine = moment_on_line(2, 800.0, default_moment_step(800.0) / 2);
  const auto coarse = moment_on_line(2, 800.0);
  CHECK(std::abs(fine.value - coarse.value) <= 1e-3 * fine.value);

  // |zeta(1/2 + it)| is even in t, so the integrand sampled on [-T, 0] mirrors [0, T].
  for (double t : {3.0, 55.5, 321.0}) CHECK(moment_integrand(2, 0.5, -t) == doctest::Approx(moment_integrand(2, 0.5, t)));
}

TEST_CASE("mean square against the classical formula") {
  const double T = 2000;
  const auto r = moment_on_line(1, T);
  const double classical = T * std::log(T / (2 * std::numbers::pi)) + (2 * std::numbers::egamma - 1) * T;
  CHECK(std::abs(r.value / classical - 1) <= 0.01);
}

TEST_CASE("off the line") {
  const auto r = moment_off_line(1, 0.9, 600.0);
  const double z18 = zeta({1.8, 0.0}).real();
  CHECK(r.value / 600.0 == doctest::Approx(z18).epsilon(0.05));

  const double t1 = moment_off_line(1, 0.75, 500.0).value / 500.0;
  const double t2 = moment_off_line(1, 0.75, 1000.0).value / 1000.0;
  CHECK(t2 / t1 <= 1.2);
  CHECK(t2 / t1 >= 0.8);

  CHECK_THROWS_AS(moment_off_line(1, 0.5, 100.0), DomainError);
  CHECK_THROWS_AS(moment_on_line(1, 2e5), DomainError);
  CHECK_THROWS_AS(moment_on_line(0, 10.0), DomainError);
}

TEST_CASE("bump function") {
  const BumpFunction phi(120.0);
  CHECK(phi(59.0) == 0.0);
  CHECK(phi(241.0) == 0.0);
  CHECK(phi(90.0) == 1.0);
  CHECK(phi(160.0) == 1.0);
  for (double t = 50.0; t <= 250.0; t += 0.7) {
    CHECK(phi(t) >= 0.0);
    CHECK(phi(t) <= 1.0);
  }
  CHECK(BumpFunction::smoothstep(0.5) == doctest::Approx(0.5));
  CHECK(BumpFunction::smoothstep(0.2) + BumpFunction::smoothstep(0.8) == doctest::Approx(1.0));
  // Continuity at the junctions.
  CHECK(phi(60.0 + 1e-6) <= 1e-12);
  CHECK(phi(90.0 - 1e-6) >= 1 - 1e-12);
  CHECK(phi(160.0 + 1e-6) >= 1 - 1e-12);
  CHECK(phi(240.0 - 1e-6) <= 1e-12);

  // Integral by independent Simpson.
  const int n = 20000;
  const double lo = phi.support_lo(), hi = phi.support_hi(), hstep = (hi - lo) / n;
  double s = phi(lo) + phi(hi);
  for (int i = 1; i < n; ++i) s += phi(lo + i * hstep) * (i % 2 ? 4 : 2);
  CHECK(s * hstep / 3 == doctest::Approx(25.0 * 120.0 / 24).epsilon(1e-9));
  CHECK(phi.integral() == doctest::Approx(125.0));

  // Derivatives scale like 1/T: the steepest slope times T is T-independent.
  auto max_slope = [](double T) {
    const BumpFunction f(T);
    double best = 0.0;
    const double d = T * 1e-5;
    for (double t = 0.5 * T; t < 0.75 * T; t += T * 1e-3) best = std::max(best, std::abs(f(t + d) - f(t - d)) / (2 * d));
    return best * T;
  };
  CHECK(max_slope(10.0) == doctest::Approx(max_slope(1000.0)).epsilon(1e-6));
}

TEST_CASE("bump transform") {
  const BumpFunction phi(40.0);
  CHECK(phi.fourier(0.0).real() == doctest::Approx(phi.integral()).epsilon(1e-12));
  CHECK(std::abs(phi.fourier(0.0).imag()) <= 1e-12);
  for (double w : {0.01, 0.2, 1.3}) {
    const auto a = phi.fourier(w), b = phi.fourier(-w);
    CHECK(std::abs(a - std::conj(b)) <= 1e-10);
    // Direct Simpson on the support.
    const int n = 40000;
    const double lo = phi.support_lo(), hi = phi.support_hi(), hstep = (hi - lo) / n;
    std::complex<double> s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = lo + i * hstep;
      const double wgt = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      s += wgt * phi(t) * std::polar(1.0, w * t);
    }
    s *= hstep / 3;
    CHECK(std::abs(a - s) <= 1e-8);
  }
}

TEST_CASE("smoothed moment") {
  SUBCASE("no shifts") {
    const auto t = sieve_dk(2, 400);
    const auto r = smoothed_moment(t, 100, 200, 200, 0.05);
    CHECK(r.a_max == 0);
    double sq = 0.0;
    for (std::uint64_t n = 101; n <= 200; ++n) sq += static_cast<double>(t[n] * t[n]);
    CHECK(r.value == doctest::Approx(sq * 25.0 * 200 / 24 / 100).epsilon(1e-12));
  }
  SUBCASE("k = 1 against direct quadrature") {
    const double M = 300, Mp = 600, T = 20;
    const auto t = sieve_dk(1, 1000);
    const auto r = smoothed_moment(t, M, Mp, T, 0.05);
    CHECK(r.a_max == static_cast<std::int64_t>(std::floor(std::pow(M, 1.05) / T)));
    const BumpFunction phi(T);
    const int panels = 2000;
    const double lo = phi.support_lo(), hi = phi.support_hi(), hstep = (hi - lo) / panels;
    double total = 0.0;
    for (std::int64_t a = 0; a <= r.a_max; ++a)
      for (int n = 301; n <= 600; ++n) {
        const double w = static_cast<double>(a) / n;
        double s = 0.0;
        for (int i = 0; i <= panels; ++i) {
          const double u = lo + i * hstep;
          const double wgt = (i == 0 || i == panels) ? 1 : (i % 2 ? 4 : 2);
          s += wgt * phi(u) * std::cos(w * u);
        }
        total += s * hstep / 3;
      }
    CHECK(r.value == doctest::Approx(total / M).epsilon(1e-7));
    CHECK(r.symmetrized_imag <= 1e-6);
    CHECK(r.interpolation_error <= 1e-11);
  }
  SUBCASE("errors") {
    const auto t = sieve_dk(2, 400);
    CHECK_THROWS_AS(smoothed_moment(t, 100, 250, 200, 0.05), DomainError);
    CHECK_THROWS_AS(smoothed_moment(sieve_dk(2, 203), 100, 200, 20, 0.05), RangeError);
  }
}

TEST_CASE("theorem report") {
  CHECK(tail_figure(4, 300.0) == doctest::Approx(300.0));
  CHECK(tail_figure(3, 400.0) == doctest::Approx(20.0));
  CHECK(tail_admissible(3));
  CHECK(tail_admissible(4));
  CHECK_FALSE(tail_admissible(5));

  CHECK(carlson_entry(3)->theta_num == 1);
  CHECK(carlson_entry(3)->theta_den == 6);
  CHECK(carlson_entry(4)->theta_den == 4);
  CHECK(carlson_entry(5)->theta_num == 11);
  CHECK(carlson_entry(5)->theta_den == 30);
  CHECK(carlson_entry(4)->sigma() == doctest::Approx(5.0 / 8));
  CHECK_FALSE(carlson_entry(6).has_value());

  const auto grid = theorem_m_grid(3, 200, 0.05, 4);
  CHECK(grid.front() == doctest::Approx(std::pow(200.0, 1.05)));
  CHECK(grid.back() == doctest::Approx(std::pow(200.0, 1.5)));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

  const BinaryClassicalProvider binary;
  const auto t = sieve_dk(2, theorem_report_table_size(2, 200, 0.05, 2));
  TheoremReportOptions o;
  o.m_points = 2;
  const auto r = theorem_report(2, 200, t, binary, o);
  CHECK(r.lhs.value > 0.0);
  CHECK_FALSE(r.m_grid.empty());
  CHECK(r.admissible);
  CHECK_FALSE(r.conjectural);
  CHECK(r.rhs_shape == doctest::Approx(200 * (1 + r.max_g_over_m)));
  CHECK(r.tail_exponent == 0.0);
  CHECK_FALSE(r.carlson.has_value());
  CHECK_THROWS_AS(theorem_report(2, 200, sieve_dk(2, 100), binary, o), RangeError);
}

}
