#include "divzeta/errors.hpp"
#include "divzeta/selberg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace divzeta;

namespace {

// J for integer h: S(t) is constant on each [m, m+1); integrate (S - M)^2 by
// composite Simpson on every unit piece (and on the partial first piece).
double selberg_oracle(const DivisorTable& t, double x, std::uint64_t h, double eps) {
  const auto p = residue_polynomial(t.k());
  const double lower = static_cast<double>(h) * std::pow(x, eps);
  double total = 0.0;
  for (auto m = static_cast<std::uint64_t>(std::floor(lower)); static_cast<double>(m) < x; ++m) {
    const double a = std::max(lower, static_cast<double>(m)), b = std::min(x, static_cast<double>(m + 1));
    if (b <= a) continue;
    double s = 0.0;
    for (std::uint64_t n = m + 1; n <= m + h; ++n) s += static_cast<double>(t[n]);
    auto f = [&](double u) {
      const double d = s - expected_short_sum(p, u, static_cast<double>(h));
      return d * d;
    };
    const int panels = 16;
    const double step = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * step) * (i % 2 ? 4 : 2);
    total += acc * step / 3;
  }
  return total;
}

} // namespace

TEST_SUITE("selberg") {

TEST_CASE("k = 1") {
  const auto t = sieve_dk(1, 20'000);
  CHECK(selberg_integral(t, 10'000, 7, 0.05).value <= 1e-12);
  const auto r = selberg_integral(t, 10'000, 0.5, 0.05);
  CHECK(r.value == doctest::Approx(0.25 * (10'000 - r.lower_limit)).epsilon(1e-3));
}

TEST_CASE("matches an independent integration") {
  const auto t = sieve_dk(2, 21'000);
  for (std::uint64_t h : {3, 40}) {
    const auto r = selberg_integral(t, 20'000, static_cast<double>(h), 0.05);
    CHECK(r.value == doctest::Approx(selberg_oracle(t, 20'000, h, 0.05)).epsilon(1e-8));
  }
  const auto t3 = sieve_dk(3, 6'000);
  CHECK(selberg_integral(t3, 5'000, 25, 0.1).value == doctest::Approx(selberg_oracle(t3, 5'000, 25, 0.1)).epsilon(1e-8));
}

TEST_CASE("modes agree and stay under the trivial bound") {
  const auto t = sieve_dk(2, 100'200);
  for (double h : {10.0, 100.0}) {
    SelbergOptions o;
    o.cross_check = true;
    const auto r = selberg_integral(t, 100'000, h, 0.05, SelbergMode::exact_piecewise, o);
    CHECK(r.value >= 0.0);
    CHECK(r.mode_disagreement <= 0.01);
    CHECK(r.lower_limit == doctest::Approx(h * std::pow(1e5, 0.05)));
    CHECK(r.trivial_exponent == 3.0);
    CHECK(r.within_trivial_bound());
  }
  SelbergOptions o;
  o.trivial_exponent = 1.0;
  CHECK(selberg_integral(t, 100'000, 100, 0.05, SelbergMode::exact_piecewise, o).trivial_bound ==
        doctest::Approx(1e5 * 1e4 * std::log(1e5)));
}

TEST_CASE("domain errors") {
  const auto t = sieve_dk(2, 1'000);
  CHECK_THROWS_AS(selberg_integral(t, 900, 0.0, 0.05), DomainError);
  CHECK_THROWS_AS(selberg_integral(t, 900, 950, 0.05), DomainError);
  CHECK_THROWS_AS(selberg_integral(t, 900, 10, 1.0), DomainError);
  CHECK_THROWS_AS(selberg_integral(t, 995, 10, 0.05), RangeError);
  CHECK_THROWS_AS(parse_selberg_mode("fast"), DomainError);
}

TEST_CASE("dispersion decomposition") {
  const ZetaQ1Provider q1;
  const BinaryClassicalProvider binary;
  SUBCASE("k = 1, integer h: only the tails survive") {
    const auto t = sieve_dk(1, 20'100);
    const auto r = dispersion_decompose(t, 20'000, 12, 0.05, &q1, 1);
    CHECK(r.lhs <= 1e-12);
    // Delta_1(x, a) = 0 and Delta_1(x, -a) = -a, so the sum is -sum (h - a) a = -h (h^2 - 1) / 6.
    CHECK(r.rhs_delta == doctest::Approx(-12.0 * 143 / 6));
    CHECK(r.within_budget());
  }
  SUBCASE("k = 2, x = 1e5, h = 50") {
    const auto t = sieve_dk(2, 100'100);
    const auto r = dispersion_decompose(t, 100'000, 50, 0.05, &binary, 200);
    const double md = static_cast<double>(r.max_dk);
    CHECK(r.residual <= 4 * 50.0 * 50.0 * md * md);
    CHECK(r.within_budget());
    CHECK(std::abs(r.rhs_full - r.rhs_delta) <= 10 * std::pow(50.0, 3) * std::pow(std::log(1e5), 4));
    CHECK(r.has_delta);
    CHECK(r.eq1_sum > 0.0);
    CHECK(r.eq1_main > 0.0);
  }
  SUBCASE("no provider") {
    const auto t = sieve_dk(2, 10'100);
    const auto r = dispersion_decompose(t, 10'000, 20, 0.05, nullptr);
    CHECK_FALSE(r.has_delta);
    CHECK(r.rhs_delta == 0.0);
    CHECK(r.boundary == doctest::Approx(r.quad_form - r.window_sum));
    CHECK(r.within_budget());
  }
}

TEST_CASE("summation exchange") {
  const ZetaQ1Provider q1;
  const BinaryClassicalProvider binary;
  const auto t2 = sieve_dk(2, 100'100);
  const auto c = double_sum_identity_check(t2, 100'000, 30, binary);
  CHECK(c.weights_exact);
  CHECK(c.correlation_exact);
  CHECK(std::abs(c.split_residual) <= 1e-9 * (1 + std::abs(c.total)));
  CHECK(std::abs(c.exchange_residual) <= 1e-9 * (1 + std::abs(c.mean_part)));
  CHECK(c.cesaro == doctest::Approx(c.exchanged));
  CHECK(c.within_budget());

  const auto t1 = sieve_dk(1, 5'100);
  const auto z = double_sum_identity_check(t1, 5'000, 20, q1, 1);
  CHECK(std::abs(z.total) <= 1e-9);
  CHECK(std::abs(z.split_residual) <= 1e-9);
  CHECK(std::abs(z.exchange_residual) <= 1e-9);
  CHECK(z.selberg <= 1e-9);
  // Negative shifts: Delta_1(x, -a) = -a.
  CHECK(z.symmetric == doctest::Approx(-20.0 * 21 * 19 / 6));
  CHECK(z.symmetric_residual == doctest::Approx(20.0 * 21 * 19 / 6));
  CHECK(z.within_budget());
}

TEST_CASE("double-average statistic") {
  const ZetaQ1Provider q1;
  const BinaryClassicalProvider binary;
  SUBCASE("k = 1") {
    const double M = 2000, T = 20;
    const auto t = sieve_dk(1, g_tilde_table_size(2 * M, M, T, 0.05));
    const auto r = g_tilde(t, M, 2 * M, T, 0.05, q1, 1);
    CHECK(r.g_tilde <= 1e-6);
  }
  SUBCASE("k = 2, M = 1e5, T = 100") {
    const double M = 1e5, T = 100;
    const auto t = sieve_dk(2, g_tilde_table_size(2 * M, M, T, 0.05));
    const auto r = g_tilde(t, M, 2 * M, T, 0.05, binary, 200);
    CHECK(std::isfinite(r.g_tilde));
    CHECK(r.probes.size() <= 64);
    CHECK(r.H == doctest::Approx(std::pow(M, 1.05) / T));
    CHECK(r.tails_estimate == doctest::Approx(r.H * r.H));
    CHECK(r.theorem_side == doctest::Approx(T * (1 + r.g_tilde / M)));
    CHECK_FALSE(r.conjectural);
    double best = 0.0;
    for (const auto& p : r.probes) {
      CHECK(p.j_part >= 0.0);
      CHECK(p.delta_part >= 0.0);
      CHECK(p.j_part <= p.trivial_j_bound);
      best = std::max(best, p.total());
    }
    CHECK(best == r.g_tilde);
    CHECK(r.j_part + r.delta_part == r.g_tilde);

    const auto fine = g_tilde(t, M, 2 * M, T, 0.05, binary, 200, GridSpec{16, 16});
    CHECK(fine.g_tilde >= r.g_tilde);
  }
  SUBCASE("constraint violations") {
    const auto t = sieve_dk(2, 100'000);
    CHECK_THROWS_AS(g_tilde(t, 1000, 3000, 10, 0.05, binary), DomainError);
    CHECK_THROWS_AS(g_tilde(t, 1000, 1000, 10, 0.05, binary), DomainError);
    CHECK_THROWS_AS(g_tilde(t, 1000, 2000, 900, 0.05, binary), DomainError);
    CHECK_THROWS_AS(g_tilde(sieve_dk(2, 2100), 1000, 2000, 10, 0.05, binary), RangeError);
  }
}

}
