#include "divzeta/divisor_sieve.hpp"
#include "divzeta/kernels.hpp"
#include "divzeta/main_term.hpp"
#include "divzeta/selberg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace divzeta;
namespace ks = divzeta::kernels;

// The OpenMP kernels must reproduce the serial reference: exactly for
// integer outputs, and to the last few ulps for floating reductions.
TEST_SUITE("kernels") {

TEST_CASE("correlate_direct") {
  const auto t = sieve_dk(3, 50'000);
  CHECK(ks::serial::correlate_direct(t.values(), 40'000, 0, 200) == ks::omp::correlate_direct(t.values(), 40'000, 0, 200));
  const auto c = ks::serial::correlate_direct(t.values(), 100, 5, 5);
  std::uint64_t want = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) want += t[n] * t[n + 5];
  CHECK(c.at(0) == want);
}

TEST_CASE("window_correlation") {
  const auto t = sieve_dk(2, 20'000);
  for (double h : {7.0, 31.5, 120.25}) {
    const double lower = 300.7;
    const auto s = ks::serial::window_correlation(t.values(), 19'000, lower, h);
    CHECK(s == ks::omp::window_correlation(t.values(), 19'000, lower, h));
    REQUIRE(s.size() == static_cast<std::size_t>(std::ceil(h)));
    for (std::size_t a = 0; a < s.size(); ++a) {
      std::uint64_t want = 0;
      const auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(lower + h - static_cast<double>(a))));
      for (std::uint64_t n = lo; n <= 19'000; ++n) want += t[n] * t[n + a];
      REQUIRE(s[a] == want);
    }
  }
}

TEST_CASE("selberg kernels") {
  const auto t = sieve_dk(2, 30'000);
  const auto prefix = prefix_sums(t);
  const auto p = residue_polynomial(2);
  for (double h : {5.0, 17.3, 150.0}) {
    ks::SelbergProblem prob{prefix, [&](double x) { return expected_short_sum(p, x, h); }, h, h * 2.0, 25'000.0};
    const auto a = ks::serial::selberg_piecewise(prob), b = ks::omp::selberg_piecewise(prob);
    CHECK(a.j == doctest::Approx(b.j).epsilon(1e-12));
    CHECK(a.s_sq == doctest::Approx(b.s_sq).epsilon(1e-12));
    CHECK(a.segments == b.segments);
    const auto c = ks::serial::selberg_sampled(prob, 0.05), d = ks::omp::selberg_sampled(prob, 0.05);
    CHECK(c.j == doctest::Approx(d.j).epsilon(1e-12));
  }
}

TEST_CASE("simpson") {
  auto cubic = [](double x) { return 3 * x * x * x - x + 2; };
  // exact for cubics: int_0^2 = 12 - 2 + 4
  CHECK(ks::serial::simpson(cubic, 0.0, 2.0, 2) == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(ks::omp::simpson(cubic, 0.0, 2.0, 1000) == doctest::Approx(14.0).epsilon(1e-14));
  auto f = [](double x) { return std::sin(x) * std::exp(-x / 7); };
  CHECK(ks::serial::simpson(f, 0.0, 30.0, 3000) == doctest::Approx(ks::omp::simpson(f, 0.0, 30.0, 3000)).epsilon(1e-13));
}

TEST_CASE("weighted_pair_sum") {
  const auto t = sieve_dk(2, 5'000);
  const ks::PairWeight w = [](std::int64_t a, std::int64_t n) {
    return std::complex<double>(std::cos(0.01 * a * n), 1.0 / (1.0 + a));
  };
  const auto s = ks::serial::weighted_pair_sum(t.values(), 1000, 4000, 40, w);
  const auto o = ks::omp::weighted_pair_sum(t.values(), 1000, 4000, 40, w);
  CHECK(std::abs(s - o) <= 1e-12 * std::abs(s));
  std::complex<double> want = 0.0;
  for (std::int64_t n = 1001; n <= 4000; ++n)
    for (std::int64_t a = 0; a <= 40; ++a) want += static_cast<double>(t[n] * t[n + a]) * w(a, n);
  CHECK(std::abs(s - want) <= 1e-10 * std::abs(want));
}

TEST_CASE("omp results are independent of the thread count") {
  const auto t = sieve_dk(2, 30'000);
  const auto prefix = prefix_sums(t);
  const auto p = residue_polynomial(2);
  ks::SelbergProblem prob{prefix, [&](double x) { return expected_short_sum(p, x, 40.0); }, 40.0, 80.0, 29'000.0};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = ks::omp::selberg_piecewise(prob);
  omp_set_num_threads(4);
  const auto four = ks::omp::selberg_piecewise(prob);
  omp_set_num_threads(saved);
  CHECK(one.j == four.j);
  CHECK(one.m_sq == four.m_sq);
}

TEST_CASE("kernel exceptions propagate out of parallel regions") {
  CHECK_THROWS(ks::chunked_reduce<double>(0, 1000, [](std::int64_t lo, std::int64_t) -> double {
    if (lo > 500) throw std::runtime_error("boom");
    return 1.0;
  }));
}

}
