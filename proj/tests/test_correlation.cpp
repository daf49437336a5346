#include "divzeta/correlation.hpp"
#include "divzeta/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace divzeta;

TEST_SUITE("correlation") {

TEST_CASE("k = 1 gives x for every shift") {
  const auto t = sieve_dk(1, 2000);
  for (auto mode : {CorrelationMode::direct, CorrelationMode::fft}) {
    const auto s = correlate(t, 1000, 0, 50, mode);
    for (std::uint64_t a = 0; a <= 50; ++a) CHECK(s.at(a) == 1000);
  }
}

TEST_CASE("hand-computed value at x = 10") {
  // d(1..11) = 1,2,2,3,2,4,2,4,3,4,2
  const auto t = sieve_dk(2, 11);
  CHECK(correlate(t, 10, 1, 1, CorrelationMode::direct).at(1) == 74);
  CHECK(correlate(t, 10, 1, 1, CorrelationMode::fft).at(1) == 74);
}

TEST_CASE("diagonal") {
  const auto t = sieve_dk(3, 20'000);
  std::uint64_t sq = 0;
  for (std::uint64_t n = 1; n <= 10'000; ++n) sq += t[n] * t[n];
  CHECK(correlate(t, 10'000, 0, 3, CorrelationMode::fft).at(0) == sq);
}

TEST_CASE("fft equals direct, k <= 4") {
  for (unsigned k = 1; k <= 4; ++k) {
    const auto t = sieve_dk(k, 100'400);
    const auto f = correlate(t, 100'000, 0, 400, CorrelationMode::fft);
    const auto d = correlate(t, 100'000, 0, 400, CorrelationMode::direct);
    CHECK(f.values == d.values);
    CHECK(f.max_rounding_distance < kFftRoundingLimit);
  }
  const auto t = sieve_dk(2, 1'000'100);
  CHECK(correlate(t, 1'000'000, 1, 1, CorrelationMode::fft).values ==
        correlate(t, 1'000'000, 1, 1, CorrelationMode::direct).values);
}

TEST_CASE("fft limb splitting on wide inputs") {
  std::mt19937_64 rng(9);
  std::vector<std::uint64_t> u(4096), v(4096 + 64);
  for (auto& x : u) x = rng() >> 40;
  for (auto& x : v) x = rng() >> 40;
  const auto r = fft_cross_correlate(u, v, 64);
  CHECK(r.limbs > 1);
  for (std::size_t a = 0; a <= 64; ++a) {
    std::uint64_t want = 0;
    for (std::size_t i = 0; i < u.size(); ++i) want += u[i] * v[i + a];
    REQUIRE(r.lags[a] == want);
  }
}

TEST_CASE("range and domain errors") {
  const auto t = sieve_dk(2, 1000);
  CHECK_THROWS_AS(correlate(t, 990, 0, 20, CorrelationMode::direct), RangeError);
  CHECK_THROWS_AS(correlate(t, 0, 0, 2, CorrelationMode::direct), DomainError);
  CHECK_THROWS_AS(correlate(t, 100, 5, 2, CorrelationMode::direct), DomainError);
  CHECK_THROWS_AS(correlate(t, 100, 0, 2, CorrelationMode::direct).at(3), RangeError);
  CHECK_THROWS_AS(correlate(t, 100, 0, 2, CorrelationMode::direct).delta_at(1), DomainError);
  CHECK_THROWS_AS(parse_correlation_mode("slow"), DomainError);
}

TEST_CASE("negative shifts") {
  const auto t = sieve_dk(2, 5000);
  for (std::uint64_t a : {0, 1, 7, 100}) {
    std::uint64_t want = 0;
    for (std::uint64_t n = a + 1; n <= 4000; ++n) want += t[n] * t[n - a];
    CHECK(correlate_negative_shift(t, 4000, a) == want);
  }
}

TEST_CASE("remainders") {
  const ZetaQ1Provider q1;
  const BinaryClassicalProvider binary;
  SUBCASE("k = 1 has no remainder") {
    const auto t = sieve_dk(1, 10'100);
    const auto s = delta(correlate(t, 10'000, 1, 20, CorrelationMode::direct), q1, 1);
    for (std::uint64_t a = 1; a <= 20; ++a) CHECK(std::abs(s.delta_at(a)) <= 1e-9 * 10'000);
    CHECK(s.provider_id == "q1-zeta");
    CHECK_FALSE(s.conjectural);
  }
  SUBCASE("k = 3 is labelled conjectural") {
    const auto t = sieve_dk(3, 1'100);
    CHECK(delta(correlate(t, 1000, 1, 2, CorrelationMode::direct), q1, 1).conjectural);
    CHECK_THROWS_AS(delta(correlate(t, 1000, 1, 2, CorrelationMode::direct), q1, 5), ProviderDomainError);
  }
  SUBCASE("binary remainder is small and o(x)") {
    const auto t = sieve_dk(2, 10'000'010);
    double previous = INFINITY;
    for (std::uint64_t x : {100'000ull, 1'000'000ull, 10'000'000ull}) {
      const auto s = delta(correlate(t, x, 1, 10, CorrelationMode::direct), binary, 200);
      double worst = 0.0;
      for (std::uint64_t a = 1; a <= 10; ++a) {
        worst = std::max(worst, std::abs(s.delta_at(a)) / static_cast<double>(x));
        if (x == 1'000'000) CHECK(std::abs(s.delta_at(a)) <= 0.05 * static_cast<double>(s.at(a)));
      }
      CHECK(worst <= previous);
      previous = worst;
    }
  }
}

}
