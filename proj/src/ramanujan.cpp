#include "divzeta/ramanujan.hpp"

#include "divzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

namespace divzeta {

namespace {

struct PrimePower {
  std::uint64_t p;
  unsigned e;
};

std::vector<PrimePower> factor(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t abs_shift(std::int64_t a) {
  return a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
}

Rational frac(const Rational& r) {
  // r >= 0 in every caller
  const boost::multiprecision::cpp_int fl = numerator(r) / denominator(r);
  return r - Rational(fl);
}

double frac(double r) { return r - std::floor(r); }

} // namespace

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius: n must be >= 1");
  int mu = 1;
  for (const auto& [p, e] : factor(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi: n must be >= 1");
  std::uint64_t phi = n;
  for (const auto& pp : factor(n)) phi = phi / pp.p * (pp.p - 1);
  return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw DomainError("divisors: n must be >= 1");
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double sigma_minus_one(std::uint64_t n) {
  double s = 0.0;
  for (auto d : divisors(n)) s += 1.0 / static_cast<double>(d);
  return s;
}

std::int64_t ramanujan_mobius(std::uint64_t q, std::int64_t a) {
  if (q == 0) throw DomainError("ramanujan_mobius: q must be >= 1");
  const std::uint64_t ua = abs_shift(a);
  std::int64_t sum = 0;
  for (auto d : divisors(q)) {
    if (ua % d != 0) continue;
    sum += static_cast<std::int64_t>(d) * mobius(q / d);
  }
  return sum;
}

std::int64_t ramanujan_expsum(std::uint64_t q, std::int64_t a) {
  if (q == 0) throw DomainError("ramanujan_expsum: q must be >= 1");
  const std::uint64_t r0 = abs_shift(a) % q;
  double re = 0.0, im = 0.0;
  for (std::uint64_t j = 1; j <= q; ++j) {
    if (std::gcd(j, q) != 1) continue;
    // reduce ja mod q before forming the angle
    const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * r0) % q);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  const double nearest = std::round(re);
  if (std::abs(im) > 1e-9 * static_cast<double>(q) || std::abs(re - nearest) > 1e-6)
    throw ConsistencyError(fmt::format("ramanujan_expsum: c_{}({}) = {} + {}i is not an integer", q, a, re, im));
  return static_cast<std::int64_t>(nearest);
}

bool as_decimal_rational(double h, Rational& out) {
  constexpr double scale = 1e6;
  const double scaled = std::round(h * scale);
  if (std::abs(scaled) > 9e15 || std::abs(h * scale - scaled) > 1e-12 * std::max(1.0, std::abs(h * scale)))
    return false;
  out = Rational(static_cast<std::int64_t>(scaled), static_cast<std::int64_t>(scale));
  return true;
}

Rational fejer_sum_multiples(const Rational& h, std::uint64_t d) {
  if (h <= 0) throw DomainError("fejer_sum_multiples: h must be > 0");
  if (d == 0) throw DomainError("fejer_sum_multiples: d must be >= 1");
  const Rational dd(d);
  const Rational f = frac(h / dd);
  return h * h / dd + dd * f * (1 - f);
}

double fejer_sum_multiples(double h, std::uint64_t d) {
  if (Rational r; as_decimal_rational(h, r)) return fejer_sum_multiples(r, d).convert_to<double>();
  if (!(h > 0.0)) throw DomainError("fejer_sum_multiples: h must be > 0");
  if (d == 0) throw DomainError("fejer_sum_multiples: d must be >= 1");
  const double dd = static_cast<double>(d);
  const double f = frac(h / dd);
  return h * h / dd + dd * f * (1.0 - f);
}

Rational fejer_sum_multiples_direct(const Rational& h, std::uint64_t d) {
  if (h <= 0) throw DomainError("fejer_sum_multiples_direct: h must be > 0");
  if (d == 0) throw DomainError("fejer_sum_multiples_direct: d must be >= 1");
  // S(0) + 2 sum_{b >= 1, db < h} (h - db)
  Rational sum = h;
  for (std::uint64_t b = 1;; ++b) {
    const Rational a(d * b);
    if (a >= h) break;
    sum += 2 * (h - a);
  }
  return sum;
}

double fejer_sum_multiples_direct(double h, std::uint64_t d) {
  if (!(h > 0.0)) throw DomainError("fejer_sum_multiples_direct: h must be > 0");
  if (d == 0) throw DomainError("fejer_sum_multiples_direct: d must be >= 1");
  double sum = h;
  for (std::uint64_t b = 1; static_cast<double>(d * b) < h; ++b) sum += 2.0 * (h - static_cast<double>(d * b));
  return sum;
}

Rational fejer_ramanujan_sum(const Rational& h, std::uint64_t q) {
  if (h <= 0) throw DomainError("fejer_ramanujan_sum: h must be > 0");
  if (q == 0) throw DomainError("fejer_ramanujan_sum: q must be >= 1");
  Rational sum = 0;
  if (q == 1) sum = h * h;
  for (auto d : divisors(q)) {
    const int mu = mobius(q / d);
    if (mu == 0) continue;
    const Rational f = frac(h / Rational(d));
    sum += Rational(mu) * Rational(d) * Rational(d) * f * (1 - f);
  }
  return sum;
}

double fejer_ramanujan_sum(double h, std::uint64_t q) {
  if (Rational r; as_decimal_rational(h, r)) return fejer_ramanujan_sum(r, q).convert_to<double>();
  if (!(h > 0.0)) throw DomainError("fejer_ramanujan_sum: h must be > 0");
  if (q == 0) throw DomainError("fejer_ramanujan_sum: q must be >= 1");
  double sum = (q == 1) ? h * h : 0.0;
  for (auto d : divisors(q)) {
    const int mu = mobius(q / d);
    if (mu == 0) continue;
    const double dd = static_cast<double>(d);
    const double f = frac(h / dd);
    sum += mu * dd * dd * f * (1.0 - f);
  }
  return sum;
}

Rational fejer_ramanujan_sum_direct(const Rational& h, std::uint64_t q) {
  if (h <= 0) throw DomainError("fejer_ramanujan_sum_direct: h must be > 0");
  if (q == 0) throw DomainError("fejer_ramanujan_sum_direct: q must be >= 1");
  Rational sum = h * ramanujan_mobius(q, 0);
  for (std::int64_t a = 1; Rational(a) < h; ++a) sum += 2 * (h - a) * ramanujan_mobius(q, a);
  return sum;
}

double fejer_ramanujan_sum_direct(double h, std::uint64_t q) {
  if (!(h > 0.0)) throw DomainError("fejer_ramanujan_sum_direct: h must be > 0");
  if (q == 0) throw DomainError("fejer_ramanujan_sum_direct: q must be >= 1");
  double sum = h * static_cast<double>(ramanujan_mobius(q, 0));
  for (std::int64_t a = 1; static_cast<double>(a) < h; ++a)
    sum += 2.0 * (h - static_cast<double>(a)) * static_cast<double>(ramanujan_mobius(q, a));
  return sum;
}

double fejer_transform(std::int64_t h, std::uint64_t q, std::int64_t j) {
  if (h < 1) throw DomainError("fejer_transform: h must be an integer >= 1");
  if (q == 0) throw DomainError("fejer_transform: q must be >= 1");
  const std::uint64_t jr = abs_shift(j) % q;
  auto angle = [&](std::int64_t m) {
    const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(jr) * static_cast<std::uint64_t>(m)) % q);
    return 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
  };

  // S(a) is even, so the imaginary parts cancel pairwise.
  double value = static_cast<double>(h);
  for (std::int64_t a = 1; a < h; ++a) value += 2.0 * static_cast<double>(h - a) * std::cos(angle(a));

  double re = 0.0, im = 0.0;
  for (std::int64_t m = 0; m < h; ++m) {
    re += std::cos(angle(m));
    im += std::sin(angle(m));
  }
  const double square = re * re + im * im;
  const double tol = 1e-9 * std::max(1.0, static_cast<double>(h) * static_cast<double>(h));
  if (std::abs(value - square) > tol || value < -tol)
    throw ConsistencyError(fmt::format("fejer_transform(h={}, q={}, j={}): {} vs kernel square {}", h, q, j, value, square));
  return value;
}

double singular_series(std::uint64_t a, std::uint64_t q_cutoff) {
  if (a == 0) throw DomainError("singular_series: a must be >= 1");
  if (q_cutoff == 0) throw DomainError("singular_series: q_cutoff must be >= 1");
  double sum = 0.0;
  for (std::uint64_t q = 1; q <= q_cutoff; ++q) {
    const double qq = static_cast<double>(q);
    sum += static_cast<double>(ramanujan_mobius(q, static_cast<std::int64_t>(a))) / (qq * qq);
  }
  return sum;
}

double singular_series_limit(std::uint64_t a) {
  if (a == 0) throw DomainError("singular_series_limit: a must be >= 1");
  return sigma_minus_one(a) * 6.0 / (std::numbers::pi * std::numbers::pi);
}

} // namespace divzeta
