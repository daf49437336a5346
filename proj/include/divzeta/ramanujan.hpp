#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace divzeta {

using Rational = boost::multiprecision::cpp_rational;

// Elementary arithmetic functions, all by trial division.
int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// sigma_{-1}(n) = sum_{d | n} 1/d.
double sigma_minus_one(std::uint64_t n);

/// c_q(a) = sum_{d | q, d | a} d mu(q/d). Even in a; c_q(0) = phi(q).
std::int64_t ramanujan_mobius(std::uint64_t q, std::int64_t a);

/// c_q(a) as the sum of e(ja/q) over j coprime to q, rounded to the nearest
/// integer. Throws ConsistencyError if the imaginary part exceeds 1e-9 q or
/// the real part is more than 1e-6 from an integer.
std::int64_t ramanujan_expsum(std::uint64_t q, std::int64_t a);

/// Fejer weight S(a) = max(0, h - |a|).
inline double fejer_weight(double h, std::int64_t a) {
  const double d = h - static_cast<double>(a < 0 ? -a : a);
  return d > 0.0 ? d : 0.0;
}

/// sum over a = 0 mod d of S(a) in closed form: h^2/d + d{h/d}(1 - {h/d}).
/// Decimal h (denominator dividing 10^6) is evaluated exactly.
double fejer_sum_multiples(double h, std::uint64_t d);
Rational fejer_sum_multiples(const Rational& h, std::uint64_t d);
/// The same quantity summed term by term over a in Z.
double fejer_sum_multiples_direct(double h, std::uint64_t d);
Rational fejer_sum_multiples_direct(const Rational& h, std::uint64_t d);

/// sum_a S(a) c_q(a) = 1_{q=1} h^2 + sum_{d | q} d^2 mu(q/d) {h/d}(1 - {h/d}).
double fejer_ramanujan_sum(double h, std::uint64_t q);
Rational fejer_ramanujan_sum(const Rational& h, std::uint64_t q);
/// sum_{|a| < h} S(a) c_q(a), term by term.
double fejer_ramanujan_sum_direct(double h, std::uint64_t q);
Rational fejer_ramanujan_sum_direct(const Rational& h, std::uint64_t q);

/// S-hat(j/q) = sum_{|a| < h} (h - |a|) e(ja/q) for integer h >= 1.
/// Checked against the kernel square |sum_{0 <= m < h} e(jm/q)|^2.
double fejer_transform(std::int64_t h, std::uint64_t q, std::int64_t j);

/// Truncated singular series sum_{q <= q_cutoff} c_q(a)/q^2.
double singular_series(std::uint64_t a, std::uint64_t q_cutoff);
/// Its limit sigma_{-1}(a)/zeta(2).
double singular_series_limit(std::uint64_t a);

/// Nearest rational with denominator dividing 10^6, if h is one up to 1e-12.
bool as_decimal_rational(double h, Rational& out);

} // namespace divzeta
