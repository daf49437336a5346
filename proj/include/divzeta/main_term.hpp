#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace divzeta {

/// Number of embedded Stieltjes constants gamma_0 .. gamma_11.
inline constexpr unsigned kStieltjesDepth = 12;

/// gamma_n, n < kStieltjesDepth.
long double stieltjes_constant(unsigned n);
inline double euler_gamma() { return static_cast<double>(stieltjes_constant(0)); }

/// Laurent expansion of zeta(s)^k about s = 1.
struct LaurentSeries {
  unsigned k = 0;
  int order = 0;               ///< pole order, equal to k
  std::vector<double> coeffs;  ///< coeffs[i] multiplies (s - 1)^(i - k)

  /// Coefficient of (s - 1)^j; zero below the pole, throws past the computed depth.
  double coeff(int j) const;
};

/// zeta(s)^k = (s-1)^{-k} (1 + sum_j (-1)^j gamma_j (s-1)^{j+1} / j!)^k,
/// truncated to n_terms coefficients. n_terms <= kStieltjesDepth.
LaurentSeries zeta_laurent(unsigned k, unsigned n_terms);

/// Polynomial P with sum_{n <= x} d_k(n) ~ x P(log x). coeffs[m] multiplies L^m.
struct MainTermPolynomial {
  unsigned k = 0;
  std::vector<double> coeffs;

  unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
  double operator()(double log_x) const;
  /// x P(log x), the long-sum main term.
  double long_sum(double x) const;
  /// d/dx [x P(log x)] = (P + P')(log x), as a polynomial in log x.
  std::vector<double> density_coeffs() const;
};

/// Residue of zeta(s)^k x^s / s at s = 1, divided by x. k <= 6.
MainTermPolynomial residue_polynomial(unsigned k);

/// M_k(t, h) = (t+h) P(log(t+h)) - t P(log t).
double expected_short_sum(const MainTermPolynomial& poly, double t, double h);
double expected_short_sum(unsigned k, double t, double h);

// ---------------------------------------------------------------------------
// R_k(q, log t) and the correlation main term

/// Supplies the coefficients C_j(q), -k <= j <= -1, of R_k(q, log t).
class CoefficientProvider {
public:
  virtual ~CoefficientProvider() = default;
  virtual std::string id() const = 0;
  virtual bool covers(unsigned k, std::uint64_t q) const = 0;
  /// Throws ProviderDomainError when !covers(k, q).
  virtual double coefficient(unsigned k, std::uint64_t q, int j) const = 0;
};

/// C_j(1) = Laurent coefficients of zeta^k, so that R_k(1, log t) is the
/// density (P + P')(log t) of the long-sum main term. Only q = 1.
class ZetaQ1Provider final : public CoefficientProvider {
public:
  std::string id() const override { return "q1-zeta"; }
  bool covers(unsigned k, std::uint64_t q) const override;
  double coefficient(unsigned k, std::uint64_t q, int j) const override;
};

/// k = 2 only: R_2(q, L) = L + 2 gamma - 2 log q.
class BinaryClassicalProvider final : public CoefficientProvider {
public:
  std::string id() const override { return "binary-classical"; }
  bool covers(unsigned k, std::uint64_t q) const override;
  double coefficient(unsigned k, std::uint64_t q, int j) const override;
};

/// User table loaded from CSV with header `k,q,j,C`.
class TableProvider final : public CoefficientProvider {
public:
  static TableProvider from_csv(const std::filesystem::path& path);
  void set(unsigned k, std::uint64_t q, int j, double value);

  std::string id() const override { return id_; }
  bool covers(unsigned k, std::uint64_t q) const override;
  double coefficient(unsigned k, std::uint64_t q, int j) const override;

private:
  std::string id_ = "table";
  std::map<std::tuple<unsigned, std::uint64_t, int>, double> entries_;
};

/// "q1-zeta", "binary-classical", or "table:<path>".
std::unique_ptr<CoefficientProvider> make_provider(std::string_view spec);

/// R_k(q, L) = sum_i C_{-k+i}(q) L^{k-1-i} / (k-1-i)!. Independent of the shift.
struct RkPolynomial {
  unsigned k = 0;
  std::uint64_t q = 1;
  std::vector<double> coeffs;  ///< coeffs[m] multiplies L^m

  double operator()(double log_t) const;
};

RkPolynomial rk_polynomial(unsigned k, std::uint64_t q, const CoefficientProvider& provider);

/// x P_{2k-2}(log x) = sum_{q <= Q} c_q(a)/q^2 int_0^x R_k(q, log t)^2 dt.
///
/// The q-integrals do not depend on a, so they are computed once per (k, x)
/// and reused for every shift.
class CorrelationMainTerm {
public:
  CorrelationMainTerm(unsigned k, double x, std::uint64_t q_cutoff, const CoefficientProvider& provider);

  unsigned k() const { return k_; }
  double x() const { return x_; }
  std::uint64_t q_cutoff() const { return q_cutoff_; }
  const std::string& provider_id() const { return provider_id_; }

  /// Main term for shift a (a = 0 uses c_q(0) = phi(q)).
  double operator()(std::int64_t a) const;
  /// int_0^x R_k(q, log t)^2 dt for 1 <= q <= q_cutoff.
  double q_integral(std::uint64_t q) const { return integrals_.at(q - 1); }
  /// Size estimate of the discarded q > q_cutoff terms; NaN when the
  /// provider does not extend past the cutoff.
  double tail_bound() const { return tail_bound_; }

private:
  unsigned k_;
  double x_;
  std::uint64_t q_cutoff_;
  std::string provider_id_;
  std::vector<double> integrals_;
  double tail_bound_;
};

double p2k2_main(unsigned k, std::int64_t a, double x, std::uint64_t q_cutoff, const CoefficientProvider& provider);

/// int_0^x p(log t)^2 dt for a polynomial p (ascending coefficients), by
/// adaptive Gauss-Kronrod on the log scale.
double integrate_log_polynomial_squared(const std::vector<double>& coeffs, double x);

} // namespace divzeta
