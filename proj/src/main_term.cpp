#include "divzeta/main_term.hpp"

#include "divzeta/errors.hpp"
#include "divzeta/ramanujan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

namespace divzeta {

namespace {

// gamma_0 .. gamma_11, 30 significant digits (tools/oracles/stieltjes.py).
constexpr long double kStieltjes[kStieltjesDepth] = {
    0.577215664901532860606512090082L,
    -0.0728158454836767248605863758749L,
    -0.00969036319287231848453038603521L,
    0.00205383442030334586616004654275L,
    0.00232537006546730005746817017753L,
    0.000793323817301062701753334877444L,
    -0.000238769345430199609872421841908L,
    -0.000527289567057751046074097505479L,
    -0.000352123353803039509602052165001L,
    -0.0000343947744180880481779146237982L,
    0.000205332814909064794683722289237L,
    0.000270184439543903526672902082068L,
};

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<long double> truncated_product(const std::vector<long double>& a, const std::vector<long double>& b,
                                           std::size_t len) {
  std::vector<long double> out(len, 0.0L);
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i)
    for (std::size_t j = 0; j < std::min(b.size(), len - i); ++j) out[i + j] += a[i] * b[j];
  return out;
}

} // namespace

long double stieltjes_constant(unsigned n) {
  if (n >= kStieltjesDepth) throw DomainError(fmt::format("stieltjes_constant: only gamma_0..gamma_{} are tabulated", kStieltjesDepth - 1));
  return kStieltjes[n];
}

double LaurentSeries::coeff(int j) const {
  const int idx = j + static_cast<int>(k);
  if (idx < 0) return 0.0;
  if (idx >= static_cast<int>(coeffs.size()))
    throw DomainError(fmt::format("LaurentSeries::coeff: (s-1)^{} is past the computed depth", j));
  return coeffs[static_cast<std::size_t>(idx)];
}

LaurentSeries zeta_laurent(unsigned k, unsigned n_terms) {
  if (k == 0) throw DomainError("zeta_laurent: k must be >= 1");
  if (n_terms == 0 || n_terms > kStieltjesDepth)
    throw DomainError(fmt::format("zeta_laurent: n_terms must lie in [1, {}] (Stieltjes table depth)", kStieltjesDepth));

  // (s-1) zeta(s) = 1 + sum_{j>=0} (-1)^j gamma_j u^{j+1} / j!
  std::vector<long double> base(n_terms, 0.0L);
  base[0] = 1.0L;
  for (unsigned j = 0; j + 1 < n_terms; ++j)
    base[j + 1] = ((j % 2) ? -1.0L : 1.0L) * kStieltjes[j] / static_cast<long double>(factorial(j));

  std::vector<long double> power = base;
  for (unsigned p = 1; p < k; ++p) power = truncated_product(power, base, n_terms);

  LaurentSeries out;
  out.k = k;
  out.order = static_cast<int>(k);
  out.coeffs.assign(power.begin(), power.end());
  return out;
}

double MainTermPolynomial::operator()(double log_x) const { return horner(coeffs, log_x); }

double MainTermPolynomial::long_sum(double x) const { return x * (*this)(std::log(x)); }

std::vector<double> MainTermPolynomial::density_coeffs() const {
  std::vector<double> out = coeffs;
  for (std::size_t m = 1; m < coeffs.size(); ++m) out[m - 1] += static_cast<double>(m) * coeffs[m];
  return out;
}

MainTermPolynomial residue_polynomial(unsigned k) {
  if (k == 0 || k > 6) throw DomainError("residue_polynomial: k must lie in [1, 6]");
  // [u^{k-1}] of (u^k zeta^k)(u) * e^{L u} * 1/(1+u)
  const LaurentSeries laurent = zeta_laurent(k, k);
  MainTermPolynomial poly;
  poly.k = k;
  poly.coeffs.assign(k, 0.0);
  for (unsigned m = 0; m < k; ++m) {
    double c = 0.0;
    for (unsigned i = 0; i + m <= k - 1; ++i) {
      const unsigned r = k - 1 - m - i;
      c += laurent.coeffs[i] * ((r % 2) ? -1.0 : 1.0);
    }
    poly.coeffs[m] = c / factorial(m);
  }
  return poly;
}

double expected_short_sum(const MainTermPolynomial& poly, double t, double h) {
  if (!(t >= 1.0)) throw DomainError("expected_short_sum: t must be >= 1");
  if (!(h > 0.0)) throw DomainError("expected_short_sum: h must be > 0");
  return poly.long_sum(t + h) - poly.long_sum(t);
}

double expected_short_sum(unsigned k, double t, double h) {
  return expected_short_sum(residue_polynomial(k), t, h);
}

// ---------------------------------------------------------------------------

bool ZetaQ1Provider::covers(unsigned k, std::uint64_t q) const { return k >= 1 && k <= kStieltjesDepth && q == 1; }

double ZetaQ1Provider::coefficient(unsigned k, std::uint64_t q, int j) const {
  if (!covers(k, q))
    throw ProviderDomainError(fmt::format("q1-zeta provider defines C_j(q) only at q = 1 (asked k={}, q={})", k, q));
  if (j < -static_cast<int>(k) || j > -1) throw ProviderDomainError(fmt::format("C_{} outside [-k, -1]", j));
  return zeta_laurent(k, k).coeff(j);
}

bool BinaryClassicalProvider::covers(unsigned k, std::uint64_t q) const { return k == 2 && q >= 1; }

double BinaryClassicalProvider::coefficient(unsigned k, std::uint64_t q, int j) const {
  if (!covers(k, q))
    throw ProviderDomainError(fmt::format("binary-classical provider is defined for k = 2 only (asked k={})", k));
  if (j == -2) return 1.0;
  if (j == -1) return 2.0 * euler_gamma() - 2.0 * std::log(static_cast<double>(q));
  throw ProviderDomainError(fmt::format("C_{} outside [-2, -1]", j));
}

TableProvider TableProvider::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("TableProvider: cannot open " + path.string());
  TableProvider table;
  table.id_ = "table:" + path.filename().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.find_first_not_of("0123456789-+. ,eE\r") != std::string::npos) continue;  // header
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    unsigned k = 0;
    std::uint64_t q = 0;
    int j = 0;
    double value = 0.0;
    if (!(fields >> k >> q >> j >> value))
      throw FormatError(fmt::format("TableProvider: malformed row {} in {}", line_no, path.string()));
    table.set(k, q, j, value);
  }
  return table;
}

void TableProvider::set(unsigned k, std::uint64_t q, int j, double value) { entries_[{k, q, j}] = value; }

bool TableProvider::covers(unsigned k, std::uint64_t q) const {
  for (int j = -static_cast<int>(k); j <= -1; ++j)
    if (!entries_.contains({k, q, j})) return false;
  return k >= 1;
}

double TableProvider::coefficient(unsigned k, std::uint64_t q, int j) const {
  const auto it = entries_.find({k, q, j});
  if (it == entries_.end())
    throw ProviderDomainError(fmt::format("{}: no entry for k={}, q={}, j={}", id_, k, q, j));
  return it->second;
}

std::unique_ptr<CoefficientProvider> make_provider(std::string_view spec) {
  if (spec == "q1-zeta") return std::make_unique<ZetaQ1Provider>();
  if (spec == "binary-classical") return std::make_unique<BinaryClassicalProvider>();
  if (spec.starts_with("table:"))
    return std::make_unique<TableProvider>(TableProvider::from_csv(std::string(spec.substr(6))));
  throw DomainError(fmt::format("unknown provider '{}'", spec));
}

double RkPolynomial::operator()(double log_t) const { return horner(coeffs, log_t); }

RkPolynomial rk_polynomial(unsigned k, std::uint64_t q, const CoefficientProvider& provider) {
  if (k == 0) throw DomainError("rk_polynomial: k must be >= 1");
  if (q == 0) throw DomainError("rk_polynomial: q must be >= 1");
  if (!provider.covers(k, q))
    throw ProviderDomainError(fmt::format("provider '{}' does not define C_j(q) for k={}, q={}", provider.id(), k, q));
  RkPolynomial r;
  r.k = k;
  r.q = q;
  r.coeffs.assign(k, 0.0);
  for (unsigned i = 0; i < k; ++i) {
    const unsigned power = k - 1 - i;
    r.coeffs[power] = provider.coefficient(k, q, -static_cast<int>(k) + static_cast<int>(i)) / factorial(power);
  }
  return r;
}

double integrate_log_polynomial_squared(const std::vector<double>& coeffs, double x) {
  if (!(x > 0.0)) throw DomainError("integrate_log_polynomial_squared: x must be > 0");
  const double log_x = std::log(x);
  // int_0^x p(log t)^2 dt = x int_0^inf p(log x - v)^2 e^{-v} dv
  auto integrand = [&](double v) {
    const double p = horner(coeffs, log_x - v);
    return p * p * std::exp(-v);
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-14, &error);
  if (!(error <= 1e-10 * std::max(std::abs(value), 1e-300)) && error > 1e-300)
    throw NumericalError(fmt::format("integrate_log_polynomial_squared: error estimate {} for value {}", error, value));
  return x * value;
}

CorrelationMainTerm::CorrelationMainTerm(unsigned k, double x, std::uint64_t q_cutoff,
                                         const CoefficientProvider& provider)
    : k_(k), x_(x), q_cutoff_(q_cutoff), provider_id_(provider.id()) {
  if (k == 0) throw DomainError("CorrelationMainTerm: k must be >= 1");
  if (q_cutoff == 0) throw DomainError("CorrelationMainTerm: q_cutoff must be >= 1");
  if (!(x >= 1.0)) throw DomainError("CorrelationMainTerm: x must be >= 1");

  integrals_.reserve(q_cutoff);
  for (std::uint64_t q = 1; q <= q_cutoff; ++q)
    integrals_.push_back(integrate_log_polynomial_squared(rk_polynomial(k, q, provider).coeffs, x));

  tail_bound_ = std::numeric_limits<double>::quiet_NaN();
  if (provider.covers(k, q_cutoff + 1)) {
    // x sum_{Q < q <= 64Q} d(q) max_{0 <= L <= log x} R_q(L)^2 / q^2
    const double log_x = std::log(x);
    double tail = 0.0;
    for (std::uint64_t q = q_cutoff + 1; q <= 64 * q_cutoff; ++q) {
      if (!provider.covers(k, q)) break;
      const RkPolynomial r = rk_polynomial(k, q, provider);
      double peak = 0.0;
      for (int s = 0; s <= 32; ++s) peak = std::max(peak, std::abs(r(log_x * s / 32.0)));
      const double qq = static_cast<double>(q);
      tail += static_cast<double>(divisors(q).size()) * peak * peak / (qq * qq);
    }
    tail_bound_ = x * tail;
  }
}

double CorrelationMainTerm::operator()(std::int64_t a) const {
  double sum = 0.0;
  for (std::uint64_t q = 1; q <= q_cutoff_; ++q) {
    const std::int64_t c = ramanujan_mobius(q, a);
    if (c == 0) continue;
    const double qq = static_cast<double>(q);
    sum += static_cast<double>(c) / (qq * qq) * integrals_[q - 1];
  }
  return sum;
}

double p2k2_main(unsigned k, std::int64_t a, double x, std::uint64_t q_cutoff, const CoefficientProvider& provider) {
  if (!(x >= 2.0)) throw DomainError("p2k2_main: x must be >= 2");
  return CorrelationMainTerm(k, x, q_cutoff, provider)(a);
}

} // namespace divzeta
