#include "divzeta/verify.hpp"

#include "divzeta/divisor_sieve.hpp"
#include "divzeta/errors.hpp"
#include "divzeta/main_term.hpp"
#include "divzeta/ramanujan.hpp"
#include "divzeta/selberg.hpp"
#include "divzeta/zeta.hpp"

#include <cmath>
#include <algorithm>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <tuple>
#include <random>

#include <fmt/format.h>

namespace divzeta {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// h with three decimals in (0, hi]
double decimal_h(Rng& rng, std::int64_t hi) { return static_cast<double>(uniform(rng, 1, hi * 1000)) / 1000.0; }

class Suite {
public:
  Suite(std::string name, std::vector<PropertyResult>& out) : name_(std::move(name)), out_(out) {}

  // Runs `trials` instances of `check`; the first failing instance is reported.
  void property(const std::string& name, int trials, const std::function<std::string(int)>& check) {
    PropertyResult r{name_, name, true, fmt::format("{} instances", trials)};
    try {
      for (int i = 0; i < trials; ++i) {
        const std::string failure = check(i);
        if (!failure.empty()) {
          r.pass = false;
          r.detail = fmt::format("instance {}: {}", i, failure);
          break;
        }
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = fmt::format("exception: {}", e.what());
    }
    out_.push_back(std::move(r));
  }

private:
  std::string name_;
  std::vector<PropertyResult>& out_;
};

void ramanujan_suite(std::vector<PropertyResult>& out, Rng& rng) {
  Suite s("ramanujan", out);
  s.property("mobius_form_equals_exponential_sum", 500, [&](int) -> std::string {
    const auto q = static_cast<std::uint64_t>(uniform(rng, 1, 300));
    const auto a = uniform(rng, -2000, 2000);
    const auto m = ramanujan_mobius(q, a), e = ramanujan_expsum(q, a);
    return m == e ? "" : fmt::format("q={} a={}: {} vs {}", q, a, m, e);
  });
  s.property("c_q(0)_equals_phi", 200, [&](int) -> std::string {
    const auto q = static_cast<std::uint64_t>(uniform(rng, 1, 5000));
    return ramanujan_mobius(q, 0) == static_cast<std::int64_t>(euler_phi(q)) ? "" : fmt::format("q={}", q);
  });
  s.property("c_q(1)_equals_mobius", 200, [&](int) -> std::string {
    const auto q = static_cast<std::uint64_t>(uniform(rng, 1, 5000));
    return ramanujan_mobius(q, 1) == mobius(q) ? "" : fmt::format("q={}", q);
  });
  s.property("multiplicative_in_q", 200, [&](int) -> std::string {
    std::uint64_t q1, q2;
    do {
      q1 = static_cast<std::uint64_t>(uniform(rng, 1, 100));
      q2 = static_cast<std::uint64_t>(uniform(rng, 1, 100));
    } while (std::gcd(q1, q2) != 1);
    const auto a = uniform(rng, -500, 500);
    return ramanujan_mobius(q1 * q2, a) == ramanujan_mobius(q1, a) * ramanujan_mobius(q2, a)
               ? ""
               : fmt::format("q1={} q2={} a={}", q1, q2, a);
  });
}

void fejer_suite(std::vector<PropertyResult>& out, Rng& rng) {
  Suite s("fejer", out);
  s.property("multiples_closed_form_exact", 500, [&](int) -> std::string {
    const Rational h(uniform(rng, 1, 200'000), 1000);
    const auto d = static_cast<std::uint64_t>(uniform(rng, 1, 300));
    return fejer_sum_multiples(h, d) == fejer_sum_multiples_direct(h, d) ? "" : fmt::format("h={} d={}", h.str(), d);
  });
  s.property("ramanujan_weighted_closed_form", 500, [&](int) -> std::string {
    const double h = decimal_h(rng, 100);
    const auto q = static_cast<std::uint64_t>(uniform(rng, 1, 200));
    const double c = fejer_ramanujan_sum(h, q), d = fejer_ramanujan_sum_direct(h, q);
    return std::abs(c - d) <= 1e-9 ? "" : fmt::format("h={} q={}: {} vs {}", h, q, c, d);
  });
  s.property("ramanujan_weighted_exact", 200, [&](int) -> std::string {
    const Rational h(uniform(rng, 1, 100'000), 1000);
    const auto q = static_cast<std::uint64_t>(uniform(rng, 1, 200));
    return fejer_ramanujan_sum(h, q) == fejer_ramanujan_sum_direct(h, q) ? "" : fmt::format("h={} q={}", h.str(), q);
  });
  s.property("transform_is_kernel_square", 500, [&](int) -> std::string {
    const auto h = uniform(rng, 1, 200);
    const auto q = static_cast<std::uint64_t>(uniform(rng, 1, 200));
    const auto j = uniform(rng, 0, static_cast<std::int64_t>(q) - 1);
    const double v = fejer_transform(h, q, j);
    std::complex<double> k = 0.0;
    for (std::int64_t m = 0; m < h; ++m)
      k += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * m) % static_cast<std::int64_t>(q)) / q);
    const double sq = std::norm(k);
    if (v < -1e-9) return fmt::format("h={} q={} j={}: negative {}", h, q, j, v);
    return std::abs(v - sq) <= 1e-9 ? "" : fmt::format("h={} q={} j={}: {} vs {}", h, q, j, v, sq);
  });
}

void dispersion_suite(std::vector<PropertyResult>& out, Rng& rng) {
  Suite s("dispersion", out);
  constexpr std::uint64_t kX = 20'000;
  const DivisorTable d2 = sieve_dk(2, kX + 256), d3 = sieve_dk(3, kX + 256);
  const BinaryClassicalProvider binary;
  const ZetaQ1Provider q1;

  auto instance = [&](int i) {
    const bool k3 = i % 2 == 1;
    const double x = static_cast<double>(uniform(rng, 5'000, kX));
    const double h = static_cast<double>(uniform(rng, 200, 20'000)) / 100.0;
    return std::tuple<const DivisorTable&, const CoefficientProvider&, std::uint64_t, double, double>(
        k3 ? d3 : d2, k3 ? static_cast<const CoefficientProvider&>(q1) : binary, k3 ? 1 : 200, x, h);
  };
  s.property("window_bookkeeping_within_budget", 10, [&](int i) -> std::string {
    const auto [table, provider, q_cutoff, x, h] = instance(i);
    const auto r = dispersion_decompose(table, x, h, 0.05, &provider, q_cutoff);
    if (!r.within_budget())
      return fmt::format("k={} x={} h={}: residual {} > budget {}", table.k(), x, h, r.residual, r.budget());
    const double eq1 = 10.0 * h * h * h * std::pow(std::log(x), 2.0 * table.k());
    return std::abs(r.rhs_full - r.rhs_delta) <= eq1
               ? ""
               : fmt::format("k={} x={} h={}: |rhs_full - rhs_delta| = {} > {}", table.k(), x, h,
                             std::abs(r.rhs_full - r.rhs_delta), eq1);
  });
  s.property("summation_exchange_exact", 10, [&](int i) -> std::string {
    const auto [table, provider, q_cutoff, x, h] = instance(i);
    const auto t = static_cast<std::uint64_t>(std::ceil(h));
    const auto c = double_sum_identity_check(table, static_cast<std::uint64_t>(x), t, provider, q_cutoff);
    if (!c.weights_exact || !c.correlation_exact) return fmt::format("k={} x={} t={}: rearrangement mismatch", table.k(), x, t);
    const double scale = 1e-9 * (1.0 + std::abs(c.total) + std::abs(c.mean_part) + std::abs(c.double_part));
    return std::abs(c.split_residual) <= scale && std::abs(c.exchange_residual) <= scale
               ? ""
               : fmt::format("k={} x={} t={}: residuals {} {}", table.k(), x, t, c.split_residual, c.exchange_residual);
  });
}

void laurent_suite(std::vector<PropertyResult>& out, Rng&) {
  Suite s("laurent", out);
  const double g = euler_gamma();
  s.property("zeta_pole_and_constant", 1, [&](int) -> std::string {
    const auto z = zeta_laurent(1, 4);
    if (z.coeff(-1) != 1.0) return "residue is not 1";
    if (std::abs(z.coeff(0) - g) > 1e-15) return "constant term is not gamma";
    return std::abs(z.coeff(1) + static_cast<double>(stieltjes_constant(1))) <= 1e-15 ? "" : "linear term is not -gamma_1";
  });
  s.property("power_series_multiplies", 4, [&](int i) -> std::string {
    const unsigned k = 2 + static_cast<unsigned>(i);
    const auto one = zeta_laurent(1, 10), prev = zeta_laurent(k - 1, 10), cur = zeta_laurent(k, 10);
    for (int j = -static_cast<int>(k); j < 10 - static_cast<int>(k); ++j) {
      double s = 0.0;
      for (int a = -1; a <= j + static_cast<int>(k) - 1; ++a) s += one.coeff(a) * prev.coeff(j - a);
      if (std::abs(s - cur.coeff(j)) > 1e-12 * (1.0 + std::abs(s))) return fmt::format("k={} j={}: {} vs {}", k, j, cur.coeff(j), s);
    }
    return "";
  });
  s.property("divisor_problem_polynomial", 1, [&](int) -> std::string {
    const auto p = residue_polynomial(2);
    return p.coeffs.size() == 2 && std::abs(p.coeffs[0] - (2.0 * g - 1.0)) < 1e-15 && p.coeffs[1] == 1.0 ? "" : "P_2 != L + 2 gamma - 1";
  });
  s.property("long_sum_envelope", 2, [&](int i) -> std::string {
    const unsigned k = 2 + static_cast<unsigned>(i);
    const std::uint64_t x = 100'000;
    const auto table = sieve_dk(k, x);
    double sum = 0.0;
    for (std::uint64_t n = 1; n <= x; ++n) sum += static_cast<double>(table[n]);
    const double lx = std::log(static_cast<double>(x));
    const double envelope = k == 2 ? 10.0 * std::cbrt(x) * lx : 10.0 * std::pow(x, 2.0 / 3.0) * lx * lx;
    const double err = std::abs(sum - residue_polynomial(k).long_sum(static_cast<double>(x)));
    return err <= envelope ? "" : fmt::format("k={}: error {} > {}", k, err, envelope);
  });
  s.property("q1_density_matches_binary_classical", 1, [&](int) -> std::string {
    const auto a = rk_polynomial(2, 1, ZetaQ1Provider{}), b = rk_polynomial(2, 1, BinaryClassicalProvider{});
    for (double L : {0.0, 3.0, 11.5})
      if (std::abs(a(L) - b(L)) > 1e-12) return fmt::format("L={}: {} vs {}", L, a(L), b(L));
    return "";
  });
}

void zeta_suite(std::vector<PropertyResult>& out, Rng& rng) {
  Suite s("zeta", out);
  s.property("value_at_one_half", 1, [&](int) -> std::string {
    const double v = zeta({0.5, 0.0}).real();
    return std::abs(v + 1.4603545088095868) <= 1e-9 ? "" : fmt::format("{}", v);
  });
  s.property("first_zero", 1, [&](int) -> std::string {
    const double v = std::abs(zeta_critical(14.134725));
    return v <= 1e-4 ? "" : fmt::format("|zeta| = {}", v);
  });
  s.property("conjugate_symmetry", 50, [&](int) -> std::string {
    const double t = static_cast<double>(uniform(rng, 1, 1'000'000)) / 1000.0;
    const auto d = std::abs(zeta_critical(-t) - std::conj(zeta_critical(t)));
    return d <= 1e-9 ? "" : fmt::format("t={}: {}", t, d);
  });
  s.property("riemann_siegel_agrees_with_euler_maclaurin", 20, [&](int) -> std::string {
    const double t = static_cast<double>(uniform(rng, 200'000, 2'000'000)) / 1000.0;
    const auto d = std::abs(zeta_critical(t) - zeta({0.5, t}, 1e-10));
    return d <= 1e-6 ? "" : fmt::format("t={}: {}", t, d);
  });
  // rows of the mpmath reference table
  s.property("reference_values", 5, [&](int i) -> std::string {
    static constexpr double rows[5][3] = {{0.37, -0.75210397405900160031, -0.9276706315428642297},
                                          {14.37, -0.011683141581218078013, 0.18957882834980673769},
                                          {200.1, 3.7610108295153320721, -3.7224289884877081034},
                                          {1000.125, 0.9867624369731907429, 1.2151232968577817712},
                                          {99999.5, 2.0932412983850437973, 1.6395033255833794078}};
    const auto d = std::abs(zeta_critical(rows[i][0]) - std::complex<double>(rows[i][1], rows[i][2]));
    return d <= 1e-6 ? "" : fmt::format("t={}: {}", rows[i][0], d);
  });
}

void table_suite(std::vector<PropertyResult>& out, Rng& rng, const std::filesystem::path& path) {
  Suite s("table", out);
  std::optional<DivisorTable> table;
  s.property("load", 1, [&](int) -> std::string {
    table.emplace(load_table(path));
    return "";
  });
  if (!table) return;
  s.property("matches_factorization", 200, [&](int i) -> std::string {
    const auto n = i == 0 ? 1 : static_cast<std::uint64_t>(uniform(rng, 1, static_cast<std::int64_t>(table->n_max())));
    const auto want = dk_single(table->k(), n);
    return (*table)[n] == want ? "" : fmt::format("n={}: {} vs {}", n, (*table)[n], want);
  });
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"ramanujan", "fejer", "dispersion", "laurent", "zeta"};
  return names;
}

std::vector<PropertyResult> run_verify(const std::string& suite, const VerifyOptions& options) {
  const auto& names = verify_suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw DomainError("unknown verify suite '" + suite + "'");
  std::vector<PropertyResult> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& name = names[i];
    if (suite != "all" && suite != name) continue;
    // each suite gets its own stream so results do not depend on which others ran
    Rng rng(options.seed + 0x9e3779b97f4a7c15ull * (i + 1));
    if (name == "ramanujan") ramanujan_suite(out, rng);
    if (name == "fejer") fejer_suite(out, rng);
    if (name == "dispersion") dispersion_suite(out, rng);
    if (name == "laurent") laurent_suite(out, rng);
    if (name == "zeta") zeta_suite(out, rng);
  }
  if (options.table) {
    Rng rng(options.seed);
    table_suite(out, rng, *options.table);
  }
  return out;
}

} // namespace divzeta
