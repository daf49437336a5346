#include "divzeta/selberg.hpp"

#include "divzeta/errors.hpp"
#include "divzeta/ramanujan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace divzeta {

const char* to_string(SelbergMode mode) { return mode == SelbergMode::sampled ? "sampled" : "exact-piecewise"; }

SelbergMode parse_selberg_mode(const std::string& text) {
  if (text == "exact-piecewise" || text == "exact") return SelbergMode::exact_piecewise;
  if (text == "sampled") return SelbergMode::sampled;
  throw DomainError("unknown selberg mode '" + text + "'");
}

std::vector<std::uint64_t> prefix_sums(const DivisorTable& table) {
  const auto v = table.values();
  std::vector<std::uint64_t> out(v.size(), 0);
  for (std::size_t n = 1; n < v.size(); ++n) out[n] = out[n - 1] + v[n];
  return out;
}

namespace {

double trivial_bound(double x, double h, double exponent) { return x * h * h * std::pow(std::log(x), exponent); }

SelbergResult selberg_from_prefix(unsigned k, std::span<const std::uint64_t> prefix, const MainTermPolynomial& poly,
                                  double x, double h, double epsilon, SelbergMode mode,
                                  const SelbergOptions& options) {
  if (!(h > 0.0)) throw DomainError("selberg_integral: h must be > 0");
  if (!(h < x)) throw DomainError("selberg_integral: need h < x");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("selberg_integral: epsilon must lie in [0, 1)");
  const double lower = h * std::pow(x, epsilon);
  if (!(lower < x)) throw DomainError(fmt::format("selberg_integral: lower limit h x^eps = {} is not below x = {}", lower, x));
  if (std::floor(x + h) >= static_cast<double>(prefix.size()))
    throw RangeError(fmt::format("selberg_integral: x + h = {} exceeds table n_max = {}", x + h, prefix.size() - 1));

  kernels::SelbergProblem problem;
  problem.prefix = prefix;
  problem.h = h;
  problem.lower = lower;
  problem.upper = x;
  problem.expected = [&poly, h](double t) { return poly.long_sum(t + h) - poly.long_sum(t); };

  SelbergResult r;
  r.k = k;
  r.x = x;
  r.h = h;
  r.epsilon = epsilon;
  r.lower_limit = lower;
  r.mode = mode;
  r.step = mode == SelbergMode::sampled ? options.step : 0.0;
  r.sums = mode == SelbergMode::sampled ? kernels::omp::selberg_sampled(problem, options.step)
                                        : kernels::omp::selberg_piecewise(problem);
  r.value = r.sums.j;
  r.trivial_exponent = options.trivial_exponent.value_or(2.0 * k - 1.0);
  r.trivial_bound = trivial_bound(x, h, r.trivial_exponent);
  r.mode_disagreement = std::numeric_limits<double>::quiet_NaN();
  if (options.cross_check) {
    const auto other = mode == SelbergMode::sampled ? kernels::omp::selberg_piecewise(problem)
                                                    : kernels::omp::selberg_sampled(problem, options.step);
    const double exact = mode == SelbergMode::sampled ? other.j : r.value;
    r.mode_disagreement = std::abs(r.value - other.j) / std::max(exact, std::numeric_limits<double>::min());
  }
  return r;
}

double fejer_pair_sum(const std::vector<double>& by_shift, double h) {
  // h f(0) + sum_{1 <= a < h} (h - a) f(a), where by_shift already holds f(a) + f(-a) for a >= 1
  double s = h * by_shift[0];
  for (std::size_t a = 1; a < by_shift.size(); ++a) s += (h - static_cast<double>(a)) * by_shift[a];
  return s;
}

} // namespace

SelbergResult selberg_integral(const DivisorTable& table, double x, double h, double epsilon, SelbergMode mode,
                               const SelbergOptions& options) {
  const auto prefix = prefix_sums(table);
  return selberg_from_prefix(table.k(), prefix, residue_polynomial(table.k()), x, h, epsilon, mode, options);
}

DispersionRecord dispersion_decompose(const DivisorTable& table, double x, double h, double epsilon,
                                      const CoefficientProvider* provider, std::uint64_t q_cutoff) {
  const unsigned k = table.k();
  const SelbergResult sel = selberg_integral(table, x, h, epsilon);
  const auto xi = static_cast<std::uint64_t>(std::floor(x));

  DispersionRecord rec;
  rec.k = k;
  rec.x = x;
  rec.h = h;
  rec.lower_limit = sel.lower_limit;
  rec.lhs = sel.value;
  rec.quad_form = sel.sums.s_sq;
  rec.int_m_sq = sel.sums.m_sq;

  const auto cw = kernels::omp::window_correlation(table.values(), xi, sel.lower_limit, h);
  std::vector<double> window(cw.size());
  for (std::size_t a = 0; a < cw.size(); ++a) window[a] = static_cast<double>(cw[a]) * (a == 0 ? 1.0 : 2.0);
  rec.window_sum = fejer_pair_sum(window, h);
  rec.boundary = rec.quad_form - rec.window_sum;
  rec.rhs_full = rec.window_sum - rec.int_m_sq;
  rec.residual = std::abs(rec.lhs - rec.rhs_full);

  rec.max_dk = table.max_value(static_cast<std::uint64_t>(std::floor(x + h)));
  const double md = static_cast<double>(rec.max_dk);
  rec.tail_budget = 4.0 * h * h * md * md;
  rec.diagonal_budget = x * h;

  if (provider != nullptr) {
    const CorrelationMainTerm main_term(k, static_cast<double>(xi), q_cutoff, *provider);
    const std::uint64_t a_top = cw.size() - 1;
    const auto corr = correlate(table, xi, 0, a_top, CorrelationMode::direct);
    std::vector<double> deltas(cw.size()), mains(cw.size());
    for (std::uint64_t a = 0; a <= a_top; ++a) {
      const double m = main_term(static_cast<std::int64_t>(a));
      const double plus = static_cast<double>(corr.values[a]) - m;
      if (a == 0) {
        deltas[a] = plus;
        mains[a] = m;
      } else {
        const double minus = static_cast<double>(correlate_negative_shift(table, xi, a)) - m;
        deltas[a] = plus + minus;
        mains[a] = 2.0 * m;
      }
    }
    rec.rhs_delta = fejer_pair_sum(deltas, h);
    rec.eq1_sum = fejer_pair_sum(mains, h);
    const RkPolynomial r1 = rk_polynomial(k, 1, *provider);
    rec.eq1_main = h * h *
                   (integrate_log_polynomial_squared(r1.coeffs, x) -
                    integrate_log_polynomial_squared(r1.coeffs, sel.lower_limit));
    rec.has_delta = true;
    rec.provider_id = provider->id();
  }
  return rec;
}

DoubleSumCheck double_sum_identity_check(const DivisorTable& table, std::uint64_t x, std::uint64_t t,
                                         const CoefficientProvider& provider, std::uint64_t q_cutoff,
                                         double epsilon) {
  if (t == 0) throw DomainError("double_sum_identity_check: t must be >= 1");
  const unsigned k = table.k();
  const CorrelationMainTerm main_term(k, static_cast<double>(x), q_cutoff, provider);
  const auto corr = correlate(table, x, 0, t, CorrelationMode::direct);

  std::vector<double> plus(t + 1), minus(t + 1);
  for (std::uint64_t a = 0; a <= t; ++a) {
    const double m = main_term(static_cast<std::int64_t>(a));
    plus[a] = static_cast<double>(corr.values[a]) - m;
    minus[a] = (a == 0 ? static_cast<double>(corr.values[0]) : static_cast<double>(correlate_negative_shift(table, x, a))) - m;
  }

  DoubleSumCheck c;
  c.k = k;
  c.x = x;
  c.t = t;
  const double tt = static_cast<double>(t);

  std::vector<std::uint64_t> weight(t + 1, 0);
  double total = 0.0, mean = 0.0, dbl = 0.0;
  unsigned __int128 corr_nested = 0;
  for (std::uint64_t h = 1; h <= t; ++h) {
    for (std::uint64_t a = 1; a <= t; ++a) total += plus[a];
    for (std::uint64_t a = 1; a <= h; ++a) {
      mean += plus[a];
      ++weight[a];
      corr_nested += corr.values[a];
    }
    for (std::uint64_t a = h + 1; a <= t; ++a) dbl += plus[a];
  }
  c.total = total / tt;
  c.mean_part = mean / tt;
  c.double_part = dbl / tt;
  c.split_residual = c.total - c.mean_part - c.double_part;

  double exchanged = 0.0, lag_weighted = 0.0, plain = 0.0;
  unsigned __int128 corr_exchanged = 0;
  c.weights_exact = true;
  for (std::uint64_t a = 1; a <= t; ++a) {
    exchanged += static_cast<double>(t - a + 1) * plus[a];
    lag_weighted += static_cast<double>(t - a) * plus[a];
    plain += plus[a];
    corr_exchanged += static_cast<unsigned __int128>(t - a + 1) * corr.values[a];
    c.weights_exact = c.weights_exact && weight[a] == t - a + 1;
  }
  c.exchanged = exchanged / tt;
  c.cesaro = lag_weighted / tt + plain / tt;
  c.exchange_residual = c.mean_part - c.exchanged;
  c.correlation_exact = corr_nested == corr_exchanged;

  double sym = tt * plus[0];
  for (std::uint64_t a = 1; a <= t; ++a) {
    sym += (tt - static_cast<double>(a)) * (plus[a] + minus[a]);
    c.max_tail = std::max(c.max_tail, std::abs(minus[a] - plus[a]));
  }
  c.symmetric = sym;
  c.diagonal = plus[0];
  c.selberg = selberg_integral(table, static_cast<double>(x), tt, epsilon).value;
  c.symmetric_residual = std::abs(c.symmetric - c.selberg);

  const double log_x = std::log(static_cast<double>(x));
  const double md = static_cast<double>(table.max_value(x + t));
  c.diagonal_budget = tt * static_cast<double>(x) * std::pow(log_x, static_cast<double>(k * k - 1));
  c.tail_budget = tt * tt * tt * md * md;
  return c;
}

std::uint64_t g_tilde_table_size(double M_prime, double M, double T, double epsilon) {
  const double H = std::pow(M, 1.0 + epsilon) / T;
  return static_cast<std::uint64_t>(std::ceil(M_prime) + std::ceil(H)) + 2;
}

DoubleAverageReport g_tilde(const DivisorTable& table, double M, double M_prime, double T, double epsilon,
                            const CoefficientProvider& provider, std::uint64_t q_cutoff, const GridSpec& grid) {
  if (!(M > 0.0 && T > 0.0)) throw DomainError("g_tilde: M and T must be positive");
  if (!(M < M_prime && M_prime <= 2.0 * M)) throw DomainError("g_tilde: need M < M' <= 2M");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("g_tilde: epsilon must lie in (0, 1)");
  if (std::pow(T, 1.0 + epsilon) > M) throw DomainError("g_tilde: need T^{1+eps} <= M");
  if (grid.x_points == 0 || grid.t_points == 0) throw DomainError("g_tilde: empty grid");

  const unsigned k = table.k();
  DoubleAverageReport rep;
  rep.k = k;
  rep.M = M;
  rep.M_prime = M_prime;
  rep.T = T;
  rep.epsilon = epsilon;
  rep.H = std::pow(M, 1.0 + epsilon) / T;
  rep.provider_id = provider.id();
  rep.q_cutoff = q_cutoff;
  rep.grid = grid;
  rep.tails_estimate = rep.H * rep.H;
  rep.conjectural = k >= 3;

  if (table.n_max() < g_tilde_table_size(M_prime, M, T, epsilon))
    throw RangeError(fmt::format("g_tilde: table n_max = {} is below the required {}", table.n_max(),
                                 g_tilde_table_size(M_prime, M, T, epsilon)));

  // Probe i of n sits at exponent i/n, so the 2n-grid contains the n-grid.
  std::set<std::uint64_t> xs, ts;
  for (unsigned i = 1; i <= grid.x_points; ++i)
    xs.insert(static_cast<std::uint64_t>(std::llround(M * std::pow(M_prime / M, static_cast<double>(i) / grid.x_points))));
  for (unsigned j = 1; j <= grid.t_points; ++j)
    ts.insert(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(std::pow(rep.H, static_cast<double>(j) / grid.t_points)))));
  const std::uint64_t t_max = *ts.rbegin();

  const auto prefix = prefix_sums(table);
  const MainTermPolynomial poly = residue_polynomial(k);

  for (const std::uint64_t x : xs) {
    const auto mode = t_max > 32 ? CorrelationMode::fft : CorrelationMode::direct;
    CorrelationSeries corr = correlate(table, x, 1, t_max, mode);
    attach_deltas(corr, CorrelationMainTerm(k, static_cast<double>(x), q_cutoff, provider));

    for (const std::uint64_t t : ts) {
      const double tt = static_cast<double>(t);
      GTildeProbe probe;
      probe.x = x;
      probe.t = t;
      // sum_{h<=t} sum_{h<a<=t} Delta(a) = sum_{a<=t} (a - 1) Delta(a)
      double inner = 0.0;
      for (std::uint64_t a = 2; a <= t; ++a) inner += static_cast<double>(a - 1) * corr.delta_at(a);
      probe.delta_part = std::abs(inner) / tt;
      probe.j_part =
          selberg_from_prefix(k, prefix, poly, static_cast<double>(x), tt, epsilon, SelbergMode::exact_piecewise, {})
              .value /
          tt;
      probe.trivial_j_bound = trivial_bound(static_cast<double>(x), tt, 2.0 * k - 1.0) / tt;
      rep.probes.push_back(probe);
      if (rep.probes.size() == 1 || probe.total() > rep.g_tilde) {
        rep.g_tilde = probe.total();
        rep.j_part = probe.j_part;
        rep.delta_part = probe.delta_part;
        rep.argsup_x = x;
        rep.argsup_t = t;
      }
    }
  }
  rep.theorem_side = T * (1.0 + rep.g_tilde / M);
  return rep;
}

} // namespace divzeta
