// divzeta: command-line front end.
//
// Exit status: 0 success, 1 computational failure (or failed verify
// property), 2 usage error.

#include "divzeta/correlation.hpp"
#include "divzeta/divisor_sieve.hpp"
#include "divzeta/errors.hpp"
#include "divzeta/main_term.hpp"
#include "divzeta/moments.hpp"
#include "divzeta/report.hpp"
#include "divzeta/selberg.hpp"
#include "divzeta/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace fs = std::filesystem;
using namespace divzeta;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// "1e6", "250000", "2.5e3" -> integer; anything fractional is rejected.
std::uint64_t parse_count(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != s.size() || !(v >= 0.0) || v != std::floor(v) || v > 9.0e18)
    throw UsageError("not a non-negative integer: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

double parse_real(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("not a finite number: '" + text + "'");
  return v;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_count(text);
    return {v, v};
  }
  const auto lo = parse_count(text.substr(0, dots)), hi = parse_count(text.substr(dots + 2));
  if (hi < lo) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("grid must look like 8x8");
  return {static_cast<unsigned>(parse_count(text.substr(0, x))), static_cast<unsigned>(parse_count(text.substr(x + 1)))};
}

// Integer flags go through this transform so scientific notation works.
const CLI::Validator kSciInt(
    [](std::string& s) {
      try {
        s = std::to_string(parse_count(s));
      } catch (const UsageError& e) {
        return std::string(e.what());
      }
      return std::string();
    },
    "INT", "sci-int");

std::map<std::string, std::string> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError(fmt::format("{}:{}: expected key = value", path.string(), number));
    out[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  return out;
}

struct Common {
  std::string config_path;
  std::string format = "csv";
  std::string out;
  std::string table_dir = ".";
  double epsilon = 0.05;
  std::uint64_t q_cutoff = 200;
  double step = 0.05;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c, bool with_out = true) {
  sub->add_option("--config", c.config_path, "key = value file; flags take precedence");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (with_out) sub->add_option("--out", c.out, "output file (default: standard output)");
  sub->add_option("--table-dir", c.table_dir, "directory for table files; env DIVZETA_TABLE_DIR");
  sub->add_option("--epsilon", c.epsilon, "lower-limit exponent eps");
  sub->add_option("--q-cutoff", c.q_cutoff, "largest q in the main-term sum")->transform(kSciInt);
  sub->add_option("--step", c.step, "moment quadrature step base (scaled by 1/log(2+T))");
  sub->add_option("--seed", c.seed, "RNG seed")->transform(kSciInt);
}

// Fill every option not given on the command line from the config file.
void apply_config(CLI::App* sub, const Common& c, const std::vector<CLI::App*>& all) {
  if (c.config_path.empty()) return;
  const auto config = read_config(c.config_path);
  for (const auto& [key, value] : config) {
    CLI::Option* opt = nullptr;
    bool known = false;
    for (auto* app : all)
      for (auto* o : app->get_options())
        if (o->get_single_name() == key) {
          known = true;
          if (app == sub) opt = o;
        }
    if (!known || key == "config") throw UsageError("unknown config key '" + key + "'");
    if (opt == nullptr || opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

void apply_env(CLI::App* sub, Common& c) {
  if (sub->get_option("--table-dir")->count() > 0) return;
  if (const char* env = std::getenv("DIVZETA_TABLE_DIR"); env != nullptr && *env != '\0') c.table_dir = env;
}

// Every option of the subcommand with its resolved value, in declaration order.
ConfigEcho echo(CLI::App* sub, const Common& c) {
  ConfigEcho out{{"command", sub->get_name()}};
  for (auto* o : sub->get_options()) {
    const std::string name = o->get_single_name();
    if (name.empty() || name == "help" || name == "config" || name == "out") continue;
    std::string value;
    if (name == "table-dir")
      value = c.table_dir;
    else if (o->count() > 0)
      value = o->as<std::string>();
    else
      value = o->get_default_str();
    out.emplace_back(name, value);
  }
  return out;
}

fs::path resolve_table_path(const std::string& path, const Common& c) {
  fs::path p(path);
  if (p.is_relative() && !fs::exists(p)) p = fs::path(c.table_dir) / p;
  return p;
}

DivisorTable obtain_table(unsigned k, std::uint64_t need, const std::string& table_path, const Common& c,
                          ConfigEcho& echo_out) {
  if (!table_path.empty()) {
    DivisorTable t = load_table(resolve_table_path(table_path, c));
    if (t.k() != k) throw DomainError(fmt::format("table holds d_{} but k = {} was requested", t.k(), k));
    if (t.n_max() < need) throw RangeError(fmt::format("table n_max = {} is below the required {}", t.n_max(), need));
    echo_out.emplace_back("table_source", "file");
    return t;
  }
  echo_out.emplace_back("table_source", fmt::format("sieve n_max={}", need));
  return sieve_dk(k, need);
}

void emit(const Common& c, const ConfigEcho& config, const Table& table) {
  const auto fmt_kind = parse_output_format(c.format);
  if (c.out.empty()) {
    write_table(std::cout, fmt_kind, config, table);
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw FormatError("cannot write " + c.out);
  write_table(f, fmt_kind, config, table);
}

std::string checksum_hex(std::uint32_t v) { return fmt::format("{:08x}", v); }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"divisor correlations, Selberg integrals and zeta moments"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Common c;

  // sieve
  unsigned sieve_k = 2;
  std::uint64_t sieve_n = 0;
  std::string sieve_out;
  auto* sieve = app.add_subcommand("sieve", "build and persist a d_k table");
  sieve->add_option("--k", sieve_k)->required()->check(CLI::Range(1u, 12u));
  sieve->add_option("--n", sieve_n, "n_max")->required()->transform(kSciInt)->check(CLI::PositiveNumber);
  sieve->add_option("--out", sieve_out, "table file (default: <table-dir>/d<k>_<n>.dktb)");
  add_common(sieve, c, false);

  // correlate
  unsigned corr_k = 2;
  std::uint64_t corr_x = 0;
  std::string corr_a = "1..10", corr_mode = "direct", provider_spec, table_path;
  bool no_delta = false;
  auto* corr = app.add_subcommand("correlate", "C_k(a) and Delta_k(x, a)");
  corr->add_option("--k", corr_k)->required()->check(CLI::Range(1u, 12u));
  corr->add_option("--x", corr_x)->required()->transform(kSciInt)->check(CLI::PositiveNumber);
  corr->add_option("--a", corr_a, "shift or range lo..hi");
  corr->add_option("--mode", corr_mode)->check(CLI::IsMember({"direct", "fft"}));
  corr->add_option("--provider", provider_spec, "q1-zeta | binary-classical | table:<csv> (default by k)");
  corr->add_flag("--no-delta", no_delta, "skip the main term");
  corr->add_option("--table", table_path, "d_k table file (default: sieve in memory)");
  add_common(corr, c);

  // selberg
  unsigned sel_k = 2;
  std::string sel_x, sel_h, sel_mode = "exact-piecewise";
  double sample_step = 0.01;
  std::optional<double> trivial_c;
  bool cross_check = false;
  auto* sel = app.add_subcommand("selberg", "Selberg integral J_k(x, h); comma lists give a scan");
  sel->add_option("--k", sel_k)->required()->check(CLI::Range(1u, 12u));
  sel->add_option("--x", sel_x, "x or comma list")->required();
  sel->add_option("--h", sel_h, "h or comma list")->required();
  sel->add_option("--mode", sel_mode)->check(CLI::IsMember({"exact-piecewise", "sampled"}));
  sel->add_option("--sample-step", sample_step, "midpoint step of the sampled mode");
  sel->add_option("--trivial-exponent", trivial_c, "c in x h^2 (log x)^c (default 2k - 1)");
  sel->add_flag("--cross-check", cross_check, "also run the other mode");
  sel->add_option("--table", table_path);
  add_common(sel, c);

  // moment
  unsigned mom_k = 1;
  std::string mom_T;
  double sigma = 0.5;
  std::uint64_t dump = 0;
  auto* mom = app.add_subcommand("moment", "I_k(T) or I_k(sigma, T)");
  mom->add_option("--k", mom_k)->required()->check(CLI::Range(1u, 12u));
  mom->add_option("--T", mom_T, "T or comma list")->required();
  mom->add_option("--sigma", sigma, "1/2 (critical line) or in (1/2, 1)");
  mom->add_option("--dump-samples", dump, "emit (t, |zeta|^2k) at this many points instead")->transform(kSciInt);
  add_common(mom, c);

  // gtilde
  unsigned gt_k = 2;
  double gt_M = 0, gt_Mp = 0, gt_T = 0;
  std::string grid_text = "8x8";
  auto* gt = app.add_subcommand("gtilde", "double-average statistic on an (x, t) grid");
  gt->add_option("--k", gt_k)->required()->check(CLI::Range(1u, 12u));
  gt->add_option("--M", gt_M)->required();
  gt->add_option("--M-prime", gt_Mp, "default 2M");
  gt->add_option("--T", gt_T)->required();
  gt->add_option("--grid", grid_text, "x-points x t-points");
  gt->add_option("--provider", provider_spec);
  gt->add_option("--table", table_path);
  add_common(gt, c);

  // smoothed
  unsigned sm_k = 2;
  double sm_M = 0, sm_Mp = 0, sm_T = 0;
  auto* sm = app.add_subcommand("smoothed", "smoothed correlation moment with a C^infinity bump");
  sm->add_option("--k", sm_k)->required()->check(CLI::Range(1u, 12u));
  sm->add_option("--M", sm_M)->required();
  sm->add_option("--M-prime", sm_Mp, "default 2M");
  sm->add_option("--T", sm_T)->required();
  sm->add_option("--table", table_path);
  add_common(sm, c);

  // theorem
  unsigned th_k = 3;
  double th_T = 200;
  std::uint64_t m_points = 4;
  auto* th = app.add_subcommand("theorem", "moment vs double-average comparison report");
  th->add_option("--k", th_k)->required()->check(CLI::Range(1u, 6u));
  th->add_option("--T", th_T)->required();
  th->add_option("--m-points", m_points)->transform(kSciInt);
  th->add_option("--grid", grid_text);
  th->add_option("--provider", provider_spec);
  th->add_option("--table", table_path);
  add_common(th, c);

  // verify
  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "run invariant suites");
  std::vector<std::string> suites = verify_suite_names();
  suites.push_back("all");
  ver->add_option("--suite", suite)->check(CLI::IsMember(suites));
  ver->add_option("--table", table_path, "also check this table file");
  add_common(ver, c);

  const std::vector<CLI::App*> all{sieve, corr, sel, mom, gt, sm, th, ver};
  CLI::App* sub = nullptr;
  try {
    app.parse(argc, argv);
    for (auto* s : all)
      if (s->parsed()) sub = s;
    apply_config(sub, c, all);
    apply_env(sub, c);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  // Provider default: the only one that applies to the requested k.
  auto provider_for = [&](unsigned k) {
    const std::string spec = provider_spec.empty() ? (k == 2 ? "binary-classical" : "q1-zeta") : provider_spec;
    return make_provider(spec);
  };
  // q1-zeta knows q = 1 only.
  auto cutoff_for = [&](const CoefficientProvider& p) { return p.id() == "q1-zeta" ? std::uint64_t{1} : c.q_cutoff; };

  try {
    ConfigEcho config = echo(sub, c);

    if (sub == sieve) {
      const fs::path path = sieve_out.empty() ? fs::path(c.table_dir) / fmt::format("d{}_{}.dktb", sieve_k, sieve_n)
                                              : fs::path(sieve_out);
      const DivisorTable table = sieve_dk(sieve_k, sieve_n);
      save_table(table, path);
      Table t{{"k", "n_max", "checksum", "path"}, {}};
      t.add({static_cast<std::uint64_t>(sieve_k), sieve_n, checksum_hex(table_checksum(table)), path.string()});
      emit(c, config, t);
      return 0;
    }

    if (sub == corr) {
      const auto [a_lo, a_hi] = parse_range(corr_a);
      const DivisorTable table = obtain_table(corr_k, corr_x + a_hi, table_path, c, config);
      CorrelationSeries series = correlate(table, corr_x, a_lo, a_hi, parse_correlation_mode(corr_mode));
      if (!no_delta) {
        const auto provider = provider_for(corr_k);
        const auto q = cutoff_for(*provider);
        series = delta(std::move(series), *provider, q);
        config.emplace_back("provider_id", series.provider_id);
        config.emplace_back("q_cutoff_used", std::to_string(q));
        config.emplace_back("main_tail_bound", format_double(series.main_tail_bound));
        config.emplace_back("main_term", series.conjectural ? "conjectural" : "theorem");
      }
      if (series.mode == CorrelationMode::fft) {
        config.emplace_back("fft_limbs", std::to_string(series.fft_limbs));
        config.emplace_back("fft_max_rounding_distance", format_double(series.max_rounding_distance));
      }
      emit(c, config, correlation_table(series));
      return 0;
    }

    if (sub == sel) {
      const auto xs = parse_real_list(sel_x), hs = parse_real_list(sel_h);
      double need = 0;
      for (double x : xs)
        for (double h : hs) need = std::max(need, std::floor(x + h) + 1);
      const DivisorTable table = obtain_table(sel_k, static_cast<std::uint64_t>(need), table_path, c, config);
      SelbergOptions options;
      options.step = sample_step;
      options.trivial_exponent = trivial_c;
      options.cross_check = cross_check;
      std::vector<SelbergResult> results;
      for (double x : xs)
        for (double h : hs)
          results.push_back(selberg_integral(table, x, h, c.epsilon, parse_selberg_mode(sel_mode), options));
      config.emplace_back("trivial_exponent", format_double(results.front().trivial_exponent));
      Table t = selberg_table(results);
      if (cross_check) {
        t.columns.push_back("mode_disagreement");
        for (std::size_t i = 0; i < results.size(); ++i) t.rows[i].push_back(results[i].mode_disagreement);
      }
      emit(c, config, t);
      return 0;
    }

    if (sub == mom) {
      const auto Ts = parse_real_list(mom_T);
      if (dump > 0) {
        if (Ts.size() != 1) throw UsageError("--dump-samples takes a single --T");
        emit(c, config, integrand_table(mom_k, sigma, 0.0, Ts.front(), static_cast<std::int64_t>(dump)));
        return 0;
      }
      std::vector<MomentEstimate> rows;
      for (double T : Ts) {
        const double step = c.step / std::log(2.0 + T);
        rows.push_back(sigma == 0.5 ? moment_on_line(mom_k, T, step) : moment_off_line(mom_k, sigma, T, step));
      }
      emit(c, config, moment_table(rows));
      return 0;
    }

    if (sub == gt) {
      const double Mp = gt_Mp > 0 ? gt_Mp : 2.0 * gt_M;
      const auto provider = provider_for(gt_k);
      const auto q = cutoff_for(*provider);
      const DivisorTable table =
          obtain_table(gt_k, g_tilde_table_size(Mp, gt_M, gt_T, c.epsilon), table_path, c, config);
      const auto rep = g_tilde(table, gt_M, Mp, gt_T, c.epsilon, *provider, q, parse_grid(grid_text));
      config.emplace_back("provider_id", rep.provider_id);
      config.emplace_back("q_cutoff_used", std::to_string(q));
      config.emplace_back("H", format_double(rep.H));
      config.emplace_back("main_term", rep.conjectural ? "conjectural" : "theorem");
      emit(c, config, g_tilde_table(rep));
      return 0;
    }

    if (sub == sm) {
      const double Mp = sm_Mp > 0 ? sm_Mp : 2.0 * sm_M;
      const double H = std::pow(sm_M, 1.0 + c.epsilon) / sm_T;
      const auto need = static_cast<std::uint64_t>(std::floor(Mp) + std::floor(H)) + 1;
      const DivisorTable table = obtain_table(sm_k, need, table_path, c, config);
      emit(c, config, smoothed_table(smoothed_moment(table, sm_M, Mp, sm_T, c.epsilon)));
      return 0;
    }

    if (sub == th) {
      const auto provider = provider_for(th_k);
      TheoremReportOptions options;
      options.epsilon = c.epsilon;
      options.m_points = static_cast<unsigned>(m_points);
      options.grid = parse_grid(grid_text);
      options.q_cutoff = cutoff_for(*provider);
      options.step = c.step / std::log(2.0 + th_T);
      const DivisorTable table = obtain_table(
          th_k, theorem_report_table_size(th_k, th_T, c.epsilon, options.m_points), table_path, c, config);
      const auto rep = theorem_report(th_k, th_T, table, *provider, options);
      config.emplace_back("provider_id", rep.provider_id);
      config.emplace_back("q_cutoff_used", std::to_string(options.q_cutoff));
      config.emplace_back("main_term", rep.conjectural ? "conjectural" : "theorem");
      emit(c, config, theorem_table(rep));
      return 0;
    }

    if (sub == ver) {
      VerifyOptions options;
      options.seed = c.seed;
      if (!table_path.empty()) options.table = resolve_table_path(table_path, c);
      const auto results = run_verify(suite, options);
      Table t{{"suite", "property", "status", "detail"}, {}};
      bool ok = true;
      for (const auto& r : results) {
        t.add({r.suite, r.name, std::string(r.pass ? "pass" : "FAIL"), r.detail});
        ok = ok && r.pass;
      }
      emit(c, config, t);
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ProviderDomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
