#include "divzeta/report.hpp"

#include "divzeta/errors.hpp"

#include <cmath>

#include <fmt/format.h>
#include <fmt/printf.h>
#include <json.hpp>

namespace divzeta {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw DomainError(fmt::format("Table: row has {} cells, expected {}", row.size(), columns.size()));
  rows.push_back(std::move(row));
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + text + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::sprintf("%.17g", v);
}

std::string format_cell(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(V{}, c);
}

void write_csv(std::ostream& out, const ConfigEcho& config, const Table& table) {
  for (const auto& [key, value] : config) out << "# " << key << " = " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const ConfigEcho& config, const Table& table) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["config"] = json::object();
  for (const auto& [key, value] : config) doc["config"][key] = value;
  doc["rows"] = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& name = table.columns[i];
      struct V {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(std::int64_t v) const { return v; }
        json operator()(std::uint64_t v) const { return v; }
        json operator()(double v) const { return std::isfinite(v) ? json(v) : json(format_double(v)); }
        json operator()(bool v) const { return v; }
        json operator()(const std::string& v) const { return v; }
      };
      r[name] = std::visit(V{}, row[i]);
    }
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, OutputFormat format, const ConfigEcho& config, const Table& table) {
  if (format == OutputFormat::json)
    write_json(out, config, table);
  else
    write_csv(out, config, table);
}

Table correlation_table(const CorrelationSeries& series) {
  Table t{{"a", "C", "Delta"}, {}};
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const Cell delta = series.has_deltas() ? Cell{series.deltas[i]} : Cell{};
    t.add({series.a_lo + i, series.values[i], delta});
  }
  return t;
}

Table selberg_table(const std::vector<SelbergResult>& results) {
  Table t{{"x", "h", "J", "trivial_bound"}, {}};
  for (const auto& r : results) t.add({r.x, r.h, r.value, r.trivial_bound});
  return t;
}

Table g_tilde_table(const DoubleAverageReport& report) {
  Table t{{"row", "x", "t", "j_part", "delta_part", "total", "trivial_j_bound", "tails_estimate", "theorem_side"}, {}};
  for (const auto& p : report.probes)
    t.add({std::string("probe"), p.x, p.t, p.j_part, p.delta_part, p.total(), p.trivial_j_bound, Cell{}, Cell{}});
  t.add({std::string("summary"), report.argsup_x, report.argsup_t, report.j_part, report.delta_part, report.g_tilde,
         Cell{}, report.tails_estimate, report.theorem_side});
  return t;
}

Table moment_table(const std::vector<MomentEstimate>& estimates) {
  Table t{{"k", "sigma", "T", "value", "error_estimate"}, {}};
  for (const auto& m : estimates)
    t.add({static_cast<std::uint64_t>(m.k), m.sigma, m.T, m.value, m.error_estimate});
  return t;
}

Table smoothed_table(const SmoothedMoment& m) {
  Table t{{"k", "M", "M_prime", "T", "epsilon", "H", "value", "imag", "symmetrized_imag", "chebyshev_nodes"}, {}};
  t.add({static_cast<std::uint64_t>(m.k), m.M, m.M_prime, m.T, m.epsilon, m.H, m.value, m.imag, m.symmetrized_imag,
         static_cast<std::int64_t>(m.chebyshev_nodes)});
  return t;
}

Table theorem_table(const TheoremReport& r) {
  Table t{{"row", "M", "H", "g_tilde", "g_over_M", "argsup_x", "argsup_t", "tails_estimate", "lhs", "lhs_error",
           "rhs_shape", "tail_figure", "admissible", "theta"},
          {}};
  for (const auto& g : r.m_grid)
    t.add({std::string("M"), g.M, g.H, g.g_tilde, g.g_tilde / g.M, g.argsup_x, g.argsup_t, g.tails_estimate, Cell{},
           Cell{}, Cell{}, Cell{}, Cell{}, Cell{}});
  t.add({std::string("summary"), Cell{}, Cell{}, Cell{}, r.max_g_over_m, Cell{}, Cell{}, Cell{}, r.lhs.value,
         r.lhs.error_estimate, r.rhs_shape, r.tail_figure, r.admissible,
         r.carlson ? Cell{r.carlson->theta()} : Cell{}});
  return t;
}

Table integrand_table(unsigned k, double sigma, double t_lo, double t_hi, std::int64_t samples) {
  if (samples < 1) throw DomainError("integrand_table: need at least one sample");
  Table t{{"t", fmt::format("abs_zeta_pow_{}", 2 * k)}, {}};
  for (std::int64_t i = 0; i < samples; ++i) {
    const double x = samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    t.add({x, moment_integrand(k, sigma, x)});
  }
  return t;
}

} // namespace divzeta
