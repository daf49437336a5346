#pragma once

// Tabular output shared by the CLI and the tests. A table is a fixed column
// list plus rows of cells; it is written either as CSV (preceded by
// "# key = value" lines echoing the run configuration) or as JSON
// {"config": {...}, "rows": [{column: value, ...}, ...]}.

#include "divzeta/correlation.hpp"
#include "divzeta/moments.hpp"
#include "divzeta/selberg.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace divzeta {

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  void add(std::vector<Cell> row);
};

/// Ordered key/value echo of the resolved configuration.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(const std::string& text);

/// %.17g; non-finite values print as nan / inf / -inf.
std::string format_double(double v);
std::string format_cell(const Cell& c);

void write_csv(std::ostream& out, const ConfigEcho& config, const Table& table);
void write_json(std::ostream& out, const ConfigEcho& config, const Table& table);
void write_table(std::ostream& out, OutputFormat format, const ConfigEcho& config, const Table& table);

// Fixed column layouts.
Table correlation_table(const CorrelationSeries& series);             // a, C, Delta
Table selberg_table(const std::vector<SelbergResult>& results);       // x, h, J, trivial_bound
Table g_tilde_table(const DoubleAverageReport& report);               // probe rows + summary row
Table moment_table(const std::vector<MomentEstimate>& estimates);     // k, sigma, T, value, error_estimate
Table smoothed_table(const SmoothedMoment& m);
Table theorem_table(const TheoremReport& report);                     // one row per M + summary row
Table integrand_table(unsigned k, double sigma, double t_lo, double t_hi, std::int64_t samples);  // t, |zeta|^2k

} // namespace divzeta
