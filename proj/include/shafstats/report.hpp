#pragma once

#include <string>
#include <variant>
#include <vector>

#include "shafstats/arith.hpp"

namespace shafstats {

using Cell = std::variant<i64, u64, double, bool, std::string>;

// Flat table emitted by every CLI subcommand.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Six significant digits, "%.6g".
std::string format_real(double v);

// Header row then data rows, LF line endings.
std::string render_csv(const Report& report);

// {"command": ..., "columns": [...], "rows": [{column: value, ...}, ...]}
// with keys in column order.
std::string render_json(const Report& report);

}  // namespace shafstats
