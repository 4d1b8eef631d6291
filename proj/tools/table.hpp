// table.hpp: flat row tables and their CSV/JSON emission.
#pragma once

#include "json.hpp"

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace pairzero::cli {

// monostate is a not-applicable field: "nan" in CSV, null in JSON
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

// %.17g, with "nan", "inf" and "-inf" for non-finite values
std::string format_double(double x);

// Header line, then one line per row. Strings are quoted only when they
// contain a comma, quote or newline.
void write_csv(const Table& t, std::ostream& out);

// {"meta": ..., "rows": [{column: value, ...}, ...]} with columns in order.
void write_json(const Table& t, const nlohmann::ordered_json& meta, std::ostream& out);

}  // namespace pairzero::cli
