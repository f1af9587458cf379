#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "spreadpc/rational.hpp"

namespace spreadpc::report {

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv, table };

Format parse_format(const std::string& tag);

// Decimal numbers are rounded to this many significant digits before
// serialization.
struct Style {
  int precision = 15;
};

nlohmann::json decimal(double value, const Style& style);

// {"exact": "num/den", "decimal": ...}
nlohmann::json exact(const Rational& q, const Style& style);

// JSON: pretty-printed, keys sorted.
// CSV: two columns "path,value", one row per leaf in sorted key order; array
//      elements are addressed by index (e.g. dstar.2.exact).
// table: scalars as "path: value"; arrays of objects as aligned tables.
void write(std::ostream& out, const nlohmann::json& report, Format format);

}  // namespace spreadpc::report
