#include "spreadpc/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "spreadpc/errors.hpp"

namespace spreadpc::report {

namespace {

using nlohmann::json;

std::string leaf_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "." + std::to_string(i), rows);
    if (v.empty()) rows.emplace_back(path, "[]");
  } else {
    rows.emplace_back(path, leaf_text(v));
  }
}

bool is_record_array(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  return std::all_of(v.begin(), v.end(), [](const json& e) {
    return e.is_object() && std::none_of(e.begin(), e.end(), [](const json& f) {
      return f.is_object() || f.is_array();
    });
  });
}

void write_record_table(std::ostream& out, const std::string& title, const json& rows) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
    }
  }
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    width[c] = columns[c].size();
    for (const auto& row : rows) {
      if (row.contains(columns[c])) width[c] = std::max(width[c], leaf_text(row[columns[c]]).size());
    }
  }
  out << title << ":\n";
  auto line = [&](auto cell) {
    out << " ";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const std::string text = cell(c);
      out << ' ' << text << std::string(width[c] - text.size(), ' ');
    }
    out << '\n';
  };
  line([&](std::size_t c) { return columns[c]; });
  for (const auto& row : rows) {
    line([&](std::size_t c) { return row.contains(columns[c]) ? leaf_text(row[columns[c]]) : std::string(); });
  }
}

void write_table(std::ostream& out, const json& v, const std::string& path) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      write_table(out, it.value(), path.empty() ? it.key() : path + "." + it.key());
    }
  } else if (is_record_array(v)) {
    write_record_table(out, path, v);
  } else if (v.is_array()) {
    bool scalars = std::none_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
    if (scalars) {
      out << path << ": " << v.dump() << '\n';
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) write_table(out, v[i], path + "." + std::to_string(i));
    }
  } else {
    out << path << ": " << leaf_text(v) << '\n';
  }
}

}  // namespace

Format parse_format(const std::string& tag) {
  if (tag == "json") return Format::json;
  if (tag == "csv") return Format::csv;
  if (tag == "table") return Format::table;
  throw InvalidArgument("unknown format '" + tag + "' (expected json, csv or table)");
}

json decimal(double value, const Style& style) {
  if (!std::isfinite(value)) return nullptr;
  return round_significant(value, style.precision);
}

json exact(const Rational& q, const Style& style) {
  return json{{"exact", to_string(q)}, {"decimal", decimal(to_double(q), style)}};
}

void write(std::ostream& out, const json& report, Format format) {
  switch (format) {
    case Format::json:
      out << report.dump(2) << '\n';
      break;
    case Format::csv: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(report, "", rows);
      out << "path,value\n";
      for (const auto& [path, value] : rows) out << csv_quote(path) << ',' << csv_quote(value) << '\n';
      break;
    }
    case Format::table:
      write_table(out, report, "");
      break;
  }
}

}  // namespace spreadpc::report
