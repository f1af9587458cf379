#include "spreadpc/census_io.hpp"

#include <fstream>
#include <sstream>

#include "spreadpc/errors.hpp"

namespace spreadpc {

namespace {

constexpr const char* kMagic = "# spreadpc census";
constexpr int kFormatVersion = 1;

std::string format_point(const Point& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i]);
  }
  return s;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw IoError("census: malformed " + what + " '" + text + "'");
  }
  if (used != text.size()) throw IoError("census: malformed " + what + " '" + text + "'");
  return v;
}

Point parse_point(const std::string& text) {
  Point x;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) x.push_back(parse_int(part, "coordinate"));
  if (x.empty()) throw IoError("census: empty point");
  return x;
}

// Reads "key value" and checks the key.
std::string expect_field(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("census: missing '" + key + "' line");
  const auto space = line.find(' ');
  if (space == std::string::npos || line.substr(0, space) != key) {
    throw IoError("census: expected '" + key + "', got '" + line + "'");
  }
  return line.substr(space + 1);
}

}  // namespace

void write_census(std::ostream& out, const PolymerCensus& census) {
  out << kMagic << '\n';
  out << "format " << kFormatVersion << '\n';
  out << "model " << model_tag(census.model) << '\n';
  out << "d " << census.d << '\n';
  out << "L " << census.L << '\n';
  out << "norm " << norm_tag(census.norm) << '\n';
  out << "required ";
  for (std::size_t i = 0; i < census.required.size(); ++i) {
    if (i) out << ';';
    out << format_point(census.required[i]);
  }
  out << '\n';
  out << "max_vertices " << census.max_vertices << '\n';
  out << "records " << census.counts.size() << '\n';
  for (const auto& [key, count] : census.counts) {
    out << key.first << ' ' << key.second << ' ' << count.get_str(10) << '\n';
  }
}

std::string census_to_string(const PolymerCensus& census) {
  std::ostringstream out;
  write_census(out, census);
  return out.str();
}

PolymerCensus read_census(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw IoError("census: missing header line");
  if (parse_int(expect_field(in, "format"), "format") != kFormatVersion) {
    throw IoError("census: unsupported format version");
  }
  PolymerCensus census;
  try {
    census.model = parse_model(expect_field(in, "model"));
    census.d = parse_int(expect_field(in, "d"), "d");
    census.L = parse_int(expect_field(in, "L"), "L");
    census.norm = parse_norm(expect_field(in, "norm"));
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("census: ") + e.what());
  }
  if (census.d < 1 || census.L < 1) throw IoError("census: d and L must be >= 1");
  std::stringstream req(expect_field(in, "required"));
  std::string part;
  while (std::getline(req, part, ';')) {
    auto x = parse_point(part);
    if (static_cast<int>(x.size()) != census.d) throw IoError("census: required point has wrong dimension");
    census.required.push_back(std::move(x));
  }
  if (census.required.empty()) throw IoError("census: empty required set");
  census.max_vertices = parse_int(expect_field(in, "max_vertices"), "max_vertices");
  if (census.max_vertices < 1) throw IoError("census: max_vertices must be >= 1");
  const int records = parse_int(expect_field(in, "records"), "records");
  for (int i = 0; i < records; ++i) {
    if (!std::getline(in, line)) throw IoError("census: truncated record list");
    std::istringstream rec(line);
    std::string nv, ne, count, extra;
    if (!(rec >> nv >> ne >> count) || (rec >> extra)) {
      throw IoError("census: malformed record '" + line + "'");
    }
    Integer value;
    if (value.set_str(count, 10) != 0 || value < 0) throw IoError("census: malformed count '" + count + "'");
    const auto key = std::make_pair(parse_int(nv, "n_vertices"), parse_int(ne, "n_edges"));
    if (!census.counts.emplace(key, value).second) throw IoError("census: duplicate record");
  }
  if (std::getline(in, line) && !line.empty()) throw IoError("census: trailing data after records");
  return census;
}

PolymerCensus read_census_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open census file '" + path + "'");
  return read_census(in);
}

void write_census_file(const std::string& path, const PolymerCensus& census) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write census file '" + path + "'");
  write_census(out, census);
  if (!out) throw IoError("failed writing census file '" + path + "'");
}

}  // namespace spreadpc
