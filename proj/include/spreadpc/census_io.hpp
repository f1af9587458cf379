#pragma once

#include <iosfwd>
#include <string>

#include "spreadpc/census.hpp"

namespace spreadpc {

// Line-oriented census format:
//
//   # spreadpc census
//   format 1
//   model lt
//   d 2
//   L 1
//   norm linf
//   required 0,0
//   max_vertices 6
//   records 11
//   1 0 1
//   2 1 8
//   ...
//
// `required` lists points separated by ';' with comma-separated coordinates.
// Each record is "n_vertices n_edges count" in decimal, sorted by
// (n_vertices, n_edges). Writing is deterministic, so write(read(text)) ==
// text for any file produced by write_census.
void write_census(std::ostream& out, const PolymerCensus& census);
std::string census_to_string(const PolymerCensus& census);

PolymerCensus read_census(std::istream& in);
PolymerCensus read_census_file(const std::string& path);
void write_census_file(const std::string& path, const PolymerCensus& census);

}  // namespace spreadpc
