#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "spreadpc/census.hpp"
#include "spreadpc/census_io.hpp"
#include "spreadpc/cli.hpp"
#include "spreadpc/continuum.hpp"
#include "spreadpc/critical.hpp"
#include "spreadpc/errors.hpp"
#include "spreadpc/kernels.hpp"
#include "spreadpc/report.hpp"

namespace spreadpc::cli {

namespace {

using nlohmann::json;
using report::Style;

// Exact strings are only emitted for the short end of the U table; beyond
// that the rationals run to thousands of digits.
constexpr int kExactUTableMax = 16;

// Series order used for the leading-order predictions in `critical`.
constexpr int kLeadingTableOrder = 60;

struct RunConfig {
  int d = 0;
  int L = 0;
  std::string norm = "linf";
  std::string model = "lt";
  int n_max = 0;
  int max_vertices = 0;
  double tol = kDefaultSolverTolerance;
  std::string out_path;
  std::string format = "json";
  std::string l_range = "1..10";
  std::string from;
  int precision = 15;
  std::uint64_t budget = EnumerationOptions{}.budget;
  bool approximate = false;
};

std::pair<int, int> parse_l_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InvalidArgument("--l-range must look like A..B (got '" + text + "')");
  auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidArgument("--l-range must look like A..B (got '" + text + "')");
    return v;
  };
  const int a = parse(text.substr(0, dots));
  const int b = parse(text.substr(dots + 2));
  if (a < 1) throw InvalidArgument("--l-range: L must be >= 1");
  if (b < a) throw InvalidArgument("--l-range: A must not exceed B");
  if (b - a > 10000) throw InvalidArgument("--l-range spans more than 10000 values");
  return {a, b};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

Style style_of(const RunConfig& c) {
  require(c.precision >= 1 && c.precision <= 17, "--precision must be in 1..17");
  return Style{c.precision};
}

json header(const std::string& command) {
  return json{{"command", command}, {"schema_version", report::kSchemaVersion}};
}

// Writes the report to --out or `out`.
void emit(const RunConfig& c, std::ostream& out, const json& body) {
  const auto format = report::parse_format(c.format);
  if (c.out_path.empty()) {
    report::write(out, body, format);
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + c.out_path + "' for writing");
  report::write(file, body, format);
  if (!file) throw IoError("failed writing '" + c.out_path + "'");
}

json tail_json(const TailEstimate& tail, const Style& style) {
  return json{{"valid", tail.valid},
              {"estimate", tail.valid ? report::decimal(tail.value, style) : json(nullptr)},
              {"decay_exponent", tail.valid ? report::decimal(tail.exponent, style) : json(nullptr)}};
}

json leading_json(const LeadingValue& v, const Style& style) {
  return json{{"coefficient", to_string(v.coefficient)},
              {"e_power", v.e_power},
              {"value", report::decimal(v.value, style)},
              {"truncation_error", report::decimal(v.error, style)}};
}

json expansion_json(const InverseEExpansion& v, const Style& style) {
  return json{{"inv_e", to_string(v.inv_e)},
              {"inv_e2", to_string(v.inv_e2)},
              {"value", report::decimal(v.value, style)},
              {"truncation_error", report::decimal(v.error, style)}};
}

json series_json(const PowerSeries& s, const Style& style) {
  json coeffs = json::array();
  for (int k = 0; k <= s.truncation_order; ++k) {
    json row = report::exact(s[k], style);
    row["k"] = k;
    coeffs.push_back(row);
  }
  return json{{"meaning", meaning_tag(s.meaning)},
              {"truncation_order", s.truncation_order},
              {"coefficients", coeffs}};
}

json cmd_kernel(const RunConfig& c) {
  const Style style = style_of(c);
  require(c.n_max >= 2 && c.n_max <= 5000, "--nmax must be in 2..5000");
  const Norm norm = parse_norm(c.norm);
  const StepKernel kernel = build_kernel(c.d, c.L, norm, c.approximate);
  const ConvolutionTable table = conv_table(kernel, c.n_max);

  json out = header("kernel");
  out["parameters"] = {{"d", c.d}, {"L", c.L}, {"norm", norm_tag(norm)}, {"nmax", c.n_max}};
  out["lambda_size"] = kernel.lambda_size().get_str();
  json rows = json::array();
  for (int n = 0; n <= c.n_max; ++n) {
    json row = report::exact(table.values[n], style);
    row["n"] = n;
    rows.push_back(row);
  }
  out["dstar"] = rows;
  out["tail"] = tail_json(table.tail, style);

  json sums = json::array();
  json notes = json::array();
  if (c.d <= 2) {
    notes.push_back("S_{>=t}(o) diverges for d <= 2");
  } else if (!table.tail.valid) {
    notes.push_back("tail estimate unavailable; increase --nmax for S_{>=t}(o)");
  } else {
    for (int t : {2, 3}) {
      const TailSum s = s_geq(table, t);
      sums.push_back({{"t", t},
                      {"exact_partial", to_string(s.exact)},
                      {"decimal", report::decimal(s.value, style)},
                      {"truncation_error", report::decimal(s.error, style)}});
    }
  }
  out["s_geq"] = sums;
  out["notes"] = notes;
  return out;
}

json cmd_constants(const RunConfig& c) {
  const Style style = style_of(c);
  require(c.d >= 5, "constants need d >= 5 (got d = " + std::to_string(c.d) + ")");
  require(c.d <= 1000, "--d must be <= 1000");
  require(c.n_max >= 6 && c.n_max <= 2000, "--nmax must be in 6..2000");
  const auto [L_first, L_last] = parse_l_range(c.l_range);
  const ConstantsReport r = constants_report(c.d, c.n_max, L_first, L_last);

  json out = header("constants");
  out["parameters"] = {{"d", c.d}, {"nmax", c.n_max}, {"l_range", {L_first, L_last}}};
  json u = json::array();
  for (int n = 1; n <= c.n_max; ++n) {
    const Rational& q = r.u_table[n - 1];
    json row = n <= kExactUTableMax ? report::exact(q, style) : json{{"decimal", report::decimal(to_double(q), style)}};
    row["n"] = n;
    u.push_back(row);
  }
  out["u_table"] = u;
  auto constant_json = [&](const SeriesConstant& s) {
    return json{{"value", report::decimal(s.value, style)},
                {"truncation_error", report::decimal(s.truncation_error, style)},
                {"decay_exponent", report::decimal(s.tail_exponent, style)},
                {"nmax", s.n_max}};
  };
  out["c_lt"] = constant_json(r.lt);
  out["c_la"] = {{"value", report::decimal(r.la.value, style)},
                 {"truncation_error", report::decimal(r.la.truncation_error, style)},
                 {"correction", constant_json(r.la.correction)}};
  out["truncation_error"] = report::decimal(r.truncation_error, style);
  json preds = json::array();
  for (const auto& p : r.pc_predictions) {
    preds.push_back({{"model", model_tag(p.model)},
                     {"L", p.L},
                     {"pc", report::decimal(p.value, style)},
                     {"remainder", "O(L^-" + std::to_string(p.remainder_order) + ")"}});
  }
  out["pc_predictions"] = preds;
  out["warnings"] = r.warnings;
  return out;
}

void cmd_enumerate(const RunConfig& c, std::ostream& out) {
  require(c.max_vertices >= 1 && c.max_vertices <= 64, "--max-vertices must be in 1..64");
  require(c.budget >= 1, "--budget must be positive");
  const Model model = parse_model(c.model);
  const StepKernel kernel = build_kernel(c.d, c.L, parse_norm(c.norm), c.approximate);
  EnumerationOptions opts;
  opts.budget = c.budget;
  const PolymerCensus census = enumerate(model, kernel, {Point(c.d, 0)}, c.max_vertices, opts);
  if (c.out_path.empty()) {
    write_census(out, census);
  } else {
    write_census_file(c.out_path, census);
  }
}

json cmd_critical(const RunConfig& c) {
  const Style style = style_of(c);
  require(!c.from.empty(), "--from is required");
  require(c.tol > 0.0 && c.tol < 1.0, "--tol must be in (0, 1)");
  require(c.budget >= 1, "--budget must be positive");
  const PolymerCensus census = read_census_file(c.from);
  if (!census.rooted_at_origin()) throw InvalidArgument("critical needs a census rooted at the origin");
  const StepKernel kernel = census.kernel();

  const PowerSeries g = one_point_series(census);
  const PowerSeries chi = chi_series(census);
  const P1Solution p1 = solve_p1(g, c.tol);

  EnumerationOptions opts;
  opts.budget = c.budget;
  const TwoPointField field = two_point_field(census.model, kernel, census.max_vertices, opts);
  const PowerSeries field_g = field.at(Point(census.d, 0));
  if (field_g.coefficients != g.coefficients) {
    throw InvalidArgument("census counts do not match a fresh enumeration of the same parameters");
  }

  std::optional<ConvolutionTable> table;
  if (census.d >= 3 && census.norm == Norm::sup) table = conv_table(kernel, kLeadingTableOrder);
  const DecompositionReport dec = gh_decompose(census.model, g, neighbor_series(field, kernel),
                                               kernel.lambda_size(), p1, table ? &*table : nullptr);

  json out = header("critical");
  out["census"] = {{"model", model_tag(census.model)},
                   {"d", census.d},
                   {"L", census.L},
                   {"norm", norm_tag(census.norm)},
                   {"max_vertices", census.max_vertices},
                   {"source", c.from}};
  out["series"] = {{"g", series_json(g, style)}, {"chi", series_json(chi, style)}};
  out["p1"] = {{"value", report::decimal(p1.p1, style)},
               {"residual", report::decimal(p1.residual, style)},
               {"truncation_order", p1.truncation_order},
               {"bracket", {report::decimal(p1.bracket.first, style), report::decimal(p1.bracket.second, style)}},
               {"iterations", p1.iterations},
               {"tolerance", c.tol}};

  json d = {{"G", report::decimal(dec.G, style)},
            {"g", report::decimal(dec.g, style)},
            {"truncation_order", dec.truncation_order}};
  d[census.model == Model::trees ? "H_effective" : "H_minus_I"] = report::decimal(dec.H_effective, style);
  json leading = {{"g0_closed", report::exact(dec.leading.g0_closed, style)}};
  if (dec.leading.g_leading) leading["g_leading"] = leading_json(*dec.leading.g_leading, style);
  if (dec.leading.h_leading) leading["h_leading"] = leading_json(*dec.leading.h_leading, style);
  if (dec.leading.i_leading) leading["i_leading"] = leading_json(*dec.leading.i_leading, style);
  if (table && census.d >= 5) {
    leading["p1_lattice"] = expansion_json(predict_p1_lattice(census.model, *table), style);
    leading["table_nmax"] = kLeadingTableOrder;
  }
  d["leading"] = leading;
  out["decomposition"] = d;

  const RatioEstimate ratio = pc_ratio_estimate(chi);
  json ratios = json::array();
  for (std::size_t i = 0; i < ratio.index.size(); ++i) {
    ratios.push_back({{"k", ratio.index[i]}, {"ratio", report::decimal(ratio.ratio[i], style)}});
  }
  json rich = json::array();
  for (std::size_t i = 0; i < ratio.richardson_index.size(); ++i) {
    rich.push_back({{"k", ratio.richardson_index[i]}, {"richardson", report::decimal(ratio.richardson[i], style)}});
  }
  out["ratio_estimates"] = {{"ratio", ratios}, {"richardson", rich}, {"skipped", ratio.skipped}};

  if (census.model == Model::trees) {
    const auto growth = growth_pc_estimate(tn_table(census), kernel.lambda_size());
    json rows = json::array();
    for (std::size_t n = 0; n < growth.size(); ++n) {
      rows.push_back({{"n", n + 1}, {"pc", report::decimal(growth[n], style)}});
    }
    out["growth_estimates"] = rows;
  }

  const HathBound hath = hath_ub(field, census.L, p1.p1);
  out["diagnostics"] = {{"p", report::decimal(p1.p1, style)},
                        {"triangle_lb", report::decimal(triangle_lb(kernel.lambda_size(), p1.p1), style)},
                        {"hath_ub",
                         {{"value", report::decimal(hath.value, style)},
                          {"window_radius", hath.window_radius},
                          {"points", hath.points},
                          {"window_complete", hath.window_complete}}}};
  return out;
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto results = run_checks(&err);
  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    rows.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  json body = header("check");
  body["checks"] = rows;
  body["passed"] = all;
  emit(c, out, body);
  return all ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--format", c.format, "Output format: json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
  cmd->add_option("--precision", c.precision, "Significant digits for decimal values");
}

void add_kernel_shape(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--d", c.d, "Lattice dimension")->required();
  cmd->add_option("--L", c.L, "Spread-out range")->required();
  cmd->add_option("--norm", c.norm, "Norm defining the step set: linf or l2");
  cmd->add_flag("--approximate", c.approximate, "Allow the euclidean norm beyond d = 4");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical fugacity expansion for spread-out lattice trees and animals", "spreadpc"};
  app.require_subcommand(1);
  RunConfig c;

  auto* kernel = app.add_subcommand("kernel", "Return probabilities D^{*n}(o) and tail sums");
  add_kernel_shape(kernel, c);
  int kernel_nmax = 40;
  kernel->add_option("--nmax", kernel_nmax, "Largest n in the table");
  add_common(kernel, c);

  auto* constants = app.add_subcommand("constants", "Continuum constants C_LT, C_LA and p_c predictions");
  constants->add_option("--d", c.d, "Lattice dimension (>= 5)")->required();
  int constants_nmax = kDefaultSeriesOrder;
  constants->add_option("--nmax", constants_nmax, "Series truncation order");
  constants->add_option("--l-range", c.l_range, "Range of L for predictions, A..B");
  add_common(constants, c);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Exact census of trees or animals containing o");
  add_kernel_shape(enumerate_cmd, c);
  enumerate_cmd->add_option("--model", c.model, "lt (trees) or la (animals)");
  enumerate_cmd->add_option("--max-vertices", c.max_vertices, "Largest polymer size")->required();
  enumerate_cmd->add_option("--budget", c.budget, "Enumeration node budget");
  enumerate_cmd->add_option("--out", c.out_path, "Census file to write");

  auto* critical = app.add_subcommand("critical", "p1, G/H decomposition and diagnostics from a census");
  critical->add_option("--from", c.from, "Census file written by enumerate")->required();
  critical->add_option("--tol", c.tol, "Fixed-point tolerance");
  critical->add_option("--budget", c.budget, "Node budget for the two-point enumeration");
  add_common(critical, c);

  auto* check = app.add_subcommand("check", "Run the cross-module consistency suite");
  check->add_option("--format", c.format, "Summary format: json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  check->add_option("--out", c.out_path, "Write the summary to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (kernel->parsed()) {
      c.n_max = kernel_nmax;
      emit(c, out, cmd_kernel(c));
    } else if (constants->parsed()) {
      c.n_max = constants_nmax;
      emit(c, out, cmd_constants(c));
    } else if (enumerate_cmd->parsed()) {
      cmd_enumerate(c, out);
    } else if (critical->parsed()) {
      emit(c, out, cmd_critical(c));
    } else if (check->parsed()) {
      return cmd_check(c, out, err);
    }
  } catch (const ResourceError& e) {
    err << "error: resource budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::bad_alloc&) {
    err << "error: resource budget exceeded: out of memory\n";
    return kExitBudget;
  }
  return kExitOk;
}

}  // namespace spreadpc::cli
