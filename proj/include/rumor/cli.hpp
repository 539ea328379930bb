#pragma once

// Command-line front end. Every command builds one result table (CSV) or
// one JSON document and writes it to stdout or --out.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rumor/distributions.hpp"
#include "rumor/errors.hpp"
#include "rumor/monte_carlo.hpp"
#include "rumor/params.hpp"
#include "rumor/progeny.hpp"
#include "rumor/range.hpp"
#include "rumor/simulate.hpp"
#include "rumor/survival.hpp"
#include "rumor/validate.hpp"

namespace rumor::cli {

using Json = nlohmann::ordered_json;

/// Largest i_max for which progeny masses are computed as exact fractions.
inline constexpr unsigned kExactProgenyLimit = 2000;

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

inline std::string render_csv(const CsvTable& table) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

/// Result of one command: a document, a table, and the exit status.
struct Output {
  Json document;
  CsvTable table;
  ExitCode status = ExitCode::kSuccess;
};

enum class Format { kJson, kCsv };

struct CommonFlags {
  std::string format = "json";
  std::string out_path;
  int d = 2;
  int k = 1;
};

namespace detail {

inline Json estimate_json(const Estimate& e) {
  Json j;
  j["value"] = e.value;
  j["std_error"] = e.std_error ? Json(*e.std_error) : Json(nullptr);
  j["sample_size"] = e.sample_size;
  return j;
}

inline std::vector<std::string> estimate_row(const std::string& name, const Estimate& e) {
  return {name, format_double(e.value), e.std_error ? format_double(*e.std_error) : "", std::to_string(e.sample_size)};
}

inline Json pmf_rows(const ExactPmf& pmf) {
  Json rows = Json::array();
  for (const auto& e : pmf.entries()) {
    rows.push_back({{"i", e.value}, {"mass", to_fraction_string(e.mass)}, {"value", to_double(e.mass)}});
  }
  return rows;
}

inline std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw InvalidArgument(std::string("malformed value '") + item + "' in " + flag);
    }
    values.push_back(v);
  }
  if (values.empty()) throw InvalidArgument(std::string(flag) + " needs at least one value");
  return values;
}

/// "a..b" or a single integer.
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || s[0] == '-' || used != s.size()) throw InvalidArgument("malformed --n value '" + text + "'");
    return static_cast<std::uint64_t>(v);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto n = number(text);
    return {n, n};
  }
  const auto lo = number(text.substr(0, dots));
  const auto hi = number(text.substr(dots + 2));
  if (hi < lo) throw InvalidArgument("--n range is empty: " + text);
  if (hi - lo > 1'000'000) throw InvalidArgument("--n range longer than 10^6 entries");
  return {lo, hi};
}

inline std::uint32_t parse_depth(const std::string& text) {
  if (text == "inf") return kUnboundedDepth;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || text[0] == '-' || used != text.size() || v >= kUnboundedDepth) {
    throw InvalidArgument("--depth must be a non-negative integer or 'inf' (got '" + text + "')");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline Output cmd_pmf(const ModelParams& p, const std::string& law) {
  if (law != "offspring" && law != "root" && law != "both") {
    throw InvalidArgument("--law must be offspring, root or both (got '" + law + "')");
  }
  Output o;
  o.document = {{"command", "pmf"}, {"d", p.d}, {"k", p.k}};
  o.table.header = {"law", "i", "mass", "value"};
  auto emit = [&](const char* name, const ExactPmf& pmf) {
    o.document[name] = {{"mean", to_fraction_string(pmf.mean())}, {"rows", detail::pmf_rows(pmf)}};
    for (const auto& e : pmf.entries()) {
      o.table.rows.push_back({name, std::to_string(e.value), to_fraction_string(e.mass), format_double(to_double(e.mass))});
    }
  };
  if (law != "root") emit("offspring", offspring_pmf(p));
  if (law != "offspring") emit("root", root_pmf(p));
  return o;
}

inline Output cmd_theta(const std::vector<int>& ds, const std::vector<int>& ks, bool table, double tol) {
  for (int k : ks) {
    for (int d : ds) validate(ModelParams{d, k});
  }
  Output o;
  o.table.header = {"d", "k", "theta", "theta_6dp", "psi", "error"};
  if (!table) {
    if (ds.size() != 1 || ks.size() != 1) throw InvalidArgument("lists of d or k need --table");
    const ModelParams p{ds[0], ks[0]};
    const double theta = survival_probability(p, tol);
    const FixedPointResult fp = extinction_fixed_point(p, tol);
    o.document = {{"command", "theta"}, {"d", p.d},          {"k", p.k},
                  {"theta", theta},     {"theta_6dp", format_fixed6(theta)}, {"psi", fp.psi},
                  {"iterations", fp.iterations}, {"subcritical", fp.subcritical}};
    o.table.rows.push_back({std::to_string(p.d), std::to_string(p.k), format_double(theta), format_fixed6(theta),
                            format_double(fp.psi), ""});
    return o;
  }
  const ThetaTable t = theta_table(ds, ks, tol);
  Json matrix = Json::array();
  Json cells = Json::array();
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    Json row = Json::array();
    for (std::size_t di = 0; di < ds.size(); ++di) {
      const ThetaCell& c = t.at(ki, di);
      if (!c.theta) o.status = ExitCode::kNonConvergence;
      row.push_back(c.theta ? Json(format_fixed6(*c.theta)) : Json(nullptr));
      cells.push_back({{"d", c.params.d},
                       {"k", c.params.k},
                       {"theta", c.theta ? Json(*c.theta) : Json(nullptr)},
                       {"psi", c.psi ? Json(*c.psi) : Json(nullptr)},
                       {"error", c.error}});
      o.table.rows.push_back({std::to_string(c.params.d), std::to_string(c.params.k),
                              c.theta ? format_double(*c.theta) : "", c.theta ? format_fixed6(*c.theta) : "",
                              c.psi ? format_double(*c.psi) : "", c.error});
    }
    matrix.push_back(row);
  }
  o.document = {{"command", "theta"}, {"d_values", ds}, {"k_values", ks}, {"table", matrix}, {"cells", cells}};
  return o;
}

inline Output cmd_progeny(const ModelParams& p, unsigned i_max, std::ostream& err) {
  validate(p);
  if (i_max == 0) throw InvalidArgument("--imax must be ≥ 1");
  const Rational mu = offspring_mean(p);
  const bool subcritical = mu < 1;
  if (!subcritical) {
    err << "warning: offspring mean " << to_double(mu) << " ≥ 1; the progeny law is defective\n";
  }
  Output o;
  o.table.header = {"i", "mass", "value", "cumulative"};
  Json rows = Json::array();
  double cumulative = 0.0;
  const bool exact = i_max <= kExactProgenyLimit;
  if (exact) {
    const ExactPmf pmf = progeny_pmf(p, i_max);
    Rational running = 0;
    for (const auto& e : pmf.entries()) {
      running += e.mass;
      const std::string mass = to_fraction_string(e.mass);
      const double value = to_double(e.mass);
      rows.push_back({{"i", e.value}, {"mass", mass}, {"value", value}});
      o.table.rows.push_back({std::to_string(e.value), mass, format_double(value), format_double(to_double(running))});
    }
    cumulative = to_double(running);
  } else {
    const auto dense = progeny_pmf_float(p, i_max);
    for (std::size_t i = 1; i < dense.size(); ++i) {
      cumulative += dense[i];
      rows.push_back({{"i", i}, {"mass", nullptr}, {"value", dense[i]}});
      o.table.rows.push_back({std::to_string(i), "", format_double(dense[i]), format_double(cumulative)});
    }
  }
  o.document = {{"command", "progeny"}, {"d", p.d},     {"k", p.k},
                {"i_max", i_max},       {"exact", exact}, {"offspring_mean", to_fraction_string(mu)},
                {"subcritical", subcritical}};
  o.document["cumulative_mass"] = cumulative;
  o.document["deficit"] = 1.0 - cumulative;
  if (subcritical) {
    const ProgenyMeans m = progeny_mean(p);
    o.document["mean_descendants"] = to_fraction_string(m.mean_descendants);
    o.document["mean_informed_total"] = to_fraction_string(m.mean_informed_total);
  } else {
    o.document["mean_descendants"] = nullptr;
    o.document["mean_informed_total"] = nullptr;
  }
  o.document["rows"] = rows;
  return o;
}

inline Output cmd_range(const ModelParams& p, const std::string& n_spec, bool expected, double series_tol) {
  validate(p);
  if (p.d != 2 || p.k != 1) throw InvalidArgument("range bounds defined only for d=2, k=1");
  const auto [lo, hi] = detail::parse_range(n_spec);
  Output o;
  Json rows = Json::array();
  CsvTable by_n{{"n", "alpha1", "alpha2", "range_cdf_lower", "range_cdf_upper"}, {}};
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const auto a = extinction_time_cdf_bounds(n);
    const auto r = range_cdf_bounds(n);
    rows.push_back({{"n", n}, {"alpha1", a.lower}, {"alpha2", a.upper}, {"range_cdf_lower", r.lower},
                    {"range_cdf_upper", r.upper}});
    by_n.rows.push_back({std::to_string(n), format_double(a.lower), format_double(a.upper), format_double(r.lower),
                         format_double(r.upper)});
  }
  o.document = {{"command", "range"}, {"d", 2}, {"k", 1}, {"rows", rows}};
  o.table = std::move(by_n);
  if (expected) {
    const ExpectedRangeBounds e = expected_range_bounds(series_tol);
    Json series = Json::array();
    CsvTable enclosure{{"quantity", "power", "cdf_bound", "lower", "upper"}, {}};
    for (const auto& s : e.series) {
      const char* source = s.from_upper_cdf_bound ? "alpha2" : "alpha1";
      series.push_back({{"power", s.power}, {"cdf_bound", source}, {"lower", s.lower}, {"upper", s.upper}});
      enclosure.rows.push_back(
          {"series", std::to_string(s.power), source, format_double(s.lower), format_double(s.upper)});
    }
    enclosure.rows.push_back({"expected_range", "", "", format_double(e.lower), format_double(e.upper)});
    o.document["expected_range"] = {{"lower", e.lower}, {"upper", e.upper}, {"terms", e.terms}, {"series", series}};
    // CSV carries one table; --expected selects the enclosure.
    o.table = std::move(enclosure);
  }
  return o;
}

struct SimulateFlags {
  std::uint64_t runs = 10'000;
  std::string depth = "50";
  std::string engine = "genealogy";
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  bool explore_all = false;
  bool single_ancestor = false;
  std::size_t budget = kDefaultVertexBudget;
};

inline Output cmd_simulate(const ModelParams& p, const SimulateFlags& f) {
  validate(p);
  McOptions opt;
  opt.runs = f.runs;
  opt.depth_limit = detail::parse_depth(f.depth);
  opt.engine = parse_engine(f.engine);
  opt.base_seed = f.seed;
  opt.jobs = f.jobs == 0 ? default_jobs() : f.jobs;
  opt.stop_at_boundary = !f.explore_all;
  opt.single_ancestor = f.single_ancestor;
  opt.vertex_budget = f.budget;
  const McSummary s = monte_carlo(p, opt);

  Output o;
  if (s.failures > 0) o.status = ExitCode::kResourceCap;
  const Json depth = opt.depth_limit == kUnboundedDepth ? Json("inf") : Json(opt.depth_limit);
  o.document = {{"command", "simulate"},
                {"d", p.d},
                {"k", p.k},
                {"runs", opt.runs},
                {"depth", depth},
                {"engine", std::string(engine_name(opt.engine))},
                {"seed", opt.base_seed},
                {"stop_at_boundary", opt.stop_at_boundary},
                {"single_ancestor", opt.single_ancestor},
                {"vertex_budget", opt.vertex_budget},
                {"completed", s.completed},
                {"failures", s.failures},
                {"censored", s.censored},
                {"steps", s.steps}};
  o.document["survival_to_depth"] = detail::estimate_json(s.survival_to_depth());
  o.document["censoring_rate"] = detail::estimate_json(s.censoring_rate());
  o.document["mean_informed_total"] = detail::estimate_json(s.mean_informed_total());
  // With early stopping the histograms cover only the explored part of each tree.
  o.document["histograms_complete"] = !opt.stop_at_boundary;
  o.document["root_offspring_pmf"] = s.root_offspring_pmf();
  o.document["offspring_pmf"] = s.offspring_pmf();
  o.document["max_depth_pmf"] = s.max_depth_pmf();

  o.table.header = {"quantity", "value", "std_error", "sample_size"};
  auto count_row = [&](const char* name, std::uint64_t v) { o.table.rows.push_back({name, std::to_string(v), "", ""}); };
  count_row("completed", s.completed);
  count_row("failures", s.failures);
  count_row("censored", s.censored);
  o.table.rows.push_back(detail::estimate_row("survival_to_depth", s.survival_to_depth()));
  o.table.rows.push_back(detail::estimate_row("mean_informed_total", s.mean_informed_total()));
  auto pmf_rows = [&](const std::string& name, const std::vector<double>& pmf) {
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      o.table.rows.push_back({name + "[" + std::to_string(i) + "]", format_double(pmf[i]), "", ""});
    }
  };
  pmf_rows("root_offspring_pmf", s.root_offspring_pmf());
  pmf_rows("offspring_pmf", s.offspring_pmf());
  pmf_rows("max_depth_pmf", s.max_depth_pmf());
  return o;
}

inline Output cmd_validate(const ValidateOptions& options) {
  const ValidationReport report = run_validation(options);
  Output o;
  Json checks = Json::array();
  o.table.header = {"check", "passed", "measured", "threshold", "detail"};
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"measured", c.measured},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
    o.table.rows.push_back(
        {c.name, c.passed ? "true" : "false", format_double(c.measured), format_double(c.threshold), c.detail});
  }
  o.document = {{"command", "validate"}, {"quick", options.quick}, {"passed", report.all_passed()}, {"checks", checks}};
  if (!report.all_passed()) o.status = ExitCode::kValidationFailure;
  return o;
}

inline int emit(const Output& o, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  std::string text;
  if (flags.format == "json") {
    text = o.document.dump(2) + "\n";
  } else {
    text = render_csv(o.table);
  }
  if (flags.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(flags.out_path, std::ios::binary);
    file << text;
    if (!file) {
      err << "error: cannot write " << flags.out_path << "\n";
      return static_cast<int>(ExitCode::kValidationFailure);
    }
  }
  return static_cast<int>(o.status);
}

/// Entry point shared by the binary and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rumour spreading on regular trees: exact laws, survival, progeny, range and simulation", "rumor"};
  app.require_subcommand(1);

  CommonFlags common;
  auto add_common = [&](CLI::App* sub, bool with_params) {
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", common.out_path, "write output to this path instead of stdout");
    if (with_params) {
      sub->add_option("--d", common.d, "tree degree parameter (d ≥ 2)");
      sub->add_option("--k", common.k, "stifling threshold (k ≥ 1)");
    }
  };

  std::string law = "offspring";
  auto* pmf = app.add_subcommand("pmf", "offspring and root laws as exact fractions");
  add_common(pmf, true);
  pmf->add_option("--law", law, "offspring, root or both");

  std::string d_list = "2";
  std::string k_list = "1";
  bool table = false;
  double tol = kDefaultTolerance;
  auto* theta = app.add_subcommand("theta", "survival probability");
  add_common(theta, false);
  theta->add_option("--d", d_list, "d, or a comma list with --table");
  theta->add_option("--k", k_list, "k, or a comma list with --table");
  theta->add_flag("--table", table, "evaluate the d × k grid");
  theta->add_option("--tol", tol, "fixed-point step tolerance");

  unsigned i_max = 200;
  auto* progeny = app.add_subcommand("progeny", "law of the total number of informed descendants");
  add_common(progeny, true);
  progeny->add_option("--imax", i_max, "largest total progeny value");

  std::string n_spec = "0..10";
  bool expected = false;
  double series_tol = 1e-13;
  auto* range = app.add_subcommand("range", "bounds on the range of spreading (d=2, k=1)");
  add_common(range, true);
  range->add_option("--n", n_spec, "n or a..b");
  range->add_flag("--expected", expected, "enclose the expected range");
  range->add_option("--series-tol", series_tol, "truncation point of the series");

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs of the spreading process");
  add_common(simulate, true);
  simulate->add_option("--runs", sim.runs, "number of runs");
  simulate->add_option("--depth", sim.depth, "depth limit, or inf");
  simulate->add_option("--engine", sim.engine, "genealogy or jumpchain");
  simulate->add_option("--seed", sim.seed, "base seed");
  simulate->add_option("--jobs", sim.jobs, "worker threads (0 = all cores)");
  simulate->add_flag("--explore-all", sim.explore_all, "keep running after the depth limit is reached");
  simulate->add_flag("--single-ancestor", sim.single_ancestor, "start from a vertex that already has a parent");
  simulate->add_option("--budget", sim.budget, "vertex budget per run");

  ValidateOptions vopt;
  auto* validate_cmd = app.add_subcommand("validate", "cross-check suite");
  add_common(validate_cmd, false);
  validate_cmd->add_flag("--quick", vopt.quick, "10^4 runs per simulation check");
  validate_cmd->add_option("--seed", vopt.seed, "base seed");
  validate_cmd->add_option("--jobs", vopt.jobs, "worker threads (0 = all cores)");
  validate_cmd->add_flag("--inject-exponent-fault", vopt.inject_exponent_fault, "mutation check of the normalisation test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kValidationFailure);
  }

  try {
    const ModelParams params{common.d, common.k};
    Output result;
    if (*pmf) {
      rumor::validate(params);
      result = cmd_pmf(params, law);
    } else if (*theta) {
      result = cmd_theta(detail::parse_int_list(d_list, "--d"), detail::parse_int_list(k_list, "--k"), table, tol);
    } else if (*progeny) {
      result = cmd_progeny(params, i_max, err);
    } else if (*range) {
      result = cmd_range(params, n_spec, expected, series_tol);
    } else if (*simulate) {
      result = cmd_simulate(params, sim);
    } else {
      if (vopt.jobs == 0) vopt.jobs = default_jobs();
      result = cmd_validate(vopt);
    }
    if (result.status == ExitCode::kResourceCap) err << "error: some runs exceeded the vertex budget\n";
    if (result.status == ExitCode::kNonConvergence) err << "error: some cells did not converge\n";
    if (result.status == ExitCode::kValidationFailure) err << "error: validation checks failed\n";
    return emit(result, common, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kValidationFailure);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kNonConvergence);
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kResourceCap);
  }
}

}  // namespace rumor::cli
