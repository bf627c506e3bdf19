// Copyright 2026 The Wilson Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef WILSON_LAB_RUN_HPP
#define WILSON_LAB_RUN_HPP

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "wilson_lab/bargmann.hpp"
#include "wilson_lab/common.hpp"
#include "wilson_lab/estimator.hpp"
#include "wilson_lab/lie_algebra.hpp"
#include "wilson_lab/quadrature.hpp"
#include "wilson_lab/surface.hpp"
#include "wilson_lab/ym_functionals.hpp"

/**
 * \file
 * \brief Run configuration, dispatch, and JSON-lines / CSV persistence.
 */

namespace wilson_lab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaMajor = 1;
inline constexpr int kSchemaMinor = 0;

enum class Command { algebra, area, nu_norm, wilson, sweep, potential, probe, selftest };
enum class OutputFormat { csv, jsonl };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::algebra: return "algebra";
    case Command::area: return "area";
    case Command::nu_norm: return "nu-norm";
    case Command::wilson: return "wilson";
    case Command::sweep: return "sweep";
    case Command::potential: return "potential";
    case Command::probe: return "probe";
    case Command::selftest: return "selftest";
  }
  return "?";
}

inline Command parse_command(std::string_view text) {
  for (Command c : {Command::algebra, Command::area, Command::nu_norm, Command::wilson, Command::sweep,
                    Command::potential, Command::probe, Command::selftest}) {
    if (text == to_string(c)) {
      return c;
    }
  }
  throw ConfigError("unknown command '" + std::string(text) +
                    "' (expected algebra, area, nu-norm, wilson, sweep, potential, probe or selftest)");
}

struct RunConfig {
  Command command = Command::selftest;
  GroupKind group_kind = GroupKind::su;
  int n = 2;
  std::vector<double> kappa = {4.0};
  Vec3 a = Vec3(0.5, 0.0, 0.0);
  double T = 0.5;
  std::optional<int> degree;  // absent: auto
  double tail_eps = 1e-6;
  std::size_t n_samples = 10000;
  std::size_t w_nodes = 512;
  std::uint64_t seed = 12345;
  double c_tilde = kDefaultCTilde;
  std::vector<double> r_values = {0.0, 1.0, 2.0, 3.0};
  std::string out_path;
  std::string csv_path;
  OutputFormat format = OutputFormat::csv;

  /// Throws ConfigError with an actionable message.
  void validate() const {
    detail::require(n >= (group_kind == GroupKind::su ? 2 : 3),
                    group_kind == GroupKind::su ? "--n must be >= 2 for su" : "--n must be >= 3 for so");
    detail::require(!kappa.empty(), "--kappa needs at least one value");
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      detail::require(kappa[i] > 0.0 && std::isfinite(kappa[i]), "--kappa values must be positive");
      detail::require(i == 0 || kappa[i] > kappa[i - 1], "--kappa list must be strictly increasing");
    }
    detail::require(a.allFinite() && a.norm() > 0.0, "--ax/--ay/--az must give a non-zero edge");
    detail::require(T > 0.0 && std::isfinite(T), "--t must be positive");
    detail::require(!degree || (*degree >= 0 && *degree <= 60), "--degree must be 'auto' or in 0..60");
    detail::require(tail_eps > 0.0 && tail_eps < 1.0, "--tail-eps must lie in (0, 1)");
    detail::require(n_samples >= 2, "--samples must be at least 2");
    detail::require(w_nodes >= 1, "--w-nodes must be positive");
    detail::require(c_tilde > 0.0 && std::isfinite(c_tilde), "--c-tilde must be positive");
    for (double r : r_values) {
      detail::require(r >= 0.0 && std::isfinite(r), "--r values must be non-negative");
    }
    detail::require(command != Command::wilson || kappa.size() == 1, "wilson takes exactly one kappa; use sweep");
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used == text.size() && text.find('-') == std::string::npos) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a non-negative integer, got '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    out.push_back(parse_double(key, trim(item)));
  }
  require(!out.empty(), "'" + key + "' expects a comma-separated list");
  return out;
}

}  // namespace detail

/// Applies one key=value setting; keys match the long CLI flags without dashes.
inline void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = detail::trim(raw_key);
  const std::string value = detail::trim(raw_value);
  if (key == "command") {
    config.command = parse_command(value);
  } else if (key == "group") {
    config.group_kind = parse_group_kind(value);
  } else if (key == "n") {
    config.n = static_cast<int>(detail::parse_uint(key, value));
  } else if (key == "kappa") {
    config.kappa = detail::parse_list(key, value);
  } else if (key == "ax") {
    config.a(0) = detail::parse_double(key, value);
  } else if (key == "ay") {
    config.a(1) = detail::parse_double(key, value);
  } else if (key == "az") {
    config.a(2) = detail::parse_double(key, value);
  } else if (key == "t") {
    config.T = detail::parse_double(key, value);
  } else if (key == "degree") {
    if (value == "auto") {
      config.degree.reset();
    } else {
      config.degree = static_cast<int>(detail::parse_uint(key, value));
    }
  } else if (key == "tail-eps") {
    config.tail_eps = detail::parse_double(key, value);
  } else if (key == "samples") {
    config.n_samples = detail::parse_uint(key, value);
  } else if (key == "w-nodes") {
    config.w_nodes = detail::parse_uint(key, value);
  } else if (key == "seed") {
    config.seed = detail::parse_uint(key, value);
  } else if (key == "c-tilde") {
    config.c_tilde = detail::parse_double(key, value);
  } else if (key == "r") {
    config.r_values = detail::parse_list(key, value);
  } else if (key == "out") {
    config.out_path = value;
  } else if (key == "csv") {
    config.csv_path = value;
  } else if (key == "format") {
    if (value == "csv") {
      config.format = OutputFormat::csv;
    } else if (value == "jsonl") {
      config.format = OutputFormat::jsonl;
    } else {
      throw ConfigError("'format' must be csv or jsonl");
    }
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

/// Reads `key = value` lines ('#' starts a comment) into an ordered list of settings.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = detail::trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    out.emplace_back(detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
  }
  return out;
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["group"] = to_string(c.group_kind);
  j["n"] = c.n;
  j["kappa"] = c.kappa;
  j["a"] = {c.a(0), c.a(1), c.a(2)};
  j["T"] = c.T;
  j["degree"] = c.degree ? Json(*c.degree) : Json("auto");
  j["tail_eps"] = c.tail_eps;
  j["n_samples"] = c.n_samples;
  j["w_nodes"] = c.w_nodes;
  j["seed"] = c.seed;
  j["c_tilde"] = c.c_tilde;
  j["r_values"] = c.r_values;
  j["out_path"] = c.out_path;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "jsonl";
  return j;
}

/// Empty cells are written as empty CSV fields.
using CsvCell = std::variant<std::monostate, double, std::string>;

inline CsvCell optional_cell(const std::optional<double>& v) { return v ? CsvCell(*v) : CsvCell(); }

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

inline std::string format_number(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

inline std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out += (i ? "," : "") + table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out += ',';
      }
      if (const auto* v = std::get_if<double>(&row[i])) {
        out += format_number(*v);
      } else if (const auto* text = std::get_if<std::string>(&row[i])) {
        out += *text;
      }
    }
    out += '\n';
  }
  return out;
}

struct RunRecord {
  Json record;
  CsvTable table;
  bool passed = true;  // selftest verdict; true for every other command
};

namespace detail {

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

inline Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

inline Json diagnostics_json(const WorkspaceDiagnostics& d) {
  return {{"degree", d.degree},
          {"basis_size", d.basis_size},
          {"nu_tail", d.nu_tail},
          {"grid_max_tail", d.grid_max_tail},
          {"grid_max_norm_sq", d.grid_max_norm_sq},
          {"zeta_normal_condition", d.zeta_normal_condition},
          {"d0_min_singular_value", d.d0_min_singular_value}};
}

inline Json estimate_json(const EstimateResult& r) {
  Json j;
  j["kappa"] = r.kappa;
  j["n_samples"] = r.n_samples;
  j["trace_estimate"] = {r.trace_estimate.real(), r.trace_estimate.imag()};
  j["std_error"] = r.std_error;
  j["free_field_estimate"] = {r.free_field_estimate.real(), r.free_field_estimate.imag()};
  j["free_field_std_error"] = r.free_field_std_error;
  j["casimir_closed_form"] = r.casimir_closed_form;
  j["oracle_value"] = r.oracle_value ? Json(*r.oracle_value) : Json(nullptr);
  j["closed_form_minus_oracle"] = r.oracle_value ? Json(r.casimir_closed_form - *r.oracle_value) : Json(nullptr);
  j["area"] = r.area;
  j["v_measured"] = r.v_measured;
  j["v_kernel"] = r.v_kernel;
  j["mean_density"] = r.mean_density;
  j["density_std_error"] = r.density_std_error;
  j["nu_fourth_moment"] = r.nu_fourth_moment;
  j["nu_fourth_moment_std_error"] = r.nu_fourth_moment_std_error;
  j["max_unitarity_error"] = r.max_unitarity_error;
  j["max_trace_modulus"] = r.max_trace_modulus;
  return j;
}

/// Appends a tail-bound hint naming the largest kappa the configured surface supports at degree 60.
inline std::string feasibility_hint(const RunConfig& c) {
  const RectSurface surface(c.a, c.T);
  const double r2 = max_resolvable_norm_sq(60, c.tail_eps, c.c_tilde);
  const double kappa_max = 2.0 * std::sqrt(r2) / surface.max_radius();
  std::ostringstream msg;
  msg << "; with |a| = " << c.a.norm() << ", T = " << c.T << " and tail_eps = " << c.tail_eps
      << " the largest feasible kappa at D = 60 is " << kappa_max;
  return msg.str();
}

inline WilsonOptions wilson_options(const RunConfig& c) {
  WilsonOptions o;
  o.degree = c.degree;
  o.tail_eps = c.tail_eps;
  o.w_nodes = c.w_nodes;
  o.grid_seed = c.seed;
  o.c_tilde = c.c_tilde;
  return o;
}

inline Representation representation_for(const LieBasis& basis) { return standard_rep(basis); }

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// Fast invariant suite behind the `selftest` command.
inline std::vector<Check> selftest_checks(std::uint64_t seed) {
  std::vector<Check> checks;
  auto add = [&checks](std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, std::isfinite(value) && value <= bound});
  };
  for (auto [kind, n] : {std::pair{GroupKind::su, 2}, {GroupKind::su, 3}, {GroupKind::so, 3}, {GroupKind::so, 4}}) {
    const LieBasis basis = build_basis(kind, n);
    const CasimirOperator op = casimir(standard_rep(basis));
    const double expected = kind == GroupKind::su ? n - 1.0 / n : (n - 1) / 2.0;
    add("casimir_" + std::string(to_string(kind)) + std::to_string(n), std::abs(*op.scalar - expected), 1e-10);
  }
  {
    const StructureConstants sc = structure_constants(build_su_basis(2));
    double dev = 0.0;
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          // Levi-Civita symbol eps_{a b g}
          const double eps = static_cast<double>((static_cast<int>(a) - static_cast<int>(b)) *
                                                 (static_cast<int>(b) - static_cast<int>(g)) *
                                                 (static_cast<int>(g) - static_cast<int>(a))) / 2.0;
          dev = std::max(dev, std::abs(sc(g, a, b) - std::sqrt(2.0) * eps));
        }
      }
    }
    add("su2_structure_constants", dev, 1e-12);
  }
  {
    const FockWorkspace ws(auto_degree(4.0, 1e-12));
    const KernelPoint w = {Complex(0.9, -0.3), Complex(0.2, 0.5), Complex(-0.7, 0.1), Complex(0.4, 0.8)};
    const XiDual xi = xi_coeffs(ws, 1, 2, w);
    add("xi_norm_truncated", std::abs(xi.coeffs.squaredNorm() - 1.0 / (2.0 * kPi)), 1e-8);
  }
  {
    const RectSurface surface(Vec3(1.0, 0.0, 0.0), 1.0);
    add("nu_norm_closed_form", std::abs(nu_norm_kernel(surface, 16.0) - nu_norm_closed_form(1.0, 1.0, 16.0)), 1e-8);
    add("area_unit_square", std::abs(area(surface, tensor_rule(8)) - 1.0), 1e-12);
  }
  {
    const LieBasis basis = build_su_basis(2);
    WilsonOptions options;
    options.w_nodes = 32;
    options.grid_seed = seed;
    const WilsonProblem problem = prepare_wilson(RectSurface(Vec3(0.5, 0.0, 0.0), 0.5), 4.0, basis, options);
    const WienerConfig config{4.0, problem.workspace.get(), basis.dim(), seed};
    const auto outputs = evaluate_samples(config, &problem.duals, problem.sc, nullptr, 0, 8);
    double dev = 0.0;
    double imag = 0.0;
    for (const auto& o : outputs) {
      dev = std::max(dev, std::abs((o.y.y1 + o.y.y2).real() + o.y.y3 - o.y.combined));
      imag = std::max(imag, std::abs((o.y.y1 + o.y.y2).imag()));
    }
    add("combined_square_identity", dev, 1e-8);
    add("y1_plus_y2_real", imag, 1e-10);
    const EstimateResult trivial = wilson_mc(problem, trivial_rep(basis), 8, seed);
    add("trivial_rep_estimate", std::abs(trivial.trace_estimate - Complex(1.0)), 0.0);
  }
  {
    const std::vector<double> r = {0.0, 1.0, 2.0, 3.0};
    const PotentialTable table = potential(GroupKind::su, 3, r);
    add("potential_su3_r3", std::abs(table.rows.back().second - 1.0), 1e-12);
  }
  return checks;
}

inline CsvTable sweep_table() {
  return {{"kappa", "estimate", "std_error", "casimir_closed_form", "oracle", "area"}, {}};
}

}  // namespace detail

/// Dispatches one command. Tail-bound refusals carry a feasibility hint.
inline RunRecord run(const RunConfig& config) {
  config.validate();
  RunRecord out;
  Json& rec = out.record;
  rec["schema_version"] = std::to_string(kSchemaMajor) + "." + std::to_string(kSchemaMinor);
  rec["timestamp"] = detail::utc_timestamp();
  rec["config"] = to_json(config);
  Json results;
  Json diagnostics = Json::array();

  try {
    switch (config.command) {
      case Command::algebra: {
        const LieBasis basis = build_basis(config.group_kind, config.n);
        const StructureConstants sc = structure_constants(basis);
        const CasimirOperator op = casimir(standard_rep(basis), false);
        Json gens = Json::array();
        for (const auto& g : basis.generators) {
          gens.push_back(detail::matrix_json(g));
        }
        results["dim_g"] = basis.dim();
        results["generators"] = gens;
        results["casimir_scalar"] = op.scalar ? Json(*op.scalar) : Json(nullptr);
        out.table.header = {"gamma", "alpha", "beta", "value"};
        Json entries = Json::array();
        for (std::size_t g = 0; g < sc.dim(); ++g) {
          for (std::size_t a = 0; a < sc.dim(); ++a) {
            for (std::size_t b = 0; b < sc.dim(); ++b) {
              if (std::abs(sc(g, a, b)) > 1e-14) {
                entries.push_back({g, a, b, sc(g, a, b)});
                out.table.rows.push_back({static_cast<double>(g), static_cast<double>(a), static_cast<double>(b),
                                          sc(g, a, b)});
              }
            }
          }
        }
        results["structure_constants"] = entries;
        break;
      }
      case Command::area: {
        const RectSurface surface(config.a, config.T);
        const SurfaceQuadrature quad = tensor_rule(16);
        const double value = area(surface, quad);
        const double swapped = area(SwappedSurface<RectSurface>(surface), quad);
        results = {{"area", value}, {"area_swapped", swapped}, {"exact", surface.area()}};
        out.table.header = {"area", "area_swapped", "exact"};
        out.table.rows.push_back({value, swapped, surface.area()});
        break;
      }
      case Command::nu_norm: {
        const RectSurface surface(config.a, config.T);
        out.table = detail::sweep_table();
        Json rows = Json::array();
        for (double kappa : config.kappa) {
          const double value = nu_norm_kernel(surface, kappa, 0, config.c_tilde);
          const double oracle = nu_norm_closed_form(config.a.norm(), config.T, kappa, config.c_tilde);
          const double limit = 2.0 * kPi * config.c_tilde * config.c_tilde * surface.area() / 4.0;
          rows.push_back({{"kappa", kappa}, {"nu_norm", value}, {"closed_form", oracle}, {"limit", limit}});
          out.table.rows.push_back({kappa, value, 0.0, limit, oracle, surface.area()});
        }
        results["rows"] = rows;
        break;
      }
      case Command::wilson:
      case Command::sweep: {
        const RectSurface surface(config.a, config.T);
        const LieBasis basis = build_basis(config.group_kind, config.n);
        const Representation rep = detail::representation_for(basis);
        out.table = detail::sweep_table();
        Json rows = Json::array();
        for (double kappa : config.kappa) {
          const WilsonProblem problem = prepare_wilson(surface, kappa, basis, detail::wilson_options(config));
          const EstimateResult r = wilson_mc(problem, rep, config.n_samples, config.seed);
          rows.push_back(detail::estimate_json(r));
          diagnostics.push_back(detail::diagnostics_json(problem.diagnostics));
          out.table.rows.push_back({kappa, r.trace_estimate.real(), r.std_error, r.casimir_closed_form, optional_cell(r.oracle_value),
                                    r.area});
        }
        results["rows"] = rows;
        results["area_law_limit_trace"] = area_law_limit(rep, surface.area()).trace().real();
        break;
      }
      case Command::potential: {
        const PotentialTable table = potential(config.group_kind, config.n, config.r_values);
        out.table.header = {"R", "V"};
        Json rows = Json::array();
        for (const auto& [r, v] : table.rows) {
          rows.push_back({{"R", r}, {"V", v}});
          out.table.rows.push_back({r, v});
        }
        results = {{"slope", table.slope}, {"max_fit_residual", table.max_fit_residual}, {"rows", rows}};
        break;
      }
      case Command::probe: {
        const RectSurface surface(config.a, config.T);
        const LieBasis basis = build_basis(config.group_kind, config.n);
        const Representation rep = detail::representation_for(basis);
        out.table.header = {"kappa", "min_eigenvalue", "min_eigenvalue_std_error", "magnitude", "magnitude_std_error"};
        Json rows = Json::array();
        for (double kappa : config.kappa) {
          const WilsonProblem problem = prepare_wilson(surface, kappa, basis, detail::wilson_options(config));
          const ProbeResult p = positivity_probe(problem, rep, config.n_samples, config.seed);
          rows.push_back({{"kappa", kappa},
                          {"moment", detail::matrix_json(p.moment)},
                          {"min_eigenvalue", p.min_eigenvalue},
                          {"min_eigenvalue_std_error", p.min_eigenvalue_std_error},
                          {"magnitude", p.magnitude},
                          {"magnitude_std_error", p.magnitude_std_error}});
          diagnostics.push_back(detail::diagnostics_json(problem.diagnostics));
          out.table.rows.push_back(
              {kappa, p.min_eigenvalue, p.min_eigenvalue_std_error, p.magnitude, p.magnitude_std_error});
        }
        results["rows"] = rows;
        break;
      }
      case Command::selftest: {
        const auto checks = detail::selftest_checks(config.seed);
        out.table.header = {"check", "value", "bound", "passed"};
        Json rows = Json::array();
        for (const auto& c : checks) {
          rows.push_back({{"check", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed}});
          out.table.rows.push_back({c.name, c.value, c.bound, c.passed ? 1.0 : 0.0});
          out.passed = out.passed && c.passed;
        }
        results = {{"checks", rows}, {"passed", out.passed}};
        break;
      }
    }
  } catch (const TailBoundError& e) {
    throw TailBoundError(e.what() + detail::feasibility_hint(config));
  }
  rec["results"] = results;
  rec["diagnostics"] = diagnostics;
  return out;
}

/// Rejects records whose schema major differs from this build's.
inline void check_schema(const Json& record) {
  if (!record.contains("schema_version") || !record["schema_version"].is_string()) {
    throw ConfigError("record has no schema_version");
  }
  const std::string version = record["schema_version"];
  const auto dot = version.find('.');
  int major = -1;
  try {
    major = std::stoi(version.substr(0, dot));
  } catch (const std::exception&) {
  }
  if (major != kSchemaMajor) {
    throw ConfigError("unsupported record schema major '" + version + "' (expected " + std::to_string(kSchemaMajor) +
                      ".x)");
  }
}

/// Parses a JSON-lines file, validating every record's schema.
inline std::vector<Json> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open record file '" + path + "'");
  }
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) {
      continue;
    }
    Json j = Json::parse(line);
    check_schema(j);
    out.push_back(std::move(j));
  }
  return out;
}

/// Appends one record as a single write on an O_APPEND descriptor.
inline void append_record(const std::string& path, const Json& record) {
  const std::string line = record.dump() + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) {
    throw ConfigError("cannot open '" + path + "' for appending: " + std::strerror(errno));
  }
  const ssize_t written = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size())) {
    throw ConfigError("short write while appending to '" + path + "'");
  }
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_RUN_HPP
