#pragma once

// JSON problem and run configuration.
//
// A problem is either a builtin
//   {"name": "example1", "epsilon": 0.25, "nu": 1}
// or a generic system with polynomial F
//   {"d": 1, "A": [[0, 1]], "epsilon": 1, "nu": 0, "u_in": [1], "T": 1,
//    "poly_F": [{"row": 1, "alpha": [1, 1], "coeff": 0.5}], "position_dim": 0}
// Complex entries are a number or a [re, im] pair. "A" is either a flat
// row-major list of d*d entries or a list of d rows.
// An optional "run" object holds defaults for the command-line flags.

#include "lleei/harness.hpp"
#include "lleei/mindex.hpp"
#include "lleei/sysdef.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lleei {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemSpec {
  std::optional<std::string> builtin;
  std::size_t d = 0;
  ComplexMatrix A;
  double epsilon = 1.0;
  double nu = 1.0;
  ComplexVector u_in;
  double final_time = 1.0;
  std::vector<PolynomialTerm> poly_f;
  std::size_t position_dim = 0;
};

struct RunConfig {
  ProblemSpec problem;
  std::optional<int> k;
  std::optional<double> h;
  std::vector<double> h_grid;
  std::vector<double> eps_grid;
  ReferenceSettings reference;
  unsigned seed = 1;
  bool ci = false;
};

namespace detail {

inline Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  return j.at(key);
}

inline double positive(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError(std::string("'") + key + "' must be a positive number");
  return v.get<double>();
}

inline std::vector<double> number_list(const nlohmann::json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
  for (const auto& x : v) {
    if (!x.is_number() || !(x.get<double>() > 0.0)) throw ConfigError(std::string("'") + key + "' entries must be positive");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace detail

[[nodiscard]] inline ProblemSpec parse_problem(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ProblemSpec p;
  if (j.contains("nu")) {
    if (!j.at("nu").is_number()) throw ConfigError("'nu' must be a number");
    p.nu = j.at("nu").get<double>();
  }
  const char* name_key = j.contains("name") ? "name" : j.contains("builtin") ? "builtin" : nullptr;
  if (name_key != nullptr) {
    if (!j.at(name_key).is_string()) throw ConfigError("'name' must be a string");
    p.builtin = j.at(name_key).get<std::string>();
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), *p.builtin) == names.end())
      throw ConfigError("unknown builtin '" + *p.builtin + "'");
    p.epsilon = j.contains("epsilon") ? detail::positive(j, "epsilon") : 0.25;
    return p;
  }

  const auto& dj = detail::require(j, "d");
  if (!dj.is_number_integer() || dj.get<long>() < 1) throw ConfigError("'d' must be a positive integer");
  p.d = dj.get<std::size_t>();
  const auto n = static_cast<Eigen::Index>(p.d);

  const auto& aj = detail::require(j, "A");
  p.A.resize(n, n);
  if (!aj.is_array()) throw ConfigError("'A' must be an array");
  // d = 1 is ambiguous: [x] is flat, [[x]] is one row.
  if (aj.size() == p.d * p.d && !(p.d == 1 && aj[0].is_array() && aj[0].size() == 1)) {
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        p.A(r, c) = detail::parse_complex(aj[static_cast<std::size_t>(r * n + c)], "A[" + std::to_string(r * n + c + 1) + "]");
  } else if (aj.size() == p.d) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = aj[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != p.d)
        throw ConfigError("'A' row " + std::to_string(r + 1) + " must have d entries");
      for (Eigen::Index c = 0; c < n; ++c)
        p.A(r, c) = detail::parse_complex(row[static_cast<std::size_t>(c)], "A[" + std::to_string(r + 1) + "]");
    }
  } else {
    throw ConfigError("'A' must hold d*d entries or d rows");
  }

  p.epsilon = detail::positive(j, "epsilon");
  p.final_time = detail::positive(j, "T");

  const auto& uj = detail::require(j, "u_in");
  if (!uj.is_array() || uj.size() != p.d) throw ConfigError("'u_in' must have d entries");
  p.u_in.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) p.u_in(i) = detail::parse_complex(uj[static_cast<std::size_t>(i)], "u_in");

  if (j.contains("poly_F")) {
    for (const auto& t : j.at("poly_F")) {
      PolynomialTerm term;
      const auto& row = detail::require(t, "row");
      if (!row.is_number_integer() || row.get<long>() < 1 || row.get<std::size_t>() > p.d)
        throw ConfigError("poly_F row must be in 1..d");
      term.row = row.get<std::size_t>();
      std::vector<int> comps;
      for (const auto& c : detail::require(t, "alpha")) {
        if (!c.is_number_integer() || c.get<int>() < 1 || c.get<int>() > static_cast<int>(p.d) + 1)
          throw ConfigError("poly_F alpha components must be in 1..d+1");
        comps.push_back(c.get<int>());
      }
      term.alpha = MultiIndex(std::move(comps));
      term.coeff = detail::parse_complex(detail::require(t, "coeff"), "poly_F coeff");
      p.poly_f.push_back(std::move(term));
    }
  }
  if (j.contains("position_dim")) {
    p.position_dim = j.at("position_dim").get<std::size_t>();
    if (p.position_dim != 0 && 2 * p.position_dim != p.d) throw ConfigError("'position_dim' must be 0 or d/2");
  }
  return p;
}

/// The system for `spec` at the given eps (defaults to the spec's own).
[[nodiscard]] inline OscillatorySystem make_system(const ProblemSpec& spec, std::optional<double> epsilon = std::nullopt) {
  const double eps = epsilon.value_or(spec.epsilon);
  if (spec.builtin) return builtin(*spec.builtin, eps, spec.nu);
  return OscillatorySystem("custom", spec.A, eps, spec.nu, spec.u_in, spec.final_time,
                           polynomial_oracle(spec.d, spec.poly_f), spec.position_dim);
}

[[nodiscard]] inline ProblemFamily make_family(const ProblemSpec& spec) {
  return [spec](double eps) { return make_system(spec, eps); };
}

[[nodiscard]] inline RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig rc;
  rc.problem = parse_problem(j);
  if (!j.contains("run")) return rc;
  const auto& r = j.at("run");
  if (!r.is_object()) throw ConfigError("'run' must be an object");
  if (r.contains("k")) rc.k = r.at("k").get<int>();
  if (r.contains("h")) rc.h = detail::positive(r, "h");
  rc.h_grid = detail::number_list(r, "h_grid");
  rc.eps_grid = detail::number_list(r, "eps_grid");
  if (!rc.h_grid.empty() && !rc.eps_grid.empty()) throw ConfigError("'h_grid' and 'eps_grid' are mutually exclusive");
  if (r.contains("reference_resolution")) rc.reference.resolution = detail::positive(r, "reference_resolution");
  if (r.contains("reference_max_step")) rc.reference.max_step = detail::positive(r, "reference_max_step");
  if (r.contains("seed")) rc.seed = r.at("seed").get<unsigned>();
  if (r.contains("ci")) rc.ci = r.at("ci").get<bool>();
  return rc;
}

/// Reads and parses a config file; any failure is a ConfigError.
[[nodiscard]] inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return parse_run_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid config '" + path + "': " + e.what());
  }
}

}  // namespace lleei
