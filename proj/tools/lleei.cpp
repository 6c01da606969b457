// Command-line front end.
// Exit codes: 0 success, 1 a check or asserted order failed, 2 usage or config error.

#include "lleei/config.hpp"
#include "lleei/io.hpp"
#include "lleei/lleei.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lleei;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int resolve_k(const std::optional<int>& flag, const RunConfig& rc) {
  const auto k = flag ? flag : rc.k;
  if (!k) throw UsageError("--k is required");
  if (*k < 1) throw UsageError("--k must be >= 1");
  return *k;
}

double resolve_h(const std::optional<double>& flag, const RunConfig& rc) {
  const auto h = flag ? flag : rc.h;
  if (!h) throw UsageError("--h is required");
  if (!(*h > 0.0)) throw UsageError("--h must be positive");
  return *h;
}

/// n values from hi down to lo, evenly spaced in log scale.
std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw UsageError("grid bounds must satisfy 0 < min <= max");
  if (n < 1) throw UsageError("--points must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(hi * std::pow(lo / hi, f));
  }
  return out;
}

/// Comma-separated reals (or re:im pairs) for xhat = [u; t].
ComplexVector parse_point(const std::string& text, std::size_t expected) {
  ComplexVector v(static_cast<Eigen::Index>(expected));
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= expected) throw UsageError("--at has more than d+1 entries");
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        v(static_cast<Eigen::Index>(i)) = std::stod(item);
      } else {
        v(static_cast<Eigen::Index>(i)) = Complex(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
      }
    } catch (const std::logic_error&) {
      throw UsageError("--at entry '" + item + "' is not a number");
    }
    ++i;
  }
  if (i != expected) throw UsageError("--at needs exactly d+1 = " + std::to_string(expected) + " entries");
  return v;
}

void print_report_summary(const ErrorReport& report, std::ostream& os) {
  os << report.problem << ": axis " << report.axis << ", k = " << report.k << '\n';
  for (const auto& pt : report.points) {
    os << "  " << std::setw(12) << pt.param << "  ";
    if (pt.error) {
      os << "u " << std::setw(12) << pt.error->u;
      if (pt.error->y) os << "  y " << std::setw(12) << *pt.error->y << "  ydot " << std::setw(12) << *pt.error->ydot;
    } else {
      os << "absent (" << pt.failure << ')';
    }
    os << "  [" << to_string(pt.regime) << "]\n";
  }
}

int report_checks(const std::vector<OrderCheck>& checks, bool ci, std::ostream& os) {
  bool ok = true;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": ";
    if (c.measured) {
      os << *c.measured;
    } else {
      os << "no fit";
    }
    if (c.tolerance > 0.0) {
      os << " (expected " << c.expected << " +- " << c.tolerance << ")\n";
    } else {
      os << " (limit " << c.expected << ")\n";
    }
    ok = ok && c.passed;
  }
  return ci && !ok ? kExitFailed : kExitOk;
}

void write_or_print(const std::string& path, const auto& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
  } else {
    auto out = io::open_output(path);
    writer(out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local linear extension exponential integrators for highly oscillatory ODEs"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  // catalog
  int cat_d = 1;
  int cat_k = 1;
  auto* catalog_cmd = app.add_subcommand("catalog", "List the multi-index catalog for d and k");
  catalog_cmd->add_option("--d", cat_d, "State dimension (n = d + 1 variables)")->required()->check(CLI::PositiveNumber);
  catalog_cmd->add_option("--k", cat_k, "Maximum degree")->required()->check(CLI::PositiveNumber);

  // shared options
  std::string config_path;
  std::optional<int> k_flag;
  std::optional<double> h_flag;
  std::optional<double> eps_flag;
  std::string out_path;
  bool ci = false;

  auto* build_cmd = app.add_subcommand("build", "Print the extension matrices at a reference point");
  std::string at_text;
  std::string which = "all";
  build_cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
  build_cmd->add_option("--k", k_flag, "Extension degree");
  build_cmd->add_option("--epsilon", eps_flag, "Override eps");
  build_cmd->add_option("--at", at_text, "Reference point u1,...,ud,t (entries may be re:im); default [u(0); 0]");
  build_cmd->add_option("--matrix", which, "A1k, A0k, S or all")->check(CLI::IsMember({"A1k", "A0k", "S", "all"}));

  auto* integrate_cmd = app.add_subcommand("integrate", "Integrate with LLEEI(k+1) on a uniform grid");
  integrate_cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
  integrate_cmd->add_option("--k", k_flag, "Extension degree");
  integrate_cmd->add_option("--h", h_flag, "Step size");
  integrate_cmd->add_option("--epsilon", eps_flag, "Override eps");
  integrate_cmd->add_option("--out", out_path, "Trajectory CSV");

  auto* reference_cmd = app.add_subcommand("reference", "Integrate with fixed-step RK4");
  double href = 0.0;
  std::size_t stride = 1;
  bool underresolved = false;
  reference_cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
  reference_cmd->add_option("--href", href, "Reference step")->required()->check(CLI::PositiveNumber);
  reference_cmd->add_option("--stride", stride, "Keep every stride-th state")->check(CLI::PositiveNumber);
  reference_cmd->add_option("--epsilon", eps_flag, "Override eps");
  reference_cmd->add_option("--out", out_path, "Trajectory CSV")->required();
  reference_cmd->add_flag("--allow-underresolved", underresolved, "Warn instead of failing on a coarse h_ref");

  auto* converge_h_cmd = app.add_subcommand("converge-h", "Error versus h at fixed eps");
  double hmin = 0.0;
  double hmax = 0.0;
  int points = 6;
  converge_h_cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
  converge_h_cmd->add_option("--k", k_flag, "Extension degree");
  converge_h_cmd->add_option("--epsilon", eps_flag, "Override eps");
  converge_h_cmd->add_option("--hmin", hmin, "Smallest h");
  converge_h_cmd->add_option("--hmax", hmax, "Largest h");
  converge_h_cmd->add_option("--points", points, "Number of h values (log-spaced)");
  converge_h_cmd->add_option("--out", out_path, "Report CSV");
  converge_h_cmd->add_flag("--ci", ci, "Exit 1 if an asserted order misses its tolerance");

  auto* converge_eps_cmd = app.add_subcommand("converge-eps", "Error versus eps at fixed h");
  double emin = 0.0;
  double emax = 0.0;
  converge_eps_cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
  converge_eps_cmd->add_option("--k", k_flag, "Extension degree");
  converge_eps_cmd->add_option("--h", h_flag, "Step size");
  converge_eps_cmd->add_option("--epsmin", emin, "Smallest eps");
  converge_eps_cmd->add_option("--epsmax", emax, "Largest eps");
  converge_eps_cmd->add_option("--points", points, "Number of eps values (log-spaced)");
  converge_eps_cmd->add_option("--out", out_path, "Report CSV");
  converge_eps_cmd->add_flag("--ci", ci, "Exit 1 if an asserted order misses its tolerance");

  auto* validate_cmd = app.add_subcommand("validate", "Run the algebraic checks on A1k");
  int random_count = 0;
  unsigned seed = 1;
  validate_cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
  validate_cmd->add_option("--k", k_flag, "Extension degree");
  validate_cmd->add_option("--random", random_count, "Also check N random imaginary-spectrum systems")
      ->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--seed", seed, "Seed for the random systems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (catalog_cmd->parsed()) {
      const MultiIndexCatalog cat(cat_d + 1, cat_k);
      std::cout << "block_dims";
      for (std::size_t j = 0; j < cat.block_dims().size(); ++j) std::cout << (j ? "," : " ") << cat.block_dims()[j];
      std::cout << "\nD " << cat.size() << '\n';
      for (const auto& alpha : cat.representatives()) {
        for (std::size_t i = 0; i < alpha.size(); ++i) std::cout << (i ? "," : "") << alpha[i];
        std::cout << '\n';
      }
      return kExitOk;
    }

    const RunConfig rc = load_run_config(config_path);
    const auto family = make_family(rc.problem);
    auto system_at = [&](std::optional<double> eps) {
      try {
        return make_system(rc.problem, eps ? eps : std::optional<double>{});
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    };

    if (build_cmd->parsed()) {
      const int k = resolve_k(k_flag, rc);
      const OscillatorySystem system = system_at(eps_flag);
      const ExtensionBuilder builder(system.dim(), k);
      ComplexVector xhat(static_cast<Eigen::Index>(system.dim() + 1));
      if (at_text.empty()) {
        xhat << system.initial_state(), Complex{};
      } else {
        xhat = parse_point(at_text, system.dim() + 1);
      }
      const auto a1 = augment(system).A1;
      std::cout << "# D " << builder.size() << ", xhat";
      for (Eigen::Index i = 0; i < xhat.size(); ++i) std::cout << ' ' << xhat(i);
      std::cout << '\n';
      if (which == "A1k" || which == "all") {
        std::cout << "# A1k\n";
        io::write_matrix(std::cout, builder.build_A1(a1, xhat));
      }
      if (which == "A0k" || which == "all") {
        std::cout << "# A0k\n";
        io::write_matrix(std::cout, builder.build_A0(system.oracle(), xhat));
      }
      if (which == "S" || which == "all") {
        std::cout << "# S\n";
        io::write_matrix(std::cout, builder.build_S(xhat));
      }
      return kExitOk;
    }

    if (integrate_cmd->parsed()) {
      const int k = resolve_k(k_flag, rc);
      const double h = resolve_h(h_flag, rc);
      const OscillatorySystem system = system_at(eps_flag);
      const Trajectory traj = integrate(system, k, h);
      std::cerr << traj.method << " on " << system.name() << ": " << traj.size() - 1 << " steps of h = " << traj.h
                << ", max expm squarings " << traj.max_squarings << '\n';
      if (!out_path.empty()) {
        write_or_print(out_path, [&](std::ostream& os) { io::write_trajectory(os, traj); });
      } else {
        io::write_trajectory(std::cout, traj);
      }
      return kExitOk;
    }

    if (reference_cmd->parsed()) {
      const OscillatorySystem system = system_at(eps_flag);
      ReferenceOptions opts;
      opts.allow_underresolved = underresolved;
      Trajectory traj;
      try {
        traj = rk4_integrate(system, href, stride, opts);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_or_print(out_path, [&](std::ostream& os) { io::write_trajectory(os, traj); });
      return kExitOk;
    }

    if (converge_h_cmd->parsed()) {
      const int k = resolve_k(k_flag, rc);
      const OscillatorySystem system = system_at(eps_flag);
      std::vector<double> grid = rc.h_grid;
      if (hmin > 0.0 || hmax > 0.0 || grid.empty()) grid = geometric_grid(hmin, hmax, points);
      std::sort(grid.rbegin(), grid.rend());
      SweepOptions opts;
      opts.reference = rc.reference;
      const ErrorReport report = sweep_h(system, k, grid, opts);
      if (!out_path.empty()) write_or_print(out_path, [&](std::ostream& os) { io::write_report(os, report); });
      print_report_summary(report, std::cout);
      return report_checks(assess(report), ci || rc.ci, std::cout);
    }

    if (converge_eps_cmd->parsed()) {
      const int k = resolve_k(k_flag, rc);
      const double h = resolve_h(h_flag, rc);
      std::vector<double> grid = rc.eps_grid;
      if (emin > 0.0 || emax > 0.0 || grid.empty()) grid = geometric_grid(emin, emax, points);
      std::sort(grid.rbegin(), grid.rend());
      SweepOptions opts;
      opts.reference = rc.reference;
      (void)system_at(grid.front());  // surface config errors before sweeping
      const ErrorReport report = sweep_eps(family, k, h, grid, opts);
      if (!out_path.empty()) write_or_print(out_path, [&](std::ostream& os) { io::write_report(os, report); });
      print_report_summary(report, std::cout);
      return report_checks(assess(report), ci || rc.ci, std::cout);
    }

    if (validate_cmd->parsed()) {
      const int k = resolve_k(k_flag, rc);
      const OscillatorySystem system = system_at(std::nullopt);
      std::vector<SuiteResult> results{run_algebra_suite(system, k)};
      std::mt19937 rng(seed);
      for (int i = 0; i < random_count; ++i) {
        const ComplexMatrix a = random_imaginary_spectrum_matrix(1 + static_cast<std::size_t>(i % 3), rng);
        results.push_back(run_algebra_suite("random-" + std::to_string(i + 1), a, k));
      }
      bool ok = true;
      std::cout << std::left << std::setw(14) << "system" << std::setw(4) << "k" << std::setw(22) << "check" << std::setw(6)
                << "result" << "  value / limit\n";
      for (const auto& r : results) {
        for (const auto& c : r.checks) {
          std::cout << std::setw(14) << r.system << std::setw(4) << r.k << std::setw(22) << c.name << std::setw(6)
                    << (c.passed ? "PASS" : "FAIL") << "  " << c.value << " / " << c.limit;
          if (!c.detail.empty()) std::cout << "  " << c.detail;
          std::cout << '\n';
        }
        ok = ok && r.passed();
      }
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "lleei: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "lleei: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedOrderError& e) {
    std::cerr << "lleei: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "lleei: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
