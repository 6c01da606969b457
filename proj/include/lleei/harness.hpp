#pragma once

// Convergence studies: global max errors against RK4 references, step-size
// thresholds from the spectrum of A, regime-split log-log slope fits, and
// sweeps over h or eps.

#include "lleei/integrator.hpp"
#include "lleei/linalg.hpp"
#include "lleei/parallel.hpp"
#include "lleei/refsolve.hpp"
#include "lleei/sysdef.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lleei {

// ---------------------------------------------------------------------------
// Error metrics

struct ErrorMetrics {
  double u = 0.0;
  std::optional<double> y;     // position error, second-order problems only
  std::optional<double> ydot;  // velocity error, ydot = p / eps
};

/// Max over the grid of ||U_n - u_ref(t_n)||_2. With position_dim > 0 the
/// state is read as [y; p] and the y / ydot errors are reported as well.
[[nodiscard]] inline ErrorMetrics global_max_error(const Trajectory& traj, const Trajectory& ref,
                                                   std::size_t position_dim = 0) {
  if (traj.size() != ref.size()) {
    throw std::invalid_argument("grid mismatch: " + std::to_string(traj.size()) + " vs " + std::to_string(ref.size()) +
                                " nodes");
  }
  ErrorMetrics e;
  double ey = 0.0;
  double ep = 0.0;
  const auto m = static_cast<Eigen::Index>(position_dim);
  for (std::size_t n = 0; n < traj.size(); ++n) {
    if (std::abs(traj.times[n] - ref.times[n]) > 1e-12 * std::max(1.0, std::abs(ref.times[n]))) {
      throw std::invalid_argument("grid mismatch at node " + std::to_string(n));
    }
    const ComplexVector diff = traj.states[n] - ref.states[n];
    e.u = std::max(e.u, diff.norm());
    if (position_dim > 0) {
      ey = std::max(ey, diff.head(m).norm());
      ep = std::max(ep, diff.tail(diff.size() - m).norm());
    }
  }
  if (position_dim > 0) {
    e.y = ey;
    e.ydot = ep / traj.epsilon;
  }
  return e;
}

/// Every factor-th node of a finer trajectory.
[[nodiscard]] inline Trajectory subsample(const Trajectory& traj, std::size_t factor) {
  if (factor < 1 || (traj.size() - 1) % factor != 0) throw std::invalid_argument("subsample: factor does not divide grid");
  if (factor == 1) return traj;
  Trajectory out = traj;
  out.times.clear();
  out.states.clear();
  for (std::size_t n = 0; n < traj.size(); n += factor) {
    out.times.push_back(traj.times[n]);
    out.states.push_back(traj.states[n]);
  }
  out.h = traj.h * static_cast<double>(factor);
  return out;
}

// ---------------------------------------------------------------------------
// Thresholds

struct Thresholds {
  double rho = 0.0;  // max |lambda(A)|
  double mu = 0.0;   // min |lambda(A)|
  /// Small-step bound pi eps / (2 rho).
  double h0 = 0.0;
  /// Large-step bound 2 pi eps / mu; absent when A has a zero eigenvalue.
  std::optional<double> h0_lower;
};

/// Relative size below which an eigenvalue of A counts as zero.
inline constexpr double kZeroEigenvalueTol = 1e-10;

[[nodiscard]] inline Thresholds thresholds_for(const ComplexMatrix& a, double epsilon) {
  Thresholds th;
  const auto ev = eigvals(a);
  th.mu = std::numeric_limits<double>::infinity();
  for (const auto& l : ev) {
    th.rho = std::max(th.rho, std::abs(l));
    th.mu = std::min(th.mu, std::abs(l));
  }
  if (th.rho == 0.0) throw std::invalid_argument("thresholds: A is zero");
  th.h0 = std::numbers::pi * epsilon / (2.0 * th.rho);
  if (th.mu > kZeroEigenvalueTol * th.rho) {
    th.h0_lower = 2.0 * std::numbers::pi * epsilon / th.mu;
  } else {
    th.mu = 0.0;
  }
  return th;
}

/// For second-order problems the eigenvalues of A are +-i sqrt(lambda(M)),
/// so these coincide with the pi eps / (2 sqrt(rho(M))) forms.
[[nodiscard]] inline Thresholds thresholds(const OscillatorySystem& system) {
  return thresholds_for(system.A(), system.epsilon());
}

enum class Regime { small_step, intermediate, large_step };

[[nodiscard]] inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::small_step: return "small";
    case Regime::intermediate: return "intermediate";
    case Regime::large_step: return "large";
  }
  return "?";
}

[[nodiscard]] inline Regime classify(double h, const Thresholds& th) {
  if (h < th.h0) return Regime::small_step;
  if (th.h0_lower && h > *th.h0_lower) return Regime::large_step;
  return Regime::intermediate;
}

// ---------------------------------------------------------------------------
// Slope fits

/// Errors below this are treated as round-off and left out of slope fits.
inline constexpr double kAccuracyFloor = 1e-13;

struct FitResult {
  std::optional<double> slope;
  std::size_t used = 0;
  std::size_t below_floor = 0;
};

/// Least-squares slope of log(error) against log(param). Needs at least 3
/// points above the floor.
[[nodiscard]] inline FitResult fit_order(const std::vector<double>& params, const std::vector<double>& errors,
                                         double floor = kAccuracyFloor) {
  if (params.size() != errors.size()) throw std::invalid_argument("fit_order: size mismatch");
  std::vector<double> xs;
  std::vector<double> ys;
  FitResult r;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(params[i] > 0.0) || !std::isfinite(errors[i])) continue;
    if (!(errors[i] >= floor) || errors[i] <= 0.0) {
      ++r.below_floor;
      continue;
    }
    xs.push_back(std::log(params[i]));
    ys.push_back(std::log(errors[i]));
  }
  r.used = xs.size();
  if (xs.size() < 3) return r;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) return r;
  r.slope = sxy / sxx;
  return r;
}

// ---------------------------------------------------------------------------
// Reference planning

struct ReferenceSettings {
  /// Reference step <= resolution * eps / rho.
  double resolution = 1.0 / 4096.0;
  /// Absolute cap on the reference step (resolves the forcing's own time scale).
  double max_step = 1.0 / 1024.0;
  /// Share one reference across grids only if the common grid stays this
  /// many times the needed reference step count.
  std::size_t share_limit = 4;
};

namespace detail {

inline std::size_t lcm_checked(std::size_t a, std::size_t b, std::size_t cap) {
  const std::size_t g = std::gcd(a, b);
  const std::size_t l = a / g;
  if (l > cap / b) return 0;
  return l * b;
}

inline std::size_t needed_reference_steps(const OscillatorySystem& system, const ReferenceSettings& s) {
  const double rho = spectral_radius(system.A());
  double step = s.max_step;
  if (rho > 0.0) step = std::min(step, s.resolution * system.epsilon() / rho);
  return static_cast<std::size_t>(std::ceil(system.final_time() / step));
}

}  // namespace detail

/// RK4 reference whose grid contains every grid with `coarse_steps` steps.
/// Returns nullopt when the common refinement would be too large.
[[nodiscard]] inline std::optional<Trajectory> shared_reference(const OscillatorySystem& system,
                                                                const std::vector<std::size_t>& coarse_steps,
                                                                const ReferenceSettings& settings = {}) {
  const std::size_t need = detail::needed_reference_steps(system, settings);
  std::size_t common = 1;
  for (std::size_t n : coarse_steps) {
    common = detail::lcm_checked(common, n, need * settings.share_limit);
    if (common == 0) return std::nullopt;
  }
  if (common > need * settings.share_limit) return std::nullopt;
  const std::size_t total = common * ((need + common - 1) / common);
  return rk4_integrate(system, system.final_time() / static_cast<double>(total), total / common);
}

/// Reference on exactly the grid of `coarse_steps` uniform steps.
[[nodiscard]] inline Trajectory reference_for_grid(const OscillatorySystem& system, std::size_t coarse_steps,
                                                   const ReferenceSettings& settings = {}) {
  auto ref = shared_reference(system, {coarse_steps}, settings);
  if (!ref) throw std::runtime_error("reference grid too large");
  return std::move(*ref);
}

/// Error estimate for the reference on a grid of `coarse_steps` steps, from
/// a second run with half the reference step (RK4: err ~ 16/15 * difference).
[[nodiscard]] inline double reference_error_estimate(const OscillatorySystem& system, std::size_t coarse_steps,
                                                     const ReferenceSettings& settings = {}) {
  ReferenceSettings finer = settings;
  finer.resolution /= 2.0;
  finer.max_step /= 2.0;
  const Trajectory coarse = reference_for_grid(system, coarse_steps, settings);
  const Trajectory fine = reference_for_grid(system, coarse_steps, finer);
  return global_max_error(coarse, fine).u * 16.0 / 15.0;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepPoint {
  double param = 0.0;  // h or eps
  std::optional<ErrorMetrics> error;
  Regime regime = Regime::intermediate;
  std::string failure;  // why the point is absent
  double time_residual = 0.0;
};

struct RegimeFits {
  FitResult u;
  FitResult y;
  FitResult ydot;
};

struct ErrorReport {
  std::string axis;  // "h" or "epsilon"
  std::string problem;
  int k = 0;
  double fixed = 0.0;  // eps for h sweeps, h for eps sweeps
  std::vector<SweepPoint> points;
  RegimeFits small;
  RegimeFits large;
  /// h axis: h0 and h0_lower. eps axis: eps0 (small regime is eps > eps0)
  /// and eps0_lower (large regime is eps < eps0_lower).
  double threshold_small = 0.0;
  std::optional<double> threshold_large;
  bool second_order = false;
};

struct SweepOptions {
  ReferenceSettings reference;
  double floor = kAccuracyFloor;
  std::size_t workers = worker_count();
};

namespace detail {

inline RegimeFits fit_regime(const std::vector<SweepPoint>& pts, Regime regime, double floor) {
  std::vector<double> p;
  std::vector<double> eu;
  std::vector<double> ey;
  std::vector<double> ep;
  for (const auto& pt : pts) {
    if (pt.regime != regime || !pt.error) continue;
    p.push_back(pt.param);
    eu.push_back(pt.error->u);
    ey.push_back(pt.error->y.value_or(std::numeric_limits<double>::quiet_NaN()));
    ep.push_back(pt.error->ydot.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  return {fit_order(p, eu, floor), fit_order(p, ey, floor), fit_order(p, ep, floor)};
}

}  // namespace detail

/// Error vs h at the system's eps. h_values must be strictly descending.
[[nodiscard]] inline ErrorReport sweep_h(const OscillatorySystem& system, int k, const std::vector<double>& h_values,
                                         const SweepOptions& options = {}) {
  for (std::size_t i = 1; i < h_values.size(); ++i)
    if (!(h_values[i] < h_values[i - 1])) throw std::invalid_argument("sweep_h: h values must be sorted descending");

  ErrorReport report;
  report.axis = "h";
  report.problem = system.name();
  report.k = k;
  report.fixed = system.epsilon();
  report.second_order = system.is_second_order();
  const Thresholds th = thresholds(system);
  report.threshold_small = th.h0;
  report.threshold_large = th.h0_lower;

  std::vector<std::size_t> steps;
  for (double h : h_values) steps.push_back(uniform_step_count(system.final_time(), h));
  const std::optional<Trajectory> shared = shared_reference(system, steps, options.reference);

  report.points.resize(h_values.size());
  parallel_for(
      h_values.size(),
      [&](std::size_t i) {
        SweepPoint& pt = report.points[i];
        pt.param = system.final_time() / static_cast<double>(steps[i]);
        pt.regime = classify(pt.param, th);
        try {
          const Trajectory traj = integrate(system, k, h_values[i]);
          const Trajectory ref = shared ? subsample(*shared, (shared->size() - 1) / steps[i])
                                        : reference_for_grid(system, steps[i], options.reference);
          pt.error = global_max_error(traj, ref, system.position_dim());
          pt.time_residual = traj.max_time_residual;
        } catch (const IntegrationError& e) {
          pt.failure = e.what();
        } catch (const LinalgError& e) {
          pt.failure = e.what();
        }
      },
      options.workers);

  report.small = detail::fit_regime(report.points, Regime::small_step, options.floor);
  report.large = detail::fit_regime(report.points, Regime::large_step, options.floor);
  return report;
}

using ProblemFamily = std::function<OscillatorySystem(double epsilon)>;

/// Error vs eps at fixed h; the reference is recomputed for every eps.
[[nodiscard]] inline ErrorReport sweep_eps(const ProblemFamily& family, int k, double h,
                                           const std::vector<double>& eps_values, const SweepOptions& options = {}) {
  if (eps_values.empty()) throw std::invalid_argument("sweep_eps: no eps values");
  ErrorReport report;
  report.axis = "epsilon";
  report.k = k;
  report.fixed = h;
  {
    const OscillatorySystem probe = family(eps_values.front());
    report.problem = probe.name();
    report.second_order = probe.is_second_order();
    const Thresholds th = thresholds_for(probe.A(), 1.0);
    // h < pi eps / (2 rho)  <=>  eps > 2 rho h / pi, and likewise for mu.
    report.threshold_small = 2.0 * th.rho * h / std::numbers::pi;
    if (th.h0_lower) report.threshold_large = th.mu * h / (2.0 * std::numbers::pi);
  }

  report.points.resize(eps_values.size());
  parallel_for(
      eps_values.size(),
      [&](std::size_t i) {
        SweepPoint& pt = report.points[i];
        pt.param = eps_values[i];
        const OscillatorySystem system = family(eps_values[i]);
        const std::size_t n = uniform_step_count(system.final_time(), h);
        pt.regime = classify(system.final_time() / static_cast<double>(n), thresholds(system));
        try {
          const Trajectory traj = integrate(system, k, h);
          const Trajectory ref = reference_for_grid(system, n, options.reference);
          pt.error = global_max_error(traj, ref, system.position_dim());
          pt.time_residual = traj.max_time_residual;
        } catch (const IntegrationError& e) {
          pt.failure = e.what();
        } catch (const LinalgError& e) {
          pt.failure = e.what();
        }
      },
      options.workers);

  report.small = detail::fit_regime(report.points, Regime::small_step, options.floor);
  report.large = detail::fit_regime(report.points, Regime::large_step, options.floor);
  return report;
}

// ---------------------------------------------------------------------------
// Order assertions

struct OrderCheck {
  std::string name;
  std::optional<double> measured;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kSmallStepSlopeTol = 0.3;
inline constexpr double kLargeStepSlopeTol = 0.4;
inline constexpr double kEpsSlopeTol = 0.3;
/// Largest allowed max/min ratio for errors that should not depend on eps.
inline constexpr double kUniformityRatio = 4.0;

namespace detail {

inline OrderCheck slope_check(std::string name, const FitResult& fit, double expected, double tol) {
  OrderCheck c{std::move(name), fit.slope, expected, tol, false};
  c.passed = fit.slope && std::abs(*fit.slope - expected) <= tol;
  return c;
}

inline OrderCheck uniformity_check(std::string name, const std::vector<SweepPoint>& pts, Regime regime, bool velocity) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t count = 0;
  for (const auto& pt : pts) {
    if (pt.regime != regime || !pt.error) continue;
    const double e = velocity ? pt.error->ydot.value_or(pt.error->u) : pt.error->u;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    ++count;
  }
  OrderCheck c{std::move(name), std::nullopt, kUniformityRatio, 0.0, false};
  if (count >= 2 && lo > 0.0) {
    c.measured = hi / lo;
    c.passed = *c.measured <= kUniformityRatio;
  }
  return c;
}

}  // namespace detail

/// The orders the theory predicts for this report, checked against its fits.
/// Regimes without fitted points are skipped.
[[nodiscard]] inline std::vector<OrderCheck> assess(const ErrorReport& report) {
  std::vector<OrderCheck> checks;
  auto has_points = [&](Regime r) {
    return std::any_of(report.points.begin(), report.points.end(),
                       [r](const SweepPoint& p) { return p.regime == r && p.error; });
  };
  const double k = report.k;
  if (report.axis == "h") {
    if (has_points(Regime::small_step))
      checks.push_back(detail::slope_check("small-step slope error(u) vs h", report.small.u, k + 1, kSmallStepSlopeTol));
    if (has_points(Regime::large_step))
      checks.push_back(detail::slope_check("large-step slope error(u) vs h", report.large.u, k, kLargeStepSlopeTol));
    return checks;
  }
  if (report.second_order) {
    if (has_points(Regime::small_step)) {
      checks.push_back(detail::slope_check("small-step slope error(y) vs eps", report.small.y, 1.0, kEpsSlopeTol));
      checks.push_back(detail::uniformity_check("small-step error(ydot) max/min", report.points, Regime::small_step, true));
    }
    if (has_points(Regime::large_step)) {
      checks.push_back(detail::slope_check("large-step slope error(y) vs eps", report.large.y, 2.0, kLargeStepSlopeTol));
      checks.push_back(detail::slope_check("large-step slope error(ydot) vs eps", report.large.ydot, 1.0, kEpsSlopeTol));
    }
  } else {
    if (has_points(Regime::small_step))
      checks.push_back(detail::uniformity_check("small-step error(u) max/min", report.points, Regime::small_step, false));
    if (has_points(Regime::large_step))
      checks.push_back(detail::slope_check("large-step slope error(u) vs eps", report.large.u, 1.0, kEpsSlopeTol));
  }
  return checks;
}

}  // namespace lleei
