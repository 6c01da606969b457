#pragma once

// LLEEI(k+1): one step builds the extension matrices at the current state
// xhat = [U_n; t_n], propagates the truncated linear system exactly from
// e_1 over [t_n, t_n + h] and reads the new state off the degree-1 block.

#include "lleei/extension.hpp"
#include "lleei/linalg.hpp"
#include "lleei/sysdef.hpp"

#include <cmath>
#include <cstddef>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lleei {

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Norm above which a run is declared unstable.
inline constexpr double kBlowUpNorm = 1e12;

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;
  double epsilon = 0.0;
  double h = 0.0;            // step actually used (T / N)
  double h_requested = 0.0;  // before snapping to a uniform grid
  int k = 0;                 // extension degree; 0 for reference runs
  std::string method;
  /// Largest |w_time - h| over all steps (time transport of the extension).
  double max_time_residual = 0.0;
  int max_squarings = 0;

  [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
  [[nodiscard]] const ComplexVector& final_state() const { return states.back(); }
};

/// Number of uniform steps covering [0, T] closest to T / h.
[[nodiscard]] inline std::size_t uniform_step_count(double final_time, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  const double n = std::round(final_time / h);
  if (n > 1e9) throw std::invalid_argument("too many steps requested");
  return static_cast<std::size_t>(std::max(1.0, n));
}

struct StepResult {
  ComplexVector state;
  /// |time component of the propagated extension vector - h|.
  double time_residual = 0.0;
  ExpmStats expm;
};

/// Reusable stepper for one (system, k) pair.
class LleiStepper {
 public:
  LleiStepper(const OscillatorySystem& system, int k)
      : system_(&system), builder_(system.dim(), k), a1_aug_(augment(system).A1) {
    if (system.max_order() < k) {
      throw UnsupportedOrderError("oracle of '" + system.name() + "' supports order " +
                                  std::to_string(system.max_order()) + " < k = " + std::to_string(k));
    }
  }

  [[nodiscard]] const ExtensionBuilder& builder() const noexcept { return builder_; }

  [[nodiscard]] StepResult step(const ComplexVector& un, double tn, double h) const {
    if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
    const auto d = static_cast<Eigen::Index>(system_->dim());
    const ExtensionMatrices ext = builder_.build(*system_, a1_aug_, un, tn);
    const ComplexMatrix generator = (ext.A1k / system_->epsilon() + ext.A0k) * h;
    StepResult r;
    // exp(generator) e_1 is the first column of the exponential.
    const ComplexMatrix e = expm(generator, &r.expm);
    const ComplexVector w = e.col(0);
    r.state = un + w.segment(1, d);
    r.time_residual = std::abs(w(d + 1) - h);
    return r;
  }

 private:
  const OscillatorySystem* system_;
  ExtensionBuilder builder_;
  ComplexMatrix a1_aug_;
};

/// One LLEEI(k+1) step from (un, tn).
[[nodiscard]] inline ComplexVector step(const OscillatorySystem& system, int k, const ComplexVector& un, double tn,
                                        double h) {
  return LleiStepper(system, k).step(un, tn, h).state;
}

/// N = round(T/h) uniform steps; h is snapped to T/N.
[[nodiscard]] inline Trajectory integrate(const OscillatorySystem& system, int k, double h) {
  if (k < 1) throw std::invalid_argument("extension degree k must be >= 1");
  const std::size_t n_steps = uniform_step_count(system.final_time(), h);
  const double h_used = system.final_time() / static_cast<double>(n_steps);
  const LleiStepper stepper(system, k);

  Trajectory traj;
  traj.epsilon = system.epsilon();
  traj.h = h_used;
  traj.h_requested = h;
  traj.k = k;
  traj.method = "LLEEI" + std::to_string(k + 1);
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(system.initial_state());

  for (std::size_t n = 0; n < n_steps; ++n) {
    const double tn = static_cast<double>(n) * h_used;
    StepResult r = stepper.step(traj.states.back(), tn, h_used);
    if (!all_finite(r.state)) throw IntegrationError("non-finite state at step " + std::to_string(n + 1), n + 1);
    if (r.state.norm() > kBlowUpNorm) throw IntegrationError("state blew up at step " + std::to_string(n + 1), n + 1);
    traj.max_time_residual = std::max(traj.max_time_residual, r.time_residual / std::max(1.0, h_used));
    traj.max_squarings = std::max(traj.max_squarings, r.expm.squarings);
    traj.times.push_back(static_cast<double>(n + 1) * h_used);
    traj.states.push_back(std::move(r.state));
  }
  return traj;
}

}  // namespace lleei
