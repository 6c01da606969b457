#pragma once

// Classical RK4 on the full vector field with compensated state updates,
// used to manufacture reference solutions.

#include "lleei/integrator.hpp"
#include "lleei/linalg.hpp"
#include "lleei/sysdef.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <stdexcept>
#include <string>

namespace lleei {

/// Largest |lambda(A)|.
[[nodiscard]] inline double spectral_radius(const ComplexMatrix& a) {
  double rho = 0.0;
  for (const auto& l : eigvals(a)) rho = std::max(rho, std::abs(l));
  return rho;
}

struct ReferenceOptions {
  /// Permit h_ref > eps / (4 rho) with a warning instead of an error.
  bool allow_underresolved = false;
};

/// Fixed-step RK4 with h_ref snapped to T / N; keeps every
/// `sample_stride`-th state. N must be a multiple of the stride.
[[nodiscard]] inline Trajectory rk4_integrate(const OscillatorySystem& system, double h_ref, std::size_t sample_stride,
                                              const ReferenceOptions& options = {}) {
  if (sample_stride < 1) throw std::invalid_argument("sample stride must be >= 1");
  const std::size_t n_steps = uniform_step_count(system.final_time(), h_ref);
  if (n_steps % sample_stride != 0) {
    throw std::invalid_argument("reference step count " + std::to_string(n_steps) + " is not a multiple of stride " +
                                std::to_string(sample_stride));
  }
  const double h = system.final_time() / static_cast<double>(n_steps);
  const double rho = spectral_radius(system.A());
  if (rho > 0.0 && h > system.epsilon() / (4.0 * rho)) {
    const std::string msg = "reference step " + std::to_string(h) + " does not resolve the fastest oscillation (needs <= " +
                            std::to_string(system.epsilon() / (4.0 * rho)) + ")";
    if (!options.allow_underresolved) throw std::invalid_argument(msg);
    std::cerr << "lleei: warning: " << msg << '\n';
  }

  Trajectory traj;
  traj.epsilon = system.epsilon();
  traj.h = h * static_cast<double>(sample_stride);
  traj.h_requested = h_ref;
  traj.method = "RK4";
  const std::size_t samples = n_steps / sample_stride;
  traj.times.reserve(samples + 1);
  traj.states.reserve(samples + 1);

  ComplexVector u = system.initial_state();
  ComplexVector carry = ComplexVector::Zero(u.size());
  traj.times.push_back(0.0);
  traj.states.push_back(u);
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = static_cast<double>(n) * h;
    const ComplexVector k1 = system.rhs(u, t);
    const ComplexVector k2 = system.rhs(u + 0.5 * h * k1, t + 0.5 * h);
    const ComplexVector k3 = system.rhs(u + 0.5 * h * k2, t + 0.5 * h);
    const ComplexVector k4 = system.rhs(u + h * k3, t + h);
    // Kahan summation of the increments.
    const ComplexVector incr = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4) - carry;
    const ComplexVector next = u + incr;
    carry = (next - u) - incr;
    u = next;
    if ((n + 1) % sample_stride == 0) {
      if (!all_finite(u)) throw IntegrationError("non-finite reference state at step " + std::to_string(n + 1), n + 1);
      if (u.norm() > kBlowUpNorm) throw IntegrationError("reference blew up at step " + std::to_string(n + 1), n + 1);
      traj.times.push_back(static_cast<double>(n + 1) * h);
      traj.states.push_back(u);
    }
  }
  return traj;
}

}  // namespace lleei
