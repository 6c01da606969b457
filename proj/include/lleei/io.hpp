#pragma once

// CSV output. Every file starts with a header row; numbers use 17
// significant digits so values round-trip exactly.

#include "lleei/harness.hpp"
#include "lleei/integrator.hpp"
#include "lleei/linalg.hpp"

#include <fstream>
#include <iomanip>
#include <ios>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lleei::io {

struct Precise {
  double v;
  friend std::ostream& operator<<(std::ostream& os, Precise p) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << p.v;
    os.flags(flags);
    os.precision(prec);
    return os;
  }
};

[[nodiscard]] inline Precise num(double v) { return {v}; }

inline void write_trajectory(std::ostream& os, const Trajectory& traj) {
  os << 't';
  const Eigen::Index d = traj.states.empty() ? 0 : traj.states.front().size();
  for (Eigen::Index i = 1; i <= d; ++i) os << ",re_u" << i << ",im_u" << i;
  os << '\n';
  for (std::size_t n = 0; n < traj.size(); ++n) {
    os << num(traj.times[n]);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << num(traj.states[n](i).real()) << ',' << num(traj.states[n](i).imag());
    os << '\n';
  }
}

namespace detail {

inline void optional_field(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << num(*v);
}

inline void fit_line(std::ostream& os, const char* label, const FitResult& fit) {
  os << "# slope_" << label << ',';
  if (fit.slope) os << num(*fit.slope);
  os << ",used=" << fit.used << ",below_floor=" << fit.below_floor << '\n';
}

}  // namespace detail

/// Rows: param, error_u, error_y, error_ydot, regime. Absent values are empty
/// fields. A trailing block of '#' lines holds thresholds and slopes.
inline void write_report(std::ostream& os, const ErrorReport& report) {
  os << "param,error_u,error_y,error_ydot,regime\n";
  for (const auto& pt : report.points) {
    os << num(pt.param);
    if (pt.error) {
      os << ',' << num(pt.error->u);
      detail::optional_field(os, pt.error->y);
      detail::optional_field(os, pt.error->ydot);
    } else {
      os << ",,,";
    }
    os << ',' << to_string(pt.regime);
    if (!pt.error) os << " (failed: " << pt.failure << ')';
    os << '\n';
  }
  const bool h_axis = report.axis == "h";
  os << "# axis," << report.axis << '\n';
  os << "# problem," << report.problem << '\n';
  os << "# k," << report.k << '\n';
  os << (h_axis ? "# epsilon," : "# h,") << num(report.fixed) << '\n';
  os << (h_axis ? "# h0," : "# eps0,") << num(report.threshold_small) << '\n';
  os << (h_axis ? "# h0_lower," : "# eps0_lower,");
  if (report.threshold_large) os << num(*report.threshold_large);
  os << '\n';
  detail::fit_line(os, "small_u", report.small.u);
  detail::fit_line(os, "large_u", report.large.u);
  if (report.second_order) {
    detail::fit_line(os, "small_y", report.small.y);
    detail::fit_line(os, "small_ydot", report.small.ydot);
    detail::fit_line(os, "large_y", report.large.y);
    detail::fit_line(os, "large_ydot", report.large.ydot);
  }
}

/// Matrix as rows of re,im pairs.
inline void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << "re_c" << j + 1 << ",im_c" << j + 1;
  os << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << num(m(i, j).real()) << ',' << num(m(i, j).imag());
    os << '\n';
  }
}

/// Opens `path` for writing or throws.
[[nodiscard]] inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace lleei::io
