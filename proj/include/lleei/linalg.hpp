#pragma once

// Dense complex linear algebra used by the extension builder, the stepper
// and the diagnostics. Storage and factorizations come from Eigen; the
// matrix exponential is implemented here (scaling and squaring with
// Padé approximants of degree 3..13).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lleei {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum absolute column sum.
[[nodiscard]] inline double norm1(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

[[nodiscard]] inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

[[nodiscard]] inline bool all_finite(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

/// Filled in by expm() when the caller asks for it.
struct ExpmStats {
  int pade_degree = 0;
  int squarings = 0;
  double norm = 0.0;
};

/// Above this many squarings the result is only trusted to ~1e-9 relative.
inline constexpr int kExpmSquaringWarn = 40;
/// Hard cap on the number of squarings.
inline constexpr int kExpmSquaringCap = 80;

namespace detail {

inline constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                               30270240.0,    2162160.0,    110880.0,     3960.0,
                                               90.0,          1.0};
inline constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
    10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
    960960.0,            16380.0,             182.0,              1.0};

// 1-norm bounds below which the degree-m approximant is accurate to unit
// roundoff (Higham, 2005).
inline constexpr double kTheta3 = 1.495585217958292e-2;
inline constexpr double kTheta5 = 2.539398330063230e-1;
inline constexpr double kTheta7 = 9.504178996162932e-1;
inline constexpr double kTheta9 = 2.097847961257068e0;
inline constexpr double kTheta13 = 5.371920351148152e0;

inline ComplexMatrix pade_quotient(const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix p = v + u;
  const ComplexMatrix q = v - u;
  return q.partialPivLu().solve(p);
}

template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  ComplexMatrix u_even = ComplexMatrix::Zero(n, n);
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i + 1 < N; i += 2) {
    v += b[i] * power;
    u_even += b[i + 1] * power;
    power = power * a2;
  }
  return pade_quotient(a * u_even, v);
}

inline ComplexMatrix pade13(const ComplexMatrix& a) {
  const auto& b = kPade13;
  const auto n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const ComplexMatrix u = a * (u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const ComplexMatrix v_inner = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  const ComplexMatrix v = v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_quotient(u, v);
}

}  // namespace detail

/// Matrix exponential by scaling and squaring.
///
/// Throws LinalgError for non-square or non-finite input, and when more than
/// kExpmSquaringCap squarings would be needed. Runs that need more than
/// kExpmSquaringWarn squarings are reported on stderr.
[[nodiscard]] inline ComplexMatrix expm(const ComplexMatrix& m, ExpmStats* stats = nullptr) {
  if (m.rows() != m.cols()) throw LinalgError("expm: matrix is not square");
  if (!all_finite(m)) throw LinalgError("expm: non-finite input");
  const auto n = m.rows();
  if (n == 0) return m;

  const double nrm = norm1(m);
  ExpmStats local;
  local.norm = nrm;
  ComplexMatrix result;
  if (nrm <= detail::kTheta3) {
    local.pade_degree = 3;
    result = detail::pade_low(m, detail::kPade3);
  } else if (nrm <= detail::kTheta5) {
    local.pade_degree = 5;
    result = detail::pade_low(m, detail::kPade5);
  } else if (nrm <= detail::kTheta7) {
    local.pade_degree = 7;
    result = detail::pade_low(m, detail::kPade7);
  } else if (nrm <= detail::kTheta9) {
    local.pade_degree = 9;
    result = detail::pade_low(m, detail::kPade9);
  } else {
    local.pade_degree = 13;
    const int s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / detail::kTheta13))));
    if (s > kExpmSquaringCap) {
      throw LinalgError("expm: norm " + std::to_string(nrm) + " needs " + std::to_string(s) +
                        " squarings (cap " + std::to_string(kExpmSquaringCap) + ")");
    }
    if (s > kExpmSquaringWarn) {
      std::cerr << "lleei: expm uses " << s << " squarings (norm " << nrm
                << "); accuracy reduced\n";
    }
    local.squarings = s;
    result = detail::pade13(m / std::ldexp(1.0, s));
    for (int i = 0; i < s; ++i) result = result * result;
  }
  if (stats != nullptr) *stats = local;
  return result;
}

/// expm(m) * v. Forms the full exponential; intended for desk-scale sizes.
[[nodiscard]] inline ComplexVector expm_apply(const ComplexMatrix& m, const ComplexVector& v,
                                              ExpmStats* stats = nullptr) {
  if (m.rows() != m.cols()) throw LinalgError("expm_apply: matrix is not square");
  if (m.cols() != v.size()) throw LinalgError("expm_apply: dimension mismatch");
  return expm(m, stats) * v;
}

/// All eigenvalues via Hessenberg reduction and shifted QR (Eigen's complex
/// Schur decomposition, capped at 30 iterations per eigenvalue).
[[nodiscard]] inline std::vector<Complex> eigvals(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw LinalgError("eigvals: matrix is not square");
  if (!all_finite(m)) throw LinalgError("eigvals: non-finite input");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw LinalgError("eigvals: QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Solves m * X = b with partial-pivoted LU.
[[nodiscard]] inline ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b) {
  if (m.rows() != m.cols()) throw LinalgError("solve: matrix is not square");
  if (m.rows() != b.rows()) throw LinalgError("solve: dimension mismatch");
  const Eigen::PartialPivLU<ComplexMatrix> lu(m);
  // rcond() is not reliable once a pivot is exactly zero.
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double rcond = min_pivot == 0.0 ? 0.0 : lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw LinalgError("solve: matrix is singular to working precision (rcond " + std::to_string(rcond) + ")");
  }
  return lu.solve(b);
}

}  // namespace lleei
