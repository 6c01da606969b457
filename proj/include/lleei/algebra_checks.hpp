#pragma once

// Numerical checks of the algebraic structure of A1k: imaginary spectrum,
// eigenvalues as sums of augmented eigenvalues, similarity through S(xhat),
// block bidiagonal layout, and eps-uniform bounds on exp(A1k t / eps).

#include "lleei/extension.hpp"
#include "lleei/linalg.hpp"
#include "lleei/mindex.hpp"
#include "lleei/sysdef.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lleei {

struct CheckReport {
  std::string name;
  bool passed = false;
  /// The quantity compared against the limit (residual, max |Re|, ratio, ...).
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

inline constexpr double kSpectrumTol = 1e-8;
inline constexpr double kSimilarityTol = 1e-12;
inline constexpr double kMatchRadius = 1e-8;
inline constexpr double kBoundedExpFactor = 10.0;

/// max |Re lambda(A1k)| <= tol * ||A1k||_1.
[[nodiscard]] inline CheckReport check_spectrum_imaginary(const ComplexMatrix& a1k, double tol = kSpectrumTol) {
  CheckReport r{"spectrum-imaginary"};
  if (a1k.rows() != a1k.cols()) throw std::invalid_argument("check_spectrum_imaginary: matrix must be square");
  const double scale = norm1(a1k);
  r.limit = tol * scale;
  std::ostringstream offending;
  for (const auto& l : eigvals(a1k)) {
    r.value = std::max(r.value, std::abs(l.real()));
    if (std::abs(l.real()) > r.limit) offending << ' ' << l;
  }
  r.passed = r.value <= r.limit;
  if (!r.passed) r.detail = "off-axis eigenvalues:" + offending.str();
  return r;
}

namespace detail {

/// Greedy nearest-pair matching of two multisets; returns the largest
/// matched distance, or infinity on a size mismatch.
inline double match_multisets(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  // Match the most constrained values first: sort by distance to nearest partner.
  while (!a.empty()) {
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        const double dist = std::abs(a[i] - b[j]);
        if (dist < best) {
          best = dist;
          best_i = i;
          best_j = j;
        }
      }
    }
    worst = std::max(worst, best);
    used[best_j] = true;
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(best_i));
  }
  return worst;
}

/// All sums lambda_{i1} + ... + lambda_{ij} over sorted index tuples.
inline std::vector<Complex> eigen_sums(const std::vector<Complex>& eigs, int j) {
  std::vector<Complex> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(j), 0);
  const std::size_t n = eigs.size();
  while (true) {
    Complex s{};
    for (std::size_t i : idx) s += eigs[i];
    out.push_back(s);
    // next non-decreasing tuple
    int pos = j - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1) --pos;
    if (pos < 0) break;
    const std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
    for (auto p = static_cast<std::size_t>(pos); p < idx.size(); ++p) idx[p] = v;
  }
  return out;
}

}  // namespace detail

/// Each degree-j diagonal block of A1k(0) has the eigenvalues
/// { lambda_{i1} + ... + lambda_{ij} : i1 <= ... <= ij } of the augmented A1.
[[nodiscard]] inline CheckReport check_spectrum_sums(const ComplexMatrix& a1k_zero, const std::vector<Complex>& eigs_aug,
                                                     const MultiIndexCatalog& catalog, double radius = kMatchRadius) {
  CheckReport r{"spectrum-sums"};
  const auto dim = static_cast<Eigen::Index>(catalog.size());
  if (a1k_zero.rows() != dim || a1k_zero.cols() != dim) throw std::invalid_argument("check_spectrum_sums: size mismatch");
  if (eigs_aug.size() != static_cast<std::size_t>(catalog.n_vars()))
    throw std::invalid_argument("check_spectrum_sums: need one eigenvalue per variable");
  r.limit = radius;
  r.passed = true;
  for (int j = 1; j <= catalog.degree(); ++j) {
    const auto start = static_cast<Eigen::Index>(catalog.block_start(j));
    const auto len = static_cast<Eigen::Index>(catalog.block_dims()[static_cast<std::size_t>(j)]);
    const ComplexMatrix block = a1k_zero.block(start, start, len, len);
    const double dist = detail::match_multisets(eigvals(block), detail::eigen_sums(eigs_aug, j));
    if (!std::isfinite(dist)) {
      r.passed = false;
      r.value = dist;
      r.detail = "block " + std::to_string(j) + " has the wrong number of eigenvalues";
      return r;
    }
    r.value = std::max(r.value, dist);
    if (dist > radius) {
      r.passed = false;
      r.detail += "block " + std::to_string(j) + " mismatch " + std::to_string(dist) + "; ";
    }
  }
  return r;
}

/// ||A1k(xhat) S - S A1k(0)||_1 <= tol ||A1k(xhat)||_1 ||S||_1.
[[nodiscard]] inline CheckReport check_similarity(const ComplexMatrix& a1k_xhat, const ComplexMatrix& a1k_zero,
                                                  const ComplexMatrix& s, double tol = kSimilarityTol) {
  CheckReport r{"similarity"};
  if (a1k_xhat.rows() != s.rows() || a1k_zero.rows() != s.rows() || s.rows() != s.cols())
    throw std::invalid_argument("check_similarity: size mismatch");
  r.value = norm1(a1k_xhat * s - s * a1k_zero);
  r.limit = tol * norm1(a1k_xhat) * norm1(s);
  r.passed = r.value <= r.limit;
  return r;
}

/// Blocks above the diagonal are exactly zero; with xhat = 0 the blocks
/// below it are too. A1k never reaches more than one degree down.
[[nodiscard]] inline CheckReport check_block_structure(const ComplexMatrix& a1k, const MultiIndexCatalog& catalog,
                                                       bool xhat_is_zero) {
  CheckReport r{"block-structure"};
  const auto dim = static_cast<Eigen::Index>(catalog.size());
  if (a1k.rows() != dim || a1k.cols() != dim) throw std::invalid_argument("check_block_structure: size mismatch");
  std::size_t violations = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int di = catalog.degree_of(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int dj = catalog.degree_of(static_cast<std::size_t>(j));
      const bool allowed = dj == di || (dj == di - 1 && !xhat_is_zero);
      if (!allowed && a1k(i, j) != Complex{}) {
        ++violations;
        r.value = std::max(r.value, std::abs(a1k(i, j)));
      }
    }
  }
  r.passed = violations == 0;
  if (!r.passed) r.detail = std::to_string(violations) + " nonzero entries outside the allowed blocks";
  return r;
}

/// M(eps) = max_t ||exp(A1k t / eps)||_1; passes iff max_eps M(eps) <= factor * M(eps_max).
[[nodiscard]] inline CheckReport check_bounded_exponential(const ComplexMatrix& a1k, const std::vector<double>& eps_list,
                                                           const std::vector<double>& t_grid,
                                                           double factor = kBoundedExpFactor) {
  CheckReport r{"bounded-exponential"};
  if (eps_list.empty() || t_grid.empty()) throw std::invalid_argument("check_bounded_exponential: empty grid");
  const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
  auto bound_for = [&](double eps) {
    double m = 0.0;
    for (double t : t_grid) {
      const ComplexMatrix e = expm(a1k * (t / eps));
      if (!all_finite(e)) return std::numeric_limits<double>::infinity();
      m = std::max(m, norm1(e));
    }
    return m;
  };
  double reference = 0.0;
  double worst = 0.0;
  std::ostringstream detail;
  for (double eps : eps_list) {
    double m = 0.0;
    try {
      m = bound_for(eps);
    } catch (const LinalgError& e) {
      m = std::numeric_limits<double>::infinity();
      detail << "eps=" << eps << ": " << e.what() << "; ";
    }
    if (eps == eps_max) reference = m;
    worst = std::max(worst, m);
  }
  r.value = reference > 0.0 && std::isfinite(reference) ? worst / reference : std::numeric_limits<double>::infinity();
  r.limit = factor;
  r.passed = std::isfinite(worst) && r.value <= factor;
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------------------
// Suite

struct SuiteOptions {
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::vector<double> t_grid{0.0, 0.25, 0.5, 1.0};
  /// Evaluation point for the xhat-dependent checks (scaled per component).
  double xhat_scale = 0.5;
  unsigned seed = 7;
};

struct SuiteResult {
  std::string system;
  int k = 0;
  std::vector<CheckReport> checks;
  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed; });
  }
};

/// All checks for one system and extension degree.
[[nodiscard]] inline SuiteResult run_algebra_suite(const std::string& name, const ComplexMatrix& a, int k,
                                                   const SuiteOptions& options = {}) {
  const auto d = static_cast<std::size_t>(a.rows());
  const ExtensionBuilder builder(d, k);
  ComplexMatrix a1 = ComplexMatrix::Zero(a.rows() + 1, a.cols() + 1);
  a1.topLeftCorner(a.rows(), a.cols()) = a;

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexVector xhat(a.rows() + 1);
  for (Eigen::Index i = 0; i < xhat.size(); ++i) xhat(i) = options.xhat_scale * Complex(dist(rng), dist(rng));
  xhat(a.rows()) = Complex(std::abs(xhat(a.rows()).real()), 0.0);  // time is real
  const ComplexVector zero = ComplexVector::Zero(a.rows() + 1);

  const ComplexMatrix at_zero = builder.build_A1(a1, zero);
  const ComplexMatrix at_xhat = builder.build_A1(a1, xhat);

  SuiteResult res{name, k, {}};
  res.checks.push_back(check_spectrum_imaginary(at_xhat));
  res.checks.push_back(check_spectrum_sums(at_zero, eigvals(a1), builder.catalog()));
  res.checks.push_back(check_similarity(at_xhat, at_zero, builder.build_S(xhat)));
  res.checks.push_back(check_block_structure(at_zero, builder.catalog(), true));
  res.checks.push_back(check_block_structure(at_xhat, builder.catalog(), false));
  res.checks.push_back(check_bounded_exponential(at_xhat, options.eps_list, options.t_grid));
  return res;
}

[[nodiscard]] inline SuiteResult run_algebra_suite(const OscillatorySystem& system, int k,
                                                   const SuiteOptions& options = {}) {
  return run_algebra_suite(system.name(), system.A(), k, options);
}

/// Q diag(i lambda) Q^-1 with real lambda in [-3, 3] and Q = I + 0.3 R,
/// R with entries in [-1, 1]; redrawn until cond_1(Q) <= 50.
[[nodiscard]] inline ComplexMatrix random_imaginary_spectrum_matrix(std::size_t d, std::mt19937& rng) {
  std::uniform_real_distribution<double> lam(-3.0, 3.0);
  std::uniform_real_distribution<double> ent(-1.0, 1.0);
  const auto n = static_cast<Eigen::Index>(d);
  for (int attempt = 0; attempt < 100; ++attempt) {
    ComplexMatrix q = ComplexMatrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) q(i, j) += 0.3 * Complex(ent(rng), ent(rng));
    const Eigen::PartialPivLU<ComplexMatrix> lu(q);
    const ComplexMatrix qinv = lu.inverse();
    if (norm1(q) * norm1(qinv) > 50.0) continue;
    ComplexVector diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = Complex(0.0, lam(rng));
    return q * diag.asDiagonal() * qinv;
  }
  throw std::runtime_error("could not draw a well-conditioned basis");
}

}  // namespace lleei
