#pragma once

// Local linear extension matrices.
//
// For the catalog monomial (x - xhat)^alpha of degree j, differentiating
// along x' = (1/eps) A1 x + f(x) gives
//
//   sum_l (x - xhat)^chi(alpha;l) * [ (1/eps) sum_m A1[alpha_l, m] ((x_m - xhat_m) + xhat_m)
//                                     + f_{alpha_l}(x) ],
//
// where chi(alpha;l) drops the l-th component. Replacing f_{alpha_l} by its
// Taylor polynomial of order k-j+1 about xhat keeps every term inside the
// degree-k catalog, so the right-hand side is linear in the extension
// vector: (1/eps) A1k(xhat) X + A0k(xhat) X. Identical monomials are merged
// through their sorted representative.

#include "lleei/jet.hpp"
#include "lleei/linalg.hpp"
#include "lleei/mindex.hpp"
#include "lleei/sysdef.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lleei {

struct ExtensionMatrices {
  ComplexMatrix A1k;
  ComplexMatrix A0k;
  ComplexVector ref_point;
};

/// Index layout for one (d, k); the x̂-dependent values are filled in per call.
class ExtensionBuilder {
 public:
  ExtensionBuilder(std::size_t d, int k) : d_(d), algebra_(std::make_shared<const JetAlgebra>(static_cast<int>(d) + 1, k)) {
    if (d < 1) throw std::invalid_argument("state dimension must be >= 1");
    plan();
  }

  [[nodiscard]] std::size_t state_dim() const noexcept { return d_; }
  [[nodiscard]] int degree() const noexcept { return algebra_->order(); }
  [[nodiscard]] std::size_t size() const noexcept { return algebra_->size(); }
  [[nodiscard]] const MultiIndexCatalog& catalog() const noexcept { return algebra_->catalog(); }
  [[nodiscard]] const JetAlgebra& algebra() const noexcept { return *algebra_; }

  /// The O(1/eps) part. `a1_aug` is the (d+1)x(d+1) augmented linear part.
  [[nodiscard]] ComplexMatrix build_A1(const ComplexMatrix& a1_aug, const ComplexVector& xhat) const {
    const auto n = static_cast<Eigen::Index>(d_ + 1);
    if (a1_aug.rows() != n || a1_aug.cols() != n) throw std::invalid_argument("build_A1: A1 dimension mismatch");
    check_point(xhat);
    const auto dim = static_cast<Eigen::Index>(size());
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto& t : a1_terms_) {
      const Complex a = a1_aug(t.component, t.m);
      if (a == Complex{}) continue;
      out(t.row, t.col_same_degree) += a;
      out(t.row, t.col_lower_degree) += a * xhat(t.m);
    }
    return out;
  }

  /// The O(1) part from the Taylor coefficients of F about xhat.
  [[nodiscard]] ComplexMatrix build_A0(const DerivativeOracle& oracle, const ComplexVector& xhat) const {
    if (oracle.dim() != d_) throw std::invalid_argument("build_A0: oracle dimension mismatch");
    if (oracle.max_order() < degree()) {
      throw UnsupportedOrderError("oracle supports order " + std::to_string(oracle.max_order()) + " but k = " +
                                  std::to_string(degree()));
    }
    check_point(xhat);
    const auto d = static_cast<Eigen::Index>(d_);
    const ComplexMatrix taylor = oracle.taylor(*algebra_, xhat.head(d), xhat(d).real());
    return assemble_A0(taylor);
  }

  /// A0k from a precomputed Taylor table (d x D, see DerivativeOracle::taylor).
  [[nodiscard]] ComplexMatrix assemble_A0(const ComplexMatrix& taylor) const {
    const auto dim = static_cast<Eigen::Index>(size());
    if (taylor.rows() != static_cast<Eigen::Index>(d_) || taylor.cols() != dim)
      throw std::invalid_argument("assemble_A0: Taylor table has wrong shape");
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto& t : a0_terms_) out(t.row, t.col) += taylor(t.component, t.beta);
    for (const auto& t : time_terms_) out(t.row, t.col) += 1.0;
    return out;
  }

  /// Basis change from monomials about 0 to monomials about xhat:
  /// row alpha holds the coefficients of (x - xhat)^alpha in x^beta.
  [[nodiscard]] ComplexMatrix build_S(const ComplexVector& xhat) const {
    check_point(xhat);
    const auto& cat = catalog();
    const auto dim = static_cast<Eigen::Index>(size());
    std::vector<std::vector<Complex>> rows(cat.size());
    rows[0].assign(cat.size(), Complex{});
    rows[0][0] = 1.0;
    std::vector<Complex> factor(cat.size());
    for (std::size_t i = 1; i < cat.size(); ++i) {
      const int last = cat[i].components().back();
      std::fill(factor.begin(), factor.end(), Complex{});
      factor[0] = -xhat(last - 1);
      factor[static_cast<std::size_t>(last)] = 1.0;
      algebra_->multiply(rows[parent_[i]], factor, rows[i]);
    }
    ComplexMatrix s(dim, dim);
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = 0; j < cat.size(); ++j)
        s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return s;
  }

  /// Extension vector: every catalog monomial evaluated at x - xhat.
  [[nodiscard]] ComplexVector lift(const ComplexVector& x, const ComplexVector& xhat) const {
    check_point(x);
    check_point(xhat);
    const ComplexVector delta = x - xhat;
    const auto& cat = catalog();
    ComplexVector v(static_cast<Eigen::Index>(cat.size()));
    v(0) = 1.0;
    for (std::size_t i = 1; i < cat.size(); ++i) {
      const int last = cat[i].components().back();
      v(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(parent_[i])) * delta(last - 1);
    }
    return v;
  }

  /// Both matrices at xhat = [u; t] for the given system.
  [[nodiscard]] ExtensionMatrices build(const OscillatorySystem& system, const ComplexMatrix& a1_aug, const ComplexVector& u,
                                        double t) const {
    ComplexVector xhat(static_cast<Eigen::Index>(d_ + 1));
    xhat << u, Complex(t);
    return {build_A1(a1_aug, xhat), build_A0(system.oracle(), xhat), xhat};
  }

 private:
  struct A1Term {
    Eigen::Index row;
    Eigen::Index component;  // 0-based alpha_l - 1
    Eigen::Index m;          // 0-based column of A1
    Eigen::Index col_same_degree;
    Eigen::Index col_lower_degree;
  };
  struct A0Term {
    Eigen::Index row;
    Eigen::Index component;  // 0-based F component
    Eigen::Index beta;       // Taylor table column
    Eigen::Index col;
  };
  struct TimeTerm {
    Eigen::Index row;
    Eigen::Index col;
  };

  void check_point(const ComplexVector& x) const {
    if (x.size() != static_cast<Eigen::Index>(d_ + 1)) throw std::invalid_argument("point must have d+1 components");
  }

  void plan() {
    const auto& cat = catalog();
    const int k = degree();
    const int n = static_cast<int>(d_) + 1;
    parent_.assign(cat.size(), 0);
    for (std::size_t i = 1; i < cat.size(); ++i) parent_[i] = cat.position(remove_component(cat[i], cat[i].size()));

    for (std::size_t i = 1; i < cat.size(); ++i) {
      const MultiIndex& alpha = cat[i];
      const int j = static_cast<int>(alpha.size());
      const auto row = static_cast<Eigen::Index>(i);
      for (std::size_t l = 1; l <= alpha.size(); ++l) {
        const int comp = alpha[l - 1];
        const MultiIndex rest = remove_component(alpha, l);
        const auto col_rest = static_cast<Eigen::Index>(cat.position(rest));
        for (int m = 1; m <= n; ++m) {
          const auto col_same = static_cast<Eigen::Index>(cat.position(merge(rest, MultiIndex{m})));
          a1_terms_.push_back({row, comp - 1, m - 1, col_same, col_rest});
        }
        if (comp == n) {
          // f_{d+1} = 1: only the constant Taylor term survives.
          time_terms_.push_back({row, col_rest});
          continue;
        }
        for (std::size_t b = 0; b < cat.size(); ++b) {
          if (static_cast<int>(cat[b].size()) > k - j + 1) break;
          // position() throws if the product ever leaves the catalog.
          const auto col = static_cast<Eigen::Index>(cat.position(merge(rest, cat[b])));
          a0_terms_.push_back({row, comp - 1, static_cast<Eigen::Index>(b), col});
        }
      }
    }
  }

  std::size_t d_;
  std::shared_ptr<const JetAlgebra> algebra_;
  std::vector<std::size_t> parent_;
  std::vector<A1Term> a1_terms_;
  std::vector<A0Term> a0_terms_;
  std::vector<TimeTerm> time_terms_;
};

// Free-function forms of the builder operations.

[[nodiscard]] inline ComplexMatrix build_A1(const MultiIndexCatalog& catalog, const ComplexMatrix& a1_aug,
                                            const ComplexVector& xhat) {
  return ExtensionBuilder(static_cast<std::size_t>(catalog.n_vars() - 1), catalog.degree()).build_A1(a1_aug, xhat);
}

[[nodiscard]] inline ComplexMatrix build_A0(const MultiIndexCatalog& catalog, const DerivativeOracle& oracle,
                                            const ComplexVector& xhat) {
  return ExtensionBuilder(static_cast<std::size_t>(catalog.n_vars() - 1), catalog.degree()).build_A0(oracle, xhat);
}

[[nodiscard]] inline ComplexMatrix build_S(const MultiIndexCatalog& catalog, const ComplexVector& xhat) {
  return ExtensionBuilder(static_cast<std::size_t>(catalog.n_vars() - 1), catalog.degree()).build_S(xhat);
}

[[nodiscard]] inline ComplexVector lift(const MultiIndexCatalog& catalog, const ComplexVector& x, const ComplexVector& xhat) {
  return ExtensionBuilder(static_cast<std::size_t>(catalog.n_vars() - 1), catalog.degree()).lift(x, xhat);
}

}  // namespace lleei
