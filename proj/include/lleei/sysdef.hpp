#pragma once

// Problem definitions: u' = (1/eps) A u + F(u, t), u(0) = eps^nu u_in on [0, T],
// the derivative oracles that supply the mixed partials of F, and the
// builtin benchmark problems.

#include "lleei/jet.hpp"
#include "lleei/linalg.hpp"
#include "lleei/mindex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lleei {

class UnsupportedOrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// max_order() of oracles that can differentiate to any order.
inline constexpr int kUnlimitedOrder = 64;

/// Supplies d^alpha F(u, t) / dx^alpha over the variables x = (u_1..u_d, t).
class DerivativeOracle {
 public:
  virtual ~DerivativeOracle() = default;

  [[nodiscard]] virtual std::size_t dim() const noexcept = 0;
  [[nodiscard]] virtual int max_order() const noexcept = 0;

  [[nodiscard]] virtual ComplexVector value(const ComplexVector& u, double t) const = 0;

  /// Mixed partial for |alpha| <= max_order(); alpha need not be sorted.
  [[nodiscard]] virtual ComplexVector partial(const MultiIndex& alpha, const ComplexVector& u, double t) const = 0;

  /// Taylor coefficients about (u, t): column i holds d^beta F / gamma(beta)
  /// for beta = algebra.catalog()[i]. The algebra must have d+1 variables.
  [[nodiscard]] virtual ComplexMatrix taylor(const JetAlgebra& algebra, const ComplexVector& u, double t) const {
    const auto& cat = algebra.catalog();
    ComplexMatrix out(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(cat.size()));
    for (std::size_t i = 0; i < cat.size(); ++i) {
      out.col(static_cast<Eigen::Index>(i)) = partial(cat[i], u, t) / static_cast<double>(gamma(cat[i]));
    }
    return out;
  }
};

using OraclePtr = std::shared_ptr<const DerivativeOracle>;

/// Checked front door to DerivativeOracle::partial.
[[nodiscard]] inline ComplexVector eval_partial(const DerivativeOracle& oracle, const MultiIndex& alpha,
                                                const ComplexVector& u, double t) {
  detail::check_range(alpha, static_cast<int>(oracle.dim()) + 1);
  if (static_cast<int>(alpha.size()) > oracle.max_order()) {
    throw UnsupportedOrderError("derivative order " + std::to_string(alpha.size()) + " exceeds oracle maximum " +
                                std::to_string(oracle.max_order()));
  }
  if (u.size() != static_cast<Eigen::Index>(oracle.dim())) throw std::invalid_argument("eval_partial: state size mismatch");
  return oracle.partial(alpha, u, t);
}

namespace detail {

inline void check_algebra(const JetAlgebra& algebra, std::size_t d, int max_order) {
  if (algebra.n_vars() != static_cast<int>(d) + 1) throw std::invalid_argument("taylor: algebra has wrong variable count");
  if (algebra.order() > max_order) {
    throw UnsupportedOrderError("taylor order " + std::to_string(algebra.order()) + " exceeds oracle maximum " +
                                std::to_string(max_order));
  }
}

}  // namespace detail

/// Exact derivatives by evaluating a generic right-hand side on jets.
///
/// `Fn` must be callable as `fn(const std::vector<T>& u, const T& t)` for
/// T = Complex and T = Jet, returning std::vector<T> of length d.
template <class Fn>
class AutoDiffOracle final : public DerivativeOracle {
 public:
  AutoDiffOracle(std::size_t d, Fn fn, int max_order = kUnlimitedOrder) : d_(d), fn_(std::move(fn)), max_order_(max_order) {}

  [[nodiscard]] std::size_t dim() const noexcept override { return d_; }
  [[nodiscard]] int max_order() const noexcept override { return max_order_; }

  [[nodiscard]] ComplexVector value(const ComplexVector& u, double t) const override {
    std::vector<Complex> args(u.data(), u.data() + u.size());
    const std::vector<Complex> out = fn_(args, Complex(t));
    return to_vector(out);
  }

  [[nodiscard]] ComplexVector partial(const MultiIndex& alpha, const ComplexVector& u, double t) const override {
    if (alpha.empty()) return value(u, t);
    const JetAlgebra algebra(static_cast<int>(d_) + 1, static_cast<int>(alpha.size()));
    const ComplexMatrix coeffs = taylor(algebra, u, t);
    return coeffs.col(static_cast<Eigen::Index>(algebra.catalog().position(alpha))) * static_cast<double>(gamma(alpha));
  }

  [[nodiscard]] ComplexMatrix taylor(const JetAlgebra& algebra, const ComplexVector& u, double t) const override {
    detail::check_algebra(algebra, d_, max_order_);
    std::vector<Jet> args;
    args.reserve(d_);
    for (std::size_t i = 0; i < d_; ++i)
      args.push_back(Jet::variable(algebra, static_cast<int>(i) + 1, u(static_cast<Eigen::Index>(i))));
    const Jet time = Jet::variable(algebra, static_cast<int>(d_) + 1, Complex(t));
    const std::vector<Jet> out = fn_(args, time);
    if (out.size() != d_) throw std::runtime_error("right-hand side returned wrong dimension");
    ComplexMatrix table(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(algebra.size()));
    for (std::size_t r = 0; r < d_; ++r)
      for (std::size_t i = 0; i < algebra.size(); ++i)
        table(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = out[r][i];
    return table;
  }

 private:
  ComplexVector to_vector(const std::vector<Complex>& v) const {
    if (v.size() != d_) throw std::runtime_error("right-hand side returned wrong dimension");
    return Eigen::Map<const ComplexVector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  std::size_t d_;
  Fn fn_;
  int max_order_;
};

template <class Fn>
[[nodiscard]] OraclePtr make_autodiff_oracle(std::size_t d, Fn fn, int max_order = kUnlimitedOrder) {
  return std::make_shared<AutoDiffOracle<Fn>>(d, std::move(fn), max_order);
}

using PointEvaluator = std::function<ComplexVector(const ComplexVector& u, double t)>;

/// Central-difference mixed partials for right-hand sides without an
/// analytic oracle. Order-j partials use the step
/// eta_j = eps_mach^(1/(j+2)) * max(1, |u|_inf, |t|); expect roughly
/// 1e-7 accuracy at order 1 degrading to ~1e-4 at order 3.
class FiniteDifferenceOracle final : public DerivativeOracle {
 public:
  FiniteDifferenceOracle(std::size_t d, PointEvaluator f, int max_order) : d_(d), f_(std::move(f)), max_order_(max_order) {}

  [[nodiscard]] std::size_t dim() const noexcept override { return d_; }
  [[nodiscard]] int max_order() const noexcept override { return max_order_; }
  [[nodiscard]] ComplexVector value(const ComplexVector& u, double t) const override { return f_(u, t); }

  [[nodiscard]] ComplexVector partial(const MultiIndex& alpha, const ComplexVector& u, double t) const override {
    if (alpha.empty()) return f_(u, t);
    const int j = static_cast<int>(alpha.size());
    const double scale = std::max({1.0, u.size() > 0 ? u.cwiseAbs().maxCoeff() : 0.0, std::abs(t)});
    const double eta = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (j + 2)) * scale;

    // Multiplicity of each variable; the stencil is the tensor product of
    // 1-D central differences of those orders.
    std::vector<int> mult(d_ + 1, 0);
    for (int c : alpha) ++mult[static_cast<std::size_t>(c - 1)];
    std::vector<int> vars;
    for (std::size_t q = 0; q < mult.size(); ++q)
      if (mult[q] > 0) vars.push_back(static_cast<int>(q));

    ComplexVector acc = ComplexVector::Zero(static_cast<Eigen::Index>(d_));
    std::vector<int> idx(vars.size(), 0);
    while (true) {
      double weight = 1.0;
      ComplexVector x = u;
      double tx = t;
      for (std::size_t v = 0; v < vars.size(); ++v) {
        const int n = mult[static_cast<std::size_t>(vars[v])];
        const int i = idx[v];
        weight *= ((i % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(detail::binomial(n, i));
        const double offset = (0.5 * n - i) * eta;
        if (static_cast<std::size_t>(vars[v]) == d_) {
          tx += offset;
        } else {
          x(vars[v]) += offset;
        }
      }
      acc += weight * f_(x, tx);
      std::size_t v = 0;
      for (; v < vars.size(); ++v) {
        if (++idx[v] <= mult[static_cast<std::size_t>(vars[v])]) break;
        idx[v] = 0;
      }
      if (v == vars.size()) break;
    }
    return acc / std::pow(eta, j);
  }

 private:
  std::size_t d_;
  PointEvaluator f_;
  int max_order_;
};

[[nodiscard]] inline OraclePtr finite_difference_oracle(std::size_t d, PointEvaluator f, int max_order) {
  return std::make_shared<FiniteDifferenceOracle>(d, std::move(f), max_order);
}

/// One term coeff * x^alpha of row `row` (1-based) of a polynomial F.
struct PolynomialTerm {
  std::size_t row;
  MultiIndex alpha;
  Complex coeff;
};

/// Polynomial right-hand side in the variables (u, t); evaluated generically
/// so that the jet oracle differentiates it exactly.
struct PolynomialField {
  std::size_t d;
  std::vector<PolynomialTerm> terms;

  template <class T>
  std::vector<T> operator()(const std::vector<T>& u, const T& t) const {
    std::vector<T> out(d, constant_like(t, Complex{}));
    for (const auto& term : terms) {
      T prod = constant_like(t, term.coeff);
      for (int c : term.alpha) prod = prod * (static_cast<std::size_t>(c) == d + 1 ? t : u[static_cast<std::size_t>(c - 1)]);
      out[term.row - 1] = out[term.row - 1] + prod;
    }
    return out;
  }
};

[[nodiscard]] inline OraclePtr polynomial_oracle(std::size_t d, std::vector<PolynomialTerm> terms) {
  for (const auto& term : terms) {
    if (term.row < 1 || term.row > d) throw std::invalid_argument("polynomial term row out of range");
    detail::check_range(term.alpha, static_cast<int>(d) + 1);
  }
  return make_autodiff_oracle(d, PolynomialField{d, std::move(terms)});
}

/// F identically zero.
[[nodiscard]] inline OraclePtr zero_oracle(std::size_t d) { return polynomial_oracle(d, {}); }

/// u' = (1/eps) A u + F(u, t), u(0) = eps^nu u_in, t in [0, T].
class OscillatorySystem {
 public:
  OscillatorySystem(std::string name, ComplexMatrix a, double epsilon, double nu, ComplexVector u_in, double final_time,
                    OraclePtr oracle, std::size_t position_dim = 0)
      : name_(std::move(name)),
        a_(std::move(a)),
        epsilon_(epsilon),
        nu_(nu),
        u_in_(std::move(u_in)),
        final_time_(final_time),
        oracle_(std::move(oracle)),
        position_dim_(position_dim) {
    if (a_.rows() != a_.cols() || a_.rows() == 0) throw std::invalid_argument("A must be square and non-empty");
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(final_time_ > 0.0)) throw std::invalid_argument("final time must be positive");
    if (u_in_.size() != a_.rows()) throw std::invalid_argument("u_in dimension does not match A");
    if (!oracle_) throw std::invalid_argument("missing derivative oracle");
    if (oracle_->dim() != dim()) throw std::invalid_argument("oracle dimension does not match A");
    if (position_dim_ * 2 != 0 && position_dim_ * 2 != dim())
      throw std::invalid_argument("second-order layout needs d = 2 * position_dim");
    const double tol = 1e-9 * std::max(1.0, norm1(a_));
    const auto ev = eigvals(a_);
    max_real_part_ = 0.0;
    for (const auto& l : ev) max_real_part_ = std::max(max_real_part_, std::abs(l.real()));
    if (max_real_part_ > tol) {
      std::cerr << "lleei: warning: A of '" << name_ << "' has eigenvalues off the imaginary axis (max |Re| = "
                << max_real_part_ << ")\n";
    }
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  [[nodiscard]] const ComplexMatrix& A() const noexcept { return a_; }
  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] double nu() const noexcept { return nu_; }
  [[nodiscard]] const ComplexVector& u_in() const noexcept { return u_in_; }
  [[nodiscard]] double final_time() const noexcept { return final_time_; }
  [[nodiscard]] const DerivativeOracle& oracle() const noexcept { return *oracle_; }
  [[nodiscard]] const OraclePtr& oracle_ptr() const noexcept { return oracle_; }
  [[nodiscard]] int max_order() const noexcept { return oracle_->max_order(); }
  /// Number of position components when u = [y; eps*y'], else 0.
  [[nodiscard]] std::size_t position_dim() const noexcept { return position_dim_; }
  [[nodiscard]] bool is_second_order() const noexcept { return position_dim_ > 0; }
  /// Largest |Re lambda(A)| found at construction.
  [[nodiscard]] double spectrum_defect() const noexcept { return max_real_part_; }

  [[nodiscard]] ComplexVector initial_state() const { return std::pow(epsilon_, nu_) * u_in_; }

  /// Full vector field (1/eps) A u + F(u, t).
  [[nodiscard]] ComplexVector rhs(const ComplexVector& u, double t) const {
    return (a_ * u) / epsilon_ + oracle_->value(u, t);
  }

 private:
  std::string name_;
  ComplexMatrix a_;
  double epsilon_;
  double nu_;
  ComplexVector u_in_;
  double final_time_;
  OraclePtr oracle_;
  std::size_t position_dim_;
  double max_real_part_ = 0.0;
};

/// x' = (1/eps) A1 x + f(x) with x = (u, t) and f = (F, 1).
struct AugmentedSystem {
  ComplexMatrix A1;
  OraclePtr oracle;

  [[nodiscard]] ComplexVector f(const ComplexVector& x) const {
    const auto d = x.size() - 1;
    ComplexVector out(x.size());
    out.head(d) = oracle->value(x.head(d), x(d).real());
    out(d) = 1.0;
    return out;
  }
};

[[nodiscard]] inline AugmentedSystem augment(const OscillatorySystem& system) {
  const auto d = static_cast<Eigen::Index>(system.dim());
  ComplexMatrix a1 = ComplexMatrix::Zero(d + 1, d + 1);
  a1.topLeftCorner(d, d) = system.A();
  return {std::move(a1), system.oracle_ptr()};
}

namespace detail {

/// F(y, p, t) = [0; eps * g(y, t)] built from an oracle for g over (y, t).
class SecondOrderForcing final : public DerivativeOracle {
 public:
  SecondOrderForcing(OraclePtr g, double scale) : g_(std::move(g)), scale_(scale) {}

  [[nodiscard]] std::size_t dim() const noexcept override { return 2 * g_->dim(); }
  [[nodiscard]] int max_order() const noexcept override { return g_->max_order(); }

  [[nodiscard]] ComplexVector value(const ComplexVector& u, double t) const override {
    const auto m = static_cast<Eigen::Index>(g_->dim());
    ComplexVector out = ComplexVector::Zero(2 * m);
    out.tail(m) = scale_ * g_->value(u.head(m), t);
    return out;
  }

  [[nodiscard]] ComplexVector partial(const MultiIndex& alpha, const ComplexVector& u, double t) const override {
    const auto m = static_cast<Eigen::Index>(g_->dim());
    ComplexVector out = ComplexVector::Zero(2 * m);
    MultiIndex mapped;
    for (int c : alpha) {
      if (c > m && c <= 2 * m) return out;  // g does not depend on p
      mapped.push_back(c > 2 * m ? static_cast<int>(m) + 1 : c);
    }
    out.tail(m) = scale_ * g_->partial(mapped, u.head(m), t);
    return out;
  }

  [[nodiscard]] ComplexMatrix taylor(const JetAlgebra& algebra, const ComplexVector& u, double t) const override {
    detail::check_algebra(algebra, dim(), max_order());
    const auto m = static_cast<int>(g_->dim());
    const auto& inner_alg = inner_algebra(algebra.order());
    const ComplexMatrix inner = g_->taylor(inner_alg, u.head(m), t);
    const auto& cat = algebra.catalog();
    ComplexMatrix out = ComplexMatrix::Zero(2 * m, static_cast<Eigen::Index>(cat.size()));
    for (std::size_t i = 0; i < cat.size(); ++i) {
      MultiIndex mapped;
      bool has_p = false;
      for (int c : cat[i]) {
        if (c > m && c <= 2 * m) {
          has_p = true;
          break;
        }
        mapped.push_back(c > 2 * m ? m + 1 : c);
      }
      if (has_p) continue;
      out.block(m, static_cast<Eigen::Index>(i), m, 1) =
          scale_ * inner.col(static_cast<Eigen::Index>(inner_alg.catalog().position(mapped)));
    }
    return out;
  }

 private:
  const JetAlgebra& inner_algebra(int order) const {
    const std::lock_guard lock(mutex_);
    auto& slot = algebras_[order];
    if (!slot) slot = std::make_unique<JetAlgebra>(static_cast<int>(g_->dim()) + 1, order);
    return *slot;
  }

  OraclePtr g_;
  double scale_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<JetAlgebra>> algebras_;
};

inline bool is_spd(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  if ((m - m.adjoint()).norm() > 1e-12 * std::max(1.0, m.norm())) return false;
  const Eigen::LLT<ComplexMatrix> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace detail

/// Recasts y'' + (1/eps^2) M y - (1/eps) G y' = g(y, t) with p = eps y'
/// into first-order form u = [y; p]:
///   A = [[0, I], [-M, G]],  F = [0; eps g(y, t)],
///   u(0) = eps^nu [y_in; ydot_in].
/// M must be symmetric positive definite. The optional G (skew-symmetric
/// gyroscopic coupling) defaults to zero.
[[nodiscard]] inline OscillatorySystem second_order_to_first_order(std::string name, const ComplexMatrix& m, OraclePtr g,
                                                                   const ComplexVector& y_in, const ComplexVector& ydot_in,
                                                                   double epsilon, double nu, double final_time,
                                                                   const ComplexMatrix& gyroscopic = ComplexMatrix()) {
  if (!detail::is_spd(m)) throw std::invalid_argument("M must be symmetric positive definite");
  const auto n = m.rows();
  if (!g || g->dim() != static_cast<std::size_t>(n)) throw std::invalid_argument("g dimension does not match M");
  if (y_in.size() != n || ydot_in.size() != n) throw std::invalid_argument("initial data dimension mismatch");
  ComplexMatrix a = ComplexMatrix::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = ComplexMatrix::Identity(n, n);
  a.bottomLeftCorner(n, n) = -m;
  if (gyroscopic.size() != 0) {
    if (gyroscopic.rows() != n || gyroscopic.cols() != n) throw std::invalid_argument("G dimension mismatch");
    a.bottomRightCorner(n, n) = gyroscopic;
  }
  ComplexVector u_in(2 * n);
  u_in << y_in, ydot_in;
  auto forcing = std::make_shared<detail::SecondOrderForcing>(std::move(g), epsilon);
  return OscillatorySystem(std::move(name), std::move(a), epsilon, nu, std::move(u_in), final_time, std::move(forcing),
                           static_cast<std::size_t>(n));
}

// ---------------------------------------------------------------------------
// Builtin benchmark problems

/// Forcing of the scalar benchmark: g(y, t) = -(t + cos(2 sqrt(6) t)) sin y.
template <class T>
T example1_g(const T& y, const T& t) {
  using std::cos;
  using std::sin;
  const double omega = 2.0 * std::sqrt(6.0);
  return -(t + cos(omega * t)) * sin(y);
}

namespace detail {

/// Closed-form partials of example1_g over the variables (y, t).
class Example1Forcing final : public DerivativeOracle {
 public:
  [[nodiscard]] std::size_t dim() const noexcept override { return 1; }
  [[nodiscard]] int max_order() const noexcept override { return kUnlimitedOrder; }

  [[nodiscard]] ComplexVector value(const ComplexVector& u, double t) const override {
    return ComplexVector::Constant(1, example1_g(u(0), Complex(t)));
  }

  [[nodiscard]] ComplexVector partial(const MultiIndex& alpha, const ComplexVector& u, double t) const override {
    int ny = 0;
    int nt = 0;
    for (int c : alpha) (c == 1 ? ny : nt)++;
    const Complex y = u(0);
    const Complex s = std::sin(y);
    const Complex c = std::cos(y);
    const Complex sin_cycle[4] = {s, c, -s, -c};
    const double omega = 2.0 * std::sqrt(6.0);
    // a(t) = t + cos(omega t) and its derivatives.
    double a = 0.0;
    if (nt == 0) {
      a = t + std::cos(omega * t);
    } else if (nt == 1) {
      a = 1.0 - omega * std::sin(omega * t);
    } else {
      a = std::pow(omega, nt) * std::cos(omega * t + nt * std::numbers::pi / 2.0);
    }
    return ComplexVector::Constant(1, -a * sin_cycle[ny % 4]);
  }
};

template <class T>
std::vector<T> example2_forcing(const std::vector<T>& u, const T& t) {
  using std::cos;
  using std::pow;
  const T shift = 2.0 - cos(std::numbers::pi * t);
  const T r2 = u[0] * u[0] + u[1] * u[1] + shift * shift;
  const T inv = pow(r2, -1.5);
  const T zero = constant_like(t, Complex{});
  return {zero, zero, u[0] * inv, u[1] * inv};
}

}  // namespace detail

/// Example 1: y'' + y/eps^2 = g(y, t), T = 6, y(0) = eps, y'(0) = sqrt(3).
[[nodiscard]] inline OscillatorySystem make_example1(double epsilon, double nu = 1.0) {
  ComplexMatrix m = ComplexMatrix::Ones(1, 1);
  ComplexVector y_in = ComplexVector::Ones(1);
  ComplexVector ydot_in = ComplexVector::Constant(1, std::sqrt(3.0));
  // y(0) = eps^nu * 1 and y'(0) = eps^(nu-1) sqrt(3), i.e. p(0) = eps^nu sqrt(3).
  return second_order_to_first_order("example1", m, std::make_shared<detail::Example1Forcing>(), y_in, ydot_in, epsilon,
                                     nu, 6.0);
}

/// Example 2: 2-D charged particle in an electric field of strength E and
/// a perpendicular magnetic field of strength B, u = [y; eps y'].
/// The electric block enters A as -E so that the spectrum is imaginary
/// ({+-2i, +-3i} for E = 6, B = 1).
[[nodiscard]] inline ComplexMatrix example2_matrix(double e_field, double b_field) {
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 2) = 1.0;
  a(1, 3) = 1.0;
  a(2, 0) = -e_field;
  a(2, 3) = b_field;
  a(3, 1) = -e_field;
  a(3, 2) = -b_field;
  return a;
}

inline constexpr double kExample2FinalTime = 1.0;

[[nodiscard]] inline OscillatorySystem make_example2(double e_field, double epsilon, double nu = 1.0,
                                                     double b_field = 1.0) {
  ComplexVector u_in(4);
  u_in << 0.0, 0.0, 3.0, 4.0;
  auto oracle = make_autodiff_oracle(4, [](const auto& u, const auto& t) { return detail::example2_forcing(u, t); });
  const std::string name = e_field == 6.0 ? "example2-E6" : e_field == 3.0 ? "example2-E3" : "example2";
  return OscillatorySystem(name, example2_matrix(e_field, b_field), epsilon, nu, std::move(u_in), kExample2FinalTime,
                           std::move(oracle), 2);
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"example1", "example2-E6", "example2-E3"};
  return names;
}

/// Builtin problem by name; nu defaults to 1.
[[nodiscard]] inline OscillatorySystem builtin(const std::string& name, double epsilon, double nu = 1.0) {
  if (name == "example1") return make_example1(epsilon, nu);
  if (name == "example2-E6") return make_example2(6.0, epsilon, nu);
  if (name == "example2-E3") return make_example2(3.0, epsilon, nu);
  throw std::invalid_argument("unknown builtin problem '" + name + "'");
}

}  // namespace lleei
