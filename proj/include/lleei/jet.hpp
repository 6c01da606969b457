#pragma once

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet over n variables of order K stores the coefficients c_beta of
// sum_beta c_beta * (x - xhat)^beta for every representative beta with
// |beta| <= K, laid out exactly like the extension catalog. Evaluating a
// function on jets seeded with x_i = xhat_i + (x_i - xhat_i) yields its
// Taylor coefficients, c_beta = d^beta f(xhat) / gamma(beta), exactly up to
// rounding. The same algebra multiplies polynomials for the basis-change
// matrix and monomial lifting.

#include "lleei/linalg.hpp"
#include "lleei/mindex.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace lleei {

/// Catalog plus the sparse product table of its monomials.
class JetAlgebra {
 public:
  struct Term {
    std::size_t lhs;
    std::size_t rhs;
    std::size_t target;
  };

  JetAlgebra(int n_vars, int order) : catalog_(n_vars, order) { build_table(); }
  explicit JetAlgebra(MultiIndexCatalog catalog) : catalog_(std::move(catalog)) { build_table(); }

  [[nodiscard]] const MultiIndexCatalog& catalog() const noexcept { return catalog_; }
  [[nodiscard]] std::size_t size() const noexcept { return catalog_.size(); }
  [[nodiscard]] int order() const noexcept { return catalog_.degree(); }
  [[nodiscard]] int n_vars() const noexcept { return catalog_.n_vars(); }
  [[nodiscard]] const std::vector<Term>& products() const noexcept { return products_; }

  /// Multiplies two coefficient vectors, dropping terms above the order.
  void multiply(const std::vector<Complex>& a, const std::vector<Complex>& b, std::vector<Complex>& out) const {
    out.assign(size(), Complex{});
    for (const auto& t : products_) out[t.target] += a[t.lhs] * b[t.rhs];
  }

 private:
  void build_table() {
    const auto& reps = catalog_.representatives();
    const auto k = static_cast<std::size_t>(catalog_.degree());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = 0; j < reps.size(); ++j) {
        if (reps[i].size() + reps[j].size() > k) continue;
        products_.push_back({i, j, catalog_.position(merge(reps[i], reps[j]))});
      }
    }
  }

  MultiIndexCatalog catalog_;
  std::vector<Term> products_;
};

class Jet {
 public:
  /// Constant jet.
  Jet(const JetAlgebra& algebra, Complex value) : algebra_(&algebra), c_(algebra.size(), Complex{}) { c_[0] = value; }

  /// The variable x_var (1-based) expanded about `value`.
  static Jet variable(const JetAlgebra& algebra, int var, Complex value) {
    Jet j(algebra, value);
    j.c_.at(static_cast<std::size_t>(var)) = 1.0;
    return j;
  }

  [[nodiscard]] const JetAlgebra& algebra() const noexcept { return *algebra_; }
  [[nodiscard]] Complex value() const noexcept { return c_[0]; }
  [[nodiscard]] const std::vector<Complex>& coefficients() const noexcept { return c_; }
  [[nodiscard]] Complex operator[](std::size_t i) const { return c_[i]; }

  /// The jet minus its constant term.
  [[nodiscard]] Jet increment() const {
    Jet r = *this;
    r.c_[0] = 0.0;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    check(o);
    std::vector<Complex> out;
    algebra_->multiply(c_, o.c_, out);
    c_ = std::move(out);
    return *this;
  }
  Jet& operator+=(Complex s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(Complex s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator/=(Complex s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  /// f(value + delta) = sum_m derivs[m] / m! * delta^m, for derivs[m] = f^(m)(value).
  [[nodiscard]] Jet compose(const std::vector<Complex>& derivs) const {
    const int order = algebra_->order();
    const Jet delta = increment();
    std::vector<Complex> taylor(static_cast<std::size_t>(order) + 1);
    double factorial = 1.0;
    for (int m = 0; m <= order; ++m) {
      if (m > 0) factorial *= m;
      taylor[static_cast<std::size_t>(m)] = derivs.at(static_cast<std::size_t>(m)) / factorial;
    }
    Jet result(*algebra_, taylor[static_cast<std::size_t>(order)]);
    for (int m = order - 1; m >= 0; --m) {
      result *= delta;
      result.c_[0] += taylor[static_cast<std::size_t>(m)];
    }
    return result;
  }

 private:
  void check(const Jet& o) const {
    if (o.algebra_ != algebra_) throw std::invalid_argument("jets from different algebras");
  }

  const JetAlgebra* algebra_;
  std::vector<Complex> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator+(Jet a, Complex s) { return a += s; }
inline Jet operator+(Complex s, Jet a) { return a += s; }
inline Jet operator-(Jet a, Complex s) { return a -= s; }
inline Jet operator-(Complex s, const Jet& a) { return -a + s; }
inline Jet operator*(Jet a, Complex s) { return a *= s; }
inline Jet operator*(Complex s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, Complex s) { return a /= s; }
inline Jet operator+(Jet a, double s) { return a += Complex(s); }
inline Jet operator+(double s, Jet a) { return a += Complex(s); }
inline Jet operator-(Jet a, double s) { return a -= Complex(s); }
inline Jet operator-(double s, const Jet& a) { return -a + Complex(s); }
inline Jet operator*(Jet a, double s) { return a *= Complex(s); }
inline Jet operator*(double s, Jet a) { return a *= Complex(s); }
inline Jet operator/(Jet a, double s) { return a /= Complex(s); }

inline Jet sin(const Jet& x) {
  const Complex s = std::sin(x.value());
  const Complex c = std::cos(x.value());
  const Complex cycle[4] = {s, c, -s, -c};
  std::vector<Complex> d(static_cast<std::size_t>(x.algebra().order()) + 1);
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = cycle[m % 4];
  return x.compose(d);
}

inline Jet cos(const Jet& x) {
  const Complex s = std::sin(x.value());
  const Complex c = std::cos(x.value());
  const Complex cycle[4] = {c, -s, -c, s};
  std::vector<Complex> d(static_cast<std::size_t>(x.algebra().order()) + 1);
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = cycle[m % 4];
  return x.compose(d);
}

inline Jet exp(const Jet& x) {
  std::vector<Complex> d(static_cast<std::size_t>(x.algebra().order()) + 1, std::exp(x.value()));
  return x.compose(d);
}

inline Jet pow(const Jet& x, double p) {
  std::vector<Complex> d(static_cast<std::size_t>(x.algebra().order()) + 1);
  double falling = 1.0;
  for (std::size_t m = 0; m < d.size(); ++m) {
    d[m] = falling * std::pow(x.value(), p - static_cast<double>(m));
    falling *= p - static_cast<double>(m);
  }
  return x.compose(d);
}

inline Jet sqrt(const Jet& x) { return pow(x, 0.5); }

inline Jet log(const Jet& x) {
  std::vector<Complex> d(static_cast<std::size_t>(x.algebra().order()) + 1);
  d[0] = std::log(x.value());
  double factorial = 1.0;  // (m-1)!
  for (std::size_t m = 1; m < d.size(); ++m) {
    if (m > 1) factorial *= static_cast<double>(m - 1);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    d[m] = sign * factorial * std::pow(x.value(), -static_cast<double>(m));
  }
  return x.compose(d);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * pow(b, -1.0); }
inline Jet operator/(Complex s, const Jet& b) { return s * pow(b, -1.0); }
inline Jet operator/(double s, const Jet& b) { return s * pow(b, -1.0); }

/// A value of the same kind as `like` holding the constant v. Lets generic
/// right-hand sides build constant components for both plain and jet inputs.
inline Complex constant_like(const Complex&, Complex v) { return v; }
inline Jet constant_like(const Jet& like, Complex v) { return Jet(like.algebra(), v); }

}  // namespace lleei
