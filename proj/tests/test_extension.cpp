#include "lleei/extension.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using lleei::Complex;
using lleei::ComplexMatrix;
using lleei::ComplexVector;
using lleei::ExtensionBuilder;
using lleei::MultiIndex;

namespace {

constexpr Complex I{0.0, 1.0};

ComplexVector vec(std::initializer_list<Complex> v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto x : v) out(i++) = x;
  return out;
}

ComplexMatrix augmented(const ComplexMatrix& a) {
  ComplexMatrix a1 = ComplexMatrix::Zero(a.rows() + 1, a.cols() + 1);
  a1.topLeftCorner(a.rows(), a.cols()) = a;
  return a1;
}

ComplexMatrix scalar_i() { return augmented(ComplexMatrix::Constant(1, 1, I)); }

ComplexVector random_vector(std::mt19937& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * Complex(u(rng), u(rng));
  return v;
}

ComplexMatrix random_imaginary(std::mt19937& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix q = ComplexMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) q(i, j) += 0.3 * Complex(u(rng), u(rng));
  ComplexVector lam(n);
  for (Eigen::Index i = 0; i < n; ++i) lam(i) = Complex(0.0, 3.0 * u(rng));
  return q * lam.asDiagonal() * q.inverse();
}

// Direct evaluation of the order-k Taylor polynomial of F_r about xhat,
// from the oracle's partials: sum over all index tuples / j!.
Complex taylor_direct(const lleei::DerivativeOracle& f, std::size_t row, const ComplexVector& x,
                      const ComplexVector& xhat, int k) {
  const auto d = static_cast<Eigen::Index>(f.dim());
  const lleei::MultiIndexCatalog cat(static_cast<int>(d) + 1, k);
  const ComplexVector delta = x - xhat;
  Complex sum{};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    Complex mono = 1.0;
    for (int c : cat[i]) mono *= delta(c - 1);
    const ComplexVector p = f.partial(cat[i], xhat.head(d), xhat(d).real());
    sum += p(static_cast<Eigen::Index>(row)) * mono / static_cast<double>(lleei::gamma(cat[i]));
  }
  return sum;
}

}  // namespace

TEST(BuildA1, ScalarRotationAtZero) {
  const ExtensionBuilder b(1, 2);
  const ComplexMatrix a1k = b.build_A1(scalar_i(), ComplexVector::Zero(2));
  ComplexVector diag(6);
  diag << 0.0, I, 0.0, 2.0 * I, I, 0.0;
  EXPECT_EQ(a1k, ComplexMatrix(diag.asDiagonal()));
}

TEST(BuildA1, ScalarRotationOffZero) {
  const ExtensionBuilder b(1, 2);
  const Complex u0(0.7, -0.2);
  const ComplexMatrix a1k = b.build_A1(scalar_i(), vec({u0, 1.5}));
  ComplexMatrix expected = ComplexMatrix::Zero(6, 6);
  // layout (1, u, t, u^2, ut, t^2)
  expected(1, 1) = I;
  expected(3, 3) = 2.0 * I;
  expected(4, 4) = I;
  expected(1, 0) = I * u0;
  expected(3, 1) = 2.0 * I * u0;
  expected(4, 2) = I * u0;
  EXPECT_LT(lleei::norm1(a1k - expected), 1e-15);
}

TEST(BuildA1, DegreeOneIsAugmentedMatrix) {
  std::mt19937 rng(1);
  const ComplexMatrix a = random_imaginary(rng, 3);
  const ExtensionBuilder b(3, 1);
  const ComplexMatrix a1k = b.build_A1(augmented(a), ComplexVector::Zero(4));
  ComplexMatrix expected = ComplexMatrix::Zero(5, 5);
  expected.bottomRightCorner(4, 4) = augmented(a);
  EXPECT_EQ(a1k, expected);
}

TEST(BuildA1, DimensionErrors) {
  const ExtensionBuilder b(1, 2);
  EXPECT_THROW((void)b.build_A1(ComplexMatrix::Zero(3, 3), ComplexVector::Zero(2)), std::invalid_argument);
  EXPECT_THROW((void)b.build_A1(scalar_i(), ComplexVector::Zero(3)), std::invalid_argument);
}

TEST(BuildA0, ConstantForcing) {
  const Complex c(0.4, 0.3);
  const auto f = lleei::polynomial_oracle(1, {{1, MultiIndex{}, c}});
  const ExtensionBuilder b(1, 1);
  const ComplexMatrix a0k = b.build_A0(*f, ComplexVector::Zero(2));
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(1, 0) = c;
  expected(2, 0) = 1.0;
  EXPECT_EQ(a0k, expected);
}

TEST(BuildA0, SquareForcing) {
  const auto f = lleei::polynomial_oracle(1, {{1, MultiIndex{1, 1}, 1.0}});
  const ExtensionBuilder b(1, 2);
  const ComplexMatrix a0k = b.build_A0(*f, ComplexVector::Zero(2));
  ComplexMatrix expected = ComplexMatrix::Zero(6, 6);
  expected(1, 3) = 1.0;  // u' = u^2
  expected(2, 0) = 1.0;  // t' = 1
  expected(4, 1) = 1.0;  // (ut)' = u' t + u: the u' t part is cubic and truncated
  expected(5, 2) = 2.0;  // (t^2)' = 2t
  EXPECT_LT(lleei::norm1(a0k - expected), 1e-15);
  EXPECT_TRUE(a0k.row(0).isZero(0.0));
}

TEST(BuildA0, ConstantRowIsZeroForAnyForcing) {
  const auto sys = lleei::builtin("example2-E6", 0.1);
  const ExtensionBuilder b(4, 2);
  const ComplexMatrix a0k = b.build_A0(sys.oracle(), vec({0.1, 0.2, 0.3, 0.4, 0.5}));
  EXPECT_TRUE(a0k.row(0).isZero(0.0));
}

TEST(BuildA0, OracleOrderShortfall) {
  const auto f = lleei::make_autodiff_oracle(
      1, [](const auto& u, const auto&) { return std::vector{u[0] * u[0]}; }, 1);
  const ExtensionBuilder b(1, 2);
  EXPECT_THROW((void)b.build_A0(*f, ComplexVector::Zero(2)), lleei::UnsupportedOrderError);
}

TEST(BuildS, Examples) {
  const ExtensionBuilder b(1, 2);
  EXPECT_EQ(b.build_S(ComplexVector::Zero(2)), ComplexMatrix::Identity(6, 6));

  const Complex a(1.3, 0.2);
  const Complex bb(-0.4, 0.0);
  const ComplexMatrix s = b.build_S(vec({a, bb}));
  ComplexVector row_u2(6);
  row_u2 << a * a, -2.0 * a, 0.0, 1.0, 0.0, 0.0;
  EXPECT_LT((s.row(3).transpose() - row_u2).norm(), 1e-15);
  // lower triangular with unit diagonal
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_EQ(s(i, i), Complex(1.0));
    for (Eigen::Index j = i + 1; j < 6; ++j) EXPECT_EQ(s(i, j), Complex{});
  }
}

TEST(BuildS, DegreeOneBlockForm) {
  std::mt19937 rng(2);
  const ComplexVector xhat = random_vector(rng, 4, 1.0);
  const ComplexMatrix s = ExtensionBuilder(3, 1).build_S(xhat);
  ComplexMatrix expected = ComplexMatrix::Identity(5, 5);
  expected.block(1, 0, 4, 1) = -xhat;
  EXPECT_EQ(s, expected);
}

TEST(Lift, Examples) {
  const ExtensionBuilder b(1, 2);
  const ComplexVector xhat = vec({0.3, 1.1});
  ComplexVector e1 = ComplexVector::Zero(6);
  e1(0) = 1.0;
  EXPECT_EQ(b.lift(xhat, xhat), e1);
  const ComplexVector l = b.lift(vec({2.0, 3.0}), ComplexVector::Zero(2));
  EXPECT_EQ(l, vec({1.0, 2.0, 3.0, 4.0, 6.0, 9.0}));
}

TEST(Lift, Multiplicativity) {
  std::mt19937 rng(3);
  const ExtensionBuilder b(2, 3);
  const auto& cat = b.catalog();
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector x = random_vector(rng, 3, 1.0);
    const ComplexVector xhat = random_vector(rng, 3, 1.0);
    const ComplexVector l = b.lift(x, xhat);
    for (std::size_t i = 1; i < cat.size(); ++i) {
      Complex mono = 1.0;
      for (int c : cat[i]) mono *= x(c - 1) - xhat(c - 1);
      EXPECT_LT(std::abs(l(static_cast<Eigen::Index>(i)) - mono), 1e-14);
    }
    EXPECT_LT(std::abs(l(4) - l(1) * l(1)), 1e-14);  // (1,1) = (1)^2
  }
}

TEST(Lift, SIsTheBasisChange) {
  // lift(x, xhat) = S(xhat) lift(x, 0): row alpha of S expands (x - xhat)^alpha.
  std::mt19937 rng(4);
  const ExtensionBuilder b(2, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexVector x = random_vector(rng, 3, 1.0);
    const ComplexVector xhat = random_vector(rng, 3, 1.0);
    const ComplexVector lhs = b.lift(x, xhat);
    const ComplexVector rhs = b.build_S(xhat) * b.lift(x, ComplexVector::Zero(3));
    EXPECT_LT((lhs - rhs).norm(), 1e-13 * std::max(1.0, rhs.norm()));
  }
}

TEST(Similarity, RandomImaginarySpectrum) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = 1 + trial % 3;
    const ComplexMatrix a1 = augmented(random_imaginary(rng, d));
    const ExtensionBuilder b(static_cast<std::size_t>(d), 1 + trial % 3);
    const ComplexVector xhat = random_vector(rng, d + 1, 1.0);
    const ComplexMatrix ax = b.build_A1(a1, xhat);
    const ComplexMatrix a0 = b.build_A1(a1, ComplexVector::Zero(d + 1));
    const ComplexMatrix s = b.build_S(xhat);
    EXPECT_LE(lleei::norm1(ax * s - s * a0), 1e-12 * lleei::norm1(ax) * lleei::norm1(s));
  }
}

TEST(Spectrum, OnImaginaryAxis) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = 1 + trial % 3;
    const ComplexMatrix a1 = augmented(random_imaginary(rng, d));
    const ExtensionBuilder b(static_cast<std::size_t>(d), 2);
    const ComplexMatrix ax = b.build_A1(a1, random_vector(rng, d + 1, 1.0));
    double worst = 0.0;
    for (const auto& l : lleei::eigvals(ax)) worst = std::max(worst, std::abs(l.real()));
    EXPECT_LE(worst, 1e-8 * lleei::norm1(ax));
  }
}

TEST(TaylorReconstruction, PolynomialForcingIsExact) {
  // F1 = u1^2 u2 + 3 t u1, F2 = (0.5 + 0.5i) u2^3 - t^2
  const auto f = lleei::polynomial_oracle(2, {{1, MultiIndex{1, 1, 2}, 1.0},
                                              {1, MultiIndex{1, 3}, 3.0},
                                              {2, MultiIndex{2, 2, 2}, Complex(0.5, 0.5)},
                                              {2, MultiIndex{3, 3}, -1.0}});
  std::mt19937 rng(7);
  for (int k = 1; k <= 4; ++k) {
    const ExtensionBuilder b(2, k);
    for (int trial = 0; trial < 5; ++trial) {
      ComplexVector xhat = random_vector(rng, 3, 1.0);
      xhat(2) = xhat(2).real();  // time is real
      ComplexVector x = xhat + random_vector(rng, 3, 0.5);
      x(2) = x(2).real();
      const ComplexMatrix a0k = b.build_A0(*f, xhat);
      const ComplexVector l = b.lift(x, xhat);
      for (std::size_t r = 0; r < 2; ++r) {
        const Complex rec = (a0k.row(static_cast<Eigen::Index>(r) + 1) * l)(0);
        const Complex direct = taylor_direct(*f, r, x, xhat, k);
        EXPECT_LT(std::abs(rec - direct), 1e-13) << "k=" << k;
        if (k >= 3) {
          // cubic F: its own Taylor polynomial of order >= 3 is F itself
          const Complex exact = f->value(x.head(2), x(2).real())(static_cast<Eigen::Index>(r));
          EXPECT_LT(std::abs(rec - exact), 1e-13) << "k=" << k;
        }
      }
    }
  }
}

TEST(TaylorReconstruction, TrigRemainderOrder) {
  const auto sys = lleei::builtin("example1", 1.0);
  const ComplexVector xhat = vec({0.4, 0.2, 0.7});
  const ComplexVector dir = vec({0.6, -0.3, 0.5});
  for (int k = 1; k <= 3; ++k) {
    const ExtensionBuilder b(2, k);
    const ComplexMatrix a0k = b.build_A0(sys.oracle(), xhat);
    std::vector<double> hs;
    std::vector<double> errs;
    for (int i = 0; i < 5; ++i) {
      const double h = 0.1 * std::pow(0.5, i);
      const ComplexVector x = xhat + h * dir;
      const Complex rec = (a0k.row(2) * b.lift(x, xhat))(0);
      const Complex exact = sys.oracle().value(x.head(2), x(2).real())(1);
      hs.push_back(std::log(h));
      errs.push_back(std::log(std::abs(rec - exact)));
    }
    const double slope = (errs.back() - errs.front()) / (hs.back() - hs.front());
    EXPECT_NEAR(slope, k + 1, 0.2) << "k=" << k;
  }
}

TEST(LiftOde, LinearFlowIsExact) {
  // F = 0: the lifted exact flow satisfies X' = (A1k/eps + A0k) X.
  std::mt19937 rng(8);
  const ComplexMatrix a = random_imaginary(rng, 2);
  const double eps = 0.5;
  const ExtensionBuilder b(2, 3);
  const ComplexVector xhat = random_vector(rng, 3, 1.0);
  const ComplexMatrix gen = b.build_A1(augmented(a), xhat) / eps + b.build_A0(*lleei::zero_oracle(2), xhat);
  const ComplexVector u0 = random_vector(rng, 2, 1.0);
  auto x_at = [&](double t) {
    ComplexVector x(3);
    x << lleei::expm(a * (t / eps)) * u0, Complex(t);
    return x;
  };
  const double t = 0.3;
  const double dt = 1e-5;
  const ComplexVector deriv = (b.lift(x_at(t + dt), xhat) - b.lift(x_at(t - dt), xhat)) / (2.0 * dt);
  const ComplexVector rhs = gen * b.lift(x_at(t), xhat);
  EXPECT_LT((deriv - rhs).norm(), 1e-6 * std::max(1.0, rhs.norm()));
}

TEST(FreeFunctions, AgreeWithBuilder) {
  const lleei::MultiIndexCatalog cat(2, 2);
  const ComplexVector xhat = vec({0.5, 0.25});
  const ExtensionBuilder b(1, 2);
  EXPECT_EQ(lleei::build_A1(cat, scalar_i(), xhat), b.build_A1(scalar_i(), xhat));
  EXPECT_EQ(lleei::build_S(cat, xhat), b.build_S(xhat));
  EXPECT_EQ(lleei::lift(cat, vec({1.0, 2.0}), xhat), b.lift(vec({1.0, 2.0}), xhat));
  const auto f = lleei::polynomial_oracle(1, {{1, MultiIndex{1, 2}, 2.0}});
  EXPECT_EQ(lleei::build_A0(cat, *f, xhat), b.build_A0(*f, xhat));
}
