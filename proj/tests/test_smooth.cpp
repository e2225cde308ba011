#include <gtest/gtest.h>

#include "cqm/smooth.hpp"
#include "test_util.hpp"

using namespace cqm;
using testutil::max_abs;

namespace {

std::vector<double> diff(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace

TEST(Smooth, CoordinateFramesCommute) {
  const auto b = lie_bracket(VectorField::coordinate_frame(4, 0), VectorField::coordinate_frame(4, 1));
  EXPECT_EQ(max_abs(b.values(Point{0.1, 0.2, 0.3, 0.4})), 0.0);
}

TEST(Smooth, BracketHandExpansion) {
  // [x1 d0, d1] = -d0
  const auto x1 = ScalarField::coordinate(4, 1);
  const auto zero = ScalarField::constant(4, 0.0);
  const auto X = VectorField::from_components({x1, zero, zero, zero});
  const auto b = lie_bracket(X, VectorField::coordinate_frame(4, 1));
  const Point p{0.3, -0.2, 0.5, 0.1};
  const auto v = b.values(p);
  EXPECT_NEAR(v[0], -1.0, 1e-15);
  EXPECT_NEAR(v[1] * v[1] + v[2] * v[2] + v[3] * v[3], 0.0, 1e-30);
  // finite-difference cross-check of the defining formula: -Y(X^0) = -d1(x1)
  EXPECT_NEAR(-testutil::central(X.field(), 0, p, 1), v[0], 1e-9);
}

TEST(Smooth, BracketAntisymmetryAndJacobi) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto X = testutil::vector_polynomial(4, 2, rng);
    const auto Y = testutil::vector_polynomial(4, 2, rng);
    const auto Z = testutil::vector_polynomial(4, 2, rng);
    const auto p = testutil::point(4, rng);
    const auto xy = lie_bracket(X, Y).values(p), yx = lie_bracket(Y, X).values(p);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(xy[i], -yx[i], 1e-12);
    const auto a = lie_bracket(X, lie_bracket(Y, Z)).values(p);
    const auto b = lie_bracket(Y, lie_bracket(Z, X)).values(p);
    const auto c = lie_bracket(Z, lie_bracket(X, Y)).values(p);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[i] + b[i] + c[i], 0.0, 1e-9);
  }
}

TEST(Smooth, ExteriorDerivativeExamples) {
  const Point p{0.2, 0.4, -0.1, 0.7};
  const auto dc = exterior_derivative(PForm(4, 1, Field::constant(4, {1.0, 2.0, 3.0, 4.0})));
  EXPECT_EQ(max_abs(dc.values(p)), 0.0);
  // d(x1 d2) = d1 ^ d2
  const auto w = ScalarField::coordinate(4, 1) * PForm::basis(4, {2});
  const auto dw = exterior_derivative(w).values(p);
  const auto want = PForm::basis(4, {1, 2}).values(p);
  EXPECT_LT(max_abs(diff(dw, want)), 1e-15);
  // finite-difference curl: (dw)_{12} = d1 w_2 - d2 w_1
  const double curl = testutil::central(w.field(), 2, p, 1) - testutil::central(w.field(), 1, p, 2);
  EXPECT_NEAR(dw[combination_index(4, {1, 2})], curl, 1e-9);
}

TEST(Smooth, DSquaredVanishes) {
  std::mt19937_64 rng(5);
  for (int deg = 0; deg <= 2; ++deg) {
    const auto w = testutil::form_polynomial(4, deg, 3, rng);
    const auto ddw = exterior_derivative(exterior_derivative(w));
    for (int t = 0; t < 5; ++t) EXPECT_LT(max_abs(ddw.values(testutil::point(4, rng))), 1e-12);
  }
  const auto w = testutil::form_polynomial(7, 2, 2, rng);
  EXPECT_LT(max_abs(exterior_derivative(exterior_derivative(w)).values(testutil::point(7, rng))), 1e-12);
}

TEST(Smooth, ContractionExamples) {
  const Point p{0.2, 0.4, -0.1, 0.7};
  const auto r = contract(VectorField::coordinate_frame(4, 0), PForm::basis(4, {0, 1})).values(p);
  EXPECT_LT(max_abs(diff(r, PForm::basis(4, {1}).values(p))), 1e-15);
  std::mt19937_64 rng(3);
  const auto X = testutil::vector_polynomial(4, 2, rng);
  const auto w = testutil::form_polynomial(4, 2, 2, rng);
  EXPECT_LT(std::abs(contract(X, contract(X, w)).values(p)[0]), 1e-12);
  EXPECT_THROW(contract(X, PForm::zero(4, 0)), std::invalid_argument);
}

TEST(Smooth, LieDerivativeOfScalars) {
  const Point p{0.3, 0.6, -0.2, 0.1};
  EXPECT_EQ(lie_derivative_scalar(VectorField::coordinate_frame(4, 0), ScalarField::coordinate(4, 0)).value(p), 1.0);
  const auto x1 = ScalarField::coordinate(4, 1);
  const auto zero = ScalarField::constant(4, 0.0);
  const auto X = VectorField::from_components({zero, x1, zero, zero});
  EXPECT_NEAR(lie_derivative_scalar(X, x1 * x1).value(p), 2 * 0.36, 1e-15);
  std::mt19937_64 rng(8);
  const auto Y = testutil::vector_polynomial(4, 2, rng);
  const auto f = testutil::polynomial(4, 2, rng), g = testutil::polynomial(4, 2, rng);
  const double lhs = lie_derivative_scalar(Y, f * g).value(p);
  const double rhs = (lie_derivative_scalar(Y, f) * g + f * lie_derivative_scalar(Y, g)).value(p);
  EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(Smooth, WedgeExamples) {
  const Point p{0.1, 0.1, 0.1, 0.1};
  const auto d0 = PForm::basis(4, {0}), d1 = PForm::basis(4, {1});
  EXPECT_EQ(max_abs(wedge(d0, d0).values(p)), 0.0);
  const auto a = wedge(d0, d1).values(p), b = wedge(d1, d0).values(p);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], -b[i]);
  const auto top = wedge(wedge(d0, d1), wedge(PForm::basis(4, {2}), PForm::basis(4, {3})));
  std::vector<std::vector<double>> frame(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) frame[i][i] = 1.0;
  EXPECT_EQ(evaluate(top, p, frame), 1.0);
  // determinant oracle on a generic frame
  std::vector<std::vector<double>> X{{1, 2, 0, 1}, {0, 1, 3, 0}, {2, 0, 1, 1}, {1, 1, 1, 2}};
  std::vector<std::vector<double>> m(4, std::vector<double>(4));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = X[c][r];
  // independent determinant by cofactor expansion of m
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };
  const double oracle = m[0][0] * det3(m[1][1], m[1][2], m[1][3], m[2][1], m[2][2], m[2][3], m[3][1], m[3][2], m[3][3]) -
                        m[0][1] * det3(m[1][0], m[1][2], m[1][3], m[2][0], m[2][2], m[2][3], m[3][0], m[3][2], m[3][3]) +
                        m[0][2] * det3(m[1][0], m[1][1], m[1][3], m[2][0], m[2][1], m[2][3], m[3][0], m[3][1], m[3][3]) -
                        m[0][3] * det3(m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2], m[3][0], m[3][1], m[3][2]);
  EXPECT_NEAR(evaluate(top, p, X), oracle, 1e-12);
}

TEST(Smooth, WedgeIsAssociativeAndGraded) {
  std::mt19937_64 rng(21);
  const auto a = testutil::form_polynomial(5, 1, 1, rng);
  const auto b = testutil::form_polynomial(5, 2, 1, rng);
  const auto c = testutil::form_polynomial(5, 1, 1, rng);
  const auto p = testutil::point(5, rng);
  EXPECT_LT(max_abs(diff(wedge(wedge(a, b), c).values(p), wedge(a, wedge(b, c)).values(p))), 1e-12);
  EXPECT_LT(max_abs(diff(wedge(a, c).values(p), (-1.0 * wedge(c, a)).values(p))), 1e-12);
  EXPECT_LT(max_abs(diff(wedge(a, b).values(p), wedge(b, a).values(p))), 1e-12);
  // Leibniz rule for d on a product
  const auto lhs = exterior_derivative(wedge(a, b));
  const auto rhs = wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b));
  EXPECT_LT(max_abs(diff(lhs.values(p), rhs.values(p))), 1e-12);
}

TEST(Smooth, CartanFormula) {
  std::mt19937_64 rng(13);
  for (int deg = 1; deg <= 2; ++deg) {
    const auto X = testutil::vector_polynomial(4, 2, rng);
    const auto w = testutil::form_polynomial(4, deg, 2, rng);
    const auto lhs = lie_derivative(X, w);
    const auto rhs = contract(X, exterior_derivative(w)) + exterior_derivative(contract(X, w));
    for (int t = 0; t < 5; ++t) {
      const auto p = testutil::point(4, rng);
      EXPECT_LT(max_abs(diff(lhs.values(p), rhs.values(p))), 1e-9);
    }
  }
}

TEST(Smooth, GradientMatchesFiniteDifferencesAndHessianIsSymmetric) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    const auto f = testutil::polynomial(4, 3, rng);
    const auto p = testutil::point(4, rng);
    const Jet2 j = f.jet(p);
    for (int v = 0; v < 4; ++v) {
      const double fd = testutil::central(f.field(), 0, p, v);
      EXPECT_LE(std::abs(fd - j.grad[v]), 1e-6 * std::max(1.0, std::abs(j.grad[v])));
      for (int w = 0; w < 4; ++w) EXPECT_EQ(j.hess[v][w], j.hess[w][v]);
    }
  }
}

TEST(Smooth, PullbackCommutesWithD) {
  std::mt19937_64 rng(23);
  // phi: R^4 -> R^7
  std::vector<ScalarField> comps;
  for (int i = 0; i < 7; ++i) comps.push_back(testutil::polynomial(4, 2, rng));
  std::vector<Field> parts;
  for (const auto& c : comps) parts.push_back(c.field());
  const Field phi = Field::stack(parts);
  const auto w = testutil::form_polynomial(7, 1, 2, rng);
  const auto lhs = exterior_derivative(pullback(phi, w));
  const auto rhs = pullback(phi, exterior_derivative(w));
  const auto p = testutil::point(4, rng);
  EXPECT_LT(max_abs(diff(lhs.values(p), rhs.values(p))), 1e-10);
}

TEST(Smooth, PartialOfComposedFields) {
  // derivative fields evaluated under a non-trivial composition
  std::mt19937_64 rng(29);
  const auto f = testutil::polynomial(3, 3, rng);
  std::vector<Field> parts;
  for (int i = 0; i < 3; ++i) parts.push_back(testutil::polynomial(4, 2, rng).field());
  const Field inner = Field::stack(parts);
  const auto fx = f.partial(1).compose(inner);
  const auto p = testutil::point(4, rng);
  const Jet2 j = fx.jet(p);
  for (int v = 0; v < 4; ++v) {
    const double fd = testutil::central(fx.field(), 0, p, v);
    EXPECT_NEAR(fd, j.grad[v], 1e-6 * std::max(1.0, std::abs(fd)));
  }
}
