#include <gtest/gtest.h>

#include "cqm/quantum.hpp"
#include "test_util.hpp"

using namespace cqm;
using namespace cqm::quantum;

namespace {

const ScalarField kZero = ScalarField::constant(4, 0.0);

LinearQuantumField fibre_only(double y11, double y12, double y21, double y22) {
  LinearQuantumField Y;
  Y.X = VectorField::from_components({kZero, kZero, kZero, kZero});
  Y.Y = {{{ScalarField::constant(4, y11), ScalarField::constant(4, y12)},
          {ScalarField::constant(4, y21), ScalarField::constant(4, y22)}}};
  return Y;
}

VectorField frame(int i) { return VectorField::coordinate_frame(4, i); }

GaugeConnection uniform_b(double B) {
  const auto x1 = ScalarField::coordinate(4, 1), x2 = ScalarField::coordinate(4, 2);
  return {{kZero, -0.5 * B * x2, 0.5 * B * x1, kZero}};
}

HermitianField random_hermitian(std::mt19937_64& rng) {
  return {testutil::vector_polynomial(4, 2, rng), testutil::polynomial(4, 2, rng)};
}

}  // namespace

TEST(Quantum, HermitianCharacterisation) {
  const std::vector<Point> pts{{0.1, 0.2, 0.3, 0.4}};
  EXPECT_TRUE(is_hermitian(fibre_only(0, -0.7, 0.7, 0), pts));
  EXPECT_FALSE(is_hermitian(fibre_only(1, 0, 0, 1), pts));
  EXPECT_FALSE(is_hermitian(fibre_only(0, 0.7, 0.7, 0), pts));
  EXPECT_DOUBLE_EQ(hermitian_residual(fibre_only(0, 0.7, 0.7, 0), pts), 1.4);
}

TEST(Quantum, MetricLieDerivative) {
  const Point x{0.1, 0.2, 0.3, 0.4};
  const auto h = lie_derivative_hermitian_metric(fibre_only(0, -0.7, 0.7, 0), x, {0.3, -0.5});
  EXPECT_EQ(std::abs(h.c1) + std::abs(h.c2), 0.0);
  // Liouville field: L(I)h = 2h
  const auto l = lie_derivative_hermitian_metric(fibre_only(1, 0, 0, 1), x, {1.0, 0.0});
  EXPECT_DOUBLE_EQ(l.c1.real(), 2.0);
  EXPECT_DOUBLE_EQ(l.c1.imag(), 0.0);
  // against the fibre flow
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    LinearQuantumField Y;
    Y.X = testutil::vector_polynomial(4, 1, rng);
    for (auto& row : Y.Y)
      for (auto& e : row) e = testutil::polynomial(4, 2, rng);
    const auto p = testutil::point(4, rng);
    const std::array<double, 2> w{0.4, -0.9};
    const auto a = lie_derivative_hermitian_metric(Y, p, w), b = lie_derivative_hermitian_metric_flow(Y, p, w);
    EXPECT_LT(std::abs(a.c1 - b.c1) + std::abs(a.c2 - b.c2), 1e-5);
  }
}

TEST(Quantum, LinearRoundTripIsComplexLinear) {
  std::mt19937_64 rng(6);
  const auto Y = random_hermitian(rng);
  const auto L = to_linear(Y);
  const auto p = testutil::point(4, rng);
  EXPECT_EQ(hermitian_residual(L, {p}), 0.0);
  EXPECT_EQ(max_difference(from_linear(L), Y, p), 0.0);
}

TEST(Quantum, Action) {
  const Point x{0.3, 0.1, 0.2, 0.4};
  const Section one{ScalarField::constant(4, 1.0), kZero};
  const auto v = act(vertical(ScalarField::constant(4, 1.0)), one).at(x);
  EXPECT_EQ(v, std::complex<double>(0, -1));
  const Section x0{ScalarField::coordinate(4, 0), kZero};
  EXPECT_EQ(act(HermitianField{frame(0), kZero}, x0).at(x), std::complex<double>(1, 0));
}

TEST(Quantum, BracketGoldenValues) {
  std::mt19937_64 rng(7);
  const Point p = testutil::point(4, rng);
  const auto f = testutil::polynomial(4, 2, rng), g = testutil::polynomial(4, 2, rng);
  const auto vv = hermitian_bracket(vertical(f), vertical(g));
  EXPECT_EQ(testutil::max_abs(vv.X.values(p)), 0.0);
  EXPECT_EQ(vv.b.value(p), 0.0);
  const GaugeConnection c = uniform_b(0.8);
  const auto X = testutil::vector_polynomial(4, 2, rng);
  const auto cv = hermitian_bracket(connection_lift(c, X), vertical(g));
  EXPECT_NEAR(max_difference(cv, vertical(lie_derivative_scalar(X, g)), p), 0.0, 1e-13);
}

TEST(Quantum, CurvatureOfUniformField) {
  const Point p{0.1, -0.4, 0.9, 0.2};
  const double B = 0.8;
  const GaugeConnection c = uniform_b(B);
  const PForm Phi = curvature(c);
  EXPECT_DOUBLE_EQ(Phi.component({1, 2}).value(p), B);
  EXPECT_EQ(Phi.component({0, 1}).value(p), 0.0);
  // defect identity [c(d1), c(d2)] = c([d1, d2]) + i Phi(d1, d2) I
  const auto lhs = hermitian_bracket(connection_lift(c, frame(1)), connection_lift(c, frame(2)));
  EXPECT_DOUBLE_EQ(lhs.b.value(p), B);
  EXPECT_EQ(testutil::max_abs(curvature(GaugeConnection{{ScalarField::constant(4, 1.0), kZero, kZero,
                                                          ScalarField::constant(4, -2.0)}})
                                  .values(p)),
            0.0);
}

TEST(Quantum, ClassificationIntertwinesBrackets) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 3; ++trial) {
    const GaugeConnection c{{testutil::polynomial(4, 2, rng), testutil::polynomial(4, 2, rng),
                             testutil::polynomial(4, 2, rng), testutil::polynomial(4, 2, rng)}};
    const PForm Phi = curvature(c);
    const SpacetimePair a{testutil::vector_polynomial(4, 2, rng), testutil::polynomial(4, 2, rng)};
    const SpacetimePair b{testutil::vector_polynomial(4, 2, rng), testutil::polynomial(4, 2, rng)};
    const auto p = testutil::point(4, rng);
    const auto lhs = hermitian_bracket(classify_j(c, a), classify_j(c, b));
    EXPECT_LT(max_difference(lhs, classify_j(c, pair_bracket(a, b, Phi)), p), 1e-10);
    EXPECT_LT(max_difference(classify_h(c, classify_j(c, a)), a, p), 1e-13);
    const SpacetimePair lifted = classify_h(c, connection_lift(c, a.X));
    EXPECT_LT(std::abs(lifted.Ybar.value(p)), 1e-13);
  }
}

TEST(Quantum, PairBracketWithZeroPhiIsLieBracket) {
  std::mt19937_64 rng(9);
  const SpacetimePair a{testutil::vector_polynomial(4, 2, rng), kZero};
  const SpacetimePair b{testutil::vector_polynomial(4, 2, rng), kZero};
  const auto p = testutil::point(4, rng);
  const auto r = pair_bracket(a, b, PForm::zero(4, 2));
  EXPECT_EQ(r.Ybar.value(p), 0.0);
  EXPECT_EQ(r.X.values(p), lie_bracket(a.X, b.X).values(p));
}

TEST(Quantum, NonClosedPhiBreaksJacobi) {
  const PForm Phi = ScalarField::coordinate(4, 0) * PForm::basis(4, {1, 2});
  const SpacetimePair d0{frame(0), kZero}, d1{frame(1), kZero}, d2{frame(2), kZero};
  const auto cyc = pair_bracket(d0, pair_bracket(d1, d2, Phi), Phi) +
                   pair_bracket(d1, pair_bracket(d2, d0, Phi), Phi) +
                   pair_bracket(d2, pair_bracket(d0, d1, Phi), Phi);
  // the defect is dPhi(d0, d1, d2) = 1
  EXPECT_DOUBLE_EQ(std::abs(cyc.Ybar.value(Point{0.2, 0.1, 0.3, 0.4})), 1.0);
}
