#include <gtest/gtest.h>

#include "cqm/galilei.hpp"
#include "test_util.hpp"

using namespace cqm;
using namespace cqm::galilei;

namespace {

std::string path(const char* name) { return std::string(CQM_MODELS_DIR) + "/" + name + ".model"; }

const Geometry& flat() {
  static const Geometry g(load_model(path("flat_galilei")));
  return g;
}
const Geometry& uniform_b() {
  static const Geometry g(load_model(path("uniform_b_galilei")));
  return g;
}

Geometry diagonal() {
  return Geometry(parse_model(R"([model]
framework = galilei
name = diag
[box]
x0 = "-1,1"
x1 = "-0.5,0.5"
x2 = "-1,1"
x3 = "-1,1"
[constants]
m = 1.0, M
q = 1.0, T^-1 L^3/2 M^1/2
hbar = 1.0, T^-1 L^2 M
[metric]
g11 = "(1 + x1)^2"
g22 = "1"
g33 = "1"
)"));
}

Observer constant_observer(double a, double b, double c) {
  return {ScalarField::constant(4, a), ScalarField::constant(4, b), ScalarField::constant(4, c)};
}

}  // namespace

TEST(Galilei, FlatModelHasNoConnectionOrForce) {
  const Point x{0.2, 0.3, -0.1, 0.5};
  const Point z{0.2, 0.3, -0.1, 0.5, 1.2, -0.4, 0.7};
  EXPECT_EQ(testutil::max_abs(flat().K().values(x)), 0.0);
  EXPECT_EQ(testutil::max_abs(flat().Gamma().values(z)), 0.0);
  EXPECT_EQ(testutil::max_abs(flat().gamma().values(z)), 0.0);
}

TEST(Galilei, DiagonalMetricConnection) {
  const Geometry g = diagonal();
  const Point x{0.1, 0.25, 0.0, 0.0};
  // K_1^1_1 = -1/(1 + x1)
  EXPECT_NEAR(g.K().values(x)[16 * 1 + 4 * 1 + 1], -1 / 1.25, 1e-14);
  EXPECT_LT(nabla_g_residual(g, x), 1e-12);
  EXPECT_LT(nabla_dt_residual(g, x), 1e-12);
  EXPECT_LT(torsion_residual(g, x), 1e-12);
}

TEST(Galilei, CyclotronAcceleration) {
  // uniform B along x3, v = (v, 0, 0): gamma^2 = -(q/m) B v
  const double v = 0.5, B = 0.8;
  const auto a = uniform_b().gamma().values(Point{0, 0, 0, 0, v, 0, 0});
  EXPECT_NEAR(a[0], 0.0, 1e-15);
  EXPECT_NEAR(a[1], -B * v, 1e-14);
  EXPECT_NEAR(a[2], 0.0, 1e-15);
}

TEST(Galilei, SpecialFunctionValues) {
  const Geometry& g = flat();
  const Observer o = chart_observer();
  const Point z{0.1, 0.2, 0.3, -0.4, 2.0, 0.0, 0.0};
  for (int l = 0; l < 4; ++l) EXPECT_DOUBLE_EQ(special_value(g, coordinate_function(g, l), o, z), z[l]);
  EXPECT_DOUBLE_EQ(special_value(g, momentum(g, o, 1), o, z), 2.0);
}

TEST(Galilei, TangentLifts) {
  const Geometry& g = uniform_b();
  const Observer o = chart_observer();
  const Point x{0.1, 0.6, -0.3, 0.2};
  for (int l = 0; l < 4; ++l) EXPECT_EQ(testutil::max_abs(tangent_lift(coordinate_function(g, l)).values(x)), 0.0);
  EXPECT_EQ(tangent_lift(energy(g, o)).values(x), (std::vector<double>{1, 0, 0, 0}));
  EXPECT_EQ(tangent_lift(momentum(g, o, 2)).values(x), (std::vector<double>{0, 0, -1, 0}));
  // X[C0] = 2 (d0 - A^i d_i) with A1 = -0.4 x2, A2 = 0.4 x1
  const auto c = tangent_lift(kinetic(g, o)).values(x);
  EXPECT_DOUBLE_EQ(c[0], 2.0);
  EXPECT_NEAR(c[1], -2 * (-0.4 * x[2]), 1e-15);
  EXPECT_NEAR(c[2], -2 * (0.4 * x[1]), 1e-15);
  EXPECT_NEAR(c[3], 0.0, 1e-15);
}

TEST(Galilei, PoissonBrackets) {
  const Geometry& g = flat();
  std::mt19937_64 rng(3);
  const Point z{0.1, 0.2, 0.3, -0.4, 0.5, -1.0, 0.7};
  const auto f = testutil::polynomial(7, 2, rng);
  EXPECT_EQ(poisson_bracket(g, f, f).value(z), 0.0);
  const auto x1 = ScalarField::coordinate(7, 1), v1 = ScalarField::coordinate(7, fibre(1));
  EXPECT_DOUBLE_EQ(poisson_bracket(g, x1, v1).value(z), 1.0);
  const auto h = testutil::polynomial(7, 2, rng);
  EXPECT_NEAR(poisson_bracket(g, f, h).value(z), poisson_bracket_lambda(g, f, h).value(z), 1e-13);
}

TEST(Galilei, HamiltonianLifts) {
  const Geometry& g = flat();
  const Point z{0.1, 0.2, 0.3, -0.4, 0.5, -1.0, 0.7};
  const auto zero = ScalarField::constant(7, 0.0);
  EXPECT_EQ(testutil::max_abs(hamiltonian_lift(g, zero, ScalarField::constant(7, 3.0)).values(z)), 0.0);
  const auto P1 = phase_function(g, momentum(g, chart_observer(), 1));
  std::vector<double> expect(7, 0.0);
  expect[1] = -1;
  EXPECT_EQ(hamiltonian_lift(g, zero, P1).values(z), expect);
}

TEST(Galilei, GoldenBrackets) {
  for (const Geometry* g : {&flat(), &uniform_b()}) {
    const Observer o = chart_observer();
    const Point z{0.1, 0.2, 0.3, -0.4, 0.5, -1.0, 0.7};
    const auto H = energy(*g, o);
    for (int l = 0; l < 4; ++l) {
      const auto x = coordinate_function(*g, l);
      for (int m = 0; m < 4; ++m)
        EXPECT_NEAR(special_value(*g, special_bracket(*g, x, coordinate_function(*g, m), o), o, z), 0.0, 1e-12);
      for (int i = 1; i <= 3; ++i)
        EXPECT_NEAR(special_value(*g, special_bracket(*g, x, momentum(*g, o, i), o), o, z), l == i ? 1.0 : 0.0,
                    1e-12);
    }
    for (int i = 1; i <= 3; ++i)
      EXPECT_NEAR(special_value(*g, special_bracket(*g, H, momentum(*g, o, i), o), o, z), 0.0, 1e-12);
  }
}

TEST(Galilei, ClosedBracketMatchesDefinition) {
  std::mt19937_64 rng(4);
  for (const Geometry* g : {&flat(), &uniform_b()}) {
    for (int k = 0; k < 3; ++k) {
      SpecialFunction f, h;
      for (auto* s : {&f, &h}) {
        s->f0 = testutil::polynomial(4, 2, rng);
        for (auto& c : s->f) c = testutil::polynomial(4, 2, rng);
        s->fbar = testutil::polynomial(4, 2, rng);
      }
      const auto p = testutil::point(4, rng);
      const Point z{p[0], p[1], p[2], p[3], 0.5, -0.3, 1.1};
      const double closed = special_value(*g, special_bracket(*g, f, h, chart_observer()), chart_observer(), z);
      EXPECT_NEAR(closed, special_bracket_definitional(*g, f, h).value(z), 1e-10);
    }
  }
}

TEST(Galilei, ObserverTransition) {
  const Geometry& g = uniform_b();
  const Observer o = chart_observer(), o2 = constant_observer(0.3, -0.2, 0.1);
  const auto f = kinetic(g, o);
  const auto c = observe(g, f, o);
  const Point x{0.1, 0.2, -0.3, 0.4};
  const auto same = transition(g, c, o, o);
  EXPECT_EQ(same.fo.value(x), c.fo.value(x));
  const auto back = transition(g, transition(g, c, o, o2), o2, o);
  EXPECT_NEAR(back.fo.value(x), c.fo.value(x), 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back.fp[i].value(x), c.fp[i].value(x), 1e-12);
  EXPECT_LT(max_difference(unobserve(g, c, o), f, x), 1e-12);
}

TEST(Galilei, ObservedPhi) {
  const Point x{0.1, 0.2, -0.3, 0.4};
  EXPECT_EQ(testutil::max_abs(observed_Phi(flat(), chart_observer()).values(x)), 0.0);
  // chart observer on the uniform field: (q/hbar) F with F12 = B
  const auto phi = observed_Phi(uniform_b(), chart_observer());
  EXPECT_NEAR(phi.component({1, 2}).value(x), 0.8, 1e-14);
  EXPECT_NEAR(phi.component({0, 1}).value(x), 0.0, 1e-14);
}

TEST(Galilei, ClassificationGoldenValues) {
  const Geometry& g = uniform_b();
  const Observer o = chart_observer();
  const auto A = observed_potential(g, o);
  const Point x{0.1, 0.2, -0.3, 0.4};
  for (int l = 0; l < 4; ++l) {
    const auto Y = to_hermitian(g, coordinate_function(g, l), o, A);
    EXPECT_EQ(testutil::max_abs(Y.X.values(x)), 0.0);
    EXPECT_NEAR(Y.b.value(x), x[l], 1e-15);
  }
  const auto H = to_hermitian(g, energy(g, o), o, A);
  EXPECT_EQ(H.X.values(x), (std::vector<double>{1, 0, 0, 0}));
  EXPECT_NEAR(H.b.value(x), 0.0, 1e-15);
  const auto P = to_hermitian(g, momentum(g, o, 1), o, A);
  EXPECT_EQ(P.X.values(x), (std::vector<double>{0, -1, 0, 0}));
  EXPECT_NEAR(P.b.value(x), 0.0, 1e-15);
  const auto back = from_hermitian(g, P, o, A);
  EXPECT_LT(max_difference(back, momentum(g, o, 1), x), 1e-14);
}
