#include <gtest/gtest.h>

#include "cqm/einstein.hpp"
#include "test_util.hpp"

using namespace cqm;
using namespace cqm::einstein;

namespace {

std::string path(const char* name) { return std::string(CQM_MODELS_DIR) + "/" + name + ".model"; }

const Geometry& minkowski() {
  static const Geometry g(load_model(path("minkowski")));
  return g;
}

Geometry diagonal() {
  return Geometry(parse_model(R"([model]
framework = einstein
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
c = 1.0, T^-1 L
[metric]
g00 = "-1"
g11 = "(1 + x1)^2"
g22 = "1"
g33 = "1"
)"));
}

Geometry efield(double E) {
  return Geometry(parse_model(R"([model]
framework = einstein
name = efield
[box]
x0 = "-1,1"
x1 = "-1,1"
x2 = "-1,1"
x3 = "-1,1"
[constants]
m = 1.0, M
q = 1.0, T^-1 L^3/2 M^1/2
hbar = 1.0, T^-1 L^2 M
c = 2.0, T^-1 L
E = )" + std::to_string(E) + R"(
[metric]
g00 = "-1"
g11 = "1"
g22 = "1"
g33 = "1"
[empotential]
A0 = "E/c*x1"
)"));
}

}  // namespace

TEST(Einstein, LorentzFactor) {
  EXPECT_DOUBLE_EQ(minkowski().alpha().values(Point{0, 0, 0, 0, 0, 0, 0})[0], 1.0);
  EXPECT_DOUBLE_EQ(minkowski().alpha().values(Point{0, 0, 0, 0, 0.6, 0, 0})[0], 1.25);
  EXPECT_THROW(minkowski().alpha().values(Point{0, 0, 0, 0, 3, 0, 0}), LightconeViolation);
  EXPECT_THROW(minkowski().alpha().values(Point{0, 0, 0, 0, 1, 0, 0}), LightconeViolation);
}

TEST(Einstein, ContactAndTimeForm) {
  const Geometry& g = minkowski();
  const double c = g.model().c;
  EXPECT_EQ(g.contact().values(Point{0, 0, 0, 0, 0, 0, 0}), (std::vector<double>{c, 0, 0, 0}));
  const Point z{0.1, 0.2, -0.3, 0.4, 0.3, -0.4, 0.2};
  const auto d = g.contact().values(z), tau = g.tau().values(z);
  double norm = -d[0] * d[0], t = 0;
  for (int i = 1; i < 4; ++i) norm += d[i] * d[i];
  for (int l = 0; l < 4; ++l) t += tau[l] * d[l];
  EXPECT_NEAR(norm, -c * c, 1e-12);
  EXPECT_NEAR(t, 1.0, 1e-14);
}

TEST(Einstein, TechnicalIdentities) {
  std::mt19937_64 rng(12);
  for (const Geometry* g : {&minkowski()}) {
    for (int k = 0; k < 10; ++k) {
      auto z = testutil::point(4, rng);
      for (double v : testutil::point(3, rng, 0.5)) z.push_back(v);
      for (const auto& r : technical_identities(*g, z)) EXPECT_LT(r.value, 1e-9) << r.name;
    }
  }
}

TEST(Einstein, FlatAndDiagonalConnections) {
  const Point x{0.1, 0.25, 0.0, 0.0};
  EXPECT_EQ(testutil::max_abs(minkowski().K().values(x)), 0.0);
  const Geometry g = diagonal();
  // K_1^1_1 = -1/(1 + x1)
  EXPECT_NEAR(g.K().values(x)[16 * 1 + 4 * 1 + 1], -1 / 1.25, 1e-14);
  EXPECT_LT(nabla_g_residual(g, x), 1e-12);
  EXPECT_LT(torsion_residual(g, x), 1e-12);
}

TEST(Einstein, LorentzForce) {
  const Point rest{0, 0.1, 0, 0, 0, 0, 0};
  EXPECT_EQ(testutil::max_abs(minkowski().Gamma_em().values(rest)), 0.0);
  for (double v : lorentz_force(minkowski(), rest)) EXPECT_EQ(v, 0.0);
  // constant F01 = E / c, at rest: force c F01 along d1
  const Geometry g = efield(0.5);
  const auto f = lorentz_force(g, rest);
  const double F01 = g.F().component({0, 1}).value(Point{0, 0.1, 0, 0});
  EXPECT_NEAR(std::abs(F01), 0.5 / g.model().c, 1e-15);
  EXPECT_NEAR(f[0], 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f[1]), g.model().c * std::abs(F01), 1e-14);
  EXPECT_NEAR(f[2], 0.0, 1e-15);
  const auto h = lorentz_force_from_gamma(g, rest);
  for (int l = 0; l < 4; ++l) EXPECT_NEAR(h[l], f[l], 1e-14);
}

TEST(Einstein, SpecialFunctionValues) {
  const Geometry& g = minkowski();
  const Point rest{0.1, 0.2, 0.3, 0.4, 0, 0, 0};
  for (int l = 0; l < 4; ++l) EXPECT_DOUBLE_EQ(special_value(g, coordinate_function(l), rest), rest[l]);
  // the d0 lift at rest: -c alpha G00 = c
  SpecialFunction f;
  const auto zero = ScalarField::constant(4, 0.0);
  f.X = {ScalarField::constant(4, 1.0), zero, zero, zero};
  f.fbar = zero;
  EXPECT_DOUBLE_EQ(special_value(g, f, rest), g.model().c);
}

TEST(Einstein, GoldenBrackets) {
  const Geometry& g = minkowski();
  const Point z{0.1, 0.2, -0.3, 0.4, 0.3, -0.4, 0.2};
  const auto H = energy(g);
  for (int l = 0; l < 4; ++l) {
    for (int m = 0; m < 4; ++m)
      EXPECT_NEAR(special_value(g, special_bracket(g, coordinate_function(l), coordinate_function(m)), z), 0.0,
                  1e-12);
    EXPECT_NEAR(special_value(g, special_bracket(g, coordinate_function(l), H), z), l == 0 ? -1.0 : 0.0, 1e-12);
  }
  for (int i = 1; i <= 3; ++i)
    EXPECT_NEAR(special_value(g, special_bracket(g, H, momentum(g, i)), z), 0.0, 1e-12);
}

TEST(Einstein, ClosedBracketMatchesDefinition) {
  std::mt19937_64 rng(13);
  const Geometry g = efield(0.5);
  for (int k = 0; k < 3; ++k) {
    SpecialFunction f, h;
    for (auto* s : {&f, &h}) {
      for (auto& c : s->X) c = testutil::polynomial(4, 2, rng);
      s->fbar = testutil::polynomial(4, 2, rng);
    }
    auto z = testutil::point(4, rng);
    for (double v : testutil::point(3, rng, 0.4)) z.push_back(v);
    EXPECT_NEAR(special_value(g, special_bracket(g, f, h), z), special_bracket_definitional(g, f, h).value(z),
                1e-9);
  }
}

TEST(Einstein, ClassificationRoundTrip) {
  std::mt19937_64 rng(14);
  const Geometry g = efield(0.5);
  SpecialFunction f;
  for (auto& c : f.X) c = testutil::polynomial(4, 2, rng);
  f.fbar = testutil::polynomial(4, 2, rng);
  const auto x = testutil::point(4, rng);
  EXPECT_LT(max_difference(from_hermitian(g, to_hermitian(g, f)), f, x), 1e-13);
  const auto Y = to_hermitian(g, coordinate_function(2));
  EXPECT_EQ(testutil::max_abs(Y.X.values(x)), 0.0);
  EXPECT_NEAR(Y.b.value(x), x[2], 1e-15);
}
