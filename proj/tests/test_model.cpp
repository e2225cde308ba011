#include <gtest/gtest.h>

#include "cqm/model.hpp"

using namespace cqm;

namespace {

const char* kFlat = R"(; flat, uniform B
[model]
framework = galilei
name = t

[box]
x0 = "-1,1"
x1 = "-2,2"
x2 = "-2,2"
x3 = "-2,2"

[constants]
m = 1.0, M
q = 1.0, T^-1 L^3/2 M^1/2
hbar = 1.0, T^-1 L^2 M
B = 0.8

[metric]
g11 = "1"
g22 = "1"
g33 = "1"

[empotential]
A1 = "-0.5*B*x2"
A2 = "0.5*B*x1"

[observer.rest]
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

std::string path(const char* name) { return std::string(CQM_MODELS_DIR) + "/" + name + ".model"; }

}  // namespace

TEST(Model, ParsesFlatGalilei) {
  const Model m = parse_model(kFlat);
  EXPECT_EQ(m.framework, Framework::Galilei);
  EXPECT_EQ(m.name, "t");
  EXPECT_EQ(m.observers.size(), 1u);
  EXPECT_EQ(m.observers[0].name, "rest");
  EXPECT_DOUBLE_EQ(m.constant_values().at("B"), 0.8);
  const Point x{0.1, 1.0, 0.5, 0.0};
  EXPECT_DOUBLE_EQ(m.A[1].value(x), -0.2);
  EXPECT_DOUBLE_EQ(m.A[2].value(x), 0.4);
  const auto G = m.metric_at(x);
  EXPECT_EQ(G.size(), 3u);
  EXPECT_EQ(G[0][1], 0.0);
  EXPECT_EQ(G[2][2], 1.0);
  EXPECT_NO_THROW(validate(m));
}

TEST(Model, ShippedModelsValidate) {
  for (const char* n : {"flat_galilei", "uniform_b_galilei", "curved_galilei", "minkowski", "minkowski_efield",
                        "minkowski_uniformF", "schwarzschild_isotropic"}) {
    const Model m = load_model(path(n));
    EXPECT_EQ(m.name, n);
    EXPECT_NO_THROW(validate(m)) << n;
  }
  EXPECT_EQ(load_model(path("minkowski")).framework, Framework::Einstein);
}

TEST(Model, TrailingEmptyObserverSectionIsKept) {
  const Model m = load_model(path("minkowski_efield"));
  ASSERT_EQ(m.observers.size(), 1u);
  EXPECT_EQ(m.observer("rest").name, "rest");
}

TEST(Model, NegativeSpatialMetricIsRejected) {
  const Model m = parse_model(replace(kFlat, "g11 = \"1\"", "g11 = \"-1\""));
  EXPECT_THROW(validate(m), ValidationError);
}

TEST(Model, NonClosedGravitationalFormIsRejected) {
  const Model m = parse_model(std::string(kFlat) + "\n[gravPhi]\nPhi12 = \"x0\"\n");
  try {
    validate(m);
    FAIL() << "accepted a non-closed form";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.point().size(), 4u);
  }
}

TEST(Model, MalformedFilesAreParseErrors) {
  EXPECT_THROW(parse_model(replace(kFlat, "framework = galilei", "framework = newton")), ParseError);
  EXPECT_THROW(parse_model(replace(kFlat, "x1 = \"-2,2\"", "x1 = \"2,-2\"")), ParseError);
  EXPECT_THROW(parse_model(replace(kFlat, "g22 = \"1\"", "g22 = \"1 + y\"")), ParseError);
  EXPECT_THROW(parse_model(replace(kFlat, "[empotential]", "[potential]")), ParseError);
  EXPECT_THROW(parse_model(replace(kFlat, "g33 = \"1\"", "")), ParseError);
  EXPECT_THROW(parse_model(replace(kFlat, "B = 0.8", "x1 = 0.8")), ParseError);
  EXPECT_THROW(load_model("/nonexistent.model"), ParseError);
}

TEST(Model, ConstantDimensionsAreChecked) {
  EXPECT_THROW(parse_model(replace(kFlat, "m = 1.0, M", "m = 1.0, L")), ValidationError);
}

TEST(Model, MinkowskiSignature) {
  const Model m = load_model(path("minkowski"));
  EXPECT_EQ(inertia(m.metric_at(Point{0, 0, 0, 0})), (std::array<int, 3>{1, 0, 3}));
  EXPECT_EQ(inertia({{1, 0}, {0, 0}}), (std::array<int, 3>{0, 1, 1}));
}

TEST(Model, SamplePointsAreInsideAndDeterministic) {
  const Model m = parse_model(kFlat);
  const auto a = m.sample_points(30), b = m.sample_points(30);
  ASSERT_EQ(a.size(), 30u);
  EXPECT_EQ(a, b);
  for (const auto& p : a) EXPECT_TRUE(m.box.contains(p));
}
