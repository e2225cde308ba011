#include <gtest/gtest.h>

#include "cqm/dims.hpp"

using namespace cqm::dims;

TEST(Dims, RationalLowestTerms) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_EQ((Rational(1, 2) + Rational(1, 3)), Rational(5, 6));
  EXPECT_EQ((Rational(3, 2) * Rational(2, 3)), Rational(1));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Dims, RationalOverflowIsChecked) {
  const Rational big(std::int64_t(1) << 62, 1);
  EXPECT_THROW(big * big, std::overflow_error);
}

TEST(Dims, HbarTimesTimeUnit) {
  const DimScalar hbar{1.0, hbar_dim()};
  const DimScalar u0{1.0, Dimension::time()};
  EXPECT_EQ(dim_mul(hbar, u0).dim, (Dimension{0, 2, 1}));
}

TEST(Dims, DimensionlessIdentity) {
  const DimScalar x{2.5, {}};
  const DimScalar one{1.0, {}};
  const auto r = dim_mul(x, one);
  EXPECT_EQ(r.value, 2.5);
  EXPECT_TRUE(r.dim.dimensionless());
}

TEST(Dims, ChargeSquaredOverMass) {
  const DimScalar q{2.0, charge_dim()};
  const DimScalar m{4.0, mass_dim()};
  const auto r = dim_div(dim_mul(q, q), m);
  // independent oracle: exponents of q^2/m by hand, t: -2, l: 3, m: 0
  EXPECT_EQ(r.dim, (Dimension{-2, 3, 0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(Dims, AdditionGuard) {
  const DimScalar a{1.0, Dimension::time()}, b{2.0, Dimension::time()};
  const auto s = dim_add(a, b);
  EXPECT_EQ(s.value, 3.0);
  EXPECT_EQ(s.dim, Dimension::time());
  EXPECT_THROW(dim_add(a, DimScalar{1.0, Dimension::length()}), DimensionMismatch);
}

TEST(Dims, RescaledMetricHasTimeScale) {
  const DimScalar m{1.0, mass_dim()}, hbar{1.0, hbar_dim()};
  const DimScalar g11{1.0, Dimension::length().pow(2)}, g22{2.0, Dimension::length().pow(2)};
  const DimScalar scale = dim_div(m, hbar);
  EXPECT_EQ(scale.dim, (Dimension{1, -2, 0}));
  const auto G = dim_add(dim_mul(scale, g11), dim_mul(scale, g22));
  EXPECT_EQ(G.dim, Dimension::time());
}

TEST(Dims, AssociativityAndGroupLaw) {
  const DimScalar a{1.5, charge_dim()}, b{2.0, hbar_dim()}, c{0.5, light_dim()};
  EXPECT_EQ(dim_mul(dim_mul(a, b), c).dim, dim_mul(a, dim_mul(b, c)).dim);
  EXPECT_EQ(dim_div(a, a).dim, Dimension::none());
  EXPECT_EQ(dim_pow(DimScalar{4.0, charge_dim()}, Rational(2)).dim, charge_dim() * charge_dim());
}

TEST(Dims, ParseAndPrint) {
  EXPECT_EQ(Dimension::parse("T^-1 L^3/2 M^1/2"), charge_dim());
  EXPECT_EQ(Dimension::parse(""), Dimension::none());
  EXPECT_EQ(charge_dim().str(), "T^-1 L^3/2 M^1/2");
  EXPECT_THROW(Dimension::parse("K^2"), std::invalid_argument);
}
