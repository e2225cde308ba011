#include <gtest/gtest.h>

#include <cmath>

#include "cqm/taylor.hpp"

using namespace cqm;

namespace {

// f(x, y) = sin(x) * exp(y) / (1 + x^2) at a point, compared to hand derivatives.
Taylor sample(std::span<const Taylor> v) { return sin(v[0]) * exp(v[1]) / (1.0 + v[0] * v[0]); }

}  // namespace

TEST(Taylor, BasisOrdering) {
  const auto& b = MonomialBasis::get(3, 2);
  EXPECT_EQ(b.size(), 10);
  EXPECT_EQ(b.size_up_to(1), 4);
  // degree-one block holds e_0, e_1, e_2 in order
  for (int v = 0; v < 3; ++v) EXPECT_EQ(b.exponents(1 + v)[v], 1);
}

TEST(Taylor, FirstAndSecondDerivativesMatchHandValues) {
  const double x = 0.3, y = -0.4;
  const std::vector<double> p{x, y};
  const auto t = sample(seed(p, 2));
  const double s = std::sin(x), c = std::cos(x), e = std::exp(y), q = 1 + x * x;
  EXPECT_NEAR(t.value(), s * e / q, 1e-15);
  const double fx = e * (c / q - 2 * x * s / (q * q));
  EXPECT_NEAR(t.d(0), fx, 1e-14);
  EXPECT_NEAR(t.d(1), s * e / q, 1e-14);
  EXPECT_NEAR(t.d2(0, 1), fx, 1e-14);
  EXPECT_NEAR(t.d2(1, 1), s * e / q, 1e-14);
  const double fxx = e * (-s / q - 4 * x * c / (q * q) - 2 * s / (q * q) + 8 * x * x * s / (q * q * q));
  EXPECT_NEAR(t.d2(0, 0), fxx, 1e-13);
}

TEST(Taylor, PowersAndRoots) {
  const std::vector<double> p{2.0};
  const auto x = seed(p, 3);
  const auto r = pow(x[0], 1.5);
  EXPECT_NEAR(r.value(), std::pow(2.0, 1.5), 1e-14);
  EXPECT_NEAR(r.d(0), 1.5 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.d2(0, 0), 0.75 / std::sqrt(2.0), 1e-14);
  const auto s = sqrt(x[0]);
  EXPECT_NEAR(s.d(0), 0.5 / std::sqrt(2.0), 1e-15);
  const auto n = powi(x[0] - 3.0, -2);  // (x-3)^-2 at x=2
  EXPECT_NEAR(n.value(), 1.0, 1e-15);
  EXPECT_NEAR(n.d(0), 2.0, 1e-14);
  EXPECT_THROW(sqrt(x[0] - 5.0), DomainError);
  EXPECT_THROW(1.0 / (x[0] - 2.0), DomainError);
  EXPECT_THROW(log(x[0] - 3.0), DomainError);
}

TEST(Taylor, CompositionMatchesDirectExpansion) {
  // g(u, v) expanded about (u0, v0), composed with u = x*y, v = x - y
  const std::vector<double> p{0.7, -0.2};
  const auto xy = seed(p, 3);
  const Taylor u = xy[0] * xy[1], v = xy[0] - xy[1];
  const std::vector<double> q{u.value(), v.value()};
  const auto uv = seed(q, 3);
  const Taylor g = sample(uv);
  const std::vector<Taylor> inner{u, v};
  const Taylor composed = compose(std::vector<Taylor>{g}, inner)[0];
  const Taylor direct = sample(inner);
  for (int k = 0; k < direct.basis().size(); ++k) EXPECT_NEAR(composed[k], direct[k], 1e-13) << k;
}

TEST(Taylor, PartialLowersOrder) {
  const std::vector<double> p{1.0, 2.0};
  const auto x = seed(p, 3);
  const Taylor f = x[0] * x[0] * x[1];
  const Taylor fx = f.partial(0);
  EXPECT_EQ(fx.order(), 2);
  EXPECT_NEAR(fx.value(), 4.0, 1e-15);
  EXPECT_NEAR(fx.d(0), 4.0, 1e-15);
  EXPECT_NEAR(fx.d(1), 2.0, 1e-15);
  EXPECT_NEAR(fx.d2(0, 1), 2.0, 1e-15);
}

TEST(Taylor, MixedBasesAreRejected) {
  const std::vector<double> p{1.0};
  const auto a = seed(p, 1), b = seed(p, 2);
  EXPECT_THROW(a[0] + b[0], std::logic_error);
}
