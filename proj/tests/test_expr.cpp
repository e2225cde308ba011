#include <gtest/gtest.h>

#include "cqm/expr.hpp"

using namespace cqm;

namespace {

const std::set<std::string> kNone;

}  // namespace

TEST(Expr, ParsesToPrefixTree) {
  EXPECT_EQ(expr::dump(expr::parse("x1^2 + x2^2", kNone)), "add(pow(x1,2),pow(x2,2))");
  EXPECT_EQ(expr::dump(expr::parse("-x1^2", kNone)), "neg(pow(x1,2))");
  EXPECT_EQ(expr::dump(expr::parse("2^3^2", kNone)), "pow(2,pow(3,2))");
  EXPECT_EQ(expr::dump(expr::parse("1 - 2 - 3", kNone)), "sub(sub(1,2),3)");
}

TEST(Expr, NestedCallEvaluatesByHand) {
  const auto e = expr::parse("1/sqrt(abs(1 - x1^2))", kNone);
  EXPECT_DOUBLE_EQ(expr::evaluate(e, {}, std::vector<double>{0, 0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(expr::evaluate(e, {}, std::vector<double>{0, 0.6, 0, 0}), 1.25);
}

TEST(Expr, UnknownIdentifierCarriesOffset) {
  try {
    expr::parse("x5 + 1", kNone);
    FAIL() << "accepted x5";
  } catch (const expr::UnknownIdentifier& e) {
    EXPECT_EQ(e.name(), "x5");
    EXPECT_EQ(e.offset(), 0u);
  }
  EXPECT_THROW(expr::parse("B*x1", kNone), expr::UnknownIdentifier);
  EXPECT_NO_THROW(expr::parse("B*x1", {"B"}));
}

TEST(Expr, SyntaxErrors) {
  EXPECT_THROW(expr::parse("x1 +", kNone), expr::SyntaxError);
  EXPECT_THROW(expr::parse("(x1", kNone), expr::SyntaxError);
  EXPECT_THROW(expr::parse("foo(x1)", kNone), expr::UnknownIdentifier);
  EXPECT_THROW(expr::parse("2^x1", kNone), expr::SyntaxError);
  EXPECT_THROW(expr::parse("", kNone), expr::SyntaxError);
}

TEST(Expr, PrintReparsesToSameTree) {
  for (const char* s : {"x1^2 + x2^2", "-(x1 - x2)*x3", "1/(x1*x2)", "(x1^2)^3", "x1^-2", "x0 - (x1 - x2)",
                        "sin(x0)*exp(-x1/2)", "-B*x2/2"}) {
    const auto e = expr::parse(s, {"B"});
    EXPECT_TRUE(expr::equal(e, expr::parse(expr::print(e), {"B"}))) << s << " -> " << expr::print(e);
  }
}

TEST(Expr, CompiledDerivatives) {
  const auto three = expr::compile(expr::parse("3", kNone), {});
  const auto j3 = three.jet(std::vector<double>{0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(j3.value, 3.0);
  for (double g : j3.grad) EXPECT_EQ(g, 0.0);

  const auto s = expr::compile(expr::parse("sin(x0)", kNone), {}).jet(std::vector<double>{0, 0, 0, 0});
  EXPECT_EQ(s.value, 0.0);
  EXPECT_DOUBLE_EQ(s.grad[0], 1.0);
  EXPECT_DOUBLE_EQ(s.hess[0][0], 0.0);

  const auto h = expr::compile(expr::parse("x1*x2", kNone), {}).jet(std::vector<double>{0.3, -0.7, 1.1, 0});
  EXPECT_DOUBLE_EQ(h.hess[1][2], 1.0);
  EXPECT_DOUBLE_EQ(h.hess[2][1], 1.0);
  EXPECT_DOUBLE_EQ(h.hess[1][1], 0.0);
}

TEST(Expr, ConstantsAreSubstituted) {
  const auto f = expr::compile(expr::parse("0.5*B*x1", {"B"}), {{"B", 0.8}});
  EXPECT_DOUBLE_EQ(f.value(std::vector<double>{0, 2, 0, 0}), 0.8);
  EXPECT_TRUE(expr::depends_on_coordinates(expr::parse("0.5*B*x1", {"B"})));
  EXPECT_FALSE(expr::depends_on_coordinates(expr::parse("0.5*B", {"B"})));
}

TEST(Expr, DomainAndBoxErrorsCarryThePoint) {
  const auto f = expr::compile(expr::parse("sqrt(x1)", kNone), {});
  try {
    f.value(std::vector<double>{0, -1, 0, 0});
    FAIL() << "sqrt of a negative number";
  } catch (const expr::EvaluationError& e) {
    EXPECT_EQ(e.point()[1], -1.0);
  }
  const expr::Box box{{-1, -1, -1, -1}, {1, 1, 1, 1}};
  const auto g = expr::compile(expr::parse("x1", kNone), {}, 4, box);
  EXPECT_DOUBLE_EQ(g.value(std::vector<double>{0, 0.5, 0, 0}), 0.5);
  EXPECT_THROW(g.value(std::vector<double>{0, 2, 0, 0}), expr::OutOfBox);
}
