#include <gtest/gtest.h>

#include <set>

#include "cqm/orbit.hpp"
#include "cqm/report.hpp"

using namespace cqm;
using namespace cqm::harness;

namespace {

std::string path(const char* name) { return std::string(CQM_MODELS_DIR) + "/" + name + ".model"; }

}  // namespace

TEST(Rng, CountersAreReproducibleAndStreamsDiffer) {
  gen::Rng a(42, 1), b(42, 1), c(42, 2), d(43, 1);
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
  }
  gen::Rng u(7, 0);
  double lo = 1, hi = 0;
  for (int k = 0; k < 10000; ++k) {
    const double v = u.uniform();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1 - 1e-3);
  EXPECT_EQ(gen::stream_id("a/b"), gen::stream_id("a/b"));
  EXPECT_NE(gen::stream_id("a/b"), gen::stream_id("a/c"));
}

TEST(Harness, CatalogCoversEveryModuleInvariant) {
  std::set<std::string> stated, covered;
  for (const auto& i : module_invariants()) {
    EXPECT_TRUE(i.module == "galilei" || i.module == "einstein" || i.module == "quantum") << i.id;
    EXPECT_TRUE(stated.insert(i.id).second) << "duplicate " << i.id;
  }
  for (const auto& s : suites())
    for (const auto& c : s.checks)
      for (const auto& id : c.covers) covered.insert(id);
  EXPECT_EQ(stated, covered);
}

TEST(Harness, CheckNamesAreUniqueWithinSuites) {
  for (const auto& s : suites()) {
    std::set<std::string> names;
    for (const auto& c : s.checks) EXPECT_TRUE(names.insert(c.name).second) << s.name << "/" << c.name;
  }
  EXPECT_THROW(suite("no-such-suite"), UsageError);
}

TEST(Harness, FlatGalileiCorePasses) {
  const auto r = run_suite(path("flat_galilei"), "galilei-core", 100, 42);
  for (const auto& c : r.records) EXPECT_TRUE(c.pass) << c.name << " " << c.residual << " " << c.reason;
  EXPECT_EQ(exit_code(r), 0);
}

TEST(Harness, EinsteinIdentitiesPass) {
  const auto r = run_suite(path("minkowski_uniformF"), "einstein-identities", 200, 7);
  for (const auto& c : r.records) EXPECT_TRUE(c.pass) << c.name << " " << c.residual << " " << c.reason;
}

TEST(Harness, FrameworkMismatch) {
  EXPECT_THROW(run_suite(path("minkowski"), "galilei-core", 10, 42), FrameworkMismatch);
  EXPECT_THROW(run_suite(path("flat_galilei"), "einstein-quantum", 10, 42), FrameworkMismatch);
}

TEST(Harness, ToleranceOverridesAreValidated) {
  EXPECT_THROW(run_suite(path("flat_galilei"), "galilei-core", 10, 42, {{"no-such-check", 1.0}}), UsageError);
  EXPECT_THROW(run_suite(path("flat_galilei"), "galilei-core", 10, 42, {{"torsion", -1.0}}), UsageError);
  EXPECT_THROW(run_suite(path("flat_galilei"), "galilei-core", 0, 42), UsageError);
}

TEST(Harness, FailingCheckIsFlagged) {
  const auto r = run_suite(path("flat_galilei"), "galilei-core", 10, 42, {{"volume", 10.0}});
  EXPECT_EQ(exit_code(r), 1);
  std::size_t failed = 0;
  for (const auto& c : r.records) failed += !c.pass;
  EXPECT_EQ(failed, 1u);
  const std::string text = emit_report(r, Format::Text);
  EXPECT_NE(text.find("! volume"), std::string::npos);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
}

TEST(Harness, SelectedChecksOnly) {
  const auto r = run_suite(path("flat_galilei"), "galilei-core", 10, 42, {}, {"torsion", "gamma-dt"});
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].name, "gamma-dt");
  EXPECT_EQ(r.records[1].name, "torsion");
  EXPECT_THROW(run_suite(path("flat_galilei"), "galilei-core", 10, 42, {}, {"nope"}), UsageError);
}

TEST(Harness, JsonReportsAreDeterministic) {
  const auto a = emit_report(run_suite(path("curved_galilei"), "galilei-quantum", 20, 5), Format::Json);
  const auto b = emit_report(run_suite(path("curved_galilei"), "galilei-quantum", 20, 5), Format::Json);
  EXPECT_EQ(a, b);
  const auto c = emit_report(run_suite(path("curved_galilei"), "galilei-quantum", 20, 6), Format::Json);
  EXPECT_NE(a, c);
}

TEST(Orbit, CyclotronOracle) {
  const galilei::Geometry g(load_model(path("uniform_b_galilei")));
  const auto r = orbit::cyclotron(g, {0, 0, 0, 0}, {0.5, 0, 0}, 1e-3);
  ASSERT_TRUE(r.applicable) << r.reason;
  EXPECT_LT(r.error, 1e-5);
  const galilei::Geometry flat(load_model(path("flat_galilei")));
  EXPECT_FALSE(orbit::cyclotron(flat, {0, 0, 0, 0}, {0.5, 0, 0}, 1e-3).applicable);
}

TEST(Orbit, HyperbolicOracle) {
  const einstein::Geometry g(load_model(path("minkowski_efield")));
  const auto r = orbit::hyperbolic(g, {0, 0, 0, 0}, 2.0, 1e-3);
  ASSERT_TRUE(r.applicable) << r.reason;
  EXPECT_LT(r.error, 1e-5);
}

TEST(Orbit, StraightLineAndBoxExit) {
  const Model m = load_model(path("flat_galilei"));
  const auto r = orbit::straight_line(m, {0, 0, 0, 0}, {0.3, 0.2, -0.1}, 0.9, 1e-2);
  ASSERT_TRUE(r.applicable);
  EXPECT_LT(r.error, 1e-12);
  EXPECT_THROW(orbit::integrate(m, {0, 0, 0, 0}, {100, 0, 0}, 1.0, 1e-3), orbit::BoxExit);
  const Model mk = load_model(path("minkowski"));
  EXPECT_THROW(orbit::integrate(mk, {0, 0, 0, 0}, {3, 0, 0}, 1.0, 1e-3), einstein::LightconeViolation);
}
