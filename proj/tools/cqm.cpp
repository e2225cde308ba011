// Command line verifier: runs invariant suites and integrates sample orbits.
#include <CLI11.hpp>
#include <iostream>

#include "cqm/report.hpp"

namespace {

using namespace cqm;

constexpr int kUsage = 2;

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> r;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw harness::UsageError("--tol expects name=value, got '" + s + "'");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() - eq - 1) throw harness::UsageError("--tol value is not a number in '" + s + "'");
    r[s.substr(0, eq)] = v;
  }
  return r;
}

harness::Format format(const std::string& s) { return s == "json" ? harness::Format::Json : harness::Format::Text; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify the classical and quantum structures of a spacetime model"};
  app.require_subcommand(1);

  std::string model, suite, report = "text";
  int points = 100;
  std::uint64_t seed = 42;
  std::vector<std::string> tols, only;
  auto* verify = app.add_subcommand("verify", "run a named suite of checks");
  verify->add_option("--model", model, "model file")->required();
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--points", points, "random points per check")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "seed of the pseudo-random streams");
  verify->add_option("--tol", tols, "tolerance override name=value")->expected(1, -1);
  verify->add_option("--check", only, "run only the named checks")->expected(1, -1);
  verify->add_option("--report", report, "report format")->check(CLI::IsMember({"text", "json"}));

  std::string framework;
  std::vector<double> x0, v;
  double duration = 1.0, step = 1e-3;
  std::string oreport = "text";
  auto* orbit = app.add_subcommand("orbit", "integrate the law of motion with RK4");
  orbit->add_option("--model", model, "model file")->required();
  orbit->add_option("--framework", framework, "g or e")->required()->check(CLI::IsMember({"g", "e"}));
  orbit->add_option("--x0", x0, "initial spacetime point x0 x1 x2 x3")->required()->expected(4);
  orbit->add_option("--v", v, "initial velocity x^i_0")->required()->expected(3);
  orbit->add_option("--duration", duration, "parameter span: x0 (Galilei) or proper time (Einstein)")
      ->check(CLI::NonNegativeNumber);
  orbit->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  orbit->add_option("--report", oreport, "output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) {
      const auto r = harness::run_suite(model, suite, points, seed, parse_tolerances(tols), only);
      std::cout << harness::emit_report(r, format(report));
      return harness::exit_code(r);
    }
    Model m = load_model(model);
    validate(m);
    const Framework want = framework == "g" ? Framework::Galilei : Framework::Einstein;
    if (m.framework != want)
      throw harness::FrameworkMismatch(m.name + " is not a " + framework_name(want) + " model");
    std::array<double, 4> x{x0[0], x0[1], x0[2], x0[3]};
    std::array<double, 3> u{v[0], v[1], v[2]};
    orbit::Trajectory t;
    try {
      t = orbit::integrate(m, x, u, duration, step);
    } catch (const orbit::BoxExit& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    } catch (const einstein::LightconeViolation& e) {
      std::cerr << "error: " << e.what() << "\n";
      return t.z.empty() ? kUsage : 1;
    }
    std::cout << harness::emit_trajectory(t, format(oreport));
    return t.max_residual() <= 1e-6 ? 0 : 1;
  } catch (const std::exception& e) {
    // usage, parse and validation errors
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
