// Acceptance criteria: one line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cqm/report.hpp"

using namespace cqm;
using namespace cqm::harness;

namespace {

std::string path(const std::string& name) { return std::string(CQM_MODELS_DIR) + "/" + name + ".model"; }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

// Runs the named checks and applies the criterion thresholds; a skipped check does not satisfy a criterion.
// Thresholds are upper bounds, except those listed in lower.
double run(Outcome& out, const std::string& model, const std::string& suite_name, int points,
           const std::map<std::string, double>& bound, const std::set<std::string>& lower = {}, double budget = 0) {
  std::vector<std::string> only;
  for (const auto& [k, v] : bound) only.push_back(k);
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = run_suite(path(model), suite_name, points, 42, {}, only);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0;
  for (const auto& c : r.records) {
    const double b = bound.at(c.name);
    const bool lo = lower.count(c.name) > 0;
    if (c.skipped) {
      out.fail(model + "/" + c.name + " skipped: " + c.reason);
    } else if (lo ? !(c.residual > b) : !(c.residual < b)) {
      out.fail(model + "/" + c.name + " = " + sci(c.residual) + (c.reason.empty() ? "" : " (" + c.reason + ")"));
    }
    if (!lo) worst = std::max(worst, c.residual);
  }
  if (budget > 0 && secs >= budget) {
    char b[64];
    std::snprintf(b, sizeof b, "%.1f s over the %.0f s budget", secs, budget);
    out.fail(model + "/" + suite_name + " " + b);
  }
  std::ostringstream os;
  os << model << " max " << sci(worst) << " in " << std::fixed;
  os.precision(1);
  os << secs << " s";
  if (out.pass) out.detail += (out.detail.empty() ? "" : "; ") + os.str();
  return worst;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  status = pclose(p);
  return out;
}

Outcome c1() {
  Outcome o;
  run(o, "flat_galilei", "section1-general", 100,
      {{"theorem-intertwining", 1e-8}, {"pair-jacobi", 1e-8}, {"nonclosed-witness", 1e-3}}, {"nonclosed-witness"},
      10);
  return o;
}

Outcome c2() {
  Outcome o;
  for (const char* m : {"flat_galilei", "uniform_b_galilei"})
    run(o, m, "galilei-brackets", 100, {{"bracket-closed-form", 1e-8}}, {}, 10);
  return o;
}

Outcome c3() {
  Outcome o;
  run(o, "flat_galilei", "galilei-brackets", 100, {{"golden-brackets", 1e-10}});
  run(o, "flat_galilei", "galilei-quantum", 100, {{"F-golden", 1e-10}});
  return o;
}

Outcome c4() {
  Outcome o;
  for (const char* m : {"flat_galilei", "uniform_b_galilei", "curved_galilei"})
    run(o, m, "galilei-quantum", 100, {{"observer-lemma", 1e-8}});
  return o;
}

Outcome c5() {
  Outcome o;
  for (const char* m : {"minkowski", "schwarzschild_isotropic"})
    run(o, m, "einstein-identities", 200,
        {{"technical-identities", 1e-8}, {"contact-norm", 1e-9}, {"tau-contact", 1e-9}});
  return o;
}

Outcome c6() {
  Outcome o;
  for (const char* m : {"minkowski_uniformF", "schwarzschild_isotropic"}) {
    run(o, m, "einstein-brackets", 100, {{"bracket-closed-form", 1e-7}});
    run(o, m, "einstein-quantum", 100, {{"F-isomorphism", 1e-8}, {"observer-note", 1e-8}});
  }
  return o;
}

Outcome c7() {
  Outcome o;
  for (const char* m : {"flat_galilei", "uniform_b_galilei", "curved_galilei"})
    run(o, m, "galilei-core", 100, {{"nabla-dt", 1e-8}, {"nabla-g", 1e-8}});
  for (const char* m : {"minkowski", "minkowski_efield", "minkowski_uniformF", "schwarzschild_isotropic"})
    run(o, m, "einstein-identities", 100, {{"nabla-g", 1e-8}, {"torsion", 1e-8}});
  return o;
}

Outcome c8() {
  Outcome o;
  for (const char* m : {"flat_galilei", "uniform_b_galilei"})
    run(o, m, "galilei-core", 100,
        {{"d-Omega", 1e-7}, {"gamma-Omega", 1e-8}, {"gamma-dt", 1e-9}, {"volume", 1e-6}}, {"volume"});
  for (const char* m : {"minkowski", "minkowski_efield"})
    run(o, m, "einstein-identities", 100,
        {{"d-Omega", 1e-7}, {"gamma-Omega", 1e-8}, {"gamma-tau", 1e-9}, {"volume", 1e-6}}, {"volume"});
  return o;
}

Outcome c9() {
  Outcome o;
  run(o, "uniform_b_galilei", "orbits", 100, {{"cyclotron", 1e-5}}, {}, 30);
  run(o, "minkowski_efield", "orbits", 100, {{"hyperbolic", 1e-5}}, {}, 30);
  return o;
}

Outcome c10() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"curved_galilei", "galilei-core"}, {"minkowski_uniformF", "einstein-quantum"}, {"uniform_b_galilei", "orbits"}};
  for (const auto& [m, s] : cases) {
    const std::string cmd = std::string(CQM_CLI) + " verify --model " + path(m) + " --suite " + s +
                            " --points 30 --seed 9 --report json 2>&1";
    int s1 = 0, s2 = 0;
    const std::string a = capture(cmd, s1), b = capture(cmd, s2);
    if (s1 != 0 || s2 != 0) o.fail(m + "/" + s + " exit status " + std::to_string(s1));
    if (a != b || a.empty()) o.fail(m + "/" + s + " reports differ");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " report pairs byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"line-bundle theorem suite", c1},
      {"Galilei bracket equivalence", c2},
      {"Galilei golden values", c3},
      {"Galilei observer independence", c4},
      {"Einstein identities", c5},
      {"Einstein bracket and isomorphism", c6},
      {"connection certification", c7},
      {"cosymplectic checks", c8},
      {"orbits", c9},
      {"determinism", c10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("error: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
