#include "cqm/report.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace cqm::harness {

namespace {

using json = nlohmann::ordered_json;

// Shortest round-trip representation; non-finite values become strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string emit_report(const SuiteReport& r, Format f) {
  if (f == Format::Json) {
    json j;
    j["suite"] = r.suite;
    j["model"] = r.model;
    j["seed"] = r.seed;
    j["points"] = r.points;
    j["pass"] = r.passed();
    json checks = json::array();
    for (const auto& c : r.records) {
      json e;
      e["name"] = c.name;
      e["anchor"] = c.anchor;
      e["residual"] = number(c.residual);
      e["tolerance"] = number(c.tolerance);
      e["mode"] = c.mode == Mode::AtMost ? "max" : "min";
      e["pass"] = c.pass;
      e["skipped"] = c.skipped;
      if (!c.reason.empty()) e["reason"] = c.reason;
      checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "suite " << r.suite << "  model " << r.model << "  seed " << r.seed << "  points " << r.points << "\n";
  std::size_t w = 5;
  for (const auto& c : r.records) w = std::max(w, c.name.size());
  for (const auto& c : r.records) {
    const char* status = c.skipped ? "SKIP" : c.pass ? "ok" : "FAIL";
    os << (c.pass ? "  " : "! ") << c.name << std::string(w - c.name.size() + 2, ' ');
    os << sci(c.residual) << (c.mode == Mode::AtMost ? " <= " : " >= ") << sci(c.tolerance) << "  " << status;
    if (!c.reason.empty()) os << "  (" << c.reason << ")";
    os << "  " << c.anchor << "\n";
  }
  std::size_t failed = 0;
  for (const auto& c : r.records) failed += !c.pass;
  char t[32];
  std::snprintf(t, sizeof t, "%.2f", r.wall_seconds);
  os << (failed ? std::to_string(failed) + " of " + std::to_string(r.records.size()) + " checks failed"
                : "all " + std::to_string(r.records.size()) + " checks passed")
     << " in " << t << " s\n";
  return os.str();
}

int exit_code(const SuiteReport& r) { return r.passed() ? 0 : 1; }

std::string emit_trajectory(const orbit::Trajectory& t, Format f) {
  if (f == Format::Json) {
    json j;
    j["framework"] = framework_name(t.framework);
    j["step"] = t.step;
    j["max_law_residual"] = number(t.max_residual());
    json pts = json::array();
    for (std::size_t k = 0; k < t.z.size(); ++k) {
      json p = json::array();
      p.push_back(t.s[k]);
      for (double v : t.z[k]) p.push_back(v);
      pts.push_back(p);
    }
    j["samples"] = pts;
    return j.dump() + "\n";
  }
  std::ostringstream os;
  os << "# " << framework_name(t.framework) << " orbit, step " << t.step << ", max law-of-motion residual "
     << sci(t.max_residual()) << "\n";
  os << "# s x0 x1 x2 x3 v1 v2 v3\n";
  char buf[32];
  for (std::size_t k = 0; k < t.z.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.9g", t.s[k]);
    os << buf;
    for (double v : t.z[k]) {
      std::snprintf(buf, sizeof buf, " %.12g", v);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cqm::harness
