#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqm/einstein.hpp"
#include "cqm/galilei.hpp"
#include "cqm/generators.hpp"
#include "cqm/model.hpp"

namespace cqm::harness {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class FrameworkMismatch : public UsageError {
 public:
  using UsageError::UsageError;
};

// AtMost: pass iff residual <= tolerance. AtLeast: pass iff the measured magnitude >= tolerance
// (witnesses and non-degeneracy bounds).
enum class Mode { AtMost, AtLeast };

struct Context {
  const Model& model;
  int points;
  gen::Rng rng;
  std::shared_ptr<const galilei::Geometry> gal;
  std::shared_ptr<const einstein::Geometry> ein;
};

struct CheckResult {
  CheckResult(double v = 0, bool skip = false, std::string why = {}) : value(v), skipped(skip), reason(std::move(why)) {}
  double value;
  bool skipped;
  std::string reason;
};

struct Check {
  std::string name;
  std::string anchor;  // the statement being certified
  double tolerance;
  Mode mode;
  std::vector<std::string> covers;  // module invariant ids
  std::function<CheckResult(Context&)> run;
};

struct Suite {
  std::string name;
  std::optional<Framework> framework;  // empty: any model
  std::vector<Check> checks;
};

// Fixed registry order.
const std::vector<Suite>& suites();
const Suite& suite(const std::string& name);

struct Invariant {
  std::string module, id, statement;
};
// Every invariant stated for the galilei, einstein and quantum modules.
const std::vector<Invariant>& module_invariants();

struct Record {
  std::string name, anchor;
  double residual = 0, tolerance = 0;
  Mode mode = Mode::AtMost;
  bool pass = false, skipped = false;
  std::string reason;
};

struct SuiteReport {
  std::string suite, model;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<Record> records;
  double wall_seconds = 0;
  bool passed() const;
};

// Runs the checks of the suite (all, or those named in only), concurrently, and assembles records in
// registry order.
SuiteReport run_suite(const Model& m, const std::string& suite, int points, std::uint64_t seed,
                      const std::map<std::string, double>& tolerances = {},
                      const std::vector<std::string>& only = {});
SuiteReport run_suite(const std::string& model_path, const std::string& suite, int points, std::uint64_t seed,
                      const std::map<std::string, double>& tolerances = {},
                      const std::vector<std::string>& only = {});

}  // namespace cqm::harness
