#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqm/dims.hpp"
#include "cqm/expr.hpp"
#include "cqm/smooth.hpp"

namespace cqm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<double> point = {});
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

enum class Framework { Galilei, Einstein };

std::string framework_name(Framework f);

struct Constant {
  double value = 0.0;
  dims::Dimension dim;
};

struct ObserverSpec {
  std::string name;
  std::array<expr::Expr, 3> source;
  std::array<ScalarField, 3> o;  // o^i_0(x)
};

// A chart-level spacetime: metric block, electromagnetic potential, observers.
struct Model {
  Framework framework = Framework::Galilei;
  std::string name;
  expr::Box box;
  std::map<std::string, Constant> constants;
  double m = 1, q = 1, hbar = 1, c = 0;

  // Galilei: 3x3 spatial block G0_ij stored at [i-1][j-1]. Einstein: 4x4 G0_lm.
  std::vector<std::vector<ScalarField>> metric;
  std::array<ScalarField, 4> A;  // A^e_l
  // Galilei gravitational 2-form on increasing pairs (01, 02, 03, 12, 13, 23).
  PForm phi_grav;
  std::vector<ObserverSpec> observers;
  // Printed source of every entry, keyed by file key.
  std::map<std::string, std::string> sources;

  std::map<std::string, double> constant_values() const;
  const ObserverSpec& observer(const std::string& name) const;
  // Metric block at a point as a dense matrix.
  std::vector<std::vector<double>> metric_at(std::span<const double> x) const;
  // Deterministic low-discrepancy points inside the box.
  std::vector<Point> sample_points(int n) const;
};

Model parse_model(const std::string& text, const std::string& origin = "<text>");
Model load_model(const std::string& path);
// Sampled checks: metric signature, closure of the gravitational form, observer causality.
void validate(const Model& m, int points = 49);

// Inertia (negative, zero, positive eigenvalue counts) of a symmetric matrix.
std::array<int, 3> inertia(const std::vector<std::vector<double>>& a, double tol = 1e-12);

}  // namespace cqm
