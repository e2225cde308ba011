#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqm/einstein.hpp"
#include "cqm/galilei.hpp"
#include "cqm/model.hpp"

namespace cqm::orbit {

using PhasePoint = std::array<double, 7>;

// Raised when the trajectory leaves the declared box.
class BoxExit : public std::runtime_error {
 public:
  BoxExit(const std::vector<double>& point, double parameter);
  const std::vector<double>& point() const { return point_; }
  double parameter() const { return parameter_; }

 private:
  std::vector<double> point_;
  double parameter_;
};

// RK4 samples of the gamma flow. The parameter is x0 (Galilei) or proper time (Einstein).
struct Trajectory {
  Framework framework = Framework::Galilei;
  double step = 0;
  std::vector<double> s;
  std::vector<PhasePoint> z;
  // Law-of-motion residual from positions alone; empty at the two samples next to each end.
  std::vector<double> residual;
  double max_residual() const;
};

Trajectory integrate(const galilei::Geometry& g, std::array<double, 4> x, std::array<double, 3> v, double duration,
                     double step);
Trajectory integrate(const einstein::Geometry& g, std::array<double, 4> x, std::array<double, 3> v, double duration,
                     double step);
Trajectory integrate(const Model& m, std::array<double, 4> x, std::array<double, 3> v, double duration, double step);

// Comparison against a closed-form orbit, when the model admits one.
struct OracleResult {
  bool applicable = false;
  std::string reason;
  double error = 0;  // relative for the cyclotron, absolute for hyperbolic motion
};

// Uniform magnetic field along x3 on a flat, force-free Galilei background: circle of radius hbar |v| / (q B)
// in the chart metric, followed over one period.
OracleResult cyclotron(const galilei::Geometry& g, std::array<double, 4> x, std::array<double, 3> v, double step);
// Constant electric field along x1 in Minkowski space, starting at rest: hyperbolic worldline.
OracleResult hyperbolic(const einstein::Geometry& g, std::array<double, 4> x, double duration, double step);
// Force-free flat background: straight line through the initial data.
OracleResult straight_line(const Model& m, std::array<double, 4> x, std::array<double, 3> v, double duration,
                           double step);

}  // namespace cqm::orbit
