#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqm/model.hpp"
#include "cqm/quantum.hpp"
#include "cqm/smooth.hpp"

namespace cqm::einstein {

// Phase chart z = (x0, x1, x2, x3, v1, v2, v3) restricted to timelike directions.
constexpr int kPhaseDim = 7;
inline int fibre(int i) { return 3 + i; }

// Raised when a phase point is not timelike.
class LightconeViolation : public std::domain_error {
 public:
  explicit LightconeViolation(std::vector<double> point);
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

// f = -G(d, X) + fbar
struct SpecialFunction {
  std::array<ScalarField, 4> X;
  ScalarField fbar;
};

class Geometry {
 public:
  explicit Geometry(const Model& m);

  const Model& model() const { return model_; }
  // 4 -> 16, row-major: metric block G0, g = (hbar/m) G0 and its inverse.
  const Field& G() const { return G_; }
  const Field& g() const { return g_; }
  const Field& ginv() const { return ginv_; }
  // 4 -> 64: K_l^n_m = -(Christoffel of g) at 16 l + 4 n + m.
  const Field& K() const { return K_; }
  // Electromagnetic field F = dA^e on the spacetime chart.
  const PForm& F() const { return F_; }

  // Phase fields. All throw LightconeViolation at spacelike or null directions.
  const Field& alpha() const { return alpha_; }    // 7 -> 1
  const Field& contact() const { return contact_; }  // 7 -> 4: d = c alpha (1, v)
  const Field& tau() const { return tau_; }        // 7 -> 4
  const Field& Gamma_grav() const { return Gamma_grav_; }  // 7 -> 12 at 3 l + (i - 1)
  const Field& Gamma_em() const { return Gamma_em_; }
  const Field& Gamma() const { return Gamma_; }
  const Field& gamma() const { return gamma_; }    // 7 -> 3: gamma^i = Gamma_l^i dbar^l
  const VectorField& gamma_field() const { return gamma_field_; }  // c alpha (dbar, gamma)
  const PForm& Theta() const { return Theta_; }
  // Horizontal potential Theta + (q/hbar) A^e on the phase chart.
  const PForm& Aup() const { return Aup_; }
  const PForm& Omega() const { return Omega_; }
  const Bivector& Lambda() const { return Lambda_; }

 private:
  Model model_;
  Field G_, g_, ginv_, K_, alpha_, contact_, tau_, Gamma_grav_, Gamma_em_, Gamma_, gamma_;
  PForm F_, Theta_, Aup_, Omega_;
  VectorField gamma_field_;
  Bivector Lambda_;
};

// Timelike test: -g(dbar, dbar) at the phase point.
double timelike_margin(const Geometry& g, std::span<const double> z);

// Adapted bases at a phase point: b[a] vectors and beta[a] covectors, a = 0..3.
struct Bases {
  std::array<std::array<double, 4>, 4> b, beta;
};
Bases adapted_bases(const Geometry& g, std::span<const double> z);

struct Residual {
  std::string name;
  double value;
};
// Every technical identity of the contact splitting at one phase point.
std::vector<Residual> technical_identities(const Geometry& g, std::span<const double> z);

double nabla_g_residual(const Geometry& g, std::span<const double> x);
double torsion_residual(const Geometry& g, std::span<const double> x);

// -g^{lm} d^n F_nm
std::array<double, 4> lorentz_force(const Geometry& g, std::span<const double> z);
// (m/q) c alpha gamma^e_i b_i
std::array<double, 4> lorentz_force_from_gamma(const Geometry& g, std::span<const double> z);

ScalarField poisson_bracket(const Geometry& g, const ScalarField& f, const ScalarField& h);
ScalarField poisson_bracket_lambda(const Geometry& g, const ScalarField& f, const ScalarField& h);
VectorField hamiltonian_lift(const Geometry& g, const ScalarField& sigma, const ScalarField& f);

// Phase function of a special function, its time factor sigma[f] = tau(X), and its value.
ScalarField phase_function(const Geometry& g, const SpecialFunction& f);
ScalarField sigma(const Geometry& g, const SpecialFunction& f);
double special_value(const Geometry& g, const SpecialFunction& f, std::span<const double> z);

SpecialFunction special_bracket(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h);
ScalarField special_bracket_definitional(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h);

// Examples in the chart: x^l, H_0 and P_i.
SpecialFunction coordinate_function(int lambda);
SpecialFunction energy(const Geometry& g);
SpecialFunction momentum(const Geometry& g, int i);

// Classification through the electromagnetic connection (q/hbar) A^e.
quantum::HermitianField to_hermitian(const Geometry& g, const SpecialFunction& f);
SpecialFunction from_hermitian(const Geometry& g, const quantum::HermitianField& Y);
// Same through an observer: A[o] = Theta[o] + (q/hbar) A^e and f[o] = value of f along o.
quantum::HermitianField to_hermitian_observed(const Geometry& g, const SpecialFunction& f,
                                              const std::array<ScalarField, 3>& o);

// Observed electric and magnetic fields and the reconstruction residual of F.
struct Splitting {
  std::array<double, 4> E, B;
  double reconstruction;
};
Splitting observed_splitting(const Geometry& g, const std::array<ScalarField, 3>& o, std::span<const double> x);

SpecialFunction operator+(const SpecialFunction& a, const SpecialFunction& b);
double max_difference(const SpecialFunction& a, const SpecialFunction& b, std::span<const double> x);

}  // namespace cqm::einstein
