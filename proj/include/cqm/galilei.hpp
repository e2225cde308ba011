#pragma once

#include <array>
#include <vector>

#include "cqm/model.hpp"
#include "cqm/quantum.hpp"
#include "cqm/smooth.hpp"

namespace cqm::galilei {

// Phase chart z = (x0, x1, x2, x3, v1, v2, v3) with v^i = x^i_0.
constexpr int kPhaseDim = 7;
inline int fibre(int i) { return 3 + i; }  // chart index of v^i, i = 1..3

// f = f0 K + f^i P_i + fbar relative to the chart observer.
struct SpecialFunction {
  ScalarField f0;
  std::array<ScalarField, 3> f;
  ScalarField fbar;
};

// Components relative to an observer o: (f'', f'[o], f[o]).
struct ObservedComponents {
  ScalarField f0;
  std::array<ScalarField, 3> fp;
  ScalarField fo;
};

class Geometry {
 public:
  explicit Geometry(const Model& m);

  const Model& model() const { return model_; }
  // 4 -> 9: G0_ij and its inverse, row-major over i, j = 1..3.
  const Field& G() const { return G_; }
  const Field& Ginv() const { return Ginv_; }
  // 4 -> 6: Phi = Phi_grav + (q/hbar) dA^e on increasing pairs.
  const PForm& Phi() const { return Phi_; }
  // 4 -> 64: K_l^n_m at index 16 l + 4 n + m.
  const Field& K() const { return K_; }
  // 7 -> 12: Gamma_l^i at index 3 l + (i - 1).
  const Field& Gamma() const { return Gamma_; }
  // 7 -> 3: gamma^i.
  const Field& gamma() const { return gamma_; }
  // d_0 + v^i d_i + gamma^i d^0_i on the phase chart.
  const VectorField& gamma_field() const { return gamma_field_; }
  const PForm& Omega() const { return Omega_; }
  const Bivector& Lambda() const { return Lambda_; }
  // Potential A[0] of Phi in the chart gauge: (q/hbar) A^e plus a homotopy potential of Phi_grav.
  const std::array<ScalarField, 4>& potential() const { return A0_; }

 private:
  Model model_;
  Field G_, Ginv_, K_, Gamma_, gamma_;
  PForm Phi_, Omega_;
  VectorField gamma_field_;
  Bivector Lambda_;
  std::array<ScalarField, 4> A0_;
};

// Observer field o^i(x) as three spacetime scalars.
using Observer = std::array<ScalarField, 3>;
Observer chart_observer();

// Section x -> (x, o(x)) of the phase chart.
Field observer_section(const Observer& o);

// Phase function of a special function.
ScalarField phase_function(const Geometry& g, const SpecialFunction& f);
double special_value(const Geometry& g, const SpecialFunction& f, const Observer& o, std::span<const double> z);

ObservedComponents observe(const Geometry& g, const SpecialFunction& f, const Observer& o);
SpecialFunction unobserve(const Geometry& g, const ObservedComponents& c, const Observer& o);
// o -> o2 with v = o2 - o.
ObservedComponents transition(const Geometry& g, const ObservedComponents& c, const Observer& o, const Observer& o2);

// X[f] = f0 d_0 - f^i d_i.
VectorField tangent_lift(const SpecialFunction& f);

// Residuals of nabla g, nabla dt and torsion at a spacetime point.
double nabla_g_residual(const Geometry& g, std::span<const double> x);
double nabla_dt_residual(const Geometry& g, std::span<const double> x);
double torsion_residual(const Geometry& g, std::span<const double> x);

// Closed coordinate formula and the Lambda contraction.
ScalarField poisson_bracket(const Geometry& g, const ScalarField& f, const ScalarField& h);
ScalarField poisson_bracket_lambda(const Geometry& g, const ScalarField& f, const ScalarField& h);
VectorField hamiltonian_lift(const Geometry& g, const ScalarField& sigma, const ScalarField& f);

// Closed form evaluated with Phi[o] = 2 o*Omega.
SpecialFunction special_bracket(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h,
                                const Observer& o);
// {f, h} + f''(gamma.h) - h''(gamma.f) as a phase function.
ScalarField special_bracket_definitional(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h);

PForm observed_Phi(const Geometry& g, const Observer& o);
// A[o] = A[0] - 1/2 G(o,o) d^0 + G_ij o^j d^i.
std::array<ScalarField, 4> observed_potential(const Geometry& g, const Observer& o);
// A[o2] from A[o] by the boost law with v = o2 - o.
std::array<ScalarField, 4> transition_potential(const Geometry& g, const std::array<ScalarField, 4>& A,
                                                const Observer& o, const Observer& o2);

// Split electromagnetic cross-checks.
Field gamma_em(const Geometry& g);           // 7 -> 3: -(q/m)(F_0^i + F_h^i v^h)
Bivector Lambda_em(const Geometry& g);       // (q/2hbar) G^ih G^jk F_hk d^0_i ^ d^0_j

// Examples relative to observer o, built from A[o].
SpecialFunction coordinate_function(const Geometry& g, int lambda);
SpecialFunction energy(const Geometry& g, const Observer& o);
SpecialFunction momentum(const Geometry& g, const Observer& o, int i);
SpecialFunction kinetic(const Geometry& g, const Observer& o);

// Quantum classification relative to an observer and its observed potential.
quantum::HermitianField to_hermitian(const Geometry& g, const SpecialFunction& f, const Observer& o,
                                     const std::array<ScalarField, 4>& A);
SpecialFunction from_hermitian(const Geometry& g, const quantum::HermitianField& Y, const Observer& o,
                               const std::array<ScalarField, 4>& A);

// Helpers on special functions.
SpecialFunction operator+(const SpecialFunction& a, const SpecialFunction& b);
double max_difference(const SpecialFunction& a, const SpecialFunction& b, std::span<const double> x);

}  // namespace cqm::galilei
