#pragma once

#include <array>
#include <complex>

#include "cqm/smooth.hpp"

namespace cqm::quantum {

// Hermitian connection c = d^l (d_l + i A_l I) in a fixed quantum basis.
struct GaugeConnection {
  std::array<ScalarField, 4> A;
  PForm one_form() const;
};

// Y = X^l d_l + i b I, with b the total coefficient in the gauge.
struct HermitianField {
  VectorField X;
  ScalarField b;
};

// Y = X^l d_l + Y^a_b w^b d_a on the real fibre coordinates (w^1, w^2).
struct LinearQuantumField {
  VectorField X;
  std::array<std::array<ScalarField, 2>, 2> Y;  // Y[a][b] = Y^a_b
};

// psi = re + i im in the quantum basis.
struct Section {
  ScalarField re, im;
  std::complex<double> at(std::span<const double> x) const { return {re.value(x), im.value(x)}; }
};

struct SpacetimePair {
  VectorField X;
  ScalarField Ybar;
};

// Residual max(|Y11|, |Y22|, |Y21 + Y12|) over the points.
double hermitian_residual(const LinearQuantumField& Y, const std::vector<Point>& points);
bool is_hermitian(const LinearQuantumField& Y, const std::vector<Point>& points, double tol = 1e-9);

// Real and imaginary parts of the coefficients of L(Y)h on the fibre covectors.
struct MetricLieDerivative {
  std::complex<double> c1, c2;
};
MetricLieDerivative lie_derivative_hermitian_metric(const LinearQuantumField& Y, std::span<const double> x,
                                                    std::array<double, 2> w);
// Same coefficients from a central difference of the pulled-back form along the fibre flow.
MetricLieDerivative lie_derivative_hermitian_metric_flow(const LinearQuantumField& Y, std::span<const double> x,
                                                         std::array<double, 2> w, double h = 1e-4);

LinearQuantumField to_linear(const HermitianField& Y);
HermitianField from_linear(const LinearQuantumField& Y);

Section act(const HermitianField& Y, const Section& s);
HermitianField hermitian_bracket(const HermitianField& a, const HermitianField& b);
// Curvature in tensor components: dA, fixed by the bracket defect identity.
PForm curvature(const GaugeConnection& c);
// ([X1,X2], Phi(X1,X2) + X1.Y2 - X2.Y1)
SpacetimePair pair_bracket(const SpacetimePair& a, const SpacetimePair& b, const PForm& Phi);
SpacetimePair classify_h(const GaugeConnection& c, const HermitianField& Y);
HermitianField classify_j(const GaugeConnection& c, const SpacetimePair& p);

// Lifts of a vector field and of a function: c(X) and i f I.
HermitianField connection_lift(const GaugeConnection& c, const VectorField& X);
HermitianField vertical(const ScalarField& f);

// Pointwise difference helpers.
double max_difference(const HermitianField& a, const HermitianField& b, std::span<const double> x);
double max_difference(const SpacetimePair& a, const SpacetimePair& b, std::span<const double> x);
HermitianField operator+(const HermitianField& a, const HermitianField& b);
SpacetimePair operator+(const SpacetimePair& a, const SpacetimePair& b);

}  // namespace cqm::quantum
