#include "cqm/quantum.hpp"

#include <cmath>

namespace cqm::quantum {

namespace {

VectorField add(const VectorField& a, const VectorField& b) {
  std::vector<ScalarField> c;
  for (int i = 0; i < a.field().dim_out(); ++i) c.push_back(a.component(i) + b.component(i));
  return VectorField::from_components(c);
}

ScalarField evaluate_on(const std::array<ScalarField, 4>& w, const VectorField& X) {
  ScalarField s = w[0] * X.component(0);
  for (int l = 1; l < 4; ++l) s = s + w[l] * X.component(l);
  return s;
}

}  // namespace

PForm GaugeConnection::one_form() const { return PForm::from_components(4, 1, {A[0], A[1], A[2], A[3]}); }

double hermitian_residual(const LinearQuantumField& Y, const std::vector<Point>& points) {
  double r = 0;
  for (const auto& p : points) {
    r = std::max(r, std::abs(Y.Y[0][0].value(p)));
    r = std::max(r, std::abs(Y.Y[1][1].value(p)));
    r = std::max(r, std::abs(Y.Y[1][0].value(p) + Y.Y[0][1].value(p)));
  }
  return r;
}

bool is_hermitian(const LinearQuantumField& Y, const std::vector<Point>& points, double tol) {
  return hermitian_residual(Y, points) < tol;
}

MetricLieDerivative lie_derivative_hermitian_metric(const LinearQuantumField& Y, std::span<const double> x,
                                                    std::array<double, 2> w) {
  const double y11 = Y.Y[0][0].value(x), y12 = Y.Y[0][1].value(x);
  const double y21 = Y.Y[1][0].value(x), y22 = Y.Y[1][1].value(x);
  const double tr = y11 + y22, sym = y21 + y12;
  MetricLieDerivative r;
  r.c1 = {2 * y11 * w[0] + sym * w[1], -tr * w[1]};
  r.c2 = {2 * y22 * w[1] + sym * w[0], tr * w[0]};
  return r;
}

MetricLieDerivative lie_derivative_hermitian_metric_flow(const LinearQuantumField& Y, std::span<const double> x,
                                                         std::array<double, 2> w, double h) {
  const double y[2][2] = {{Y.Y[0][0].value(x), Y.Y[0][1].value(x)}, {Y.Y[1][0].value(x), Y.Y[1][1].value(x)}};
  // exp(tY) by its power series
  auto flow = [&](double t) {
    std::array<std::array<double, 2>, 2> e{{{1, 0}, {0, 1}}}, term = e;
    for (int k = 1; k < 12; ++k) {
      std::array<std::array<double, 2>, 2> next{};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) next[i][j] = t / k * (y[i][0] * term[0][j] + y[i][1] * term[1][j]);
      term = next;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) e[i][j] += term[i][j];
    }
    return e;
  };
  // h(w, v) = conj(w) v in real coordinates
  auto form = [](std::array<double, 2> a, std::array<double, 2> b) {
    return std::complex<double>(a[0] * b[0] + a[1] * b[1], a[0] * b[1] - a[1] * b[0]);
  };
  auto pulled = [&](double t, int a) {
    const auto e = flow(t);
    const std::array<double, 2> fw{e[0][0] * w[0] + e[0][1] * w[1], e[1][0] * w[0] + e[1][1] * w[1]};
    const std::array<double, 2> fv{e[0][a], e[1][a]};
    return form(fw, fv);
  };
  MetricLieDerivative r;
  r.c1 = (pulled(h, 0) - pulled(-h, 0)) / (2 * h);
  r.c2 = (pulled(h, 1) - pulled(-h, 1)) / (2 * h);
  return r;
}

LinearQuantumField to_linear(const HermitianField& Y) {
  // Y^z = i b: Y^1_1 = Y^2_2 = 0, Y^2_1 = b, Y^1_2 = -b
  const ScalarField zero = ScalarField::constant(Y.b.dim(), 0.0);
  LinearQuantumField L;
  L.X = Y.X;
  L.Y = {{{zero, -Y.b}, {Y.b, zero}}};
  return L;
}

HermitianField from_linear(const LinearQuantumField& Y) { return {Y.X, Y.Y[1][0]}; }

Section act(const HermitianField& Y, const Section& s) {
  // X.psi - i b psi
  const ScalarField re = lie_derivative_scalar(Y.X, s.re) + Y.b * s.im;
  const ScalarField im = lie_derivative_scalar(Y.X, s.im) - Y.b * s.re;
  return {re, im};
}

HermitianField hermitian_bracket(const HermitianField& a, const HermitianField& b) {
  return {lie_bracket(a.X, b.X), lie_derivative_scalar(a.X, b.b) - lie_derivative_scalar(b.X, a.b)};
}

PForm curvature(const GaugeConnection& c) { return exterior_derivative(c.one_form()); }

SpacetimePair pair_bracket(const SpacetimePair& a, const SpacetimePair& b, const PForm& Phi) {
  const int n = a.X.dim();
  const ScalarField phi = ScalarField::from(n, [Phi, X = a.X, Y = b.X](std::span<const Taylor> x) {
    const auto w = Phi.field()(x);
    const auto u = X.field()(x);
    const auto v = Y.field()(x);
    std::vector<std::vector<Taylor>> frame{u, v};
    return alg::evaluate(Phi.dim(), 2, w, frame);
  });
  return {lie_bracket(a.X, b.X), phi + lie_derivative_scalar(a.X, b.Ybar) - lie_derivative_scalar(b.X, a.Ybar)};
}

SpacetimePair classify_h(const GaugeConnection& c, const HermitianField& Y) { return {Y.X, Y.b - evaluate_on(c.A, Y.X)}; }

HermitianField classify_j(const GaugeConnection& c, const SpacetimePair& p) { return {p.X, evaluate_on(c.A, p.X) + p.Ybar}; }

HermitianField connection_lift(const GaugeConnection& c, const VectorField& X) { return {X, evaluate_on(c.A, X)}; }

HermitianField vertical(const ScalarField& f) {
  std::vector<ScalarField> z(4, ScalarField::constant(f.dim(), 0.0));
  return {VectorField::from_components(z), f};
}

double max_difference(const HermitianField& a, const HermitianField& b, std::span<const double> x) {
  double r = std::abs(a.b.value(x) - b.b.value(x));
  const auto u = a.X.values(x), v = b.X.values(x);
  for (std::size_t i = 0; i < u.size(); ++i) r = std::max(r, std::abs(u[i] - v[i]));
  return r;
}

double max_difference(const SpacetimePair& a, const SpacetimePair& b, std::span<const double> x) {
  return max_difference(HermitianField{a.X, a.Ybar}, HermitianField{b.X, b.Ybar}, x);
}

HermitianField operator+(const HermitianField& a, const HermitianField& b) { return {add(a.X, b.X), a.b + b.b}; }

SpacetimePair operator+(const SpacetimePair& a, const SpacetimePair& b) { return {add(a.X, b.X), a.Ybar + b.Ybar}; }

}  // namespace cqm::quantum
