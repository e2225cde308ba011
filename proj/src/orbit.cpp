#include "cqm/orbit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cqm::orbit {

namespace {

std::vector<double> as_vector(const PhasePoint& z) { return {z.begin(), z.end()}; }

bool inside(const expr::Box& box, const PhasePoint& z) {
  for (int l = 0; l < 4; ++l)
    if (z[l] < box.lo[l] || z[l] > box.hi[l]) return false;
  return true;
}

// Classical RK4 on dz/ds = V(z).
template <class Vf>
Trajectory rk4(Framework fw, const expr::Box& box, const Vf& V, PhasePoint z, double duration, double step) {
  if (!(step > 0) || !(duration >= 0)) throw std::invalid_argument("orbit needs a positive step and a duration >= 0");
  Trajectory t;
  t.framework = fw;
  t.step = step;
  const long n = std::lround(duration / step);
  double at = 0;
  auto eval = [&](const PhasePoint& p) {
    std::vector<double> v;
    try {
      v = V.values(as_vector(p));
    } catch (const expr::OutOfBox&) {
      throw BoxExit(as_vector(p), at);
    }
    PhasePoint r;
    for (int k = 0; k < 7; ++k) r[k] = v[k];
    return r;
  };
  auto shifted = [](const PhasePoint& p, const PhasePoint& k, double h) {
    PhasePoint r;
    for (int i = 0; i < 7; ++i) r[i] = p[i] + h * k[i];
    return r;
  };
  if (!inside(box, z)) throw BoxExit(as_vector(z), 0.0);
  t.s.push_back(0.0);
  t.z.push_back(z);
  for (long i = 0; i < n; ++i) {
    at = i * step;
    const auto k1 = eval(z);
    const auto k2 = eval(shifted(z, k1, step / 2));
    const auto k3 = eval(shifted(z, k2, step / 2));
    const auto k4 = eval(shifted(z, k3, step));
    for (int k = 0; k < 7; ++k) z[k] += step / 6 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
    const double s = (i + 1) * step;
    if (!inside(box, z)) throw BoxExit(as_vector(z), s);
    t.s.push_back(s);
    t.z.push_back(z);
  }
  return t;
}

// Five-point first and second differences of the positions at sample k.
void differences(const Trajectory& t, std::size_t k, std::array<double, 4>& d1, std::array<double, 4>& d2) {
  const double h = t.step;
  for (int l = 0; l < 4; ++l) {
    const double a = t.z[k - 2][l], b = t.z[k - 1][l], c = t.z[k][l], d = t.z[k + 1][l], e = t.z[k + 2][l];
    d1[l] = (a - 8 * b + 8 * d - e) / (12 * h);
    d2[l] = (-a + 16 * b - 30 * c + 16 * d - e) / (12 * h * h);
  }
}

double max_abs(const std::vector<double>& v) {
  double r = 0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

// Values of a field at the sampled points, flattened.
std::vector<double> sampled(const Field& f, const std::vector<Point>& pts) {
  std::vector<double> r;
  for (const auto& p : pts) {
    const auto v = f.values(p);
    r.insert(r.end(), v.begin(), v.end());
  }
  return r;
}

bool constant_over(const Field& f, const std::vector<Point>& pts, double tol = 1e-12) {
  const auto first = f.values(pts.front());
  for (const auto& p : pts) {
    const auto v = f.values(p);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i] - first[i]) > tol) return false;
  }
  return true;
}

PForm em_field(const Model& m) { return exterior_derivative(PForm::from_components(4, 1, {m.A[0], m.A[1], m.A[2], m.A[3]})); }

bool flat_metric(const Field& G, const std::vector<Point>& pts) { return constant_over(G, pts); }

}  // namespace

BoxExit::BoxExit(const std::vector<double>& point, double parameter)
    : std::runtime_error("orbit left the model box at parameter " + std::to_string(parameter)),
      point_(point),
      parameter_(parameter) {}

double Trajectory::max_residual() const { return max_abs(residual); }

Trajectory integrate(const galilei::Geometry& g, std::array<double, 4> x, std::array<double, 3> v, double duration,
                     double step) {
  PhasePoint z{x[0], x[1], x[2], x[3], v[0], v[1], v[2]};
  Trajectory t = rk4(Framework::Galilei, g.model().box, g.gamma_field(), z, duration, step);
  // x0 is the parameter: x^i_00 = gamma^i(x, x_0)
  for (std::size_t k = 2; k + 2 < t.z.size(); ++k) {
    std::array<double, 4> d1, d2;
    differences(t, k, d1, d2);
    std::vector<double> p(t.z[k].begin(), t.z[k].begin() + 4);
    for (int i = 1; i < 4; ++i) p.push_back(d1[i]);
    const auto gam = g.gamma().values(p);
    double r = std::abs(d1[0] - 1);
    for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(d2[i + 1] - gam[i]));
    t.residual.push_back(r);
  }
  return t;
}

Trajectory integrate(const einstein::Geometry& g, std::array<double, 4> x, std::array<double, 3> v, double duration,
                     double step) {
  PhasePoint z{x[0], x[1], x[2], x[3], v[0], v[1], v[2]};
  (void)g.alpha().values(as_vector(z));  // rejects non-timelike initial data
  Trajectory t = rk4(Framework::Einstein, g.model().box, g.gamma_field(), z, duration, step);
  const double c = g.model().c;
  // proper time: g(x', x') = -c^2, and x^i as a function of x^0 obeys x^i_00 = gamma^i
  for (std::size_t k = 2; k + 2 < t.z.size(); ++k) {
    std::array<double, 4> d1, d2;
    differences(t, k, d1, d2);
    std::vector<double> p(t.z[k].begin(), t.z[k].begin() + 4);
    const auto gm = g.g().values(p);
    double norm = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) norm += gm[4 * a + b] * d1[a] * d1[b];
    double r = std::abs(norm / (c * c) + 1);
    for (int i = 1; i < 4; ++i) p.push_back(d1[i] / d1[0]);
    const auto gam = g.gamma().values(p);
    for (int i = 1; i < 4; ++i) {
      const double xi00 = (d2[i] * d1[0] - d1[i] * d2[0]) / (d1[0] * d1[0] * d1[0]);
      r = std::max(r, std::abs(xi00 - gam[i - 1]));
    }
    t.residual.push_back(r);
  }
  return t;
}

Trajectory integrate(const Model& m, std::array<double, 4> x, std::array<double, 3> v, double duration, double step) {
  if (m.framework == Framework::Galilei) return integrate(galilei::Geometry(m), x, v, duration, step);
  return integrate(einstein::Geometry(m), x, v, duration, step);
}

OracleResult cyclotron(const galilei::Geometry& g, std::array<double, 4> x, std::array<double, 3> v, double step) {
  const Model& m = g.model();
  const auto pts = m.sample_points(16);
  OracleResult r;
  const auto G = g.G().values(pts.front());
  bool unit = flat_metric(g.G(), pts);
  for (int i = 0; i < 9; ++i) unit = unit && std::abs(G[i] - (i % 4 == 0 ? 1.0 : 0.0)) < 1e-12;
  if (!unit) return {false, "chart metric is not the identity", 0};
  if (max_abs(sampled(m.phi_grav.field(), pts)) > 0) return {false, "gravitational field present", 0};
  const PForm F = em_field(m);
  const auto f0 = F.values(pts.front());
  if (!constant_over(F.field(), pts)) return {false, "electromagnetic field is not uniform", 0};
  // increasing pairs 01 02 03 12 13 23
  if (std::abs(f0[0]) + std::abs(f0[1]) + std::abs(f0[2]) + std::abs(f0[4]) + std::abs(f0[5]) > 0 || f0[3] == 0)
    return {false, "field is not a pure magnetic field along x3", 0};
  if (v[2] != 0 || v[0] * v[0] + v[1] * v[1] == 0) return {false, "initial velocity is not orthogonal to the field", 0};

  const double B = f0[3], speed = std::hypot(v[0], v[1]);
  const double R = m.hbar * speed / std::abs(m.q * B);
  const double period = 2 * std::numbers::pi * R / speed;
  const auto t = integrate(g, x, v, period, step);
  // centre from the initial acceleration, which points inwards with magnitude speed^2 / R
  const auto a = g.gamma().values(std::vector<double>{x[0], x[1], x[2], x[3], v[0], v[1], v[2]});
  const double amag = std::hypot(a[0], a[1]);
  const double cx = x[1] + a[0] / amag * R, cy = x[2] + a[1] / amag * R;
  double err = std::abs(amag - speed * speed / R) / (speed * speed / R);
  for (const auto& z : t.z) err = std::max(err, std::abs(std::hypot(z[1] - cx, z[2] - cy) - R) / R);
  // closure after one period, corrected for the fractional last step
  const auto& end = t.z.back();
  const double lag = period - t.s.back();
  const double ex = end[1] + lag * end[4] - x[1], ey = end[2] + lag * end[5] - x[2];
  err = std::max(err, std::hypot(ex, ey) / R);
  r.applicable = true;
  r.error = err;
  return r;
}

OracleResult hyperbolic(const einstein::Geometry& g, std::array<double, 4> x, double duration, double step) {
  const Model& m = g.model();
  const auto pts = m.sample_points(16);
  const auto G = g.G().values(pts.front());
  bool mink = flat_metric(g.G(), pts);
  for (int i = 0; i < 16; ++i) mink = mink && std::abs(G[i] - (i == 0 ? -1.0 : i % 5 == 0 ? 1.0 : 0.0)) < 1e-12;
  if (!mink) return {false, "metric is not the Minkowski metric", 0};
  if (std::abs(m.hbar - m.m) > 1e-15 * m.m) return {false, "hbar differs from m", 0};
  const PForm F = g.F();
  const auto f0 = F.values(pts.front());
  if (!constant_over(F.field(), pts)) return {false, "electromagnetic field is not uniform", 0};
  for (int k = 1; k < 6; ++k)
    if (f0[k] != 0) return {false, "field is not a pure electric field along x1", 0};
  if (f0[0] == 0) return {false, "no electric field", 0};

  const double c = m.c, E = -c * f0[0];
  const double L = c * c * m.m / (m.q * E), w = m.q * E / (m.m * c);
  const auto t = integrate(g, x, {0, 0, 0}, duration, step);
  double err = 0;
  for (std::size_t k = 0; k < t.z.size(); ++k) {
    const double s = t.s[k];
    err = std::max(err, std::abs(t.z[k][0] - x[0] - L * std::sinh(w * s)));
    err = std::max(err, std::abs(t.z[k][1] - x[1] - L * (std::cosh(w * s) - 1)));
    err = std::max(err, std::abs(t.z[k][2] - x[2]));
    err = std::max(err, std::abs(t.z[k][3] - x[3]));
  }
  return {true, "", err};
}

OracleResult straight_line(const Model& m, std::array<double, 4> x, std::array<double, 3> v, double duration,
                           double step) {
  const auto pts = m.sample_points(16);
  if (max_abs(sampled(em_field(m).field(), pts)) > 0) return {false, "electromagnetic field present", 0};
  if (m.framework == Framework::Galilei && max_abs(sampled(m.phi_grav.field(), pts)) > 0)
    return {false, "gravitational field present", 0};
  std::vector<Field> metric;
  for (const auto& row : m.metric)
    for (const auto& e : row) metric.push_back(e.field());
  if (!constant_over(Field::stack(metric), pts, 0)) return {false, "metric is not constant", 0};

  const auto t = integrate(m, x, v, duration, step);
  std::array<double, 4> u{1, v[0], v[1], v[2]};
  if (m.framework == Framework::Einstein) {
    const einstein::Geometry g(m);
    const double a = g.alpha().values(std::vector<double>{x[0], x[1], x[2], x[3], v[0], v[1], v[2]})[0];
    for (auto& e : u) e *= m.c * a;
  }
  double err = 0;
  for (std::size_t k = 0; k < t.z.size(); ++k) {
    for (int l = 0; l < 4; ++l) err = std::max(err, std::abs(t.z[k][l] - x[l] - t.s[k] * u[l]));
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(t.z[k][4 + i] - v[i]));
  }
  return {true, "", err};
}

}  // namespace cqm::orbit
