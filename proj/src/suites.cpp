#include "cqm/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <set>

#include "cqm/orbit.hpp"
#include "cqm/quantum.hpp"

namespace cqm::harness {

namespace {

using gen::Rng;
namespace gl = cqm::galilei;
namespace es = cqm::einstein;
namespace qu = cqm::quantum;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPairs = 20;    // random special-function pairs per bracket check
constexpr int kTriples = 10;  // random triples per Jacobi check
constexpr int kFibre = 6;     // fibre samples per spacetime point in projectability checks

// NaN counts as the worst possible residual.
void worsen(double& r, double v) { r = std::isnan(v) ? kInf : std::max(r, std::abs(v)); }

std::vector<double> head(std::span<const double> z) { return {z.begin(), z.begin() + 4}; }

Field spacetime_projection() { return Field::identity(7).select({0, 1, 2, 3}); }

ScalarField lift(const ScalarField& f) { return f.compose(spacetime_projection()); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worsen(r, a[i] - b[i]);
  return r;
}

std::array<ScalarField, 4> zeros4() {
  const ScalarField z = ScalarField::constant(4, 0.0);
  return {z, z, z, z};
}

VectorField frame(int l, double s = 1.0) {
  std::vector<ScalarField> c;
  for (int k = 0; k < 4; ++k) c.push_back(ScalarField::constant(4, k == l ? s : 0.0));
  return VectorField::from_components(c);
}

Model without_em(const Model& m) {
  Model r = m;
  r.A = zeros4();
  return r;
}

// ---------- Galilei helpers

std::vector<gl::Observer> galilei_observers(Context& ctx, int random) {
  std::vector<gl::Observer> r{gl::chart_observer()};
  for (const auto& o : ctx.model.observers) r.push_back(o.o);
  for (int k = 0; k < random; ++k) r.push_back(gen::galilei_observer(ctx.model.box, ctx.rng));
  return r;
}

gl::SpecialFunction gsf(Context& ctx) { return gen::galilei_special(ctx.model.box, ctx.rng); }

gl::SpecialFunction gconst(double f0, std::array<double, 3> f, double fbar) {
  return {ScalarField::constant(4, f0),
          {ScalarField::constant(4, f[0]), ScalarField::constant(4, f[1]), ScalarField::constant(4, f[2])},
          ScalarField::constant(4, fbar)};
}

gl::ObservedComponents gl_diff(const gl::ObservedComponents& a, const gl::ObservedComponents& b) {
  return {a.f0 - b.f0, {a.fp[0] - b.fp[0], a.fp[1] - b.fp[1], a.fp[2] - b.fp[2]}, a.fo - b.fo};
}

double observed_norm(const gl::ObservedComponents& c, std::span<const double> x) {
  double r = 0;
  worsen(r, c.f0.value(x));
  for (const auto& e : c.fp) worsen(r, e.value(x));
  worsen(r, c.fo.value(x));
  return r;
}

// Spread of the spacetime components of a lift over fibre samples above each spacetime point.
template <class Sample>
double fibre_spread(const VectorField& L, int points, Rng& rng, const expr::Box& box, Sample fibre_point) {
  double r = 0;
  for (int p = 0; p < points; ++p) {
    const Point x = gen::spacetime_point(box, rng);
    std::array<double, 4> lo{kInf, kInf, kInf, kInf}, hi{-kInf, -kInf, -kInf, -kInf};
    for (int k = 0; k < kFibre; ++k) {
      const auto v = L.values(fibre_point(x, rng));
      for (int l = 0; l < 4; ++l) {
        if (std::isnan(v[l])) return kInf;
        lo[l] = std::min(lo[l], v[l]);
        hi[l] = std::max(hi[l], v[l]);
      }
    }
    for (int l = 0; l < 4; ++l) worsen(r, hi[l] - lo[l]);
  }
  return r;
}

Point galilei_fibre(const Point& x, Rng& rng) {
  Point z = x;
  for (int i = 0; i < 3; ++i) z.push_back(rng.uniform(-2.0, 2.0));
  return z;
}

ScalarField fibre_cube() {
  const ScalarField v = ScalarField::coordinate(7, gl::fibre(1));
  return v * v * v;
}

// ---------- Galilei checks

CheckResult g_gamma_dt(Context& c) {
  double r = 0;
  for (int p = 0; p < c.points; ++p) worsen(r, c.gal->gamma_field().values(gen::galilei_phase_point(c.model.box, c.rng))[0] - 1);
  return {r};
}

CheckResult g_gamma_omega(Context& c) {
  const PForm w = contract(c.gal->gamma_field(), c.gal->Omega());
  double r = 0;
  for (int p = 0; p < c.points; ++p)
    for (double v : w.values(gen::galilei_phase_point(c.model.box, c.rng))) worsen(r, v);
  return {r};
}

template <double (*F)(const gl::Geometry&, std::span<const double>)>
CheckResult g_spacetime(Context& c) {
  double r = 0;
  for (int p = 0; p < c.points; ++p) worsen(r, F(*c.gal, gen::spacetime_point(c.model.box, c.rng)));
  return {r};
}

CheckResult g_d_omega(Context& c) {
  const PForm d = exterior_derivative(c.gal->Omega());
  double r = 0;
  for (int p = 0; p < c.points; ++p)
    for (double v : d.values(gen::galilei_phase_point(c.model.box, c.rng))) worsen(r, v);
  return {r};
}

CheckResult g_volume(Context& c) {
  const PForm& O = c.gal->Omega();
  const PForm vol = wedge(PForm::basis(7, {0}), wedge(O, wedge(O, O)));
  double r = kInf;
  for (int p = 0; p < c.points; ++p) {
    const double v = std::abs(vol.values(gen::galilei_phase_point(c.model.box, c.rng))[0]);
    r = std::isnan(v) ? 0 : std::min(r, v);
  }
  return {r};
}

CheckResult g_poisson_lambda(Context& c) {
  double r = 0;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gl::phase_function(*c.gal, gsf(c)), h = gl::phase_function(*c.gal, gsf(c));
    const auto a = gl::poisson_bracket(*c.gal, f, h), b = gl::poisson_bracket_lambda(*c.gal, f, h);
    for (int p = 0; p < c.points; ++p) {
      const Point z = gen::galilei_phase_point(c.model.box, c.rng);
      worsen(r, a.value(z) - b.value(z));
    }
  }
  return {r};
}

CheckResult g_poisson_jacobi(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  for (int k = 0; k < kTriples; ++k) {
    const auto f = gl::phase_function(g, gsf(c)), h = gl::phase_function(g, gsf(c)), e = gl::phase_function(g, gsf(c));
    const auto P = [&](const ScalarField& a, const ScalarField& b) { return gl::poisson_bracket(g, a, b); };
    const ScalarField J = P(f, P(h, e)) + P(h, P(e, f)) + P(e, P(f, h));
    for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, J.value(gen::galilei_phase_point(c.model.box, c.rng)));
  }
  return {r};
}

CheckResult g_lorentz_split(Context& c) {
  const gl::Geometry bare(without_em(c.model));
  const Field em = gl::gamma_em(*c.gal);
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point z = gen::galilei_phase_point(c.model.box, c.rng);
    const auto a = c.gal->gamma().values(z), b = bare.gamma().values(z), e = em.values(z);
    for (int i = 0; i < 3; ++i) worsen(r, a[i] - b[i] - e[i]);
  }
  return {r};
}

CheckResult g_lambda_split(Context& c) {
  const gl::Geometry bare(without_em(c.model));
  const Bivector em = gl::Lambda_em(*c.gal);
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point z = gen::galilei_phase_point(c.model.box, c.rng);
    const auto a = c.gal->Lambda().field().values(z), b = bare.Lambda().field().values(z), e = em.field().values(z);
    for (std::size_t i = 0; i < a.size(); ++i) worsen(r, a[i] - b[i] - e[i]);
  }
  return {r};
}

CheckResult g_observer_value(Context& c) {
  double r = 0;
  const auto obs = galilei_observers(c, 2);
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gsf(c);
    const auto pf = gl::phase_function(*c.gal, f);
    for (int p = 0; p < c.points; ++p) {
      const Point z = gen::galilei_phase_point(c.model.box, c.rng);
      const double ref = pf.value(z);
      for (const auto& o : obs) worsen(r, gl::special_value(*c.gal, f, o, z) - ref);
    }
  }
  return {r};
}

CheckResult g_transition(Context& c) {
  double r = 0;
  const auto obs = galilei_observers(c, 2);
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gsf(c);
    for (std::size_t a = 0; a < obs.size(); ++a) {
      const auto& o = obs[a];
      const auto& o2 = obs[(a + 1) % obs.size()];
      const auto co = gl::observe(*c.gal, f, o);
      const auto there = gl::transition(*c.gal, co, o, o2);
      const auto back = gl::transition(*c.gal, there, o2, o);
      const auto d1 = gl_diff(there, gl::observe(*c.gal, f, o2)), d2 = gl_diff(back, co);
      for (int p = 0; p < c.points / 10 + 1; ++p) {
        const Point x = gen::spacetime_point(c.model.box, c.rng);
        worsen(r, observed_norm(d1, x));
        worsen(r, observed_norm(d2, x));
      }
    }
  }
  return {r};
}

CheckResult g_observed_phi(Context& c) {
  double r = 0;
  for (const auto& o : galilei_observers(c, 2)) {
    const PForm Phi = gl::observed_Phi(*c.gal, o);
    const PForm d = exterior_derivative(Phi);
    const auto A = gl::observed_potential(*c.gal, o);
    const PForm dA = qu::curvature({A});
    for (int p = 0; p < c.points; ++p) {
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      for (double v : d.values(x)) worsen(r, v);
      worsen(r, max_diff(dA.values(x), Phi.values(x)));
    }
  }
  return {r};
}

CheckResult g_bracket_closed(Context& c) {
  double r = 0;
  const auto obs = galilei_observers(c, 0);
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gsf(c), h = gsf(c);
    const auto& o = obs[k % obs.size()];
    const ScalarField a = gl::phase_function(*c.gal, gl::special_bracket(*c.gal, f, h, o));
    const ScalarField b = gl::special_bracket_definitional(*c.gal, f, h);
    for (int p = 0; p < c.points; ++p) {
      const Point z = gen::galilei_phase_point(c.model.box, c.rng);
      worsen(r, a.value(z) - b.value(z));
    }
  }
  return {r};
}

CheckResult g_tangent_morphism(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gsf(c), h = gsf(c);
    const auto b = gl::special_bracket(g, f, h, gl::chart_observer());
    const VectorField br = lie_bracket(gl::tangent_lift(f), gl::tangent_lift(h));
    // the projectable lift of the definitional bracket, with its own time factor
    const VectorField L = gl::hamiltonian_lift(g, lift(b.f0), gl::special_bracket_definitional(g, f, h));
    const VectorField T = gl::tangent_lift(b);
    for (int p = 0; p < c.points; ++p) {
      const Point z = gen::galilei_phase_point(c.model.box, c.rng);
      const auto x = head(z);
      const auto e = br.values(x);
      worsen(r, max_diff(T.values(x), e));
      worsen(r, max_diff(head(L.values(z)), e));
    }
  }
  return {r};
}

template <class Bracket, class Diff>
double jacobi(Context& c, int triples, Bracket B, Diff D) {
  double r = 0;
  for (int k = 0; k < triples; ++k) {
    const auto f = gsf(c), h = gsf(c), e = gsf(c);
    const auto J = B(f, B(h, e)) + B(h, B(e, f)) + B(e, B(f, h));
    for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, D(J, gen::spacetime_point(c.model.box, c.rng)));
  }
  return r;
}

CheckResult g_bracket_jacobi(Context& c) {
  const gl::SpecialFunction zero = gconst(0, {0, 0, 0}, 0);
  const auto o = gl::chart_observer();
  auto B = [&](const gl::SpecialFunction& a, const gl::SpecialFunction& b) { return gl::special_bracket(*c.gal, a, b, o); };
  auto D = [&](const gl::SpecialFunction& J, const Point& x) { return gl::max_difference(J, zero, x); };
  return {jacobi(c, kTriples, B, D)};
}

CheckResult g_lift_projectable(Context& c) {
  double r = 0;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gsf(c);
    const VectorField L = gl::hamiltonian_lift(*c.gal, lift(f.f0), gl::phase_function(*c.gal, f));
    worsen(r, fibre_spread(L, std::max(1, c.points / kPairs), c.rng, c.model.box, galilei_fibre));
  }
  return {r};
}

CheckResult g_lift_witness(Context& c) {
  const VectorField L = gl::hamiltonian_lift(*c.gal, ScalarField::constant(7, 0.0), fibre_cube());
  return {fibre_spread(L, std::max(1, c.points / 10), c.rng, c.model.box, galilei_fibre)};
}

CheckResult g_bracket_observer(Context& c) {
  double r = 0;
  const auto obs = galilei_observers(c, 3);
  for (int k = 0; k < kPairs; ++k) {
    const auto f = gsf(c), h = gsf(c);
    const auto ref = gl::special_bracket(*c.gal, f, h, obs[0]);
    for (std::size_t a = 1; a < obs.size(); ++a) {
      const auto b = gl::special_bracket(*c.gal, f, h, obs[a]);
      for (int p = 0; p < c.points / 10 + 1; ++p) worsen(r, gl::max_difference(b, ref, gen::spacetime_point(c.model.box, c.rng)));
    }
  }
  return {r};
}

CheckResult g_golden_brackets(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  // the coordinate values hold in the chart adapted to the observer
  {
    const auto o = gl::chart_observer();
    auto B = [&](const gl::SpecialFunction& a, const gl::SpecialFunction& b) { return gl::special_bracket(g, a, b, o); };
    const gl::SpecialFunction H = gl::energy(g, o), zero = gconst(0, {0, 0, 0}, 0);
    std::vector<std::pair<gl::SpecialFunction, gl::SpecialFunction>> cases;
    for (int l = 0; l < 4; ++l)
      for (int m = 0; m < 4; ++m) cases.push_back({B(gl::coordinate_function(g, l), gl::coordinate_function(g, m)), zero});
    for (int l = 0; l < 4; ++l)
      for (int i = 1; i < 4; ++i)
        cases.push_back({B(gl::coordinate_function(g, l), gl::momentum(g, o, i)), gconst(0, {0, 0, 0}, l == i)});
    for (int i = 1; i < 4; ++i) cases.push_back({B(H, gl::momentum(g, o, i)), zero});
    for (int p = 0; p < c.points; ++p) {
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      for (const auto& [a, b] : cases) worsen(r, gl::max_difference(a, b, x));
    }
  }
  return {r};
}

CheckResult g_poisson_canonical(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  for (int a = 1; a < 4; ++a)
    for (int b = 1; b < 4; ++b) {
      // G_bj x^j_0
      const ScalarField x = ScalarField::coordinate(7, a);
      ScalarField p = ScalarField::constant(7, 0.0);
      for (int j = 1; j < 4; ++j)
        p = p + ScalarField(g.G().select({3 * (b - 1) + (j - 1)}).compose(spacetime_projection())) *
                    ScalarField::coordinate(7, gl::fibre(j));
      const ScalarField P = gl::poisson_bracket(g, x, p);
      for (int k = 0; k < c.points / 10 + 1; ++k) worsen(r, P.value(gen::galilei_phase_point(c.model.box, c.rng)) - (a == b));
    }
  return {r};
}

CheckResult g_momentum_value(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  const auto o = gl::chart_observer();
  const auto& A = g.potential();
  for (int p = 0; p < c.points; ++p) {
    const Point z = gen::galilei_phase_point(c.model.box, c.rng);
    const auto x = head(z);
    const auto G = g.G().values(x);
    for (int i = 1; i < 4; ++i) {
      double e = A[i].value(x);
      for (int j = 1; j < 4; ++j) e += G[3 * (i - 1) + (j - 1)] * z[gl::fibre(j)];
      worsen(r, gl::special_value(g, gl::momentum(g, o, i), o, z) - e);
    }
    for (int l = 0; l < 4; ++l) worsen(r, gl::special_value(g, gl::coordinate_function(g, l), o, z) - z[l]);
  }
  return {r};
}

CheckResult g_iso(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  const auto obs = galilei_observers(c, 1);
  for (int k = 0; k < kPairs; ++k) {
    const auto& o = obs[k % obs.size()];
    const auto A = gl::observed_potential(g, o);
    const auto f = gsf(c), h = gsf(c);
    const auto lhs = qu::hermitian_bracket(gl::to_hermitian(g, f, o, A), gl::to_hermitian(g, h, o, A));
    const auto rhs = gl::to_hermitian(g, gl::special_bracket(g, f, h, o), o, A);
    for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, qu::max_difference(lhs, rhs, gen::spacetime_point(c.model.box, c.rng)));
  }
  return {r};
}

CheckResult g_inverse(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  const auto obs = galilei_observers(c, 1);
  for (int k = 0; k < kPairs; ++k) {
    const auto& o = obs[k % obs.size()];
    const auto A = gl::observed_potential(g, o);
    const auto f = gsf(c);
    const auto Y = gen::hermitian_field(c.model.box, c.rng);
    const auto f2 = gl::from_hermitian(g, gl::to_hermitian(g, f, o, A), o, A);
    const auto Y2 = gl::to_hermitian(g, gl::from_hermitian(g, Y, o, A), o, A);
    for (int p = 0; p < c.points / 5 + 1; ++p) {
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      worsen(r, gl::max_difference(f, f2, x));
      worsen(r, qu::max_difference(Y, Y2, x));
    }
  }
  return {r};
}

CheckResult g_golden_F(Context& c) {
  const auto& g = *c.gal;
  const auto o = gl::chart_observer();
  const auto A = gl::observed_potential(g, o);
  const ScalarField zero = ScalarField::constant(4, 0.0);
  std::vector<std::pair<qu::HermitianField, qu::HermitianField>> cases;
  for (int l = 0; l < 4; ++l)
    cases.push_back({gl::to_hermitian(g, gl::coordinate_function(g, l), o, A), {frame(0, 0.0), ScalarField::coordinate(4, l)}});
  cases.push_back({gl::to_hermitian(g, gl::energy(g, o), o, A), {frame(0), zero}});
  for (int i = 1; i < 4; ++i) cases.push_back({gl::to_hermitian(g, gl::momentum(g, o, i), o, A), {frame(i, -1.0), zero}});
  // 2 d_0 - 2 A^i d_i + i (2 A_0 - A^i A_i)
  std::array<ScalarField, 3> up;
  ScalarField AA = zero;
  for (int i = 0; i < 3; ++i) {
    up[i] = zero;
    for (int j = 0; j < 3; ++j) up[i] = up[i] + ScalarField(g.Ginv().select({3 * i + j})) * A[j + 1];
    AA = AA + up[i] * A[i + 1];
  }
  const VectorField X = VectorField::from_components({ScalarField::constant(4, 2.0), -2.0 * up[0], -2.0 * up[1], -2.0 * up[2]});
  cases.push_back({gl::to_hermitian(g, gl::kinetic(g, o), o, A), {X, 2.0 * A[0] - AA}});
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point x = gen::spacetime_point(c.model.box, c.rng);
    for (const auto& [a, b] : cases) worsen(r, qu::max_difference(a, b, x));
  }
  return {r};
}

CheckResult g_observer_lemma(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  const auto obs = galilei_observers(c, 0);
  for (int k = 0; k < kPairs; ++k) {
    const auto& o = obs[k % obs.size()];
    const auto o2 = gen::galilei_observer(c.model.box, c.rng);
    const auto A = gl::observed_potential(g, o);
    const auto A2 = gl::transition_potential(g, A, o, o2);
    const auto f = gsf(c);
    const auto a = gl::to_hermitian(g, f, o, A), b = gl::to_hermitian(g, f, o2, A2);
    for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, qu::max_difference(a, b, gen::spacetime_point(c.model.box, c.rng)));
  }
  return {r};
}

CheckResult g_potential_transition(Context& c) {
  double r = 0;
  const auto& g = *c.gal;
  const auto obs = galilei_observers(c, 3);
  for (std::size_t a = 0; a < obs.size(); ++a)
    for (std::size_t b = 0; b < obs.size(); ++b) {
      const auto A = gl::transition_potential(g, gl::observed_potential(g, obs[a]), obs[a], obs[b]);
      const auto E = gl::observed_potential(g, obs[b]);
      for (int p = 0; p < c.points / 10 + 1; ++p) {
        const Point x = gen::spacetime_point(c.model.box, c.rng);
        for (int l = 0; l < 4; ++l) worsen(r, A[l].value(x) - E[l].value(x));
      }
    }
  return {r};
}

// ---------- Einstein helpers and checks

es::SpecialFunction esf(Context& c) { return gen::einstein_special(c.model.box, c.rng); }

Point ezp(Context& c) { return gen::einstein_phase_point(*c.ein, c.rng); }

es::SpecialFunction econst(std::array<double, 4> X, double fbar) {
  es::SpecialFunction f;
  for (int l = 0; l < 4; ++l) f.X[l] = ScalarField::constant(4, X[l]);
  f.fbar = ScalarField::constant(4, fbar);
  return f;
}

VectorField vf(const es::SpecialFunction& f) { return VectorField::from_components({f.X[0], f.X[1], f.X[2], f.X[3]}); }

CheckResult e_identities(Context& c) {
  double r = 0;
  std::string worst;
  for (int p = 0; p < c.points; ++p) {
    const Point z = ezp(c);
    for (const auto& id : es::technical_identities(*c.ein, z)) {
      const double before = r;
      worsen(r, id.value);
      if (r > before) worst = id.name;
    }
  }
  return {r, false, worst.empty() ? "" : "largest: " + worst};
}

CheckResult e_contact_norm(Context& c) {
  double r = 0;
  const double c2 = c.model.c * c.model.c;
  for (int p = 0; p < c.points; ++p) {
    const Point z = ezp(c);
    const auto d = c.ein->contact().values(z), g = c.ein->g().values(head(z));
    double s = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) s += g[4 * a + b] * d[a] * d[b];
    worsen(r, (s + c2) / c2);
  }
  return {r};
}

CheckResult e_tau_contact(Context& c) {
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point z = ezp(c);
    const auto d = c.ein->contact().values(z), t = c.ein->tau().values(z);
    worsen(r, d[0] * t[0] + d[1] * t[1] + d[2] * t[2] + d[3] * t[3] - 1);
  }
  return {r};
}

template <double (*F)(const es::Geometry&, std::span<const double>)>
CheckResult e_spacetime(Context& c) {
  double r = 0;
  for (int p = 0; p < c.points; ++p) worsen(r, F(*c.ein, gen::spacetime_point(c.model.box, c.rng)));
  return {r};
}

CheckResult e_form_zero(Context& c, const PForm& w) {
  double r = 0;
  for (int p = 0; p < c.points; ++p)
    for (double v : w.values(ezp(c))) worsen(r, v);
  return {r};
}

CheckResult e_d_omega(Context& c) { return e_form_zero(c, exterior_derivative(c.ein->Omega())); }
CheckResult e_gamma_omega(Context& c) { return e_form_zero(c, contract(c.ein->gamma_field(), c.ein->Omega())); }

CheckResult e_volume(Context& c) {
  const PForm& O = c.ein->Omega();
  const PForm vol = wedge(c.ein->Theta(), wedge(O, wedge(O, O)));
  double r = kInf;
  for (int p = 0; p < c.points; ++p) {
    const double v = std::abs(vol.values(ezp(c))[0]);
    r = std::isnan(v) ? 0 : std::min(r, v);
  }
  return {r};
}

CheckResult e_horizontal_potential(Context& c) {
  // stored Omega carries half the printed normalisation
  const PForm dA = exterior_derivative(c.ein->Aup());
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point z = ezp(c);
    const auto a = dA.values(z), o = c.ein->Omega().values(z);
    for (std::size_t k = 0; k < a.size(); ++k) worsen(r, a[k] - 2 * o[k]);
  }
  return {r};
}

CheckResult e_gamma_tau(Context& c) {
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point z = ezp(c);
    const auto gv = c.ein->gamma_field().values(z), t = c.ein->tau().values(z);
    worsen(r, gv[0] * t[0] + gv[1] * t[1] + gv[2] * t[2] + gv[3] * t[3] - 1);
  }
  return {r};
}

CheckResult e_lorentz(Context& c) {
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point z = ezp(c);
    const auto a = es::lorentz_force(*c.ein, z), b = es::lorentz_force_from_gamma(*c.ein, z);
    for (int l = 0; l < 4; ++l) worsen(r, a[l] - b[l]);
  }
  return {r};
}

CheckResult e_poisson_lambda(Context& c) {
  double r = 0;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = es::phase_function(*c.ein, esf(c)), h = es::phase_function(*c.ein, esf(c));
    const auto a = es::poisson_bracket(*c.ein, f, h), b = es::poisson_bracket_lambda(*c.ein, f, h);
    for (int p = 0; p < c.points; ++p) {
      const Point z = ezp(c);
      worsen(r, a.value(z) - b.value(z));
    }
  }
  return {r};
}

CheckResult e_poisson_antisymmetry(Context& c) {
  double r = 0;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = es::phase_function(*c.ein, esf(c)), h = es::phase_function(*c.ein, esf(c));
    const auto a = es::poisson_bracket(*c.ein, f, h), b = es::poisson_bracket(*c.ein, h, f);
    const auto s = es::poisson_bracket(*c.ein, f, f);
    for (int p = 0; p < c.points / 5 + 1; ++p) {
      const Point z = ezp(c);
      worsen(r, a.value(z) + b.value(z));
      worsen(r, s.value(z));
    }
  }
  return {r};
}

CheckResult e_special_value(Context& c) {
  double r = 0;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c);
    const auto pf = es::phase_function(*c.ein, f);
    for (int p = 0; p < c.points / 5 + 1; ++p) {
      const Point z = ezp(c);
      worsen(r, es::special_value(*c.ein, f, z) - pf.value(z));
    }
  }
  for (int l = 0; l < 4; ++l) {
    const Point z = ezp(c);
    worsen(r, es::special_value(*c.ein, es::coordinate_function(l), z) - z[l]);
  }
  return {r};
}

CheckResult e_splitting(Context& c) {
  double r = 0;
  if (c.model.observers.empty()) return {0, true, "model declares no observers"};
  for (const auto& o : c.model.observers)
    for (int p = 0; p < c.points; ++p) worsen(r, es::observed_splitting(*c.ein, o.o, gen::spacetime_point(c.model.box, c.rng)).reconstruction);
  return {r};
}

CheckResult e_bracket_closed(Context& c) {
  double r = 0;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c), h = esf(c);
    const auto a = es::phase_function(*c.ein, es::special_bracket(*c.ein, f, h));
    const auto b = es::special_bracket_definitional(*c.ein, f, h);
    for (int p = 0; p < c.points; ++p) {
      const Point z = ezp(c);
      worsen(r, a.value(z) - b.value(z));
    }
  }
  return {r};
}

CheckResult e_tangent_morphism(Context& c) {
  double r = 0;
  const auto& g = *c.ein;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c), h = esf(c);
    const auto b = es::special_bracket(g, f, h);
    const VectorField br = lie_bracket(vf(f), vf(h));
    const VectorField L = es::hamiltonian_lift(g, es::sigma(g, b), es::special_bracket_definitional(g, f, h));
    for (int p = 0; p < c.points / 5 + 1; ++p) {
      const Point z = ezp(c);
      const auto e = br.values(head(z));
      worsen(r, max_diff(vf(b).values(head(z)), e));
      worsen(r, max_diff(head(L.values(z)), e));
    }
  }
  return {r};
}

CheckResult e_bar_pair(Context& c) {
  double r = 0;
  const auto& g = *c.ein;
  const PForm F = (c.model.q / c.model.hbar) * g.F();
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c), h = esf(c);
    const auto b = es::special_bracket(g, f, h);
    const auto p = qu::pair_bracket({vf(f), f.fbar}, {vf(h), h.fbar}, F);
    for (int s = 0; s < c.points / 5 + 1; ++s) worsen(r, qu::max_difference(p, {vf(b), b.fbar}, gen::spacetime_point(c.model.box, c.rng)));
  }
  return {r};
}

CheckResult e_bracket_jacobi(Context& c) {
  double r = 0;
  const auto zero = econst({0, 0, 0, 0}, 0);
  auto B = [&](const es::SpecialFunction& a, const es::SpecialFunction& b) { return es::special_bracket(*c.ein, a, b); };
  for (int k = 0; k < kTriples; ++k) {
    const auto f = esf(c), h = esf(c), e = esf(c);
    const auto J = B(f, B(h, e)) + B(h, B(e, f)) + B(e, B(f, h));
    for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, es::max_difference(J, zero, gen::spacetime_point(c.model.box, c.rng)));
  }
  return {r};
}

Point einstein_fibre(const es::Geometry& g, const Point& x, Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Point z = x;
    for (int i = 0; i < 3; ++i) z.push_back(rng.uniform(-2.0, 2.0));
    if (es::timelike_margin(g, z) > 0.05) return z;
  }
  throw std::runtime_error("no timelike fibre samples above " + std::to_string(x[0]));
}

CheckResult e_lift_projectable(Context& c) {
  double r = 0;
  const auto& g = *c.ein;
  auto fib = [&g](const Point& x, Rng& rng) { return einstein_fibre(g, x, rng); };
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c);
    const VectorField L = es::hamiltonian_lift(g, es::sigma(g, f), es::phase_function(g, f));
    worsen(r, fibre_spread(L, std::max(1, c.points / kPairs), c.rng, c.model.box, fib));
  }
  return {r};
}

CheckResult e_lift_witness(Context& c) {
  const auto& g = *c.ein;
  auto fib = [&g](const Point& x, Rng& rng) { return einstein_fibre(g, x, rng); };
  const VectorField L = es::hamiltonian_lift(g, ScalarField::constant(7, 0.0), fibre_cube());
  return {fibre_spread(L, std::max(1, c.points / 10), c.rng, c.model.box, fib)};
}

CheckResult e_golden_brackets(Context& c) {
  const auto& g = *c.ein;
  auto B = [&](const es::SpecialFunction& a, const es::SpecialFunction& b) { return es::special_bracket(g, a, b); };
  const auto zero = econst({0, 0, 0, 0}, 0);
  std::vector<std::pair<es::SpecialFunction, es::SpecialFunction>> cases;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) cases.push_back({B(es::coordinate_function(l), es::coordinate_function(m)), zero});
  // X[H0] = d_0 gives -d_0 x^l
  for (int l = 0; l < 4; ++l) cases.push_back({B(es::coordinate_function(l), es::energy(g)), econst({0, 0, 0, 0}, -(l == 0))});
  for (int i = 1; i < 4; ++i) cases.push_back({B(es::energy(g), es::momentum(g, i)), zero});
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point x = gen::spacetime_point(c.model.box, c.rng);
    for (const auto& [a, b] : cases) worsen(r, es::max_difference(a, b, x));
  }
  return {r};
}

CheckResult e_iso(Context& c) {
  double r = 0;
  const auto& g = *c.ein;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c), h = esf(c);
    const auto lhs = qu::hermitian_bracket(es::to_hermitian(g, f), es::to_hermitian(g, h));
    const auto rhs = es::to_hermitian(g, es::special_bracket(g, f, h));
    for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, qu::max_difference(lhs, rhs, gen::spacetime_point(c.model.box, c.rng)));
  }
  return {r};
}

CheckResult e_inverse(Context& c) {
  double r = 0;
  const auto& g = *c.ein;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c);
    const auto Y = gen::hermitian_field(c.model.box, c.rng);
    const auto f2 = es::from_hermitian(g, es::to_hermitian(g, f));
    const auto Y2 = es::to_hermitian(g, es::from_hermitian(g, Y));
    for (int p = 0; p < c.points / 5 + 1; ++p) {
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      worsen(r, es::max_difference(f, f2, x));
      worsen(r, qu::max_difference(Y, Y2, x));
    }
  }
  return {r};
}

CheckResult e_note(Context& c) {
  if (c.model.observers.empty()) return {0, true, "model declares no observers"};
  double r = 0;
  const auto& g = *c.ein;
  for (int k = 0; k < kPairs; ++k) {
    const auto f = esf(c);
    const auto ref = es::to_hermitian(g, f);
    for (const auto& o : c.model.observers) {
      const auto a = es::to_hermitian_observed(g, f, o.o);
      for (int p = 0; p < c.points / 5 + 1; ++p) worsen(r, qu::max_difference(a, ref, gen::spacetime_point(c.model.box, c.rng)));
    }
  }
  return {r};
}

CheckResult e_golden_F(Context& c) {
  const auto& g = *c.ein;
  const ScalarField zero = ScalarField::constant(4, 0.0);
  std::vector<std::pair<qu::HermitianField, qu::HermitianField>> cases;
  for (int l = 0; l < 4; ++l) cases.push_back({es::to_hermitian(g, es::coordinate_function(l)), {frame(0, 0.0), ScalarField::coordinate(4, l)}});
  cases.push_back({es::to_hermitian(g, es::energy(g)), {frame(0), zero}});
  for (int i = 1; i < 4; ++i) cases.push_back({es::to_hermitian(g, es::momentum(g, i)), {frame(i, -1.0), zero}});
  double r = 0;
  for (int p = 0; p < c.points; ++p) {
    const Point x = gen::spacetime_point(c.model.box, c.rng);
    for (const auto& [a, b] : cases) worsen(r, qu::max_difference(a, b, x));
  }
  return {r};
}

// ---------- model-independent checks on the quantum bundle

qu::GaugeConnection random_connection(Context& c) {
  qu::GaugeConnection a;
  for (auto& e : a.A) e = gen::polynomial(c.model.box, 2, c.rng);
  return a;
}

constexpr int kConnections = 5;

CheckResult q_theorem(Context& c) {
  double r = 0;
  std::vector<qu::GaugeConnection> conns;
  std::vector<PForm> Phi;
  for (int k = 0; k < kConnections; ++k) {
    conns.push_back(random_connection(c));
    Phi.push_back(qu::curvature(conns.back()));
  }
  const int pairs = std::max(kConnections, c.points);
  for (int k = 0; k < pairs; ++k) {
    const auto& cn = conns[k % kConnections];
    const auto p1 = gen::spacetime_pair(c.model.box, c.rng), p2 = gen::spacetime_pair(c.model.box, c.rng);
    const auto lhs = qu::hermitian_bracket(qu::classify_j(cn, p1), qu::classify_j(cn, p2));
    const auto rhs = qu::classify_j(cn, qu::pair_bracket(p1, p2, Phi[k % kConnections]));
    worsen(r, qu::max_difference(lhs, rhs, gen::spacetime_point(c.model.box, c.rng)));
  }
  return {r};
}

double pair_jacobi(Context& c, const PForm& Phi) {
  const auto p1 = gen::spacetime_pair(c.model.box, c.rng), p2 = gen::spacetime_pair(c.model.box, c.rng),
             p3 = gen::spacetime_pair(c.model.box, c.rng);
  auto B = [&](const qu::SpacetimePair& a, const qu::SpacetimePair& b) { return qu::pair_bracket(a, b, Phi); };
  const auto J = B(p1, B(p2, p3)) + B(p2, B(p3, p1)) + B(p3, B(p1, p2));
  const qu::SpacetimePair zero{frame(0, 0.0), ScalarField::constant(4, 0.0)};
  double r = 0;
  for (int p = 0; p < 5; ++p) worsen(r, qu::max_difference(J, zero, gen::spacetime_point(c.model.box, c.rng)));
  return r;
}

CheckResult q_pair_jacobi(Context& c) {
  double r = 0;
  for (int k = 0; k < kConnections; ++k) {
    const PForm Phi = qu::curvature(random_connection(c));
    for (int t = 0; t < std::max(1, c.points / 25); ++t) worsen(r, pair_jacobi(c, Phi));
  }
  return {r};
}

CheckResult q_nonclosed_witness(Context& c) {
  // x^0 d^1 ^ d^2 is not closed
  std::vector<ScalarField> comps(6, ScalarField::constant(4, 0.0));
  comps[3] = ScalarField::coordinate(4, 0);
  const PForm Phi = PForm::from_components(4, 2, comps);
  double r = 0;
  for (int t = 0; t < kConnections; ++t) worsen(r, pair_jacobi(c, Phi));
  return {r};
}

CheckResult q_curvature_closed(Context& c) {
  double r = 0;
  for (int k = 0; k < kConnections; ++k) {
    const PForm d = exterior_derivative(qu::curvature(random_connection(c)));
    for (int p = 0; p < c.points / kConnections + 1; ++p)
      for (double v : d.values(gen::spacetime_point(c.model.box, c.rng))) worsen(r, v);
  }
  return {r};
}

CheckResult q_defect(Context& c) {
  double r = 0;
  for (int k = 0; k < kConnections; ++k) {
    const auto cn = random_connection(c);
    const PForm Phi = qu::curvature(cn);
    const auto X1 = gen::vector_polynomial(c.model.box, 2, c.rng), X2 = gen::vector_polynomial(c.model.box, 2, c.rng);
    const auto lhs = qu::hermitian_bracket(qu::connection_lift(cn, X1), qu::connection_lift(cn, X2));
    const auto rhs = qu::connection_lift(cn, lie_bracket(X1, X2));
    const auto phi = qu::pair_bracket({X1, ScalarField::constant(4, 0.0)}, {X2, ScalarField::constant(4, 0.0)}, Phi);
    for (int p = 0; p < c.points / kConnections + 1; ++p) {
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      // defect: [c(X1), c(X2)] - c([X1, X2]) = i Phi(X1, X2) I
      worsen(r, max_diff(lhs.X.values(x), rhs.X.values(x)));
      worsen(r, lhs.b.value(x) - rhs.b.value(x) - phi.Ybar.value(x));
    }
  }
  return {r};
}

CheckResult q_classify_inverse(Context& c) {
  double r = 0;
  for (int k = 0; k < kConnections; ++k) {
    const auto cn = random_connection(c);
    for (int t = 0; t < c.points / kConnections + 1; ++t) {
      const auto Y = gen::hermitian_field(c.model.box, c.rng);
      const auto p = gen::spacetime_pair(c.model.box, c.rng);
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      worsen(r, qu::max_difference(qu::classify_j(cn, qu::classify_h(cn, Y)), Y, x));
      worsen(r, qu::max_difference(qu::classify_h(cn, qu::classify_j(cn, p)), p, x));
    }
  }
  return {r};
}

CheckResult q_central_extension(Context& c) {
  double r = 0;
  for (int k = 0; k < kConnections; ++k) {
    const auto cn = random_connection(c);
    for (int t = 0; t < c.points / kConnections + 1; ++t) {
      const auto Y = gen::hermitian_field(c.model.box, c.rng);
      const ScalarField b = gen::polynomial(c.model.box, 2, c.rng);
      const Point x = gen::spacetime_point(c.model.box, c.rng);
      // the projection sees only X, and the kernel is exactly the vertical fields
      worsen(r, max_diff(qu::classify_h(cn, Y).X.values(x), Y.X.values(x)));
      const auto v = qu::classify_h(cn, qu::vertical(b));
      worsen(r, max_diff(v.X.values(x), {0, 0, 0, 0}));
      worsen(r, v.Ybar.value(x) - b.value(x));
      // shifting b moves only the scalar part
      const auto s = qu::classify_h(cn, Y + qu::vertical(b));
      worsen(r, max_diff(s.X.values(x), Y.X.values(x)));
      worsen(r, s.Ybar.value(x) - qu::classify_h(cn, Y).Ybar.value(x) - b.value(x));
    }
  }
  return {r};
}

CheckResult q_hermitian_linear(Context& c) {
  double r = 0;
  std::vector<Point> pts;
  for (int p = 0; p < 5; ++p) pts.push_back(gen::spacetime_point(c.model.box, c.rng));
  for (int k = 0; k < c.points / 5 + 1; ++k) {
    const auto Y = gen::hermitian_field(c.model.box, c.rng);
    const auto L = qu::to_linear(Y);
    worsen(r, qu::hermitian_residual(L, pts));
    for (const auto& x : pts) worsen(r, qu::max_difference(qu::from_linear(L), Y, x));
  }
  return {r};
}

qu::LinearQuantumField random_linear(Context& c, bool hermitian) {
  qu::LinearQuantumField L;
  L.X = gen::vector_polynomial(c.model.box, 2, c.rng);
  for (auto& row : L.Y)
    for (auto& e : row) e = gen::polynomial(c.model.box, 2, c.rng);
  if (hermitian) L = qu::to_linear(qu::from_linear(L));
  return L;
}

CheckResult q_metric_lie(Context& c) {
  double r = 0;
  for (int k = 0; k < c.points / 5 + 1; ++k) {
    const auto L = random_linear(c, k % 2 == 0);
    const Point x = gen::spacetime_point(c.model.box, c.rng);
    const std::array<double, 2> w{c.rng.uniform(-1, 1), c.rng.uniform(-1, 1)};
    const auto a = qu::lie_derivative_hermitian_metric(L, x, w), b = qu::lie_derivative_hermitian_metric_flow(L, x, w);
    worsen(r, std::abs(a.c1 - b.c1));
    worsen(r, std::abs(a.c2 - b.c2));
  }
  return {r};
}

CheckResult q_action_commutator(Context& c) {
  double r = 0;
  for (int k = 0; k < c.points / 5 + 1; ++k) {
    const auto Y1 = gen::hermitian_field(c.model.box, c.rng), Y2 = gen::hermitian_field(c.model.box, c.rng);
    const auto s = gen::section(c.model.box, c.rng);
    const auto a = qu::act(Y1, qu::act(Y2, s)), b = qu::act(Y2, qu::act(Y1, s)), e = qu::act(qu::hermitian_bracket(Y1, Y2), s);
    const Point x = gen::spacetime_point(c.model.box, c.rng);
    worsen(r, std::abs(a.at(x) - b.at(x) - e.at(x)));
  }
  return {r};
}

CheckResult q_metric_compatibility(Context& c) {
  double r = 0;
  for (int k = 0; k < c.points / 5 + 1; ++k) {
    const auto Y = gen::hermitian_field(c.model.box, c.rng);
    const auto s = gen::section(c.model.box, c.rng), t = gen::section(c.model.box, c.rng);
    // h(psi, phi) = conj(psi) phi
    auto h = [](const qu::Section& a, const qu::Section& b) {
      return std::pair{a.re * b.re + a.im * b.im, a.re * b.im - a.im * b.re};
    };
    const auto [hr, hi] = h(s, t);
    const auto [ar, ai] = h(qu::act(Y, s), t);
    const auto [br, bi] = h(s, qu::act(Y, t));
    const Point x = gen::spacetime_point(c.model.box, c.rng);
    worsen(r, lie_derivative_scalar(Y.X, hr).value(x) - ar.value(x) - br.value(x));
    worsen(r, lie_derivative_scalar(Y.X, hi).value(x) - ai.value(x) - bi.value(x));
  }
  return {r};
}

// ---------- orbits

struct OrbitStart {
  std::array<double, 4> x;
  std::array<double, 3> v;
};

CheckResult orbit_law(Context& c) {
  const expr::Box& box = c.model.box;
  double r = 0;
  for (int k = 0; k < 2; ++k) {
    Point z = c.model.framework == Framework::Galilei ? gen::galilei_phase_point(box, c.rng) : ezp(c);
    // start early in time and slow, so the orbit stays inside the box
    z[0] = box.lo[0] + 0.05 * (box.hi[0] - box.lo[0]);
    for (int i = 4; i < 7; ++i) z[i] *= 0.25;
    for (int l = 1; l < 4; ++l) z[l] = 0.5 * (z[l] + 0.5 * (box.lo[l] + box.hi[l]));
    double duration = 0.25 * (box.hi[0] - box.lo[0]);
    for (int attempt = 0;; ++attempt) {
      try {
        const auto t = orbit::integrate(c.model, {z[0], z[1], z[2], z[3]}, {z[4], z[5], z[6]}, duration, 1e-3);
        worsen(r, t.max_residual());
        break;
      } catch (const orbit::BoxExit&) {
        if (attempt > 6) return {0, true, "orbits leave the box too early"};
        duration /= 2;
      }
    }
  }
  return {r};
}

CheckResult orbit_cyclotron(Context& c) {
  if (c.model.framework != Framework::Galilei) return {0, true, "Galilei only"};
  const expr::Box& box = c.model.box;
  std::array<double, 4> x;
  for (int l = 0; l < 4; ++l) x[l] = 0.5 * (box.lo[l] + box.hi[l]);
  x[0] = box.lo[0] + 0.01 * (box.hi[0] - box.lo[0]);
  try {
    const auto o = orbit::cyclotron(*c.gal, x, {1.0, 0, 0}, 1e-3);
    if (!o.applicable) return {0, true, o.reason};
    return {o.error};
  } catch (const orbit::BoxExit&) {
    return {0, true, "box does not hold one period"};
  }
}

CheckResult orbit_hyperbolic(Context& c) {
  if (c.model.framework != Framework::Einstein) return {0, true, "Einstein only"};
  const expr::Box& box = c.model.box;
  const auto f = c.ein->F().values(gen::spacetime_point(box, c.rng));
  std::array<double, 4> x;
  for (int l = 0; l < 4; ++l) x[l] = 0.5 * (box.lo[l] + box.hi[l]);
  const double m = c.model.m, q = c.model.q, cc = c.model.c, E = -cc * f[0];
  if (E == 0) return {0, true, "no electric field"};
  const double L = cc * cc * m / (q * E), w = std::abs(q * E / (m * cc));
  x[0] = box.lo[0] + 0.02 * (box.hi[0] - box.lo[0]);
  x[1] = L > 0 ? box.lo[1] + 0.02 * (box.hi[1] - box.lo[1]) : box.hi[1] - 0.02 * (box.hi[1] - box.lo[1]);
  const double room1 = 0.9 * (L > 0 ? box.hi[1] - x[1] : x[1] - box.lo[1]), room0 = 0.9 * (box.hi[0] - x[0]);
  const double duration =
      std::min({3.0, std::acosh(1 + room1 / std::abs(L)) / w, std::asinh(room0 / std::abs(L)) / w});
  try {
    const auto o = orbit::hyperbolic(*c.ein, x, duration, 1e-3);
    if (!o.applicable) return {0, true, o.reason};
    return {o.error};
  } catch (const orbit::BoxExit&) {
    return {0, true, "box too small for the worldline"};
  }
}

CheckResult orbit_straight(Context& c) {
  const expr::Box& box = c.model.box;
  std::array<double, 4> x;
  for (int l = 0; l < 4; ++l) x[l] = 0.5 * (box.lo[l] + box.hi[l]);
  x[0] = box.lo[0] + 0.02 * (box.hi[0] - box.lo[0]);
  const std::array<double, 3> v{0.3, -0.2, 0.1};
  try {
    const auto o = orbit::straight_line(c.model, x, v, 0.25 * (box.hi[0] - box.lo[0]), 1e-3);
    if (!o.applicable) return {0, true, o.reason};
    return {o.error};
  } catch (const orbit::BoxExit&) {
    return {0, true, "box too small"};
  }
}

// ---------- registry

std::vector<Suite> build() {
  const Mode lo = Mode::AtLeast, hi = Mode::AtMost;
  std::vector<Suite> s;
  s.push_back({"galilei-core", Framework::Galilei, {
      {"gamma-dt", "i(gamma) dt = 1", 1e-9, hi, {"galilei.gamma-identities"}, g_gamma_dt},
      {"gamma-Omega", "i(gamma) Omega = 0", 1e-9, hi, {"galilei.gamma-identities"}, g_gamma_omega},
      {"nabla-dt", "joined connection preserves dt", 1e-8, hi, {"galilei.joined-connection"}, g_spacetime<gl::nabla_dt_residual>},
      {"nabla-g", "joined connection preserves g", 1e-8, hi, {"galilei.joined-connection"}, g_spacetime<gl::nabla_g_residual>},
      {"torsion", "joined connection is torsion free", 1e-8, hi, {"galilei.joined-connection"}, g_spacetime<gl::torsion_residual>},
      {"d-Omega", "Omega is closed", 1e-8, hi, {}, g_d_omega},
      {"volume", "dt ^ Omega ^ Omega ^ Omega does not vanish", 1e-6, lo, {}, g_volume},
      {"poisson-lambda", "Poisson bracket as i(df ^ dg) Lambda", 1e-8, hi, {}, g_poisson_lambda},
      {"poisson-jacobi", "Jacobi identity of the Poisson bracket", 1e-8, hi, {}, g_poisson_jacobi},
      {"lorentz-split", "electromagnetic part of gamma is the Lorentz force", 1e-9, hi, {}, g_lorentz_split},
      {"lambda-split", "electromagnetic part of Lambda", 1e-9, hi, {}, g_lambda_split},
      {"observer-value", "value of a special function in any observer", 1e-9, hi, {}, g_observer_value},
      {"observer-transition", "observer transition law and its round trip", 1e-12, hi, {}, g_transition},
      {"observed-Phi", "Phi[o] = 2 o*Omega is closed and equals dA[o]", 1e-8, hi, {}, g_observed_phi},
  }});
  s.push_back({"galilei-brackets", Framework::Galilei, {
      {"bracket-closed-form", "closed special bracket equals its definition", 1e-8, hi, {"galilei.bracket-closed-form"}, g_bracket_closed},
      {"tangent-morphism", "X of the bracket is the Lie bracket of the lifts", 1e-8, hi, {"galilei.tangent-morphism"}, g_tangent_morphism},
      {"bracket-jacobi", "Jacobi identity of the special bracket", 1e-7, hi, {"galilei.bracket-jacobi"}, g_bracket_jacobi},
      {"lift-projectable", "Hamiltonian lift of a special function projects", 1e-9, hi, {"galilei.lift-projectable"}, g_lift_projectable},
      {"lift-witness", "Hamiltonian lift of (x^1_0)^3 does not project", 1e-3, lo, {"galilei.lift-projectable"}, g_lift_witness},
      {"bracket-observer", "special bracket does not depend on the observer", 1e-8, hi, {"galilei.bracket-observer-independence"}, g_bracket_observer},
      {"golden-brackets", "brackets of coordinates, energy and momenta", 1e-10, hi, {}, g_golden_brackets},
      {"poisson-canonical", "{x^i, G_ij x^j_0} = delta", 1e-10, hi, {}, g_poisson_canonical},
      {"momentum-value", "values of x^l and P_i in the chart observer", 1e-12, hi, {}, g_momentum_value},
  }});
  s.push_back({"galilei-quantum", Framework::Galilei, {
      {"F-isomorphism", "F maps the special bracket to the Hermitian bracket", 1e-8, hi, {"quantum.galilei-isomorphism"}, g_iso},
      {"H-inverse", "H and F are mutually inverse", 1e-10, hi, {}, g_inverse},
      {"F-golden", "F of coordinates, energy, momenta and C_0", 1e-10, hi, {}, g_golden_F},
      {"observer-lemma", "F does not depend on the observer", 1e-8, hi, {"quantum.galilei-observer-independence"}, g_observer_lemma},
      {"potential-transition", "boost law of the observed potential", 1e-12, hi, {}, g_potential_transition},
  }});
  s.push_back({"einstein-identities", Framework::Einstein, {
      {"technical-identities", "identities of the contact splitting", 1e-8, hi, {"einstein.technical-identities"}, e_identities},
      {"contact-norm", "g(d, d) = -c^2", 1e-9, hi, {"einstein.technical-identities"}, e_contact_norm},
      {"tau-contact", "tau(d) = 1", 1e-9, hi, {"einstein.technical-identities"}, e_tau_contact},
      {"nabla-g", "Levi-Civita connection preserves g", 1e-8, hi, {}, e_spacetime<es::nabla_g_residual>},
      {"torsion", "Levi-Civita connection is torsion free", 1e-8, hi, {}, e_spacetime<es::torsion_residual>},
      {"d-Omega", "Omega is closed", 1e-7, hi, {"einstein.cosymplectic"}, e_d_omega},
      {"volume", "Theta ^ Omega ^ Omega ^ Omega does not vanish", 1e-6, lo, {"einstein.cosymplectic"}, e_volume},
      {"horizontal-potential", "d(Theta + (q/hbar) A) = 2 Omega", 1e-7, hi, {"einstein.horizontal-potential"}, e_horizontal_potential},
      {"gamma-tau", "i(gamma) tau = 1", 1e-9, hi, {}, e_gamma_tau},
      {"gamma-Omega", "i(gamma) Omega = 0", 1e-8, hi, {}, e_gamma_omega},
      {"lorentz-force", "Lorentz force from the electromagnetic part of gamma", 1e-8, hi, {}, e_lorentz},
      {"poisson-lambda", "Poisson bracket as i(df ^ dg) Lambda", 1e-8, hi, {"einstein.poisson-lambda"}, e_poisson_lambda},
      {"poisson-antisymmetry", "Poisson bracket is antisymmetric", 1e-8, hi, {"einstein.poisson-lambda"}, e_poisson_antisymmetry},
      {"special-value", "f = -G(d, X) + fbar", 1e-10, hi, {}, e_special_value},
      {"observed-splitting", "F rebuilt from the observed electric and magnetic fields", 1e-8, hi, {}, e_splitting},
  }});
  s.push_back({"einstein-brackets", Framework::Einstein, {
      {"bracket-closed-form", "closed special bracket equals its definition", 1e-7, hi, {}, e_bracket_closed},
      {"tangent-morphism", "X of the bracket is the Lie bracket of the lifts", 1e-8, hi, {"einstein.tangent-morphism"}, e_tangent_morphism},
      {"bar-pair-bracket", "bar part is the (q/hbar) F pair bracket", 1e-8, hi, {"einstein.tangent-morphism"}, e_bar_pair},
      {"bracket-jacobi", "Jacobi identity of the special bracket", 1e-7, hi, {"einstein.bracket-jacobi"}, e_bracket_jacobi},
      {"lift-projectable", "Hamiltonian lift with sigma = tau(X) projects", 1e-9, hi, {}, e_lift_projectable},
      {"lift-witness", "Hamiltonian lift of (x^1_0)^3 does not project", 1e-3, lo, {}, e_lift_witness},
      {"golden-brackets", "brackets of coordinates, energy and momenta", 1e-10, hi, {}, e_golden_brackets},
  }});
  s.push_back({"einstein-quantum", Framework::Einstein, {
      {"F-isomorphism", "F maps the special bracket to the Hermitian bracket", 1e-8, hi, {"quantum.einstein-isomorphism"}, e_iso},
      {"H-inverse", "H and F are mutually inverse", 1e-12, hi, {}, e_inverse},
      {"observer-note", "F through an observer equals F through the electromagnetic connection", 1e-8, hi, {}, e_note},
      {"F-golden", "F of coordinates, energy and momenta", 1e-10, hi, {}, e_golden_F},
  }});
  s.push_back({"section1-general", std::nullopt, {
      {"theorem-intertwining", "classify_j intertwines the Phi-twisted bracket and the Hermitian bracket", 1e-8, hi, {"quantum.section1-theorem"}, q_theorem},
      {"pair-jacobi", "Jacobi identity of the pair bracket for closed Phi", 1e-8, hi, {"quantum.section1-theorem"}, q_pair_jacobi},
      {"nonclosed-witness", "Jacobi identity fails for Phi = x^0 d^1 ^ d^2", 1e-3, lo, {}, q_nonclosed_witness},
      {"curvature-closed", "curvature is closed", 1e-10, hi, {}, q_curvature_closed},
      {"curvature-defect", "[c(X1), c(X2)] = c([X1, X2]) + i Phi(X1, X2) I", 1e-10, hi, {}, q_defect},
      {"classify-inverse", "classify_h and classify_j are mutually inverse", 1e-12, hi, {}, q_classify_inverse},
      {"central-extension", "projection to X has kernel the vertical fields", 1e-12, hi, {"quantum.central-extension"}, q_central_extension},
      {"hermitian-linear", "Hermitian fields are complex linear", 1e-12, hi, {"quantum.hermitian-linear"}, q_hermitian_linear},
      {"metric-lie-derivative", "L(Y)h display against the fibre flow", 1e-5, hi, {}, q_metric_lie},
      {"action-commutator", "commutator of actions is the action of the bracket", 1e-8, hi, {}, q_action_commutator},
      {"metric-compatibility", "X.h(psi, phi) = h(Y.psi, phi) + h(psi, Y.phi)", 1e-9, hi, {}, q_metric_compatibility},
  }});
  s.push_back({"orbits", std::nullopt, {
      {"law-of-motion", "RK4 orbits satisfy the law of motion", 1e-6, hi, {}, orbit_law},
      {"cyclotron", "uniform magnetic field: circle of radius hbar v / (q B)", 1e-5, hi, {}, orbit_cyclotron},
      {"hyperbolic", "constant electric field: hyperbolic worldline", 1e-5, hi, {}, orbit_hyperbolic},
      {"straight-line", "no field, constant metric: straight line", 1e-12, hi, {}, orbit_straight},
  }});
  return s;
}

}  // namespace

const std::vector<Suite>& suites() {
  static const std::vector<Suite> s = build();
  return s;
}

const Suite& suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return s;
  std::string known;
  for (const auto& s : suites()) known += (known.empty() ? "" : ", ") + s.name;
  throw UsageError("unknown suite '" + name + "' (known: " + known + ")");
}

const std::vector<Invariant>& module_invariants() {
  static const std::vector<Invariant> v = {
      {"galilei", "galilei.gamma-identities", "i(gamma) dt = 1 and i(gamma) Omega = 0"},
      {"galilei", "galilei.joined-connection", "joined connection: nabla dt = 0, nabla g = 0, torsion free"},
      {"galilei", "galilei.bracket-closed-form", "closed special bracket equals the definitional bracket"},
      {"galilei", "galilei.tangent-morphism", "X of the special bracket is the Lie bracket"},
      {"galilei", "galilei.bracket-jacobi", "Jacobi identity of the special bracket"},
      {"galilei", "galilei.lift-projectable", "Hamiltonian lift projects exactly for special functions"},
      {"galilei", "galilei.bracket-observer-independence", "special bracket does not depend on the observer"},
      {"einstein", "einstein.technical-identities", "identities of alpha, tau and the contact map"},
      {"einstein", "einstein.cosymplectic", "d Omega = 0 and Theta ^ Omega^3 does not vanish"},
      {"einstein", "einstein.horizontal-potential", "Omega from the horizontal potential"},
      {"einstein", "einstein.tangent-morphism", "X of the bracket is the Lie bracket, bar part the F pair bracket"},
      {"einstein", "einstein.bracket-jacobi", "Jacobi identity of the special bracket"},
      {"einstein", "einstein.poisson-lambda", "Poisson antisymmetry and the Lambda contraction"},
      {"quantum", "quantum.section1-theorem", "classify_j intertwines the twisted and Hermitian brackets"},
      {"quantum", "quantum.central-extension", "projection to X is a central extension"},
      {"quantum", "quantum.hermitian-linear", "Hermitian fields are complex linear"},
      {"quantum", "quantum.galilei-isomorphism", "Galilei F is a Lie algebra isomorphism"},
      {"quantum", "quantum.galilei-observer-independence", "Galilei F does not depend on the observer"},
      {"quantum", "quantum.einstein-isomorphism", "Einstein F is a Lie algebra isomorphism"},
  };
  return v;
}

bool SuiteReport::passed() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

SuiteReport run_suite(const Model& m, const std::string& name, int points, std::uint64_t seed,
                      const std::map<std::string, double>& tolerances, const std::vector<std::string>& only) {
  const Suite& s = suite(name);
  if (points < 1) throw UsageError("--points must be positive");
  if (s.framework && *s.framework != m.framework)
    throw FrameworkMismatch("suite " + name + " needs a " + framework_name(*s.framework) + " model, " + m.name +
                            " is " + framework_name(m.framework));
  const auto known = [&](const std::string& k) {
    for (const auto& c : s.checks)
      if (c.name == k) return;
    throw UsageError("suite " + name + " has no check '" + k + "'");
  };
  for (const auto& [k, v] : tolerances) {
    known(k);
    if (!(v >= 0)) throw UsageError("tolerance for " + k + " must be a number >= 0");
  }
  for (const auto& k : only) known(k);

  const auto start = std::chrono::steady_clock::now();
  std::shared_ptr<const galilei::Geometry> gal;
  std::shared_ptr<const einstein::Geometry> ein;
  if (m.framework == Framework::Galilei)
    gal = std::make_shared<const galilei::Geometry>(m);
  else
    ein = std::make_shared<const einstein::Geometry>(m);

  std::vector<std::future<Record>> jobs;
  for (const auto& c : s.checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    jobs.push_back(std::async(std::launch::async, [&, c]() {
      Record r;
      r.name = c.name;
      r.anchor = c.anchor;
      r.tolerance = c.tolerance;
      r.mode = c.mode;
      if (auto it = tolerances.find(c.name); it != tolerances.end()) r.tolerance = it->second;
      Context ctx{m, points, gen::Rng(seed, gen::stream_id(s.name + "/" + c.name)), gal, ein};
      try {
        const CheckResult out = c.run(ctx);
        r.residual = out.value;
        r.skipped = out.skipped;
        r.reason = out.reason;
      } catch (const std::exception& e) {
        r.residual = c.mode == Mode::AtMost ? kInf : 0;
        r.reason = e.what();
      }
      r.pass = r.skipped || (c.mode == Mode::AtMost ? r.residual <= r.tolerance : r.residual >= r.tolerance);
      return r;
    }));
  }
  SuiteReport rep;
  rep.suite = name;
  rep.model = m.name;
  rep.seed = seed;
  rep.points = points;
  for (auto& j : jobs) rep.records.push_back(j.get());
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SuiteReport run_suite(const std::string& model_path, const std::string& name, int points, std::uint64_t seed,
                      const std::map<std::string, double>& tolerances, const std::vector<std::string>& only) {
  (void)suite(name);
  Model m = load_model(model_path);
  validate(m);
  return run_suite(m, name, points, seed, tolerances, only);
}

}  // namespace cqm::harness
