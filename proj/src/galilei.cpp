#include "cqm/galilei.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "cqm/linalg.hpp"

namespace cqm::galilei {

namespace {

using Vec = std::vector<Taylor>;

Field spacetime_projection() { return Field::identity(kPhaseDim).select({0, 1, 2, 3}); }

ScalarField lift(const ScalarField& f) { return f.compose(spacetime_projection()); }

std::span<const Taylor> spacetime(std::span<const Taylor> z) { return z.subspan(0, 4); }

ScalarField metric_entry(const Geometry& g, int i, int j) { return ScalarField(g.G().select({3 * i + j})); }
ScalarField inverse_entry(const Geometry& g, int i, int j) { return ScalarField(g.Ginv().select({3 * i + j})); }

// G(a, b) for spacetime scalar triples.
ScalarField metric_pair(const Geometry& g, const std::array<ScalarField, 3>& a, const std::array<ScalarField, 3>& b) {
  ScalarField s = ScalarField::constant(4, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s = s + metric_entry(g, i, j) * a[i] * b[j];
  return s;
}

// G_ij a^j
std::array<ScalarField, 3> lower(const Geometry& g, const std::array<ScalarField, 3>& a) {
  std::array<ScalarField, 3> r;
  for (int i = 0; i < 3; ++i) {
    r[i] = ScalarField::constant(4, 0.0);
    for (int j = 0; j < 3; ++j) r[i] = r[i] + metric_entry(g, i, j) * a[j];
  }
  return r;
}

ScalarField dot(const std::array<ScalarField, 3>& a, const std::array<ScalarField, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

ScalarField evaluate_on(const std::array<ScalarField, 4>& A, const VectorField& X) {
  ScalarField s = A[0] * X.component(0);
  for (int l = 1; l < 4; ++l) s = s + A[l] * X.component(l);
  return s;
}

// Phi(X, Y) for a 2-form and two vector fields on the same chart.
ScalarField form_on(const PForm& w, const VectorField& X, const VectorField& Y) {
  const Field fw = w.field(), fx = X.field(), fy = Y.field();
  const int n = w.dim();
  return ScalarField::from(n, [fw, fx, fy, n](std::span<const Taylor> x) {
    const auto wv = fw(x);
    const std::vector<Vec> frame{fx(x), fy(x)};
    return alg::evaluate(n, 2, wv, frame);
  });
}

Matrix<Taylor> square(const Vec& flat, int n) {
  Matrix<Taylor> m(n);
  for (int i = 0; i < n; ++i) m[i].assign(flat.begin() + n * i, flat.begin() + n * (i + 1));
  return m;
}

// Homotopy potential of a closed 2-form about c: A_m = int_0^1 t w_nm(c + t(x - c)) (x - c)^n dt.
std::array<ScalarField, 4> homotopy_potential(const PForm& w, std::vector<double> c) {
  using Rule = boost::math::quadrature::gauss<double, 12>;
  std::vector<double> nodes, weights;
  const auto& a = Rule::abscissa();
  const auto& wt = Rule::weights();
  for (std::size_t k = 0; k < a.size(); ++k) {
    nodes.push_back(0.5 * (1 + a[k]));
    weights.push_back(0.5 * wt[k]);
    if (a[k] != 0) {
      nodes.push_back(0.5 * (1 - a[k]));
      weights.push_back(0.5 * wt[k]);
    }
  }
  const Field fw = w.field();
  const Field all(4, 4, [fw, c, nodes, weights](std::span<const Taylor> x) {
    Vec d, r(4, x[0].constant(0.0));
    for (int l = 0; l < 4; ++l) d.push_back(x[l] - c[l]);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      Vec y;
      for (int l = 0; l < 4; ++l) y.push_back(c[l] + nodes[k] * d[l]);
      const auto wv = fw(y);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          if (n == m) continue;
          r[m].axpy(weights[k] * nodes[k], alg::component(4, 2, wv, {n, m}) * d[n]);
        }
    }
    return r;
  });
  return {ScalarField(all.select({0})), ScalarField(all.select({1})), ScalarField(all.select({2})),
          ScalarField(all.select({3}))};
}

PForm one_form(const std::array<ScalarField, 4>& A) { return PForm::from_components(4, 1, {A[0], A[1], A[2], A[3]}); }

}  // namespace

Geometry::Geometry(const Model& m) : model_(m) {
  if (m.framework != Framework::Galilei) throw std::invalid_argument("galilei geometry needs a galilei model");
  std::vector<Field> parts;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) parts.push_back(m.metric[i][j].field());
  G_ = Field::stack(parts);
  const Field G = G_;
  Ginv_ = Field(4, 9, [G](std::span<const Taylor> x) {
    const auto inv = inverse(square(G(x), 3));
    Vec r;
    for (const auto& row : inv) r.insert(r.end(), row.begin(), row.end());
    return r;
  });

  const double qh = m.q / m.hbar;
  Phi_ = m.phi_grav + qh * exterior_derivative(one_form(m.A));

  const Field Gi = Ginv_, Ph = Phi_.field();
  K_ = Field(4, 64, [G, Gi, Ph](std::span<const Taylor> x) {
    const FieldJet J = jet1(G, x);
    const auto gi = Gi(x);
    const auto ph = Ph(x);
    Vec K(64, x[0].constant(0.0));
    auto at = [&](int l, int n, int mu) -> Taylor& { return K[16 * l + 4 * n + mu]; };
    auto dG = [&](int a, int b, int l) -> const Taylor& { return J.d[3 * a + b][l]; };
    auto phi = [&](int a, int b) { return alg::component(4, 2, ph, {a, b}); };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Taylor& gij = gi[3 * i + j];
        at(0, i + 1, 0).fma(-1.0 * gij, phi(0, j + 1));
        for (int h = 0; h < 3; ++h) {
          const Taylor t = -0.5 * gij * (dG(h, j, 0) + phi(h + 1, j + 1));
          at(h + 1, i + 1, 0) += t;
          at(0, i + 1, h + 1) += t;
          for (int k = 0; k < 3; ++k)
            at(h + 1, i + 1, k + 1).fma(-0.5 * gij, dG(j, k, h + 1) + dG(j, h, k + 1) - dG(h, k, j + 1));
        }
      }
    return K;
  });

  const Field K = K_;
  Gamma_ = Field(kPhaseDim, 12, [K](std::span<const Taylor> z) {
    const auto k = K(spacetime(z));
    Vec r;
    for (int l = 0; l < 4; ++l)
      for (int i = 1; i <= 3; ++i) {
        Taylor s = k[16 * l + 4 * i];
        for (int j = 1; j <= 3; ++j) s.fma(k[16 * l + 4 * i + j], z[fibre(j)]);
        r.push_back(std::move(s));
      }
    return r;
  });

  const Field Gm = Gamma_;
  gamma_ = Field(kPhaseDim, 3, [Gm](std::span<const Taylor> z) {
    const auto g = Gm(z);
    Vec r;
    for (int i = 0; i < 3; ++i) {
      Taylor s = g[i];
      for (int h = 1; h <= 3; ++h) s.fma(g[3 * h + i], z[fibre(h)]);
      r.push_back(std::move(s));
    }
    return r;
  });

  const Field gm = gamma_;
  gamma_field_ = VectorField(Field(kPhaseDim, kPhaseDim, [gm](std::span<const Taylor> z) {
    const auto g = gm(z);
    return Vec{z[0].constant(1.0), z[fibre(1)], z[fibre(2)], z[fibre(3)], g[0], g[1], g[2]};
  }));

  // Omega = 1/2 G_ij (dv^i - Gamma_l^i d^l) ^ (d^j - v^j d^0)
  Omega_ = PForm(kPhaseDim, 2, Field(kPhaseDim, 21, [G, Gm](std::span<const Taylor> z) {
    const auto g = G(spacetime(z));
    const auto gam = Gm(z);
    const Taylor zero = z[0].constant(0.0);
    std::array<Vec, 3> alpha, theta;
    for (int i = 0; i < 3; ++i) {
      alpha[i].assign(kPhaseDim, zero);
      theta[i].assign(kPhaseDim, zero);
      alpha[i][fibre(i + 1)] = z[0].constant(1.0);
      for (int l = 0; l < 4; ++l) alpha[i][l] = -1.0 * gam[3 * l + i];
      theta[i][i + 1] = z[0].constant(1.0);
      theta[i][0] = -1.0 * z[fibre(i + 1)];
    }
    Vec r(21, zero);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto w = alg::wedge(kPhaseDim, 1, alpha[i], 1, theta[j]);
        const Taylor c = 0.5 * g[3 * i + j];
        for (int k = 0; k < 21; ++k) r[k].fma(c, w[k]);
      }
    return r;
  }));

  // Lambda = G^ij (d_i + Gamma_i^h d^0_h) ^ d^0_j
  Lambda_ = Bivector(kPhaseDim, Field(kPhaseDim, 21, [Gi, Gm](std::span<const Taylor> z) {
    const auto gi = Gi(spacetime(z));
    const auto gam = Gm(z);
    Vec r(21, z[0].constant(0.0));
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) r[combination_index(kPhaseDim, {i, fibre(j)})] = gi[3 * (i - 1) + j - 1];
    // Gamma^{ab} = G^{ah} Gamma_h^b
    auto up = [&](int a, int b) {
      Taylor s = z[0].constant(0.0);
      for (int h = 1; h <= 3; ++h) s.fma(gi[3 * (a - 1) + h - 1], gam[3 * h + b - 1]);
      return s;
    };
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) r[combination_index(kPhaseDim, {fibre(a), fibre(b)})] = up(b, a) - up(a, b);
    return r;
  }));

  for (int l = 0; l < 4; ++l) A0_[l] = qh * m.A[l];
  bool has_grav = false;
  for (const auto& [k, v] : m.sources)
    if (k.rfind("gravPhi.", 0) == 0) has_grav = true;
  if (has_grav) {
    std::vector<double> c(4);
    for (int l = 0; l < 4; ++l) c[l] = 0.5 * (m.box.lo[l] + m.box.hi[l]);
    const auto An = homotopy_potential(m.phi_grav, c);
    for (int l = 0; l < 4; ++l) A0_[l] = A0_[l] + An[l];
  }
}

Observer chart_observer() {
  return {ScalarField::constant(4, 0.0), ScalarField::constant(4, 0.0), ScalarField::constant(4, 0.0)};
}

Field observer_section(const Observer& o) {
  return Field::stack({Field::identity(4), o[0].field(), o[1].field(), o[2].field()});
}

ScalarField phase_function(const Geometry& g, const SpecialFunction& f) {
  const Field G = g.G();
  const Field parts = Field::stack({f.f0.field(), f.f[0].field(), f.f[1].field(), f.f[2].field(), f.fbar.field()});
  return ScalarField::from(kPhaseDim, [G, parts](std::span<const Taylor> z) {
    const auto x = spacetime(z);
    const auto gv = G(x);
    const auto p = parts(x);
    Taylor kin = z[0].constant(0.0), s = p[4];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Taylor gvj = gv[3 * i + j] * z[fibre(j + 1)];
        kin.fma(gvj, z[fibre(i + 1)]);
        s.fma(p[1 + i], gvj);
      }
    s.fma(0.5 * p[0], kin);
    return s;
  });
}

double special_value(const Geometry& g, const SpecialFunction& f, const Observer& o, std::span<const double> z) {
  const auto x = z.subspan(0, 4);
  const ObservedComponents c = observe(g, f, o);
  const auto gv = g.G().values(x);
  double d[3];
  for (int i = 0; i < 3; ++i) d[i] = z[fibre(i + 1)] - o[i].value(x);
  double kin = 0, mom = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      kin += gv[3 * i + j] * d[i] * d[j];
      mom += c.fp[i].value(x) * gv[3 * i + j] * d[j];
    }
  return 0.5 * c.f0.value(x) * kin + mom + c.fo.value(x);
}

ObservedComponents observe(const Geometry& g, const SpecialFunction& f, const Observer& o) {
  ObservedComponents c;
  c.f0 = f.f0;
  for (int i = 0; i < 3; ++i) c.fp[i] = f.f[i] + f.f0 * o[i];
  c.fo = f.fbar + dot(f.f, lower(g, o)) + 0.5 * (f.f0 * metric_pair(g, o, o));
  return c;
}

SpecialFunction unobserve(const Geometry& g, const ObservedComponents& c, const Observer& o) {
  SpecialFunction f;
  f.f0 = c.f0;
  for (int i = 0; i < 3; ++i) f.f[i] = c.fp[i] - c.f0 * o[i];
  f.fbar = c.fo - dot(f.f, lower(g, o)) - 0.5 * (c.f0 * metric_pair(g, o, o));
  return f;
}

ObservedComponents transition(const Geometry& g, const ObservedComponents& c, const Observer& o,
                              const Observer& o2) {
  Observer v;
  for (int i = 0; i < 3; ++i) v[i] = o2[i] - o[i];
  ObservedComponents r;
  r.f0 = c.f0;
  for (int i = 0; i < 3; ++i) r.fp[i] = c.fp[i] + c.f0 * v[i];
  r.fo = c.fo + dot(c.fp, lower(g, v)) + 0.5 * (c.f0 * metric_pair(g, v, v));
  return r;
}

VectorField tangent_lift(const SpecialFunction& f) {
  return VectorField::from_components({f.f0, -f.f[0], -f.f[1], -f.f[2]});
}

double nabla_g_residual(const Geometry& g, std::span<const double> x) {
  const auto gi = g.Ginv().expand(x, 1);
  const auto K = g.K().values(x);
  double r = 0;
  for (int l = 0; l < 4; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = gi[3 * i + j].d(l);
        for (int k = 0; k < 3; ++k) {
          s -= K[16 * l + 4 * (i + 1) + k + 1] * gi[3 * k + j].value();
          s -= K[16 * l + 4 * (j + 1) + k + 1] * gi[3 * i + k].value();
        }
        r = std::max(r, std::abs(s));
      }
  return r;
}

double nabla_dt_residual(const Geometry& g, std::span<const double> x) {
  const auto K = g.K().values(x);
  double r = 0;
  for (int l = 0; l < 4; ++l)
    for (int mu = 0; mu < 4; ++mu) r = std::max(r, std::abs(K[16 * l + mu]));
  return r;
}

double torsion_residual(const Geometry& g, std::span<const double> x) {
  const auto K = g.K().values(x);
  double r = 0;
  for (int l = 0; l < 4; ++l)
    for (int n = 0; n < 4; ++n)
      for (int mu = 0; mu < 4; ++mu) r = std::max(r, std::abs(K[16 * l + 4 * n + mu] - K[16 * mu + 4 * n + l]));
  return r;
}

ScalarField poisson_bracket(const Geometry& g, const ScalarField& f, const ScalarField& h) {
  const Field ff = f.field(), fh = h.field(), Gi = g.Ginv(), Gm = g.Gamma();
  return ScalarField::from(kPhaseDim, [ff, fh, Gi, Gm](std::span<const Taylor> z) {
    const FieldJet jf = jet1(ff, z), jh = jet1(fh, z);
    const auto& df = jf.d[0];
    const auto& dh = jh.d[0];
    const auto gi = Gi(spacetime(z));
    const auto gam = Gm(z);
    Taylor s = z[0].constant(0.0);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        const Taylor& gij = gi[3 * (i - 1) + j - 1];
        s.fma(gij, df[i] * dh[fibre(j)] - dh[i] * df[fibre(j)]);
      }
    // Gamma^{ij} = G^{ih} Gamma_h^j
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        Taylor gij = z[0].constant(0.0), gji = z[0].constant(0.0);
        for (int h = 1; h <= 3; ++h) {
          gij.fma(gi[3 * (i - 1) + h - 1], gam[3 * h + j - 1]);
          gji.fma(gi[3 * (j - 1) + h - 1], gam[3 * h + i - 1]);
        }
        s.fma(-1.0 * (gij - gji), df[fibre(i)] * dh[fibre(j)]);
      }
    return s;
  });
}

ScalarField poisson_bracket_lambda(const Geometry& g, const ScalarField& f, const ScalarField& h) {
  return pair(g.Lambda(), differential(f), differential(h));
}

VectorField hamiltonian_lift(const Geometry& g, const ScalarField& sigma, const ScalarField& f) {
  const Field gf = g.gamma_field().field(), ham = contract(differential(f), g.Lambda()).field(), s = sigma.field();
  return VectorField(Field(kPhaseDim, kPhaseDim, [gf, ham, s](std::span<const Taylor> z) {
    auto r = ham(z);
    const auto gv = gf(z);
    const Taylor sv = s(z)[0];
    for (int k = 0; k < kPhaseDim; ++k) r[k].fma(sv, gv[k]);
    return r;
  }));
}

SpecialFunction special_bracket(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h,
                                const Observer& o) {
  const VectorField Xf = tangent_lift(f), Xh = tangent_lift(h);
  const VectorField X = lie_bracket(Xf, Xh);
  const ObservedComponents cf = observe(g, f, o), ch = observe(g, h, o);
  ObservedComponents r;
  r.f0 = X.component(0);
  for (int i = 0; i < 3; ++i) r.fp[i] = r.f0 * o[i] - X.component(i + 1);
  r.fo = lie_derivative_scalar(Xf, ch.fo) - lie_derivative_scalar(Xh, cf.fo) + form_on(observed_Phi(g, o), Xf, Xh);
  return unobserve(g, r, o);
}

ScalarField special_bracket_definitional(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h) {
  const ScalarField pf = phase_function(g, f), ph = phase_function(g, h);
  const VectorField& gam = g.gamma_field();
  return poisson_bracket(g, pf, ph) + lift(f.f0) * lie_derivative_scalar(gam, ph) -
         lift(h.f0) * lie_derivative_scalar(gam, pf);
}

PForm observed_Phi(const Geometry& g, const Observer& o) { return 2.0 * pullback(observer_section(o), g.Omega()); }

std::array<ScalarField, 4> observed_potential(const Geometry& g, const Observer& o) {
  return transition_potential(g, g.potential(), chart_observer(), o);
}

std::array<ScalarField, 4> transition_potential(const Geometry& g, const std::array<ScalarField, 4>& A,
                                                const Observer& o, const Observer& o2) {
  Observer v;
  for (int i = 0; i < 3; ++i) v[i] = o2[i] - o[i];
  const auto gv = lower(g, v);
  // nu[o] maps d^i to d^i - o^i d^0
  std::array<ScalarField, 4> r;
  r[0] = A[0] - 0.5 * metric_pair(g, v, v) - dot(o, gv);
  for (int i = 0; i < 3; ++i) r[i + 1] = A[i + 1] + gv[i];
  return r;
}

Field gamma_em(const Geometry& g) {
  const Model& m = g.model();
  const Field F = exterior_derivative(one_form(m.A)).field(), Gi = g.Ginv();
  const double qm = m.q / m.m, mh = m.m / m.hbar;
  return Field(kPhaseDim, 3, [F, Gi, qm, mh](std::span<const Taylor> z) {
    const auto x = spacetime(z);
    const auto fv = F(x);
    const auto gi = Gi(x);
    Vec r;
    for (int i = 1; i <= 3; ++i) {
      Taylor s = z[0].constant(0.0);
      for (int j = 1; j <= 3; ++j) {
        // F_mu^i = g^ij F_mu j with g^-1 = (m/hbar) G^-1
        Taylor lower = alg::component(4, 2, fv, {0, j});
        for (int h = 1; h <= 3; ++h) lower.fma(alg::component(4, 2, fv, {h, j}), z[fibre(h)]);
        s.fma(mh * gi[3 * (i - 1) + j - 1], lower);
      }
      r.push_back(-qm * s);
    }
    return r;
  });
}

Bivector Lambda_em(const Geometry& g) {
  const Model& m = g.model();
  const Field F = exterior_derivative(one_form(m.A)).field(), Gi = g.Ginv();
  const double qh = m.q / m.hbar;
  return Bivector(kPhaseDim, Field(kPhaseDim, 21, [F, Gi, qh](std::span<const Taylor> z) {
    const auto x = spacetime(z);
    const auto fv = F(x);
    const auto gi = Gi(x);
    Vec r(21, z[0].constant(0.0));
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) {
        Taylor& s = r[combination_index(kPhaseDim, {fibre(a), fibre(b)})];
        for (int h = 1; h <= 3; ++h)
          for (int k = 1; k <= 3; ++k)
            s.fma(qh * gi[3 * (a - 1) + h - 1] * gi[3 * (b - 1) + k - 1], alg::component(4, 2, fv, {h, k}));
      }
    return r;
  }));
}

SpecialFunction coordinate_function(const Geometry&, int lambda) {
  const ScalarField zero = ScalarField::constant(4, 0.0);
  return {zero, {zero, zero, zero}, ScalarField::coordinate(4, lambda)};
}

SpecialFunction energy(const Geometry& g, const Observer& o) {
  const auto A = observed_potential(g, o);
  const ScalarField zero = ScalarField::constant(4, 0.0);
  return unobserve(g, {ScalarField::constant(4, 1.0), {zero, zero, zero}, -A[0]}, o);
}

SpecialFunction momentum(const Geometry& g, const Observer& o, int i) {
  const auto A = observed_potential(g, o);
  ObservedComponents c;
  c.f0 = ScalarField::constant(4, 0.0);
  for (int k = 0; k < 3; ++k) c.fp[k] = ScalarField::constant(4, k + 1 == i ? 1.0 : 0.0);
  c.fo = A[i];
  return unobserve(g, c, o);
}

SpecialFunction kinetic(const Geometry& g, const Observer& o) {
  const auto A = observed_potential(g, o);
  ObservedComponents c;
  c.f0 = ScalarField::constant(4, 2.0);
  std::array<ScalarField, 3> up;
  for (int i = 0; i < 3; ++i) {
    up[i] = ScalarField::constant(4, 0.0);
    for (int j = 0; j < 3; ++j) up[i] = up[i] + inverse_entry(g, i, j) * A[j + 1];
    c.fp[i] = 2.0 * up[i];
  }
  c.fo = dot(up, {A[1], A[2], A[3]});
  return unobserve(g, c, o);
}

quantum::HermitianField to_hermitian(const Geometry& g, const SpecialFunction& f, const Observer& o,
                                     const std::array<ScalarField, 4>& A) {
  const VectorField X = tangent_lift(f);
  return {X, evaluate_on(A, X) + observe(g, f, o).fo};
}

SpecialFunction from_hermitian(const Geometry& g, const quantum::HermitianField& Y, const Observer& o,
                               const std::array<ScalarField, 4>& A) {
  ObservedComponents c;
  c.f0 = Y.X.component(0);
  for (int i = 0; i < 3; ++i) c.fp[i] = c.f0 * o[i] - Y.X.component(i + 1);
  c.fo = Y.b - evaluate_on(A, Y.X);
  return unobserve(g, c, o);
}

SpecialFunction operator+(const SpecialFunction& a, const SpecialFunction& b) {
  return {a.f0 + b.f0, {a.f[0] + b.f[0], a.f[1] + b.f[1], a.f[2] + b.f[2]}, a.fbar + b.fbar};
}

double max_difference(const SpecialFunction& a, const SpecialFunction& b, std::span<const double> x) {
  double r = std::abs(a.f0.value(x) - b.f0.value(x));
  for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(a.f[i].value(x) - b.f[i].value(x)));
  return std::max(r, std::abs(a.fbar.value(x) - b.fbar.value(x)));
}

}  // namespace cqm::galilei
