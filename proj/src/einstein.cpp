#include "cqm/einstein.hpp"

#include <Eigen/Dense>

#include "cqm/linalg.hpp"

namespace cqm::einstein {

namespace {

using Vec = std::vector<Taylor>;

std::span<const Taylor> spacetime(std::span<const Taylor> z) { return z.subspan(0, 4); }

Field spacetime_projection() { return Field::identity(kPhaseDim).select({0, 1, 2, 3}); }

std::string describe(const std::vector<double>& p) {
  std::string s = "non-timelike phase point (";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + std::to_string(p[k]);
  return s + ")";
}

// Pointwise data shared by every phase field.
struct Local {
  Vec g, gi, dbar, gb0;  // gb0_l = g_lm dbar^m
  Taylor r, alpha;
};

Local local(const Field& g, const Field& gi, std::span<const Taylor> z) {
  Local L;
  const auto x = spacetime(z);
  L.g = g(x);
  L.gi = gi(x);
  L.dbar = {z[0].constant(1.0), z[fibre(1)], z[fibre(2)], z[fibre(3)]};
  L.r = z[0].constant(0.0);
  for (int l = 0; l < 4; ++l) {
    Taylor s = z[0].constant(0.0);
    for (int m = 0; m < 4; ++m) s.fma(L.g[4 * l + m], L.dbar[m]);
    L.r.fma(s, L.dbar[l]);
    L.gb0.push_back(std::move(s));
  }
  if (!(L.r.value() < 0)) throw LightconeViolation(values(z));
  L.alpha = pow(-1.0 * L.r, -0.5);
  return L;
}

// Gbar^{il} = (hbar/m)(g^{il} - g^{0l} v^i)
Taylor Gbar_up(const Local& L, std::span<const Taylor> z, double hm, int i, int l) {
  return hm * (L.gi[4 * i + l] - L.gi[l] * z[fibre(i)]);
}

ScalarField evaluate_on(const std::array<ScalarField, 4>& A, const VectorField& X) {
  ScalarField s = A[0] * X.component(0);
  for (int l = 1; l < 4; ++l) s = s + A[l] * X.component(l);
  return s;
}

ScalarField form_on(const PForm& w, const VectorField& X, const VectorField& Y) {
  const Field fw = w.field(), fx = X.field(), fy = Y.field();
  const int n = w.dim();
  return ScalarField::from(n, [fw, fx, fy, n](std::span<const Taylor> x) {
    const auto wv = fw(x);
    const std::vector<Vec> frame{fx(x), fy(x)};
    return alg::evaluate(n, 2, wv, frame);
  });
}

Field observer_section(const std::array<ScalarField, 3>& o) {
  return Field::stack({Field::identity(4), o[0].field(), o[1].field(), o[2].field()});
}

double max_abs(double a, double b) { return std::max(a, std::abs(b)); }

}  // namespace

LightconeViolation::LightconeViolation(std::vector<double> point)
    : std::domain_error(describe(point)), point_(std::move(point)) {}

Geometry::Geometry(const Model& m) : model_(m) {
  if (m.framework != Framework::Einstein) throw std::invalid_argument("einstein geometry needs an einstein model");
  std::vector<Field> parts;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) parts.push_back(m.metric[i][j].field());
  G_ = Field::stack(parts);
  const double hm = m.hbar / m.m, mh = m.m / m.hbar, qh = m.q / m.hbar, c = m.c;
  const Field G = G_;
  g_ = Field(4, 16, [G, hm](std::span<const Taylor> x) {
    auto v = G(x);
    for (auto& t : v) t *= hm;
    return v;
  });
  const Field gf = g_;
  ginv_ = Field(4, 16, [gf](std::span<const Taylor> x) {
    const auto v = gf(x);
    Matrix<Taylor> a(4);
    for (int i = 0; i < 4; ++i) a[i].assign(v.begin() + 4 * i, v.begin() + 4 * (i + 1));
    const auto inv = inverse(a);
    Vec r;
    for (const auto& row : inv) r.insert(r.end(), row.begin(), row.end());
    return r;
  });
  const Field gi = ginv_;

  K_ = Field(4, 64, [gf, gi](std::span<const Taylor> x) {
    const FieldJet J = jet1(gf, x);
    const auto inv = gi(x);
    Vec K(64, x[0].constant(0.0));
    for (int l = 0; l < 4; ++l)
      for (int n = 0; n < 4; ++n)
        for (int mu = 0; mu < 4; ++mu) {
          Taylor& s = K[16 * l + 4 * n + mu];
          for (int r = 0; r < 4; ++r)
            s.fma(-0.5 * inv[4 * n + r], J.d[4 * r + mu][l] + J.d[4 * r + l][mu] - J.d[4 * l + mu][r]);
        }
    return K;
  });

  F_ = exterior_derivative(PForm::from_components(4, 1, {m.A[0], m.A[1], m.A[2], m.A[3]}));

  alpha_ = Field(kPhaseDim, 1, [gf, gi](std::span<const Taylor> z) { return Vec{local(gf, gi, z).alpha}; });
  contact_ = Field(kPhaseDim, 4, [gf, gi, c](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    Vec r;
    for (int l = 0; l < 4; ++l) r.push_back(c * L.alpha * L.dbar[l]);
    return r;
  });
  tau_ = Field(kPhaseDim, 4, [gf, gi, c](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    Vec r;
    for (int l = 0; l < 4; ++l) r.push_back((-1.0 / c) * L.alpha * L.gb0[l]);
    return r;
  });

  const Field K = K_;
  Gamma_grav_ = Field(kPhaseDim, 12, [K, gf, gi](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    const auto k = K(spacetime(z));
    Vec r;
    for (int l = 0; l < 4; ++l) {
      Taylor k0 = z[0].constant(0.0);
      for (int rho = 0; rho < 4; ++rho) k0.fma(k[16 * l + rho], L.dbar[rho]);
      for (int i = 1; i <= 3; ++i) {
        Taylor s = z[0].constant(0.0);
        for (int rho = 0; rho < 4; ++rho) s.fma(k[16 * l + 4 * i + rho], L.dbar[rho]);
        s -= z[fibre(i)] * k0;
        r.push_back(std::move(s));
      }
    }
    return r;
  });

  const Field F = F_.field();
  Gamma_em_ = Field(kPhaseDim, 12, [F, gf, gi, c, hm, qh](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    const auto fv = F(spacetime(z));
    auto Fc = [&](int a, int b) { return alg::component(4, 2, fv, {a, b}); };
    const Taylor a2 = L.alpha * L.alpha;
    const Taylor pre = (-0.5 * qh / c) * reciprocal(L.alpha);
    Vec r;
    for (int l = 0; l < 4; ++l)
      for (int i = 1; i <= 3; ++i) {
        Taylor s = z[0].constant(0.0);
        for (int mu = 0; mu < 4; ++mu) {
          Taylor Fd = z[0].constant(0.0);
          for (int rho = 0; rho < 4; ++rho) Fd.fma(Fc(rho, mu), L.dbar[rho]);
          s.fma(Gbar_up(L, z, hm, i, mu), Fc(l, mu) - a2 * L.gb0[l] * Fd);
        }
        r.push_back(pre * s);
      }
    return r;
  });

  const Field Gg = Gamma_grav_, Ge = Gamma_em_;
  Gamma_ = Field(kPhaseDim, 12, [Gg, Ge](std::span<const Taylor> z) {
    auto a = Gg(z);
    const auto b = Ge(z);
    for (int k = 0; k < 12; ++k) a[k] += b[k];
    return a;
  });
  const Field Gm = Gamma_;
  gamma_ = Field(kPhaseDim, 3, [Gm](std::span<const Taylor> z) {
    const auto gm = Gm(z);
    Vec r;
    for (int i = 0; i < 3; ++i) {
      Taylor s = gm[i];
      for (int h = 1; h <= 3; ++h) s.fma(gm[3 * h + i], z[fibre(h)]);
      r.push_back(std::move(s));
    }
    return r;
  });
  const Field gm = gamma_;
  gamma_field_ = VectorField(Field(kPhaseDim, kPhaseDim, [gm, gf, gi, c](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    const auto gv = gm(z);
    const Taylor ca = c * L.alpha;
    Vec r;
    for (int l = 0; l < 4; ++l) r.push_back(ca * L.dbar[l]);
    for (int i = 0; i < 3; ++i) r.push_back(ca * gv[i]);
    return r;
  }));

  // Theta = c alpha G_lm dbar^m d^l
  Theta_ = PForm(kPhaseDim, 1, Field(kPhaseDim, kPhaseDim, [gf, gi, c, mh](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    Vec r;
    for (int l = 0; l < 4; ++l) r.push_back((c * mh) * L.alpha * L.gb0[l]);
    for (int i = 0; i < 3; ++i) r.push_back(z[0].constant(0.0));
    return r;
  }));
  std::vector<ScalarField> up;
  for (int l = 0; l < 4; ++l) up.push_back(qh * m.A[l].compose(spacetime_projection()));
  for (int i = 0; i < 3; ++i) up.push_back(ScalarField::constant(kPhaseDim, 0.0));
  Aup_ = Theta_ + PForm::from_components(kPhaseDim, 1, up);

  // Omega = 1/2 c alpha Gbar_im (dv^i - Gamma_l^i d^l) ^ d^m, Gbar_im = (m/hbar)(g_im + c^2 tau_i tau_m)
  Omega_ = PForm(kPhaseDim, 2, Field(kPhaseDim, 21, [gf, gi, Gm, c, mh](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    const auto gam = Gm(z);
    const Taylor zero = z[0].constant(0.0), one = z[0].constant(1.0);
    // c^2 tau_i tau_m = alpha^2 gb0_i gb0_m
    const Taylor a2 = L.alpha * L.alpha;
    const Taylor half = (0.5 * c * mh) * L.alpha;
    Vec r(21, zero);
    for (int i = 1; i <= 3; ++i) {
      Vec a(kPhaseDim, zero);
      a[fibre(i)] = one;
      for (int l = 0; l < 4; ++l) a[l] = -1.0 * gam[3 * l + i - 1];
      for (int mu = 0; mu < 4; ++mu) {
        Vec d(kPhaseDim, zero);
        d[mu] = one;
        const auto w = alg::wedge(kPhaseDim, 1, a, 1, d);
        const Taylor coef = half * (L.g[4 * i + mu] + a2 * L.gb0[i] * L.gb0[mu]);
        for (int k = 0; k < 21; ++k) r[k].fma(coef, w[k]);
      }
    }
    return r;
  }));

  // Lambda = (1/(c alpha)) Gbar^{jl} (d_l + Gamma_l^i d^0_i) ^ d^0_j
  Lambda_ = Bivector(kPhaseDim, Field(kPhaseDim, 21, [gf, gi, Gm, c, hm](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    const auto gam = Gm(z);
    const Taylor inv = (1.0 / c) * reciprocal(L.alpha);
    Vec r(21, z[0].constant(0.0));
    for (int l = 0; l < 4; ++l)
      for (int j = 1; j <= 3; ++j) r[combination_index(kPhaseDim, {l, fibre(j)})] = inv * Gbar_up(L, z, hm, j, l);
    // Xi^{ab} = Gbar^{al} Gamma_l^b - Gbar^{bl} Gamma_l^a
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) {
        Taylor xi = z[0].constant(0.0);
        for (int l = 0; l < 4; ++l) {
          xi.fma(Gbar_up(L, z, hm, a, l), gam[3 * l + b - 1]);
          xi.fma(-1.0 * Gbar_up(L, z, hm, b, l), gam[3 * l + a - 1]);
        }
        r[combination_index(kPhaseDim, {fibre(a), fibre(b)})] = -1.0 * inv * xi;
      }
    return r;
  }));
}

double timelike_margin(const Geometry& g, std::span<const double> z) {
  const auto gv = g.g().values(z.subspan(0, 4));
  const double d[4] = {1, z[4], z[5], z[6]};
  double r = 0;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) r += gv[4 * l + m] * d[l] * d[m];
  return -r;
}

Bases adapted_bases(const Geometry& g, std::span<const double> z) {
  const double c = g.model().c;
  const auto alpha = g.alpha().values(z)[0];
  const auto tau = g.tau().values(z);
  Bases B{};
  B.b[0] = {1, z[4], z[5], z[6]};
  for (int i = 1; i <= 3; ++i)
    for (int l = 0; l < 4; ++l) B.b[i][l] = (l == i ? 1.0 : 0.0) - c * alpha * tau[i] * B.b[0][l];
  for (int i = 1; i <= 3; ++i) {
    B.beta[i] = {-z[fibre(i)], 0, 0, 0};
    B.beta[i][i] = 1;
  }
  B.beta[0] = {1, 0, 0, 0};
  for (int i = 1; i <= 3; ++i)
    for (int l = 0; l < 4; ++l) B.beta[0][l] += c * alpha * tau[i] * B.beta[i][l];
  return B;
}

std::vector<Residual> technical_identities(const Geometry& geo, std::span<const double> z) {
  const double c = geo.model().c;
  const auto x = z.subspan(0, 4);
  const auto gx = geo.g().expand(x, 1);
  const auto gv = geo.g().values(x), gi = geo.ginv().values(x);
  auto g = [&](int a, int b) { return gv[4 * a + b]; };
  auto ginv = [&](int a, int b) { return gi[4 * a + b]; };
  const Taylor alpha = geo.alpha().expand(z, 2)[0];
  const Taylor ialpha = reciprocal(alpha);
  const auto tauJ = geo.tau().expand(z, 1);
  const auto dJ = geo.contact().values(z);
  const double a = alpha.value();
  double tau[4], tup[4], db[4] = {1, z[4], z[5], z[6]};
  for (int l = 0; l < 4; ++l) {
    tau[l] = tauJ[l].value();
    tup[l] = -(a / c) * db[l];
  }
  const Bases B = adapted_bases(geo, z);
  double lo[4][4], up[4][4];  // gbar_{a l} = g(b_a, d_l), gbar^{a l} = g^-1(beta^a, d^l)
  for (int A = 0; A < 4; ++A)
    for (int l = 0; l < 4; ++l) {
      lo[A][l] = up[A][l] = 0;
      for (int m = 0; m < 4; ++m) {
        lo[A][l] += B.b[A][m] * g(m, l);
        up[A][l] += B.beta[A][m] * ginv(m, l);
      }
    }
  auto gpair = [&](const std::array<double, 4>& u, const std::array<double, 4>& v) {
    double s = 0;
    for (int l = 0; l < 4; ++l)
      for (int m = 0; m < 4; ++m) s += g(l, m) * u[l] * v[m];
    return s;
  };
  auto gipair = [&](const std::array<double, 4>& u, const std::array<double, 4>& v) {
    double s = 0;
    for (int l = 0; l < 4; ++l)
      for (int m = 0; m < 4; ++m) s += ginv(l, m) * u[l] * v[m];
    return s;
  };
  const double gpar = gpair(B.b[0], B.b[0]), gpar_up = gipair(B.beta[0], B.beta[0]);
  double gperp[3][3], gperp_up[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      gperp[i][j] = gpair(B.b[i + 1], B.b[j + 1]);
      gperp_up[i][j] = gipair(B.beta[i + 1], B.beta[j + 1]);
    }
  auto delta = [](int p, int q) { return p == q ? 1.0 : 0.0; };
  std::vector<Residual> out;
  auto add = [&](const char* name, double v) { out.push_back({name, v}); };

  double r = 0;
  for (int A = 0; A < 4; ++A)
    for (int C = 0; C < 4; ++C) {
      double s = 0;
      for (int l = 0; l < 4; ++l) s += B.beta[A][l] * B.b[C][l];
      r = max_abs(r, s - delta(A, C));
    }
  add("adapted bases are dual", r);
  r = 0;
  for (int i = 1; i <= 3; ++i) r = max_abs(r, gpair(B.b[0], B.b[i]));
  add("splitting is orthogonal", r);
  add("parallel metric is -1/alpha^2", std::abs(gpar + 1 / (a * a)));
  add("parallel inverse metric is -alpha^2", std::abs(gpar_up + a * a));
  r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = max_abs(r, gperp[i][j] - (g(i + 1, j + 1) + c * c * tau[i + 1] * tau[j + 1]));
  add("perpendicular metric", r);
  r = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      r = max_abs(r, gperp_up[i - 1][j - 1] - (ginv(i, j) - ginv(i, 0) * db[j] - ginv(j, 0) * db[i] +
                                               ginv(0, 0) * db[i] * db[j]));
  add("perpendicular inverse metric", r);
  r = 0;
  for (int l = 0; l < 4; ++l) {
    double s = g(0, l);
    for (int i = 1; i <= 3; ++i) s += g(i, l) * db[i];
    r = max_abs(r, lo[0][l] - s);
  }
  add("barred metric, time row", r);
  r = 0;
  for (int l = 0; l < 4; ++l) r = max_abs(r, up[0][l] + a * a * db[l]);
  add("barred inverse metric, time row", r);
  r = 0;
  for (int i = 1; i <= 3; ++i)
    for (int l = 0; l < 4; ++l) r = max_abs(r, lo[i][l] - (g(i, l) + c * c * tau[i] * tau[l]));
  add("barred metric, space rows", r);
  r = 0;
  for (int i = 1; i <= 3; ++i)
    for (int l = 0; l < 4; ++l) r = max_abs(r, up[i][l] - (ginv(i, l) - ginv(0, l) * db[i]));
  add("barred inverse metric, space rows", r);
  r = 0;
  for (int l = 0; l < 4; ++l) r = max_abs(r, lo[0][l] - gpar * B.beta[0][l]);
  add("time covector in the adapted basis", r);
  r = 0;
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 4; ++l) {
      double s = 0;
      for (int j = 0; j < 3; ++j) s += gperp[i][j] * B.beta[j + 1][l];
      r = max_abs(r, lo[i + 1][l] - s);
    }
  add("space covectors in the adapted basis", r);
  r = 0;
  for (int l = 0; l < 4; ++l) r = max_abs(r, up[0][l] - gpar_up * B.b[0][l]);
  add("time vector in the adapted basis", r);
  r = 0;
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 4; ++l) {
      double s = 0;
      for (int j = 0; j < 3; ++j) s += gperp_up[i][j] * B.b[j + 1][l];
      r = max_abs(r, up[i + 1][l] - s);
    }
  add("space vectors in the adapted basis", r);
  r = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      double s1 = 0, s2 = 0;
      for (int j = 0; j < 3; ++j) {
        s1 += lo[i + 1][j + 1] * gperp_up[j][k];
        s2 += lo[i + 1][j + 1] * (up[j + 1][k + 1] - up[j + 1][0] * db[k + 1]);
      }
      r = max_abs(r, s1 - delta(i, k));
      r = max_abs(r, s2 - delta(i, k));
    }
  add("spatial barred metric inverts to the perpendicular inverse", r);
  r = 0;
  for (int j = 0; j < 3; ++j) {
    double s = 0;
    for (int h = 0; h < 3; ++h) s += gperp_up[j][h] * lo[0][h + 1];
    r = max_abs(r, s - up[j + 1][0] / (a * a));
  }
  add("perpendicular inverse on the time row", r);
  r = 0;
  for (int A = 0; A < 4; ++A)
    for (int C = 0; C < 4; ++C) {
      double s = 0;
      for (int n = 0; n < 4; ++n) s += lo[A][n] * up[C][n];
      r = max_abs(r, s - delta(A, C));
    }
  add("barred metrics are inverse (basis indices)", r);
  r = 0;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) {
      double s = 0;
      for (int A = 0; A < 4; ++A) s += lo[A][l] * up[A][m];
      r = max_abs(r, s - delta(l, m));
    }
  add("barred metrics are inverse (chart indices)", r);
  r = 0;
  double r2 = 0, r3 = 0;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) {
      r = max_abs(r, lo[0][l] * up[0][m] + c * c * tau[l] * tup[m]);
      double s = 0;
      for (int i = 1; i <= 3; ++i) s += lo[i][l] * up[i][m];
      r2 = max_abs(r2, s - (delta(l, m) + c * c * tau[l] * tup[m]));
    }
  for (int l = 0; l < 4; ++l) {
    double s = 0;
    for (int i = 1; i <= 3; ++i) s += lo[0][i] * up[i][l];
    r3 = max_abs(r3, s - (ginv(0, l) / (a * a) + db[l]));
  }
  add("time projector", r);
  add("space projector", r2);
  add("mixed time and space contraction", r3);
  r = 0;
  for (int i = 1; i <= 3; ++i) {
    double s = lo[i][0];
    for (int j = 1; j <= 3; ++j) s += lo[i][j] * db[j];
    r = max_abs(r, s);
  }
  add("space rows annihilate the contact direction", r);
  r = r2 = r3 = 0;
  for (int j = 1; j <= 3; ++j) {
    r = max_abs(r, alpha.d(fibre(j)) - a * a * a * lo[0][j]);
    r2 = max_abs(r2, ialpha.d(fibre(j)) + a * lo[0][j]);
    for (int i = 1; i <= 3; ++i) r3 = max_abs(r3, ialpha.d2(fibre(i), fibre(j)) + a * lo[i][j]);
  }
  add("fibre derivative of alpha", r);
  add("fibre derivative of 1/alpha", r2);
  add("fibre Hessian of 1/alpha", r3);
  r = 0;
  for (int i = 1; i <= 3; ++i)
    for (int m = 0; m < 4; ++m) r = max_abs(r, tauJ[m].d(fibre(i)) + (a / c) * lo[i][m]);
  add("fibre derivative of the time form", r);
  r = 0;
  for (int l = 0; l < 4; ++l) {
    double s = gx[0].d(l);
    for (int h = 1; h <= 3; ++h) {
      s += 2 * gx[h].d(l) * db[h];
      for (int k = 1; k <= 3; ++k) s += gx[4 * h + k].d(l) * db[h] * db[k];
    }
    r = max_abs(r, alpha.d(l) - 0.5 * a * a * a * s);
  }
  add("spacetime derivative of alpha", r);
  double dd = 0, td = 0;
  for (int l = 0; l < 4; ++l) {
    td += tau[l] * dJ[l];
    for (int m = 0; m < 4; ++m) dd += g(l, m) * dJ[l] * dJ[m];
  }
  add("contact map has norm -c^2", std::abs(dd + c * c));
  add("time form on the contact map is 1", std::abs(td - 1));
  return out;
}

double nabla_g_residual(const Geometry& g, std::span<const double> x) {
  const auto gx = g.g().expand(x, 1);
  const auto K = g.K().values(x);
  double r = 0;
  for (int l = 0; l < 4; ++l)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double s = gx[4 * mu + nu].d(l);
        for (int rho = 0; rho < 4; ++rho) {
          s += K[16 * l + 4 * rho + mu] * gx[4 * rho + nu].value();
          s += K[16 * l + 4 * rho + nu] * gx[4 * mu + rho].value();
        }
        r = max_abs(r, s);
      }
  return r;
}

double torsion_residual(const Geometry& g, std::span<const double> x) {
  const auto K = g.K().values(x);
  double r = 0;
  for (int l = 0; l < 4; ++l)
    for (int n = 0; n < 4; ++n)
      for (int mu = 0; mu < 4; ++mu) r = max_abs(r, K[16 * l + 4 * n + mu] - K[16 * mu + 4 * n + l]);
  return r;
}

std::array<double, 4> lorentz_force(const Geometry& g, std::span<const double> z) {
  const auto x = z.subspan(0, 4);
  const auto gi = g.ginv().values(x);
  const auto F = g.F().values(x);
  const auto d = g.contact().values(z);
  std::array<double, 4> f{};
  for (int l = 0; l < 4; ++l)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        std::vector<int> idx{nu, mu};
        const int s = sort_sign(idx);
        if (!s) continue;
        f[l] -= gi[4 * l + mu] * d[nu] * s * F[combination_index(4, idx)];
      }
  return f;
}

std::array<double, 4> lorentz_force_from_gamma(const Geometry& g, std::span<const double> z) {
  const Model& m = g.model();
  const double ca = m.c * g.alpha().values(z)[0];
  const auto ge = g.Gamma_em().values(z);
  const Bases B = adapted_bases(g, z);
  const double db[4] = {1, z[4], z[5], z[6]};
  std::array<double, 4> f{};
  for (int i = 1; i <= 3; ++i) {
    // vertical component of the electromagnetic part of the gamma field
    double ve = 0;
    for (int l = 0; l < 4; ++l) ve += ge[3 * l + i - 1] * db[l];
    ve *= ca;
    for (int l = 0; l < 4; ++l) f[l] += (m.m / m.q) * ca * ve * B.b[i][l];
  }
  return f;
}

ScalarField poisson_bracket(const Geometry& geo, const ScalarField& f, const ScalarField& h) {
  const Field ff = f.field(), fh = h.field(), gf = geo.g(), gi = geo.ginv(), Gm = geo.Gamma();
  const double c = geo.model().c, hm = geo.model().hbar / geo.model().m;
  return ScalarField::from(kPhaseDim, [ff, fh, gf, gi, Gm, c, hm](std::span<const Taylor> z) {
    const Local L = local(gf, gi, z);
    const auto gam = Gm(z);
    const FieldJet jf = jet1(ff, z), jh = jet1(fh, z);
    const auto& df = jf.d[0];
    const auto& dh = jh.d[0];
    Taylor s = z[0].constant(0.0);
    for (int i = 1; i <= 3; ++i)
      for (int l = 0; l < 4; ++l) s.fma(Gbar_up(L, z, hm, i, l), df[l] * dh[fibre(i)] - dh[l] * df[fibre(i)]);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        Taylor xi = z[0].constant(0.0);
        for (int l = 0; l < 4; ++l) {
          xi.fma(Gbar_up(L, z, hm, i, l), gam[3 * l + j - 1]);
          xi.fma(-1.0 * Gbar_up(L, z, hm, j, l), gam[3 * l + i - 1]);
        }
        s.fma(-1.0 * xi, df[fibre(i)] * dh[fibre(j)]);
      }
    return (1.0 / c) * reciprocal(L.alpha) * s;
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

ScalarField phase_function(const Geometry& g, const SpecialFunction& f) {
  const Field th = g.Theta().field();
  const Field parts =
      Field::stack({f.X[0].field(), f.X[1].field(), f.X[2].field(), f.X[3].field(), f.fbar.field()});
  return ScalarField::from(kPhaseDim, [th, parts](std::span<const Taylor> z) {
    const auto t = th(z);
    const auto p = parts(spacetime(z));
    Taylor s = p[4];
    for (int l = 0; l < 4; ++l) s.fma(-1.0 * t[l], p[l]);
    return s;
  });
}

ScalarField sigma(const Geometry& g, const SpecialFunction& f) {
  const Field tf = g.tau();
  const Field X = Field::stack({f.X[0].field(), f.X[1].field(), f.X[2].field(), f.X[3].field()});
  return ScalarField::from(kPhaseDim, [tf, X](std::span<const Taylor> z) {
    const auto t = tf(z);
    const auto x = X(spacetime(z));
    Taylor s = z[0].constant(0.0);
    for (int l = 0; l < 4; ++l) s.fma(t[l], x[l]);
    return s;
  });
}

double special_value(const Geometry& g, const SpecialFunction& f, std::span<const double> z) {
  const auto x = z.subspan(0, 4);
  const auto d = g.contact().values(z);
  const auto G = g.G().values(x);
  double s = f.fbar.value(x);
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) s -= G[4 * l + m] * d[l] * f.X[m].value(x);
  return s;
}

SpecialFunction special_bracket(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h) {
  const VectorField Xf = VectorField::from_components({f.X[0], f.X[1], f.X[2], f.X[3]});
  const VectorField Xh = VectorField::from_components({h.X[0], h.X[1], h.X[2], h.X[3]});
  const VectorField X = lie_bracket(Xf, Xh);
  const double qh = g.model().q / g.model().hbar;
  SpecialFunction r;
  for (int l = 0; l < 4; ++l) r.X[l] = X.component(l);
  r.fbar = lie_derivative_scalar(Xf, h.fbar) - lie_derivative_scalar(Xh, f.fbar) + qh * form_on(g.F(), Xf, Xh);
  return r;
}

ScalarField special_bracket_definitional(const Geometry& g, const SpecialFunction& f, const SpecialFunction& h) {
  const ScalarField pf = phase_function(g, f), ph = phase_function(g, h);
  const VectorField& gam = g.gamma_field();
  return poisson_bracket(g, pf, ph) + sigma(g, f) * lie_derivative_scalar(gam, ph) -
         sigma(g, h) * lie_derivative_scalar(gam, pf);
}

SpecialFunction coordinate_function(int lambda) {
  const ScalarField zero = ScalarField::constant(4, 0.0);
  return {{zero, zero, zero, zero}, ScalarField::coordinate(4, lambda)};
}

SpecialFunction energy(const Geometry& g) {
  const ScalarField zero = ScalarField::constant(4, 0.0);
  const double qh = g.model().q / g.model().hbar;
  return {{ScalarField::constant(4, 1.0), zero, zero, zero}, -qh * g.model().A[0]};
}

SpecialFunction momentum(const Geometry& g, int i) {
  SpecialFunction f;
  for (int l = 0; l < 4; ++l) f.X[l] = ScalarField::constant(4, l == i ? -1.0 : 0.0);
  f.fbar = (g.model().q / g.model().hbar) * g.model().A[i];
  return f;
}

quantum::HermitianField to_hermitian(const Geometry& g, const SpecialFunction& f) {
  const VectorField X = VectorField::from_components({f.X[0], f.X[1], f.X[2], f.X[3]});
  const double qh = g.model().q / g.model().hbar;
  std::array<ScalarField, 4> A;
  for (int l = 0; l < 4; ++l) A[l] = qh * g.model().A[l];
  return {X, evaluate_on(A, X) + f.fbar};
}

SpecialFunction from_hermitian(const Geometry& g, const quantum::HermitianField& Y) {
  const double qh = g.model().q / g.model().hbar;
  std::array<ScalarField, 4> A;
  for (int l = 0; l < 4; ++l) A[l] = qh * g.model().A[l];
  SpecialFunction f;
  for (int l = 0; l < 4; ++l) f.X[l] = Y.X.component(l);
  f.fbar = Y.b - evaluate_on(A, Y.X);
  return f;
}

quantum::HermitianField to_hermitian_observed(const Geometry& g, const SpecialFunction& f,
                                              const std::array<ScalarField, 3>& o) {
  const Field s = observer_section(o);
  const double qh = g.model().q / g.model().hbar;
  const Field th = g.Theta().field();
  std::array<ScalarField, 4> A;
  for (int l = 0; l < 4; ++l) A[l] = ScalarField(th.select({l}).compose(s)) + qh * g.model().A[l];
  const ScalarField fo = phase_function(g, f).compose(s);
  const VectorField X = VectorField::from_components({f.X[0], f.X[1], f.X[2], f.X[3]});
  return {X, evaluate_on(A, X) + fo};
}

Splitting observed_splitting(const Geometry& geo, const std::array<ScalarField, 3>& o, std::span<const double> x) {
  const double c = geo.model().c;
  std::vector<double> z(x.begin(), x.end());
  for (int i = 0; i < 3; ++i) z.push_back(o[i].value(x));
  const auto gv = geo.g().values(x), gi = geo.ginv().values(x);
  const auto Fv = geo.F().values(x);
  const auto d = geo.contact().values(z);
  const auto tau = geo.tau().values(z);
  const double a = geo.alpha().values(z)[0];
  auto F = [&](int p, int q) {
    std::vector<int> idx{p, q};
    const int s = sort_sign(idx);
    return s ? s * Fv[combination_index(4, idx)] : 0.0;
  };
  Splitting S{};
  double El[4] = {}, u[4], gb0[4] = {};
  for (int l = 0; l < 4; ++l) u[l] = d[l] / c;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) S.E[l] -= gi[4 * l + m] * d[n] * F(n, m);
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) {
      El[l] += gv[4 * l + m] * S.E[m];
      gb0[l] += gv[4 * l + m] * (m == 0 ? 1.0 : z[3 + m]);
    }
  // projector P_l^m = delta + alpha^2 gb0_l dbar^m
  double P[4][4], M[4][4];
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) P[l][m] = (l == m ? 1.0 : 0.0) + a * a * gb0[l] * (m == 0 ? 1.0 : z[3 + m]);
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) {
      M[l][m] = 0;
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) M[l][m] += P[l][r] * P[m][s] * F(r, s);
    }
  Eigen::Matrix4d gm;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) gm(l, m) = gv[4 * l + m];
  const double vol = std::sqrt(std::abs(gm.determinant()));
  auto eps = [](int p, int q, int r, int s) {
    std::vector<int> idx{p, q, r, s};
    return double(sort_sign(idx));
  };
  double eta[4][4][4] = {}, eta_up[4][4][4] = {};
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int r = 0; r < 4; ++r) eta[k][m][n] += u[r] * vol * eps(r, k, m, n);
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int a1 = 0; a1 < 4; ++a1)
          for (int b1 = 0; b1 < 4; ++b1)
            for (int c1 = 0; c1 < 4; ++c1)
              eta_up[k][m][n] += gi[4 * k + a1] * gi[4 * m + b1] * gi[4 * n + c1] * eta[a1][b1][c1];
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) S.B[k] += 0.5 * c * eta_up[k][m][n] * M[m][n];
  S.reconstruction = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double rec = -(tau[m] * El[n] - tau[n] * El[m]);
      for (int k = 0; k < 4; ++k) rec += S.B[k] * eta[k][m][n] / c;
      S.reconstruction = max_abs(S.reconstruction, F(m, n) - rec);
    }
  return S;
}

SpecialFunction operator+(const SpecialFunction& a, const SpecialFunction& b) {
  SpecialFunction r;
  for (int l = 0; l < 4; ++l) r.X[l] = a.X[l] + b.X[l];
  r.fbar = a.fbar + b.fbar;
  return r;
}

double max_difference(const SpecialFunction& a, const SpecialFunction& b, std::span<const double> x) {
  double r = std::abs(a.fbar.value(x) - b.fbar.value(x));
  for (int l = 0; l < 4; ++l) r = max_abs(r, a.X[l].value(x) - b.X[l].value(x));
  return r;
}

}  // namespace cqm::einstein
