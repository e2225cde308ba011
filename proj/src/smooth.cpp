#include "cqm/smooth.hpp"

#include <algorithm>
#include <numeric>

namespace cqm {

Field::Field(int dim_in, int dim_out, Fn fn)
    : in_(dim_in), out_(dim_out), fn_(std::make_shared<const Fn>(std::move(fn))) {}

std::vector<Taylor> Field::operator()(std::span<const Taylor> x) const {
  if (!fn_) throw std::logic_error("evaluating an empty field");
  if (int(x.size()) != in_) throw std::invalid_argument("field arity mismatch");
  std::vector<Taylor> r = (*fn_)(x);
  if (int(r.size()) != out_) throw std::logic_error("field produced the wrong number of components");
  return r;
}

std::vector<Taylor> Field::expand(std::span<const double> p, int order) const {
  const std::vector<Taylor> x = seed(p, order);
  return (*this)(x);
}

std::vector<double> Field::values(std::span<const double> p) const {
  return cqm::values(expand(p, 0));
}

Field Field::constant(int dim_in, std::vector<double> c) {
  const int k = int(c.size());
  return Field(dim_in, k, [c = std::move(c)](std::span<const Taylor> x) {
    std::vector<Taylor> r;
    r.reserve(c.size());
    for (double v : c) r.push_back(x[0].constant(v));
    return r;
  });
}

Field Field::zero(int dim_in, int dim_out) { return constant(dim_in, std::vector<double>(dim_out, 0.0)); }

Field Field::identity(int n) {
  return Field(n, n, [](std::span<const Taylor> x) { return std::vector<Taylor>(x.begin(), x.end()); });
}

Field Field::coordinate(int n, int i) {
  return Field(n, 1, [i](std::span<const Taylor> x) { return std::vector<Taylor>{x[i]}; });
}

Field Field::stack(const std::vector<Field>& parts) {
  if (parts.empty()) throw std::invalid_argument("stacking no fields");
  int out = 0;
  for (const auto& f : parts) {
    if (f.dim_in() != parts[0].dim_in()) throw std::invalid_argument("stacked fields differ in domain");
    out += f.dim_out();
  }
  return Field(parts[0].dim_in(), out, [parts](std::span<const Taylor> x) {
    std::vector<Taylor> r;
    for (const auto& f : parts) {
      auto v = f(x);
      r.insert(r.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    }
    return r;
  });
}

Field Field::select(std::vector<int> comps) const {
  const Field self = *this;
  const int k = int(comps.size());
  return Field(in_, k, [self, comps = std::move(comps)](std::span<const Taylor> x) {
    auto v = self(x);
    std::vector<Taylor> r;
    r.reserve(comps.size());
    for (int c : comps) r.push_back(v[c]);
    return r;
  });
}

Field Field::compose(const Field& inner) const {
  if (inner.dim_out() != in_) throw std::invalid_argument("composition arity mismatch");
  const Field outer = *this;
  return Field(inner.dim_in(), out_, [outer, inner](std::span<const Taylor> x) {
    const auto y = inner(x);
    return outer(y);
  });
}

FieldJet jet1(const Field& f, std::span<const Taylor> x) {
  const int order = x[0].order();
  const int n = f.dim_in();
  const std::vector<double> p = values(x);
  const std::vector<Taylor> E = f.expand(p, order + 1);
  FieldJet J;
  J.value.reserve(E.size());
  J.d.resize(E.size());
  for (std::size_t c = 0; c < E.size(); ++c) {
    J.value.push_back(E[c].truncated(order));
    J.d[c].reserve(n);
    for (int v = 0; v < n; ++v) J.d[c].push_back(E[c].partial(v));
  }
  if (is_identity_seed(x)) return J;
  std::vector<Taylor> flat;
  flat.reserve(E.size() * (n + 1));
  for (std::size_t c = 0; c < E.size(); ++c) {
    flat.push_back(J.value[c]);
    for (int v = 0; v < n; ++v) flat.push_back(J.d[c][v]);
  }
  const std::vector<Taylor> composed = compose(flat, x);
  std::size_t k = 0;
  for (std::size_t c = 0; c < E.size(); ++c) {
    J.value[c] = composed[k++];
    for (int v = 0; v < n; ++v) J.d[c][v] = composed[k++];
  }
  return J;
}

Jet2 jet2(const Field& f, int component, std::span<const double> p) {
  const Taylor t = f.expand(p, 2)[component];
  const int n = int(p.size());
  Jet2 j;
  j.value = t.value();
  j.grad.resize(n);
  j.hess.assign(n, std::vector<double>(n));
  for (int a = 0; a < n; ++a) {
    j.grad[a] = t.d(a);
    for (int b = 0; b < n; ++b) j.hess[a][b] = t.d2(a, b);
  }
  return j;
}

ScalarField::ScalarField(Field f) : f_(std::move(f)) {
  if (f_.dim_out() != 1) throw std::invalid_argument("scalar field needs one component");
}

ScalarField ScalarField::constant(int n, double c) { return ScalarField(Field::constant(n, {c})); }

ScalarField ScalarField::coordinate(int n, int i) { return ScalarField(Field::coordinate(n, i)); }

ScalarField ScalarField::from(int n, std::function<Taylor(std::span<const Taylor>)> fn) {
  return ScalarField(Field(n, 1, [fn = std::move(fn)](std::span<const Taylor> x) { return std::vector<Taylor>{fn(x)}; }));
}

ScalarField ScalarField::partial(int v) const {
  const Field f = f_;
  return from(dim(), [f, v](std::span<const Taylor> x) { return jet1(f, x).d[0][v]; });
}

namespace {

template <class Op>
ScalarField binary(const ScalarField& a, const ScalarField& b, Op op) {
  if (a.dim() != b.dim()) throw std::invalid_argument("scalar fields on different charts");
  return ScalarField::from(a.dim(), [a, b, op](std::span<const Taylor> x) { return op(a(x), b(x)); });
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Taylor& u, const Taylor& v) { return u + v; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Taylor& u, const Taylor& v) { return u - v; });
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Taylor& u, const Taylor& v) { return u * v; });
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Taylor& u, const Taylor& v) { return u / v; });
}
ScalarField operator+(const ScalarField& a, double s) {
  return ScalarField::from(a.dim(), [a, s](std::span<const Taylor> x) { return a(x) + s; });
}
ScalarField operator*(double s, const ScalarField& a) {
  return ScalarField::from(a.dim(), [a, s](std::span<const Taylor> x) { return a(x) * s; });
}
ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

VectorField::VectorField(Field f) : f_(std::move(f)) {
  if (f_.dim_out() != f_.dim_in()) throw std::invalid_argument("vector field needs one component per coordinate");
}

VectorField VectorField::from_components(const std::vector<ScalarField>& comps) {
  std::vector<Field> parts;
  for (const auto& c : comps) parts.push_back(c.field());
  return VectorField(Field::stack(parts));
}

VectorField VectorField::coordinate_frame(int n, int i) {
  std::vector<double> c(n, 0.0);
  c[i] = 1.0;
  return VectorField(Field::constant(n, c));
}

ScalarField VectorField::component(int i) const { return ScalarField(f_.select({i})); }

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return int(r);
}

namespace {

struct CombinationTable {
  std::vector<std::vector<std::vector<std::vector<int>>>> table;  // [n][k]
  CombinationTable() {
    table.resize(9);
    for (int n = 0; n <= 8; ++n) {
      table[n].resize(n + 1);
      for (int k = 0; k <= n; ++k) {
        std::vector<int> sel(n, 0);
        std::fill(sel.begin(), sel.begin() + k, 1);
        // lexicographic order of increasing tuples
        do {
          std::vector<int> c;
          for (int i = 0; i < n; ++i)
            if (sel[i]) c.push_back(i);
          table[n][k].push_back(c);
        } while (std::prev_permutation(sel.begin(), sel.end()));
      }
    }
  }
};

const CombinationTable& combo_table() {
  static const CombinationTable t;
  return t;
}

}  // namespace

const std::vector<std::vector<int>>& combinations(int n, int k) {
  if (n > 8) throw std::invalid_argument("chart dimension too large");
  return combo_table().table.at(n).at(k);
}

int combination_index(int n, const std::vector<int>& c) {
  const int k = int(c.size());
  int rank = 0, prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int j = prev + 1; j < c[i]; ++j) rank += binomial(n - 1 - j, k - 1 - i);
    prev = c[i];
  }
  return rank;
}

int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

PForm::PForm(int n, int degree, Field f) : n_(n), p_(degree), f_(std::move(f)) {
  if (f_.dim_in() != n || f_.dim_out() != binomial(n, degree))
    throw std::invalid_argument("form component count does not match degree");
}

PForm PForm::zero(int n, int degree) { return PForm(n, degree, Field::zero(n, binomial(n, degree))); }

PForm PForm::from_components(int n, int degree, const std::vector<ScalarField>& comps) {
  std::vector<Field> parts;
  for (const auto& c : comps) parts.push_back(c.field());
  return PForm(n, degree, Field::stack(parts));
}

PForm PForm::basis(int n, std::vector<int> indices) {
  const int p = int(indices.size());
  const int sign = sort_sign(indices);
  std::vector<double> c(binomial(n, p), 0.0);
  if (sign != 0) c[combination_index(n, indices)] = sign;
  return PForm(n, p, Field::constant(n, c));
}

ScalarField PForm::component(std::vector<int> indices) const {
  const int sign = sort_sign(indices);
  if (sign == 0) return ScalarField::constant(n_, 0.0);
  ScalarField c(f_.select({combination_index(n_, indices)}));
  return sign > 0 ? c : -c;
}

Bivector::Bivector(int n, Field f) : n_(n), f_(std::move(f)) {
  if (f_.dim_in() != n || f_.dim_out() != binomial(n, 2))
    throw std::invalid_argument("bivector component count mismatch");
}

namespace alg {

Taylor component(int n, int p, std::span<const Taylor> w, std::vector<int> idx) {
  (void)p;
  const int sign = sort_sign(idx);
  if (sign == 0) return w[0].constant(0.0);
  const Taylor& c = w[combination_index(n, idx)];
  return sign > 0 ? c : -c;
}

std::vector<Taylor> wedge(int n, int p, std::span<const Taylor> a, int q, std::span<const Taylor> b) {
  if (p + q > n) throw std::invalid_argument("wedge degree exceeds chart dimension");
  const Taylor& proto = a[0];
  const auto& outs = combinations(n, p + q);
  const auto& picks = combinations(p + q, p);
  std::vector<Taylor> r;
  r.reserve(outs.size());
  for (const auto& I : outs) {
    Taylor s = proto.constant(0.0);
    for (const auto& pos : picks) {
      std::vector<int> J, L;
      int parity = 0;
      std::size_t t = 0;
      for (int k = 0; k < p + q; ++k) {
        if (t < pos.size() && pos[t] == k) {
          J.push_back(I[k]);
          parity += k - int(t);
          ++t;
        } else {
          L.push_back(I[k]);
        }
      }
      const Taylor& aj = a[combination_index(n, J)];
      const Taylor& bl = b[combination_index(n, L)];
      if (parity % 2) {
        s.fma(-1.0 * aj, bl);
      } else {
        s.fma(aj, bl);
      }
    }
    r.push_back(std::move(s));
  }
  return r;
}

std::vector<Taylor> contract(int n, std::span<const Taylor> X, int p, std::span<const Taylor> w) {
  if (p < 1) throw std::invalid_argument("contraction of a 0-form");
  const auto& outs = combinations(n, p - 1);
  std::vector<Taylor> r;
  r.reserve(outs.size());
  for (const auto& J : outs) {
    Taylor s = X[0].constant(0.0);
    for (int mu = 0; mu < n; ++mu) {
      std::vector<int> idx{mu};
      idx.insert(idx.end(), J.begin(), J.end());
      const int sign = sort_sign(idx);
      if (sign == 0) continue;
      const Taylor& c = w[combination_index(n, idx)];
      if (sign > 0) {
        s.fma(X[mu], c);
      } else {
        s.fma(-1.0 * X[mu], c);
      }
    }
    r.push_back(std::move(s));
  }
  return r;
}

namespace {

Taylor determinant(std::vector<std::vector<Taylor>> m) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Taylor s = m[0][0].constant(0.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::vector<Taylor>> minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<Taylor> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    const Taylor term = m[0][j] * determinant(std::move(minor));
    if (j % 2) {
      s -= term;
    } else {
      s += term;
    }
  }
  return s;
}

}  // namespace

Taylor evaluate(int n, int p, std::span<const Taylor> w, const std::vector<std::vector<Taylor>>& X) {
  Taylor s = w[0].constant(0.0);
  const auto& combos = combinations(n, p);
  for (std::size_t c = 0; c < combos.size(); ++c) {
    if (p == 0) return w[0];
    std::vector<std::vector<Taylor>> m(p, std::vector<Taylor>());
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) m[a].push_back(X[b][combos[c][a]]);
    s.fma(w[c], determinant(std::move(m)));
  }
  return s;
}

}  // namespace alg

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.dim() != Y.dim()) throw std::invalid_argument("lie bracket of fields on different charts");
  const int n = X.dim();
  const Field fx = X.field(), fy = Y.field();
  return VectorField(Field(n, n, [fx, fy, n](std::span<const Taylor> x) {
    const FieldJet jx = jet1(fx, x), jy = jet1(fy, x);
    std::vector<Taylor> r;
    for (int mu = 0; mu < n; ++mu) {
      Taylor s = x[0].constant(0.0);
      for (int nu = 0; nu < n; ++nu) {
        s.fma(jx.value[nu], jy.d[mu][nu]);
        s.fma(-1.0 * jy.value[nu], jx.d[mu][nu]);
      }
      r.push_back(std::move(s));
    }
    return r;
  }));
}

ScalarField lie_derivative_scalar(const VectorField& X, const ScalarField& f) {
  const int n = X.dim();
  const Field fx = X.field(), ff = f.field();
  return ScalarField::from(n, [fx, ff, n](std::span<const Taylor> x) {
    const auto xv = fx(x);
    const FieldJet jf = jet1(ff, x);
    Taylor s = x[0].constant(0.0);
    for (int v = 0; v < n; ++v) s.fma(xv[v], jf.d[0][v]);
    return s;
  });
}

PForm exterior_derivative(const PForm& w) {
  const int n = w.dim(), p = w.degree();
  if (p >= n) throw std::invalid_argument("exterior derivative of a top form");
  const Field f = w.field();
  return PForm(n, p + 1, Field(n, binomial(n, p + 1), [f, n, p](std::span<const Taylor> x) {
    const FieldJet J = jet1(f, x);
    std::vector<Taylor> r;
    for (const auto& I : combinations(n, p + 1)) {
      Taylor s = x[0].constant(0.0);
      for (int k = 0; k <= p; ++k) {
        std::vector<int> rest;
        for (int t = 0; t <= p; ++t)
          if (t != k) rest.push_back(I[t]);
        const Taylor& dk = J.d[combination_index(n, rest)][I[k]];
        if (k % 2) {
          s -= dk;
        } else {
          s += dk;
        }
      }
      r.push_back(std::move(s));
    }
    return r;
  }));
}

PForm wedge(const PForm& a, const PForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge of forms on different charts");
  const int n = a.dim(), p = a.degree(), q = b.degree();
  if (p + q > n) throw std::invalid_argument("wedge degree exceeds chart dimension");
  const Field fa = a.field(), fb = b.field();
  return PForm(n, p + q, Field(n, binomial(n, p + q), [fa, fb, n, p, q](std::span<const Taylor> x) {
    const auto va = fa(x), vb = fb(x);
    return alg::wedge(n, p, va, q, vb);
  }));
}

PForm contract(const VectorField& X, const PForm& w) {
  const int n = w.dim(), p = w.degree();
  if (p < 1) throw std::invalid_argument("contraction of a 0-form");
  const Field fx = X.field(), fw = w.field();
  return PForm(n, p - 1, Field(n, binomial(n, p - 1), [fx, fw, n, p](std::span<const Taylor> x) {
    const auto vx = fx(x), vw = fw(x);
    return alg::contract(n, vx, p, vw);
  }));
}

PForm lie_derivative(const VectorField& X, const PForm& w) {
  const int n = w.dim(), p = w.degree();
  const Field fx = X.field(), fw = w.field();
  return PForm(n, p, Field(n, binomial(n, p), [fx, fw, n, p](std::span<const Taylor> x) {
    const FieldJet jx = jet1(fx, x), jw = jet1(fw, x);
    std::vector<Taylor> r;
    const auto& combos = combinations(n, p);
    for (std::size_t c = 0; c < combos.size(); ++c) {
      Taylor s = x[0].constant(0.0);
      for (int mu = 0; mu < n; ++mu) s.fma(jx.value[mu], jw.d[c][mu]);
      for (int k = 0; k < p; ++k) {
        for (int mu = 0; mu < n; ++mu) {
          std::vector<int> idx = combos[c];
          idx[k] = mu;
          const int sign = sort_sign(idx);
          if (sign == 0) continue;
          const Taylor& wc = jw.value[combination_index(n, idx)];
          if (sign > 0) {
            s.fma(jx.d[mu][combos[c][k]], wc);
          } else {
            s.fma(-1.0 * jx.d[mu][combos[c][k]], wc);
          }
        }
      }
      r.push_back(std::move(s));
    }
    return r;
  }));
}

PForm operator+(const PForm& a, const PForm& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw std::invalid_argument("adding unlike forms");
  const Field fa = a.field(), fb = b.field();
  return PForm(a.dim(), a.degree(), Field(a.dim(), fa.dim_out(), [fa, fb](std::span<const Taylor> x) {
    auto va = fa(x);
    const auto vb = fb(x);
    for (std::size_t k = 0; k < va.size(); ++k) va[k] += vb[k];
    return va;
  }));
}

PForm operator*(const ScalarField& s, const PForm& w) {
  const Field fw = w.field();
  return PForm(w.dim(), w.degree(), Field(w.dim(), fw.dim_out(), [s, fw](std::span<const Taylor> x) {
    auto vw = fw(x);
    const Taylor sv = s(x);
    for (auto& c : vw) c *= sv;
    return vw;
  }));
}

PForm operator*(double s, const PForm& w) { return ScalarField::constant(w.dim(), s) * w; }

PForm operator-(const PForm& a, const PForm& b) { return a + (-1.0) * b; }

PForm pullback(const Field& phi, const PForm& w) {
  if (phi.dim_out() != w.dim()) throw std::invalid_argument("pullback target mismatch");
  const int m = phi.dim_in(), n = w.dim(), p = w.degree();
  const Field fw = w.field();
  return PForm(m, p, Field(m, binomial(m, p), [phi, fw, m, n, p](std::span<const Taylor> x) {
    const FieldJet J = jet1(phi, x);
    const auto wv = fw(J.value);
    std::vector<Taylor> r;
    for (const auto& Jc : combinations(m, p)) {
      // columns: d phi / d x^{J_b}
      std::vector<std::vector<Taylor>> cols;
      for (int b = 0; b < p; ++b) {
        std::vector<Taylor> col;
        for (int a = 0; a < n; ++a) col.push_back(J.d[a][Jc[b]]);
        cols.push_back(std::move(col));
      }
      if (p == 0) {
        r.push_back(wv[0]);
      } else {
        r.push_back(alg::evaluate(n, p, wv, cols));
      }
    }
    return r;
  }));
}

ScalarField pair(const Bivector& L, const PForm& a, const PForm& b) {
  const int n = L.dim();
  const Field fl = L.field(), fa = a.field(), fb = b.field();
  return ScalarField::from(n, [fl, fa, fb, n](std::span<const Taylor> x) {
    const auto l = fl(x), va = fa(x), vb = fb(x);
    Taylor s = x[0].constant(0.0);
    const auto& pairs = combinations(n, 2);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const int i = pairs[c][0], j = pairs[c][1];
      s.fma(l[c], va[i] * vb[j] - va[j] * vb[i]);
    }
    return s;
  });
}

VectorField contract(const PForm& a, const Bivector& L) {
  const int n = L.dim();
  const Field fl = L.field(), fa = a.field();
  return VectorField(Field(n, n, [fl, fa, n](std::span<const Taylor> x) {
    const auto l = fl(x), va = fa(x);
    std::vector<Taylor> r(n, x[0].constant(0.0));
    const auto& pairs = combinations(n, 2);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const int i = pairs[c][0], j = pairs[c][1];
      r[j].fma(va[i], l[c]);
      r[i].fma(-1.0 * va[j], l[c]);
    }
    return r;
  }));
}

PForm differential(const ScalarField& f) {
  const int n = f.dim();
  const Field ff = f.field();
  return PForm(n, 1, Field(n, n, [ff](std::span<const Taylor> x) { return jet1(ff, x).d[0]; }));
}

double evaluate(const PForm& w, std::span<const double> p, const std::vector<std::vector<double>>& X) {
  const auto wv = w.field().expand(p, 0);
  const MonomialBasis& b = wv[0].basis();
  std::vector<std::vector<Taylor>> tx;
  for (const auto& v : X) {
    std::vector<Taylor> col;
    for (double c : v) col.emplace_back(b, c);
    tx.push_back(std::move(col));
  }
  if (w.degree() == 0) return wv[0].value();
  return alg::evaluate(w.dim(), w.degree(), wv, tx).value();
}

}  // namespace cqm
