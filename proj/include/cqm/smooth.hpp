#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cqm/taylor.hpp"

namespace cqm {

using Point = std::vector<double>;

// Smooth map R^n -> R^k evaluated in truncated Taylor arithmetic. Inputs may be
// arbitrary Taylor numbers, so composition propagates derivatives exactly.
class Field {
 public:
  using Fn = std::function<std::vector<Taylor>(std::span<const Taylor>)>;

  Field() = default;
  Field(int dim_in, int dim_out, Fn fn);

  bool valid() const { return fn_ != nullptr; }
  int dim_in() const { return in_; }
  int dim_out() const { return out_; }

  std::vector<Taylor> operator()(std::span<const Taylor> x) const;
  std::vector<Taylor> expand(std::span<const double> p, int order) const;
  std::vector<double> values(std::span<const double> p) const;

  static Field constant(int dim_in, std::vector<double> c);
  static Field zero(int dim_in, int dim_out);
  static Field identity(int n);
  static Field coordinate(int n, int i);
  // Concatenation of the outputs of fields sharing the same domain.
  static Field stack(const std::vector<Field>& parts);
  Field select(std::vector<int> comps) const;
  // this o inner
  Field compose(const Field& inner) const;

 private:
  int in_ = 0, out_ = 0;
  std::shared_ptr<const Fn> fn_;
};

// Values and first partials of every component, to the order of x.
struct FieldJet {
  std::vector<Taylor> value;
  std::vector<std::vector<Taylor>> d;  // d[component][variable]
};
FieldJet jet1(const Field& f, std::span<const Taylor> x);

struct Jet2 {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<std::vector<double>> hess;
};
Jet2 jet2(const Field& f, int component, std::span<const double> p);

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(Field f);
  static ScalarField constant(int n, double c);
  static ScalarField coordinate(int n, int i);
  static ScalarField from(int n, std::function<Taylor(std::span<const Taylor>)> fn);

  bool valid() const { return f_.valid(); }
  int dim() const { return f_.dim_in(); }
  const Field& field() const { return f_; }
  Taylor operator()(std::span<const Taylor> x) const { return f_(x)[0]; }
  double operator()(std::span<const double> p) const { return f_.values(p)[0]; }
  double value(std::span<const double> p) const { return f_.values(p)[0]; }
  Jet2 jet(std::span<const double> p) const { return jet2(f_, 0, p); }
  ScalarField partial(int v) const;
  ScalarField compose(const Field& inner) const { return ScalarField(f_.compose(inner)); }

 private:
  Field f_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator+(const ScalarField& a, double s);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator-(const ScalarField& a);

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Field f);
  static VectorField from_components(const std::vector<ScalarField>& comps);
  static VectorField coordinate_frame(int n, int i);

  int dim() const { return f_.dim_in(); }
  const Field& field() const { return f_; }
  ScalarField component(int i) const;
  std::vector<double> values(std::span<const double> p) const { return f_.values(p); }

 private:
  Field f_;
};

// Totally antisymmetric covariant tensor, stored on increasing index tuples.
class PForm {
 public:
  PForm() = default;
  PForm(int n, int degree, Field f);
  static PForm zero(int n, int degree);
  static PForm from_components(int n, int degree, const std::vector<ScalarField>& comps);
  // d^{i_1} ^ ... ^ d^{i_p} for increasing indices
  static PForm basis(int n, std::vector<int> indices);

  int dim() const { return n_; }
  int degree() const { return p_; }
  const Field& field() const { return f_; }
  // Component for any index tuple, with the antisymmetry sign.
  ScalarField component(std::vector<int> indices) const;
  std::vector<double> values(std::span<const double> p) const { return f_.values(p); }

 private:
  int n_ = 0, p_ = 0;
  Field f_;
};

// Antisymmetric contravariant 2-tensor, stored on increasing index pairs.
class Bivector {
 public:
  Bivector() = default;
  Bivector(int n, Field f);
  int dim() const { return n_; }
  const Field& field() const { return f_; }

 private:
  int n_ = 0;
  Field f_;
};

// Index bookkeeping for increasing tuples.
int binomial(int n, int k);
const std::vector<std::vector<int>>& combinations(int n, int k);
int combination_index(int n, const std::vector<int>& sorted);
// Sorts indices in place; returns the permutation sign, or 0 on a repeat.
int sort_sign(std::vector<int>& idx);

// Pointwise algebra on component arrays (works on doubles through order-0 Taylors).
namespace alg {
std::vector<Taylor> wedge(int n, int p, std::span<const Taylor> a, int q, std::span<const Taylor> b);
std::vector<Taylor> contract(int n, std::span<const Taylor> X, int p, std::span<const Taylor> w);
Taylor component(int n, int p, std::span<const Taylor> w, std::vector<int> idx);
// Full antisymmetric evaluation w(X_1, ..., X_p).
Taylor evaluate(int n, int p, std::span<const Taylor> w, const std::vector<std::vector<Taylor>>& X);
}  // namespace alg

VectorField lie_bracket(const VectorField& X, const VectorField& Y);
ScalarField lie_derivative_scalar(const VectorField& X, const ScalarField& f);
PForm exterior_derivative(const PForm& w);
PForm wedge(const PForm& a, const PForm& b);
PForm contract(const VectorField& X, const PForm& w);
PForm lie_derivative(const VectorField& X, const PForm& w);
PForm operator+(const PForm& a, const PForm& b);
PForm operator-(const PForm& a, const PForm& b);
PForm operator*(const ScalarField& s, const PForm& w);
PForm operator*(double s, const PForm& w);
// phi*: forms on the target of phi (dim_out) to forms on its domain.
PForm pullback(const Field& phi, const PForm& w);
// Bivector paired with two covectors: L^{ab} a_a b_b.
ScalarField pair(const Bivector& L, const PForm& a, const PForm& b);
// i(a) L as a vector field: (a_a L^{ab}).
VectorField contract(const PForm& a, const Bivector& L);
PForm differential(const ScalarField& f);
double evaluate(const PForm& w, std::span<const double> p, const std::vector<std::vector<double>>& X);

}  // namespace cqm
