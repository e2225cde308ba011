#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cqm {

// Raised when a primitive leaves its domain (root of a negative, division by zero).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Monomials of total degree <= order in nvars variables, ordered by degree.
// Lower-order bases are prefixes of higher-order ones.
class MonomialBasis {
 public:
  struct Product {
    int a, b, out;
  };
  struct Shift {
    int src, dst;
    double factor;
  };

  // Bases are immutable and cached for the lifetime of the process.
  static const MonomialBasis& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return size_; }
  int size_up_to(int degree) const { return degree_end_[degree]; }
  int degree(int k) const { return degree_[k]; }
  const std::uint8_t* exponents(int k) const { return &exps_[std::size_t(k) * nvars_]; }
  int index(const int* exps) const;
  int parent(int k) const { return parent_[k]; }
  int parent_var(int k) const { return parent_var_[k]; }
  const std::vector<Product>& products() const { return products_; }
  // d/dx_v maps coefficient src to dst (indices valid in the order-1 basis).
  const std::vector<Shift>& shifts(int v) const { return shifts_[v]; }

 private:
  MonomialBasis(int nvars, int order);

  int nvars_, order_, size_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_, degree_end_, parent_, parent_var_;
  std::vector<Product> products_;
  std::vector<std::vector<Shift>> shifts_;
};

// Truncated multivariate Taylor polynomial f(p + e) = sum_k c_k e^k.
class Taylor {
 public:
  Taylor() = default;
  Taylor(const MonomialBasis& basis, double value);
  static Taylor variable(const MonomialBasis& basis, int v, double value);

  bool valid() const { return basis_ != nullptr; }
  const MonomialBasis& basis() const { return *basis_; }
  int nvars() const { return basis_->nvars(); }
  int order() const { return basis_->order(); }
  double value() const { return c_[0]; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  std::span<const double> coefficients() const { return c_; }

  Taylor constant(double v) const { return Taylor(*basis_, v); }
  // Partial derivative, one order lower.
  Taylor partial(int v) const;
  Taylor truncated(int order) const;
  double d(int v) const;
  double d2(int a, int b) const;
  bool is_seed(int v) const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(const Taylor& o);
  Taylor& operator/=(const Taylor& o);
  Taylor& operator+=(double s) { c_[0] += s; return *this; }
  Taylor& operator-=(double s) { c_[0] -= s; return *this; }
  Taylor& operator*=(double s);
  Taylor& operator/=(double s);
  // this += s * o
  void axpy(double s, const Taylor& o);
  // this += a * b
  void fma(const Taylor& a, const Taylor& b);

 private:
  friend Taylor apply_series(const Taylor&, std::span<const double>);
  const MonomialBasis* basis_ = nullptr;
  std::vector<double> c_;
};

Taylor operator+(Taylor a, const Taylor& b);
Taylor operator-(Taylor a, const Taylor& b);
Taylor operator*(const Taylor& a, const Taylor& b);
Taylor operator/(const Taylor& a, const Taylor& b);
Taylor operator+(Taylor a, double s);
Taylor operator+(double s, Taylor a);
Taylor operator-(Taylor a, double s);
Taylor operator-(double s, const Taylor& a);
Taylor operator*(Taylor a, double s);
Taylor operator*(double s, Taylor a);
Taylor operator/(Taylor a, double s);
Taylor operator/(double s, const Taylor& a);
Taylor operator-(Taylor a);

// Composition g(a) from the scaled derivatives d_k = g^(k)(a0)/k!.
Taylor apply_series(const Taylor& a, std::span<const double> d);

Taylor sin(const Taylor& a);
Taylor cos(const Taylor& a);
Taylor exp(const Taylor& a);
Taylor log(const Taylor& a);
Taylor sqrt(const Taylor& a);
Taylor abs(const Taylor& a);
Taylor pow(const Taylor& a, double r);
Taylor powi(const Taylor& a, int n);
Taylor reciprocal(const Taylor& a);

// Seeds p_i + e_i in n = p.size() variables.
std::vector<Taylor> seed(std::span<const double> p, int order);
bool is_identity_seed(std::span<const Taylor> x);
std::vector<double> values(std::span<const Taylor> x);

// Substitutes e_i = x_i - x_i(0) into polynomials expanded about x(0).
std::vector<Taylor> compose(std::span<const Taylor> polys, std::span<const Taylor> x);

inline double value_of(double x) { return x; }
inline double value_of(const Taylor& x) { return x.value(); }

}  // namespace cqm
