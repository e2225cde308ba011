#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cqm::dims {

class DimensionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return double(num_) / double(den_); }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const;
  friend bool operator==(Rational a, Rational b) = default;

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Powers of the scale spaces T (time), L (length), M (mass).
struct Dimension {
  Rational t, l, m;

  static Dimension none() { return {}; }
  static Dimension time() { return {1, 0, 0}; }
  static Dimension length() { return {0, 1, 0}; }
  static Dimension mass() { return {0, 0, 1}; }
  // Accepts e.g. "T^-1 L^3/2 M^1/2"; empty text is dimensionless.
  static Dimension parse(std::string_view text);

  Dimension operator*(const Dimension& o) const { return {t + o.t, l + o.l, m + o.m}; }
  Dimension operator/(const Dimension& o) const { return {t - o.t, l - o.l, m - o.m}; }
  Dimension pow(Rational r) const { return {t * r, l * r, m * r}; }
  bool operator==(const Dimension&) const = default;
  bool dimensionless() const { return *this == Dimension{}; }
  std::string str() const;
};

struct DimScalar {
  double value = 0.0;
  Dimension dim;
};

DimScalar dim_mul(const DimScalar& a, const DimScalar& b);
DimScalar dim_div(const DimScalar& a, const DimScalar& b);
DimScalar dim_add(const DimScalar& a, const DimScalar& b);
DimScalar dim_sub(const DimScalar& a, const DimScalar& b);
DimScalar dim_pow(const DimScalar& a, Rational r);

// Canonical scales of the physical constants.
Dimension hbar_dim();   // T^-1 L^2 M
Dimension charge_dim(); // T^-1 L^3/2 M^1/2
Dimension mass_dim();   // M
Dimension light_dim();  // T^-1 L

}  // namespace cqm::dims
