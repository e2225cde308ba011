#include "cqm/dims.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace cqm::dims {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = checked_mul(num, -1);
    den = checked_mul(den, -1);
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational operator+(Rational a, Rational b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t da = a.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, da)),
                  checked_mul(a.den_, b.den_ / g));
}

Rational operator-(Rational a, Rational b) { return a + (-b); }

Rational operator*(Rational a, Rational b) {
  // cross-reduce first to keep intermediates small
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  const std::int64_t n1 = g1 ? a.num_ / g1 : a.num_;
  const std::int64_t d2 = g1 ? b.den_ / g1 : b.den_;
  const std::int64_t n2 = g2 ? b.num_ / g2 : b.num_;
  const std::int64_t d1 = g2 ? a.den_ / g2 : a.den_;
  return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Dimension Dimension::parse(std::string_view text) {
  Dimension d;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const char base = tok[0];
    Rational e(1);
    if (tok.size() > 1) {
      if (tok[1] != '^' || tok.size() < 3) throw std::invalid_argument("bad dimension token '" + tok + "'");
      const std::string ex = tok.substr(2);
      const auto slash = ex.find('/');
      try {
        if (slash == std::string::npos) {
          e = Rational(std::stoll(ex));
        } else {
          e = Rational(std::stoll(ex.substr(0, slash)), std::stoll(ex.substr(slash + 1)));
        }
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad dimension exponent in '" + tok + "'");
      }
    }
    switch (base) {
      case 'T': d.t = d.t + e; break;
      case 'L': d.l = d.l + e; break;
      case 'M': d.m = d.m + e; break;
      default: throw std::invalid_argument("unknown scale '" + tok + "'");
    }
  }
  return d;
}

std::string Dimension::str() const {
  std::vector<std::string> parts;
  auto add = [&](char c, Rational r) {
    if (r == Rational(0)) return;
    parts.push_back(r == Rational(1) ? std::string(1, c) : std::string(1, c) + "^" + r.str());
  };
  add('T', t);
  add('L', l);
  add('M', m);
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out.empty() ? "1" : out;
}

DimScalar dim_mul(const DimScalar& a, const DimScalar& b) { return {a.value * b.value, a.dim * b.dim}; }

DimScalar dim_div(const DimScalar& a, const DimScalar& b) { return {a.value / b.value, a.dim / b.dim}; }

DimScalar dim_add(const DimScalar& a, const DimScalar& b) {
  if (!(a.dim == b.dim)) throw DimensionMismatch("cannot add " + a.dim.str() + " and " + b.dim.str());
  return {a.value + b.value, a.dim};
}

DimScalar dim_sub(const DimScalar& a, const DimScalar& b) {
  if (!(a.dim == b.dim)) throw DimensionMismatch("cannot subtract " + b.dim.str() + " from " + a.dim.str());
  return {a.value - b.value, a.dim};
}

DimScalar dim_pow(const DimScalar& a, Rational r) {
  return {std::pow(a.value, r.to_double()), a.dim.pow(r)};
}

Dimension hbar_dim() { return {-1, 2, 1}; }
Dimension charge_dim() { return {-1, Rational(3, 2), Rational(1, 2)}; }
Dimension mass_dim() { return {0, 0, 1}; }
Dimension light_dim() { return {-1, 1, 0}; }

}  // namespace cqm::dims
