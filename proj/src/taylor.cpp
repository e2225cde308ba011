#include "cqm/taylor.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace cqm {
namespace {

constexpr int kMaxVars = 8;
constexpr int kMaxOrder = 10;

void enumerate(int n, int d, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int a = d; a >= 0; --a) {
    cur[pos] = a;
    enumerate(n, d - a, cur, pos + 1, out);
  }
}

std::uint64_t key_of(const int* e, int n, int order) {
  std::uint64_t k = 0;
  for (int i = n - 1; i >= 0; --i) k = k * std::uint64_t(order + 1) + std::uint64_t(e[i]);
  return k;
}

void same_basis(const Taylor& a, const Taylor& b) {
  if (&a.basis() != &b.basis()) throw std::logic_error("Taylor operands expanded in different bases");
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int order) : nvars_(nvars), order_(order) {
  std::vector<std::vector<int>> all;
  degree_end_.assign(order + 1, 0);
  std::vector<int> cur(nvars, 0);
  for (int d = 0; d <= order; ++d) {
    enumerate(nvars, d, cur, 0, all);
    degree_end_[d] = int(all.size());
  }
  size_ = int(all.size());
  exps_.resize(std::size_t(size_) * nvars_);
  degree_.resize(size_);
  std::unordered_map<std::uint64_t, int> lookup;
  for (int k = 0; k < size_; ++k) {
    int deg = 0;
    for (int v = 0; v < nvars_; ++v) {
      exps_[std::size_t(k) * nvars_ + v] = std::uint8_t(all[k][v]);
      deg += all[k][v];
    }
    degree_[k] = deg;
    lookup[key_of(all[k].data(), nvars_, order_)] = k;
  }
  auto find = [&](const std::vector<int>& e) { return lookup.at(key_of(e.data(), nvars_, order_)); };

  parent_.assign(size_, -1);
  parent_var_.assign(size_, -1);
  for (int k = 1; k < size_; ++k) {
    std::vector<int> e = all[k];
    int v = 0;
    while (e[v] == 0) ++v;
    --e[v];
    parent_[k] = find(e);
    parent_var_[k] = v;
  }

  for (int a = 0; a < size_; ++a) {
    const int limit = degree_end_[order_ - degree_[a]];
    for (int b = 0; b < limit; ++b) {
      std::vector<int> e(nvars_);
      for (int v = 0; v < nvars_; ++v) e[v] = all[a][v] + all[b][v];
      products_.push_back({a, b, find(e)});
    }
  }

  shifts_.resize(nvars_);
  for (int v = 0; v < nvars_; ++v) {
    for (int k = 0; k < size_; ++k) {
      if (all[k][v] == 0) continue;
      std::vector<int> e = all[k];
      --e[v];
      shifts_[v].push_back({k, find(e), double(all[k][v])});
    }
  }
}

const MonomialBasis& MonomialBasis::get(int nvars, int order) {
  if (nvars < 1 || nvars > kMaxVars || order < 0 || order > kMaxOrder)
    throw std::invalid_argument("unsupported Taylor basis size");
  thread_local const MonomialBasis* local[kMaxVars + 1][kMaxOrder + 1] = {};
  if (const MonomialBasis* b = local[nvars][order]) return *b;
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot.reset(new MonomialBasis(nvars, order));
  local[nvars][order] = slot.get();
  return *slot;
}

int MonomialBasis::index(const int* exps) const {
  int deg = 0;
  for (int v = 0; v < nvars_; ++v) deg += exps[v];
  if (deg > order_) return -1;
  for (int k = deg == 0 ? 0 : degree_end_[deg - 1]; k < degree_end_[deg]; ++k) {
    const std::uint8_t* e = exponents(k);
    bool eq = true;
    for (int v = 0; v < nvars_ && eq; ++v) eq = e[v] == exps[v];
    if (eq) return k;
  }
  return -1;
}

Taylor::Taylor(const MonomialBasis& basis, double value) : basis_(&basis), c_(basis.size(), 0.0) {
  c_[0] = value;
}

Taylor Taylor::variable(const MonomialBasis& basis, int v, double value) {
  Taylor t(basis, value);
  if (basis.order() >= 1) t.c_[1 + v] = 1.0;
  return t;
}

Taylor Taylor::partial(int v) const {
  if (order() == 0) throw std::logic_error("cannot differentiate an order-0 Taylor number");
  Taylor r(MonomialBasis::get(nvars(), order() - 1), 0.0);
  for (const auto& s : basis_->shifts(v)) {
    if (s.dst < r.basis_->size()) r.c_[s.dst] = s.factor * c_[s.src];
  }
  return r;
}

Taylor Taylor::truncated(int ord) const {
  if (ord > order()) throw std::logic_error("cannot raise Taylor order by truncation");
  Taylor r(MonomialBasis::get(nvars(), ord), 0.0);
  for (int k = 0; k < r.basis_->size(); ++k) r.c_[k] = c_[k];
  return r;
}

double Taylor::d(int v) const { return order() >= 1 ? c_[1 + v] : 0.0; }

double Taylor::d2(int a, int b) const {
  if (order() < 2) return 0.0;
  int e[kMaxVars] = {};
  ++e[a];
  ++e[b];
  const int k = basis_->index(e);
  return a == b ? 2.0 * c_[k] : c_[k];
}

bool Taylor::is_seed(int v) const {
  for (int k = 1; k < basis_->size(); ++k) {
    const double want = (k == 1 + v) ? 1.0 : 0.0;
    if (c_[k] != want) return false;
  }
  return true;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  same_basis(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  same_basis(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

void Taylor::axpy(double s, const Taylor& o) {
  same_basis(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += s * o.c_[k];
}

void Taylor::fma(const Taylor& a, const Taylor& b) {
  same_basis(*this, a);
  same_basis(a, b);
  if (basis_->order() == 0) {
    c_[0] += a.c_[0] * b.c_[0];
    return;
  }
  for (const auto& p : basis_->products()) c_[p.out] += a.c_[p.a] * b.c_[p.b];
}

Taylor& Taylor::operator*=(const Taylor& o) {
  same_basis(*this, o);
  if (basis_->order() == 0) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<double> r(c_.size(), 0.0);
  for (const auto& p : basis_->products()) r[p.out] += c_[p.a] * o.c_[p.b];
  c_.swap(r);
  return *this;
}

Taylor& Taylor::operator/=(const Taylor& o) { return *this *= reciprocal(o); }

Taylor& Taylor::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Taylor& Taylor::operator/=(double s) {
  if (s == 0.0) throw DomainError("division by zero");
  for (double& x : c_) x /= s;
  return *this;
}

Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
Taylor operator*(const Taylor& a, const Taylor& b) {
  Taylor r = a;
  return r *= b;
}
Taylor operator/(const Taylor& a, const Taylor& b) { return a * reciprocal(b); }
Taylor operator+(Taylor a, double s) { return a += s; }
Taylor operator+(double s, Taylor a) { return a += s; }
Taylor operator-(Taylor a, double s) { return a -= s; }
Taylor operator-(double s, const Taylor& a) {
  Taylor r = -a;
  return r += s;
}
Taylor operator*(Taylor a, double s) { return a *= s; }
Taylor operator*(double s, Taylor a) { return a *= s; }
Taylor operator/(Taylor a, double s) { return a /= s; }
Taylor operator/(double s, const Taylor& a) { return reciprocal(a) *= s; }
Taylor operator-(Taylor a) { return a *= -1.0; }

Taylor apply_series(const Taylor& a, std::span<const double> d) {
  const int top = std::min<int>(a.order(), int(d.size()) - 1);
  Taylor h = a;
  h.c_[0] = 0.0;
  Taylor r(a.basis(), d[top]);
  for (int k = top - 1; k >= 0; --k) {
    r *= h;
    r.c_[0] += d[k];
  }
  return r;
}

Taylor sin(const Taylor& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  std::vector<double> d(a.order() + 1);
  const double cyc[4] = {s, c, -s, -c};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    d[k] = cyc[k % 4] / fact;
  }
  return apply_series(a, d);
}

Taylor cos(const Taylor& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  std::vector<double> d(a.order() + 1);
  const double cyc[4] = {c, -s, -c, s};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    d[k] = cyc[k % 4] / fact;
  }
  return apply_series(a, d);
}

Taylor exp(const Taylor& a) {
  const double e = std::exp(a.value());
  std::vector<double> d(a.order() + 1);
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    d[k] = e / fact;
  }
  return apply_series(a, d);
}

Taylor log(const Taylor& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("log of a non-positive value");
  std::vector<double> d(a.order() + 1);
  d[0] = std::log(a0);
  double p = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    p *= a0;
    d[k] = ((k % 2) ? 1.0 : -1.0) / (k * p);
  }
  return apply_series(a, d);
}

Taylor reciprocal(const Taylor& a) {
  const double a0 = a.value();
  if (a0 == 0.0) throw DomainError("division by zero");
  std::vector<double> d(a.order() + 1);
  double p = 1.0 / a0;
  for (int k = 0; k <= a.order(); ++k) {
    d[k] = p;
    p *= -1.0 / a0;
  }
  return apply_series(a, d);
}

Taylor powi(const Taylor& a, int n) {
  if (n < 0) return powi(reciprocal(a), -n);
  Taylor result(a.basis(), 1.0);
  Taylor base = a;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Taylor pow(const Taylor& a, double r) {
  if (r == std::floor(r) && std::abs(r) <= 64) return powi(a, int(r));
  const double a0 = a.value();
  if (a0 == 0.0 && a.order() == 0 && r > 0) return Taylor(a.basis(), 0.0);
  if (!(a0 > 0.0)) throw DomainError("fractional power of a non-positive value");
  std::vector<double> d(a.order() + 1);
  double binom = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) binom *= (r - (k - 1)) / k;
    d[k] = binom * std::pow(a0, r - k);
  }
  return apply_series(a, d);
}

Taylor sqrt(const Taylor& a) {
  if (a.value() < 0.0) throw DomainError("square root of a negative value");
  return pow(a, 0.5);
}

Taylor abs(const Taylor& a) {
  const double a0 = a.value();
  if (a0 > 0.0) return a;
  if (a0 < 0.0) return -a;
  if (a.order() == 0) return a;
  throw DomainError("abs is not differentiable at zero");
}

std::vector<Taylor> seed(std::span<const double> p, int order) {
  const MonomialBasis& b = MonomialBasis::get(int(p.size()), order);
  std::vector<Taylor> x;
  x.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) x.push_back(Taylor::variable(b, int(i), p[i]));
  return x;
}

bool is_identity_seed(std::span<const Taylor> x) {
  const int n = int(x.size());
  for (int i = 0; i < n; ++i) {
    if (x[i].nvars() != n || !x[i].is_seed(i)) return false;
  }
  return true;
}

std::vector<double> values(std::span<const Taylor> x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i].value();
  return v;
}

std::vector<Taylor> compose(std::span<const Taylor> polys, std::span<const Taylor> x) {
  std::vector<Taylor> out;
  if (polys.empty()) return out;
  const MonomialBasis& P = polys[0].basis();
  const MonomialBasis& Q = x[0].basis();
  if (P.nvars() != int(x.size())) throw std::logic_error("composition arity mismatch");
  const int top = std::min(P.order(), Q.order());
  const int count = P.size_up_to(top);
  std::vector<Taylor> delta(x.begin(), x.end());
  for (auto& d : delta) d[0] = 0.0;
  std::vector<Taylor> prod;
  prod.reserve(count);
  prod.emplace_back(Q, 1.0);
  for (int k = 1; k < count; ++k) prod.push_back(prod[P.parent(k)] * delta[P.parent_var(k)]);
  out.reserve(polys.size());
  for (const Taylor& f : polys) {
    Taylor r(Q, 0.0);
    for (int k = 0; k < count; ++k) {
      if (f[k] != 0.0) r.axpy(f[k], prod[k]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cqm
