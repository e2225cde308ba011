#include "cqm/generators.hpp"

namespace cqm::gen {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ (stream * kGolden + 0x632be59bd9b4e019ULL))) {}

std::uint64_t Rng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() { return mix(key_ + ++counter_ * kGolden); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ScalarField polynomial(const expr::Box& box, int degree, Rng& rng, double scale) {
  const int n = static_cast<int>(box.lo.size());
  const auto& basis = MonomialBasis::get(n, degree);
  std::vector<double> c(basis.size()), centre(n), half(n);
  for (auto& v : c) v = rng.uniform(-scale, scale);
  for (int i = 0; i < n; ++i) {
    centre[i] = 0.5 * (box.lo[i] + box.hi[i]);
    half[i] = 0.5 * (box.hi[i] - box.lo[i]);
  }
  return ScalarField::from(n, [c, centre, half, n, degree](std::span<const Taylor> x) {
    const auto& b = MonomialBasis::get(n, degree);
    std::vector<Taylor> u;
    for (int v = 0; v < n; ++v) {
      Taylor t = x[v];
      t -= centre[v];
      t /= half[v];
      u.push_back(t);
    }
    // powers by the parent chain of the graded basis
    std::vector<Taylor> mono(b.size());
    Taylor s = x[0].constant(c[0]);
    mono[0] = x[0].constant(1.0);
    for (int k = 1; k < b.size(); ++k) {
      mono[k] = mono[b.parent(k)];
      mono[k] *= u[b.parent_var(k)];
      s.axpy(c[k], mono[k]);
    }
    return s;
  });
}

VectorField vector_polynomial(const expr::Box& box, int degree, Rng& rng, double scale) {
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < box.lo.size(); ++i) comps.push_back(polynomial(box, degree, rng, scale));
  return VectorField::from_components(comps);
}

PForm form_polynomial(const expr::Box& box, int p, int degree, Rng& rng, double scale) {
  const int n = static_cast<int>(box.lo.size());
  std::vector<ScalarField> comps;
  for (int i = 0; i < binomial(n, p); ++i) comps.push_back(polynomial(box, degree, rng, scale));
  return PForm::from_components(n, p, comps);
}

Point spacetime_point(const expr::Box& box, Rng& rng) {
  Point p(box.lo.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = box.hi[i] - box.lo[i];
    p[i] = box.lo[i] + w * rng.uniform(0.02, 0.98);
  }
  return p;
}

Point galilei_phase_point(const expr::Box& box, Rng& rng) {
  Point p = spacetime_point(box, rng);
  for (int i = 0; i < 3; ++i) p.push_back(rng.uniform(-2.0, 2.0));
  return p;
}

Point einstein_phase_point(const einstein::Geometry& g, Rng& rng, double margin) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Point p = spacetime_point(g.model().box, rng);
    for (int i = 0; i < 3; ++i) p.push_back(rng.uniform(-2.0, 2.0));
    if (einstein::timelike_margin(g, p) > margin) return p;
  }
  throw std::runtime_error(g.model().name + ": no timelike phase points with fibre |v| <= 2");
}

galilei::SpecialFunction galilei_special(const expr::Box& box, Rng& rng, int degree) {
  galilei::SpecialFunction f;
  f.f0 = polynomial(box, degree, rng);
  for (auto& c : f.f) c = polynomial(box, degree, rng);
  f.fbar = polynomial(box, degree, rng);
  return f;
}

einstein::SpecialFunction einstein_special(const expr::Box& box, Rng& rng, int degree) {
  einstein::SpecialFunction f;
  for (auto& c : f.X) c = polynomial(box, degree, rng);
  f.fbar = polynomial(box, degree, rng);
  return f;
}

galilei::Observer galilei_observer(const expr::Box& box, Rng& rng, double scale) {
  galilei::Observer o;
  for (auto& c : o) c = polynomial(box, 2, rng, scale);
  return o;
}

quantum::HermitianField hermitian_field(const expr::Box& box, Rng& rng, int degree) {
  return {vector_polynomial(box, degree, rng), polynomial(box, degree, rng)};
}

quantum::SpacetimePair spacetime_pair(const expr::Box& box, Rng& rng, int degree) {
  return {vector_polynomial(box, degree, rng), polynomial(box, degree, rng)};
}

quantum::Section section(const expr::Box& box, Rng& rng, int degree) {
  return {polynomial(box, degree, rng), polynomial(box, degree, rng)};
}

}  // namespace cqm::gen
