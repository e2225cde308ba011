#pragma once

#include <cstdint>
#include <string_view>

#include "cqm/einstein.hpp"
#include "cqm/galilei.hpp"
#include "cqm/quantum.hpp"

namespace cqm::gen {

// Counter-based SplitMix64: the k-th draw of stream s under seed S is mix(key(S, s) + k * golden).
// Streams are independent of evaluation order, so concurrent checks stay reproducible.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  static std::uint64_t mix(std::uint64_t x);
  std::uint64_t next();
  double uniform();  // [0, 1) with 53 bits
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(uniform() * n); }
  Rng split(std::uint64_t stream) const { return Rng(key_, stream); }

 private:
  std::uint64_t key_, counter_ = 0;
};

// FNV-1a of a name, used to derive per-check streams.
std::uint64_t stream_id(std::string_view name);

// Polynomials of total degree <= degree in the box-normalised coordinates (x - centre) / half-width,
// coefficients uniform in [-scale, scale].
ScalarField polynomial(const expr::Box& box, int degree, Rng& rng, double scale = 1.0);
VectorField vector_polynomial(const expr::Box& box, int degree, Rng& rng, double scale = 1.0);
// Random spacetime p-form with polynomial components.
PForm form_polynomial(const expr::Box& box, int p, int degree, Rng& rng, double scale = 1.0);

// Uniform point strictly inside the box (2% margin on each side).
Point spacetime_point(const expr::Box& box, Rng& rng);
// Spacetime point with fibre |x^i_0| <= 2.
Point galilei_phase_point(const expr::Box& box, Rng& rng);
// Timelike phase point with -g(dbar, dbar) > margin, fibre |x^i_0| <= 2.
Point einstein_phase_point(const einstein::Geometry& g, Rng& rng, double margin = 0.05);

galilei::SpecialFunction galilei_special(const expr::Box& box, Rng& rng, int degree = 2);
einstein::SpecialFunction einstein_special(const expr::Box& box, Rng& rng, int degree = 2);
galilei::Observer galilei_observer(const expr::Box& box, Rng& rng, double scale = 0.5);
quantum::HermitianField hermitian_field(const expr::Box& box, Rng& rng, int degree = 2);
quantum::SpacetimePair spacetime_pair(const expr::Box& box, Rng& rng, int degree = 2);
quantum::Section section(const expr::Box& box, Rng& rng, int degree = 2);

}  // namespace cqm::gen
