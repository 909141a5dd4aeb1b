#include "slicereg/sampling.hpp"

#include <cmath>

#include "slicereg/rng.hpp"

namespace slicereg {

SliceSeries random_series(const SliceStructure& s, int degree, std::uint64_t seed,
                          std::uint64_t stream, double decay, bool unit_constant,
                          double tail_scale) {
  Rng rng = substream(seed, "random_series", stream);
  SliceSeries f(s, degree);
  const int dim = s.context()->dim();
  double w = 1.0;
  for (int k = 0; k <= degree; ++k) {
    Multivector a(s.context());
    double amp = k == 0 ? w : w * tail_scale;
    for (int m = 0; m < dim; ++m) a.set_coeff(m, amp * rng.normal());
    f.set_coeff(k, std::move(a));
    w *= decay;
  }
  if (unit_constant) f.set_coeff(0, Multivector::scalar(s.context(), 1.0));
  return f;
}

SliceSeries random_slice_preserving_series(const SliceStructure& s, const Multivector& axis,
                                           int degree, std::uint64_t seed, std::uint64_t stream,
                                           double decay, bool unit_constant) {
  Rng rng = substream(seed, "random_slice_series", stream);
  SliceSeries f(s, degree);
  double w = 1.0;
  for (int k = 0; k <= degree; ++k) {
    Multivector a = axis * (w * rng.normal());
    a.set_coeff(0, a.coeff(0) + w * rng.normal());
    f.set_coeff(k, std::move(a));
    w *= decay;
  }
  if (unit_constant) f.set_coeff(0, Multivector::scalar(s.context(), 1.0));
  return f;
}

Multivector random_unit(const SliceStructure& s, std::uint64_t seed, std::uint64_t stream) {
  Rng rng = substream(seed, "random_unit", stream);
  const int dim = s.context()->dim();
  while (true) {
    Multivector a(s.context());
    for (int m = 0; m < dim; ++m) a.set_coeff(m, rng.normal());
    double n = a.norm();
    if (n > 1e-6) return a * (1.0 / n);
  }
}

SliceSeries rotate_right(const SliceSeries& f, const Multivector& u) {
  SliceSeries out(f.structure(), f.degree());
  for (int k = 0; k <= f.degree(); ++k) out.set_coeff(k, f.coeff(k) * u);
  return out;
}

}  // namespace slicereg
