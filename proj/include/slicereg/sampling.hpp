#pragma once

#include <cstdint>

#include "slicereg/series.hpp"

namespace slicereg {

// Random inputs for the verification suites.  Everything is a pure
// function of (seed, stream), so sample sets are stable across runs and
// across evaluation order.

// Gaussian coefficients scaled by decay^k; unit_constant forces a_0 = 1,
// and tail_scale additionally multiplies every a_k with k >= 1 (a small
// tail keeps star inverses of 1 + ... series bounded).
SliceSeries random_series(const SliceStructure& s, int degree, std::uint64_t seed,
                          std::uint64_t stream, double decay = 1.0, bool unit_constant = false,
                          double tail_scale = 1.0);

// Coefficients in the plane of `axis` (a_k = alpha + beta * axis), scaled
// by decay^k.
SliceSeries random_slice_preserving_series(const SliceStructure& s, const Multivector& axis,
                                           int degree, std::uint64_t seed, std::uint64_t stream,
                                           double decay = 1.0, bool unit_constant = false);

// Unit-norm random multivector.
Multivector random_unit(const SliceStructure& s, std::uint64_t seed, std::uint64_t stream);

// Right-multiplies every coefficient by a constant factor.
SliceSeries rotate_right(const SliceSeries& f, const Multivector& u);

}  // namespace slicereg
