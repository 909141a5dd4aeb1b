#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "slicereg/series.hpp"

namespace slicereg {

// A catalog function: a truncated series plus the exact classical function
// it extends on its defining slice.  Entries whose restriction is a known
// univalent map are marked normalized (a_0 = 0, a_1 = 1) and feed the
// growth/distortion/covering checks; slice_value gives the closed form of
// the restriction and stays accurate arbitrarily close to the boundary,
// where the truncated series does not.
struct SeedFunction {
  std::string name;
  SliceSeries series;
  Multivector axis;  // defining slice
  bool normalized = false;
  std::function<std::complex<double>(std::complex<double>)> slice_value;
  // Tail model |a_k| <= coeff_slope * k for k > degree; 0 for polynomials
  // that are exactly their own series.
  double coeff_slope = 0.0;
};

// Series of x (1 - x e^{I theta})^{-*2}: coefficients k e^{I (k-1) theta}.
SliceSeries koebe_series(const SliceStructure& s, const Multivector& axis, double theta,
                         int degree);

// Ball automorphism series (1 - x conj(a))^{-*} * (x - a) u for |a| < 1,
// |u| = 1 (quaternion structure only).
SliceSeries moebius_series(const Multivector& a, const Multivector& u, int degree);

// identity, koebe(0), koebe(pi/3), cayley z/(1-z), halfsquare z - z^2/2,
// and (quaternions only) a moebius automorphism entry.
std::vector<SeedFunction> seed_catalog(const SliceStructure& s, int degree);

}  // namespace slicereg
