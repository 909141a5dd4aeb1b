#include "slicereg/catalog.hpp"

#include <cmath>
#include <numbers>

namespace slicereg {

SliceSeries koebe_series(const SliceStructure& s, const Multivector& axis, double theta,
                         int degree) {
  if (!s.is_sphere_element(axis)) {
    throw InvalidPointError("Koebe axis is not in the imaginary sphere");
  }
  if (degree < 1) throw UsageError("Koebe series needs degree >= 1");
  SliceSeries f(s, degree);
  for (int k = 1; k <= degree; ++k) {
    double arg = (k - 1) * theta;
    Multivector a = axis * (k * std::sin(arg));
    a.set_coeff(0, a.coeff(0) + k * std::cos(arg));
    f.set_coeff(k, std::move(a));
  }
  return f;
}

SliceSeries moebius_series(const Multivector& a, const Multivector& u, int degree) {
  SliceStructure s = SliceStructure::quaternion();
  if (a.context()->generators() != 2 || u.context()->generators() != 2) {
    throw UsageError("moebius parameters must be quaternions");
  }
  if (a.norm() >= 1.0) throw UsageError("moebius parameter a must satisfy |a| < 1");
  if (std::fabs(u.norm() - 1.0) > 1e-12) throw UsageError("moebius rotation u must be unit");
  if (degree < 1) throw UsageError("moebius series needs degree >= 1");

  // (1 - x conj(a))^{-*} has coefficients conj(a)^k.
  SliceSeries geom(s, degree);
  Multivector abar = a.conjugate();
  Multivector power = Multivector::scalar(s.context(), 1.0);
  for (int k = 0; k <= degree; ++k) {
    geom.set_coeff(k, power);
    power = power * abar;
  }
  SliceSeries shift(s, 1);
  shift.set_coeff(0, -a);
  shift.set_coeff(1, Multivector::scalar(s.context(), 1.0));
  SliceSeries f = star_product(geom, shift, degree);
  for (int k = 0; k <= f.degree(); ++k) f.set_coeff(k, f.coeff(k) * u);
  return f;
}

namespace {

Multivector mixed_axis(const SliceStructure& s) {
  const auto& masks = s.imaginary_masks();
  if (masks.size() < 2) return s.default_axis();
  Multivector axis = Multivector::blade(s.context(), masks.front());
  axis += Multivector::blade(s.context(), masks.back());
  axis *= 1.0 / std::numbers::sqrt2;
  return axis;
}

}  // namespace

std::vector<SeedFunction> seed_catalog(const SliceStructure& s, int degree) {
  if (degree < 2) throw UsageError("catalog needs degree >= 2");
  const ContextPtr& ctx = s.context();
  std::vector<SeedFunction> out;

  out.push_back(SeedFunction{
      "identity",
      SliceSeries::identity(s),
      s.default_axis(),
      true,
      [](std::complex<double> z) { return z; },
      0.0,
  });

  out.push_back(SeedFunction{
      "koebe(theta=0)",
      koebe_series(s, s.default_axis(), 0.0, degree),
      s.default_axis(),
      true,
      [](std::complex<double> z) {
        std::complex<double> d = 1.0 - z;
        return z / (d * d);
      },
      1.0,
  });

  const double theta = std::numbers::pi / 3.0;
  Multivector axis_r = mixed_axis(s);
  out.push_back(SeedFunction{
      "koebe(theta=pi/3)",
      koebe_series(s, axis_r, theta, degree),
      axis_r,
      true,
      [theta](std::complex<double> z) {
        std::complex<double> c = std::polar(1.0, theta);
        std::complex<double> d = 1.0 - c * z;
        return z / (d * d);
      },
      1.0,
  });

  // z/(1-z): half-plane map, a_k = 1 for k >= 1.
  {
    SliceSeries f(s, degree);
    for (int k = 1; k <= degree; ++k) f.set_coeff(k, Multivector::scalar(ctx, 1.0));
    out.push_back(SeedFunction{
        "cayley",
        std::move(f),
        s.default_axis(),
        true,
        [](std::complex<double> z) { return z / (1.0 - z); },
        1.0,
    });
  }

  // z - z^2/2: polynomial, univalent since its derivative 1 - z has no
  // zero on the disc and z1 + z2 = 2 is impossible there.  Padded to the
  // catalog degree so derived star inverses carry enough terms.
  {
    SliceSeries f(s, degree);
    f.set_coeff(1, Multivector::scalar(ctx, 1.0));
    f.set_coeff(2, Multivector::scalar(ctx, -0.5));
    Multivector axis = s.imaginary_masks().size() >= 2
                           ? Multivector::blade(ctx, s.imaginary_masks()[1])
                           : s.default_axis();
    out.push_back(SeedFunction{
        "halfsquare",
        std::move(f),
        axis,
        true,
        [](std::complex<double> z) { return z - 0.5 * z * z; },
        0.0,
    });
  }

  if (s.kind() == StructureKind::quaternion) {
    Multivector a(ctx, {0.25, 0.25, 0.0, 0.0});
    Multivector u = Multivector::blade(ctx, 0b10u);  // j
    out.push_back(SeedFunction{
        "moebius(a=0.25+0.25i, u=j)",
        moebius_series(a, u, degree),
        s.default_axis(),
        false,
        nullptr,
        1.0,
    });
  }
  return out;
}

}  // namespace slicereg
