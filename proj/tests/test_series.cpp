#include <doctest.h>

#include <cmath>
#include <complex>

#include "slicereg/rng.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/series.hpp"

using namespace slicereg;

namespace {

const SliceStructure kQ = SliceStructure::quaternion();

Multivector scalar(const SliceStructure& s, double v) {
  return Multivector::scalar(s.context(), v);
}

}  // namespace

TEST_CASE("eval") {
  const ContextPtr& ctx = kQ.context();
  Multivector e1 = Multivector::blade(ctx, 0b01);
  Multivector e2 = Multivector::blade(ctx, 0b10);

  // Identity series echoes the point.
  SliceSeries id = SliceSeries::identity(kQ);
  Multivector x = scalar(kQ, 0.3) + e2 * 0.4;
  CHECK((eval(id, x) - x).norm() < 1e-15);

  // a_2 = e_1 only: (e_2)^2 e_1 = -e_1.
  SliceSeries f(kQ, 2);
  f.set_coeff(2, e1);
  CHECK((eval(f, e2) + e1).norm() < 1e-15);

  // Geometric series z/(1-z) evaluated at 1/2.
  ComplexSeries geom;
  geom.coeffs.assign(65, {1.0, 0.0});
  geom.coeffs[0] = {0.0, 0.0};
  SliceSeries g = ext(geom, e1, kQ);
  CHECK(eval(g, scalar(kQ, 0.5)).scalar_part() == doctest::Approx(1.0).epsilon(1e-12));

  // Paravector structures reject off-subspace points.
  SliceStructure p2 = SliceStructure::paravector(2);
  SliceSeries idp = SliceSeries::identity(p2);
  CHECK_THROWS_AS((void)eval(idp, Multivector::blade(p2.context(), 0b11)), InvalidPointError);
}

TEST_CASE("eval agrees with naive power accumulation") {
  // Independent route: x^k by repeated multivector multiplication.
  for (SliceStructure s : {kQ, SliceStructure::paravector(4)}) {
    for (int i = 0; i < 10; ++i) {
      SliceSeries f = random_series(s, 10, 3100, i, 0.8);
      Rng rng(3200, i);
      for (int p = 0; p < 20; ++p) {
        Multivector J = s.sphere_sample_one(3300, 20 * i + p);
        double r = rng.uniform(0.0, 0.9);
        double phi = rng.uniform(0.0, 3.14159265358979323846);
        SlicePoint pt{r * std::cos(phi), r * std::sin(phi), J};
        Multivector x = s.embed(pt);
        Multivector power = Multivector::scalar(s.context(), 1.0);
        Multivector naive(s.context());
        for (int k = 0; k <= f.degree(); ++k) {
          naive += power * f.coeff(k);
          power = power * x;
        }
        CHECK(relative_residual(naive, eval(f, pt)) < 1e-12);
      }
    }
  }
}

TEST_CASE("star product matches pointwise product on a shared slice") {
  // Plane-coefficient series multiply like complex power series on their
  // slice, so the convolution can be checked against plain pointwise
  // multiplication there.
  for (int i = 0; i < 10; ++i) {
    Multivector axis = kQ.sphere_sample_one(3400, i);
    SliceSeries f = random_slice_preserving_series(kQ, axis, 8, 3500, i, 0.7);
    SliceSeries g = random_slice_preserving_series(kQ, axis, 8, 3600, i, 0.7);
    SliceSeries fg = star_product(f, g);
    Rng rng(3700, i);
    for (int p = 0; p < 20; ++p) {
      double r = rng.uniform(0.0, 0.9);
      double phi = rng.uniform(0.0, 3.14159265358979323846);
      SlicePoint pt{r * std::cos(phi), r * std::sin(phi), axis};
      Multivector pointwise = eval(f, pt) * eval(g, pt);
      CHECK(relative_residual(eval(fg, pt), pointwise) < 1e-12);
    }
  }
}

TEST_CASE("representation formula") {
  const ContextPtr& ctx = kQ.context();
  Multivector e1 = Multivector::blade(ctx, 0b01);

  SliceSeries f = random_series(kQ, 12, 99, 0, 0.8);
  SlicePoint p{0.3, 0.45, e1};
  Multivector x = kQ.embed(p);

  // J = I collapses to the direct value, J = -I to the conjugate one.
  CHECK((eval_representation(f, e1, x) - eval(f, x)).norm() < 1e-12);
  Multivector xm = kQ.embed({0.3, 0.45, -e1});
  CHECK((eval_representation(f, -e1, xm) - eval(f, xm)).norm() < 1e-12);

  // Random axes reproduce the direct evaluation.
  for (int i = 0; i < 50; ++i) {
    Multivector I = kQ.sphere_sample_one(5, i);
    Multivector J = kQ.sphere_sample_one(6, i);
    Rng rng(7, i);
    double r = rng.uniform(0.0, 0.9);
    double phi = rng.uniform(0.0, 3.14159265358979323846);
    Multivector y = kQ.embed({r * std::cos(phi), r * std::sin(phi), J});
    CHECK(relative_residual(eval_representation(f, I, y), eval(f, y)) < 1e-10);
  }
}

TEST_CASE("derivative") {
  SliceSeries id = SliceSeries::identity(kQ);
  SliceSeries d = derivative(id);
  CHECK(d.degree() == 0);
  CHECK(d.coeff(0).scalar_part() == 1.0);

  Multivector e2 = Multivector::blade(kQ.context(), 0b10);
  SliceSeries f(kQ, 3);
  f.set_coeff(3, e2);
  SliceSeries fd = derivative(f);
  CHECK((fd.coeff(2) - e2 * 3.0).norm() == 0.0);

  CHECK(derivative(SliceSeries::unit(kQ)).degree() == 0);
  CHECK(derivative(SliceSeries::unit(kQ)).coeff(0).norm() == 0.0);
}

TEST_CASE("star product") {
  const ContextPtr& ctx = kQ.context();
  Multivector e1 = Multivector::blade(ctx, 0b01);
  Multivector e2 = Multivector::blade(ctx, 0b10);

  SliceSeries f(kQ, 1), g(kQ, 1);
  f.set_coeff(1, e1);
  g.set_coeff(1, e2);
  SliceSeries fg = star_product(f, g);
  CHECK((fg.coeff(2) - Multivector::blade(ctx, 0b11)).norm() == 0.0);  // e_1 e_2 = k

  // Non-commutativity: g * f has the opposite sign.
  SliceSeries gf = star_product(g, f);
  CHECK((gf.coeff(2) + Multivector::blade(ctx, 0b11)).norm() == 0.0);

  // Unit element and x^{*2} = x^2.
  SliceSeries id = SliceSeries::identity(kQ);
  CHECK((star_product(f, SliceSeries::unit(kQ)).coeff(1) - e1).norm() == 0.0);
  SliceSeries sq = star_product(id, id);
  CHECK(sq.coeff(2).scalar_part() == 1.0);

  // Associativity and distributivity on random inputs.
  Rng rng(21, 0);
  for (int i = 0; i < 20; ++i) {
    SliceSeries a = random_series(kQ, 6, 100, i);
    SliceSeries b = random_series(kQ, 6, 200, i);
    SliceSeries c = random_series(kQ, 6, 300, i);
    SliceSeries lhs = star_product(star_product(a, b), c);
    SliceSeries rhs = star_product(a, star_product(b, c));
    for (int k = 0; k <= lhs.degree(); ++k) {
      CHECK((lhs.coeff(k) - rhs.coeff(k)).norm() < 1e-11);
    }
  }

  SliceStructure p3 = SliceStructure::paravector(3);
  CHECK_THROWS_AS((void)star_product(f, SliceSeries::unit(p3)), UsageError);
}

TEST_CASE("series conjugate and symmetrization") {
  const ContextPtr& ctx = kQ.context();
  Multivector e1 = Multivector::blade(ctx, 0b01);

  SliceSeries f(kQ, 1);
  f.set_coeff(1, e1);
  CHECK((series_conjugate(f).coeff(1) + e1).norm() == 0.0);

  // Real coefficients unchanged; conjugation is an involution.
  for (int i = 0; i < 100; ++i) {
    SliceSeries r = random_series(kQ, 8, 400, i);
    SliceSeries cc = series_conjugate(series_conjugate(r));
    for (int k = 0; k <= r.degree(); ++k) CHECK((cc.coeff(k) - r.coeff(k)).norm() == 0.0);
  }

  // f = x e_1: symmetrization is x^2.
  SliceSeries fs = symmetrization(f);
  CHECK(fs.coeff(2).scalar_part() == doctest::Approx(1.0));
  CHECK((fs.coeff(2) - scalar(kQ, 1.0)).norm() < 1e-15);

  SliceSeries one = symmetrization(SliceSeries::unit(kQ));
  CHECK(one.coeff(0).scalar_part() == 1.0);

  // f * conj f = conj f * f coefficientwise, and plane coefficients close.
  for (int i = 0; i < 50; ++i) {
    Multivector axis = kQ.sphere_sample_one(500, i);
    SliceSeries g = random_slice_preserving_series(kQ, axis, 10, 600, i);
    SliceSeries ab = star_product(g, series_conjugate(g));
    SliceSeries ba = star_product(series_conjugate(g), g);
    Multivector one_mv = scalar(kQ, 1.0);
    for (int k = 0; k <= ab.degree(); ++k) {
      CHECK((ab.coeff(k) - ba.coeff(k)).norm() < 1e-12);
      // closure: the symmetrization keeps coefficients in the plane
      Multivector c = ab.coeff(k);
      Multivector proj = one_mv * inner(c, one_mv) + axis * inner(c, axis);
      CHECK((c - proj).norm() < 1e-12 * (1.0 + c.norm()));
    }
  }
}

TEST_CASE("star inverse series") {
  const ContextPtr& ctx = kQ.context();
  Multivector q0 = kQ.sphere_sample_one(77, 0);  // unit

  // f = 1 - x q0: inverse is the geometric series q0^k.
  SliceSeries f(kQ, 8);
  f.set_coeff(0, scalar(kQ, 1.0));
  f.set_coeff(1, -q0);
  SliceSeries inv = star_inverse_series(f);
  Multivector power = scalar(kQ, 1.0);
  for (int k = 0; k <= 8; ++k) {
    CHECK((inv.coeff(k) - power).norm() < 1e-13);
    power = power * q0;
  }

  SliceSeries u = star_inverse_series(SliceSeries::unit(kQ));
  CHECK((u.coeff(0) - scalar(kQ, 1.0)).norm() == 0.0);

  // Random unit-constant series: two-sided inverse up to degree 32.
  SliceStructure p3 = SliceStructure::paravector(3);
  for (int i = 0; i < 30; ++i) {
    SliceSeries g = random_series(p3, 32, 700, i, 0.5, true, 0.1);
    SliceSeries gi = star_inverse_series(g);
    SliceSeries left = star_product(g, gi, 32);
    SliceSeries right = star_product(gi, g, 32);
    for (int k = 0; k <= 32; ++k) {
      double want = k == 0 ? 1.0 : 0.0;
      Multivector dl = left.coeff(k);
      dl.set_coeff(0, dl.coeff(0) - want);
      Multivector dr = right.coeff(k);
      dr.set_coeff(0, dr.coeff(0) - want);
      CHECK(dl.norm() < 1e-10);
      CHECK(dr.norm() < 1e-10);
    }
  }

  // Vanishing constant coefficient cannot be inverted.
  CHECK_THROWS_AS((void)star_inverse_series(SliceSeries::identity(kQ)), NotInvertibleError);
  (void)ctx;
}

TEST_CASE("star inverse pointwise") {
  const ContextPtr& ctx = kQ.context();
  Multivector e1 = Multivector::blade(ctx, 0b01);

  // Unit series inverts to 1 everywhere.
  CHECK((star_inverse_eval(SliceSeries::unit(kQ), scalar(kQ, 0.7)) - scalar(kQ, 1.0)).norm() <
        1e-14);

  // f = 1 - x e_1 at x = 1/2: (1 - e_1/2)^{-1} = (1 + e_1/2)/1.25.
  SliceSeries f(kQ, 1);
  f.set_coeff(0, scalar(kQ, 1.0));
  f.set_coeff(1, -e1);
  Multivector got = star_inverse_eval(f, scalar(kQ, 0.5));
  Multivector want = (scalar(kQ, 1.0) + e1 * 0.5) * (1.0 / 1.25);
  CHECK((got - want).norm() < 1e-14);

  // The origin lies in the zero set of sym(x).
  CHECK_THROWS_AS((void)star_inverse_eval(SliceSeries::identity(kQ), Multivector(ctx)),
                  ZeroSetError);

  // Route agreement for tame slice-preserving series.
  for (int i = 0; i < 10; ++i) {
    Multivector axis = kQ.sphere_sample_one(800, i);
    SliceSeries g = random_slice_preserving_series(kQ, axis, 48, 900, i, 0.25, true);
    for (int k = 1; k <= g.degree(); ++k) g.set_coeff(k, g.coeff(k) * 0.4);
    SliceSeries gi = star_inverse_series(g);
    for (int p = 0; p < 20; ++p) {
      Multivector J = kQ.sphere_sample_one(1000, 20 * i + p);
      Rng rng(1100, 20 * i + p);
      double r = rng.uniform(0.0, 0.9);
      double phi = rng.uniform(0.0, 3.14159265358979323846);
      SlicePoint pt{r * std::cos(phi), r * std::sin(phi), J};
      CHECK(relative_residual(eval(gi, pt), star_inverse_eval(g, kQ.embed(pt))) < 1e-8);
    }
  }
}

TEST_CASE("ext") {
  const ContextPtr& ctx = kQ.context();
  Multivector e2 = Multivector::blade(ctx, 0b10);

  ComplexSeries idc;
  idc.coeffs = {{0.0, 0.0}, {1.0, 0.0}};
  SliceSeries id = ext(idc, e2, kQ);
  CHECK((id.coeff(1) - scalar(kQ, 1.0)).norm() == 0.0);

  ComplexSeries with_i;
  with_i.coeffs = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
  CHECK((ext(with_i, e2, kQ).coeff(2) - e2).norm() == 0.0);

  // Restriction to the extension slice reproduces the complex values.
  Rng rng(31, 0);
  ComplexSeries F;
  for (int k = 0; k < 12; ++k) F.coeffs.emplace_back(rng.normal(), rng.normal());
  Multivector axis = kQ.sphere_sample_one(32, 4);
  SliceSeries f = ext(F, axis, kQ);
  Multivector one = scalar(kQ, 1.0);
  for (int i = 0; i < 40; ++i) {
    double r = rng.uniform(0.0, 0.95);
    double phi = rng.uniform(0.0, 3.14159265358979323846);
    std::complex<double> z = std::polar(r, phi);
    std::complex<double> wz = eval(F, z);
    Multivector got = eval(f, SlicePoint{z.real(), z.imag(), axis});
    Multivector expect = one * wz.real() + axis * wz.imag();
    CHECK((got - expect).norm() < 1e-12 * (1.0 + expect.norm()));
  }

  CHECK_THROWS_AS((void)ext(F, scalar(kQ, 1.0), kQ), InvalidPointError);
}

TEST_CASE("splitting") {
  const ContextPtr& ctx = kQ.context();
  Multivector e1 = Multivector::blade(ctx, 0b01);
  Multivector e2 = Multivector::blade(ctx, 0b10);

  // f(q) = q e_2 splits along I = e_1 as F = 0, G(z) = z.
  SliceSeries f(kQ, 1);
  f.set_coeff(1, e2);
  SplittingResult sp = splitting(f, e1);
  CHECK(sp.components.size() == 2);
  CHECK(std::abs(sp.components[0].coeffs[1]) < 1e-14);
  CHECK(std::abs(sp.components[1].coeffs[1] - std::complex<double>(1.0, 0.0)) < 1e-14);
  CHECK((sp.completion[0] - e2).norm() < 1e-14);

  // Constant e_2 in R_3 lands in the first completion component.
  SliceStructure p3 = SliceStructure::paravector(3);
  SliceSeries g(p3, 0);
  g.set_coeff(0, Multivector::blade(p3.context(), 0b010));
  SplittingResult sp3 = splitting(g, Multivector::blade(p3.context(), 0b001));
  CHECK(sp3.components.size() == 4);
  CHECK(std::abs(sp3.components[1].coeffs[0] - std::complex<double>(1.0, 0.0)) < 1e-14);
  for (std::size_t t = 0; t < sp3.components.size(); ++t) {
    if (t != 1) CHECK(std::abs(sp3.components[t].coeffs[0]) < 1e-14);
  }

  // Reconstruction over random series and axes for n = 2..5.
  for (int n : {2, 3, 4, 5}) {
    SliceStructure s = SliceStructure::paravector(n);
    for (int i = 0; i < 5; ++i) {
      SliceSeries h = random_series(s, 10, 1200 + n, i);
      Multivector axis = s.sphere_sample_one(1300 + n, i);
      SplittingResult split = splitting(h, axis);
      CHECK(static_cast<int>(split.components.size()) == (1 << (n - 1)));
      Rng rng(1400 + n, i);
      for (int p = 0; p < 50; ++p) {
        double r = rng.uniform(0.0, 0.9);
        double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        std::complex<double> z = std::polar(r, phi);
        Multivector recon(s.context());
        for (std::size_t t = 0; t < split.module_blades.size(); ++t) {
          std::complex<double> c = eval(split.components[t], z);
          Multivector plane = axis * c.imag();
          plane.set_coeff(0, plane.coeff(0) + c.real());
          recon += plane * split.module_blades[t];
        }
        double v = z.imag();
        Multivector a2 = axis;
        if (v < 0) {
          a2 = -a2;
          v = -v;
        }
        CHECK(relative_residual(recon, eval(h, SlicePoint{z.real(), v, a2})) < 1e-10);
      }
    }
  }
}

TEST_CASE("completion basis is deterministic and orthonormal") {
  SliceStructure p4 = SliceStructure::paravector(4);
  for (int i = 0; i < 20; ++i) {
    Multivector axis = p4.sphere_sample_one(1500, i);
    auto comp = completion_basis(p4, axis);
    CHECK(comp.size() == 3);
    for (std::size_t a = 0; a < comp.size(); ++a) {
      CHECK(std::fabs(comp[a].norm() - 1.0) < 1e-12);
      CHECK(std::fabs(inner(comp[a], axis)) < 1e-12);
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        CHECK(std::fabs(inner(comp[a], comp[b])) < 1e-12);
      }
      // Orthonormal 1-vectors anticommute with the axis.
      Multivector anti = comp[a] * axis + axis * comp[a];
      CHECK(anti.norm() < 1e-12);
    }
    auto again = completion_basis(p4, axis);
    for (std::size_t a = 0; a < comp.size(); ++a) CHECK((comp[a] - again[a]).norm() == 0.0);
  }
}

TEST_CASE("divide by variable") {
  SliceSeries id = SliceSeries::identity(kQ);
  SliceSeries one = divide_by_variable(id);
  CHECK(one.degree() == 0);
  CHECK(one.coeff(0).scalar_part() == 1.0);

  // Multiplying back by the variable recovers the series.
  SliceSeries f = random_series(kQ, 9, 1550, 0);
  f.set_coeff(0, Multivector(kQ.context()));
  SliceSeries back = star_product(SliceSeries::identity(kQ), divide_by_variable(f));
  REQUIRE(back.degree() == f.degree());
  for (int k = 0; k <= f.degree(); ++k) CHECK((back.coeff(k) - f.coeff(k)).norm() == 0.0);

  SliceSeries bad(kQ, 1);
  bad.set_coeff(0, scalar(kQ, 1.0));
  bad.set_coeff(1, scalar(kQ, 1.0));
  CHECK_THROWS_AS((void)divide_by_variable(bad), UsageError);
}

TEST_CASE("ratio evaluation") {
  // f = x: ratio is identically 1.
  SliceSeries id = SliceSeries::identity(kQ);
  CHECK((ratio_eval(id, scalar(kQ, 0.37)) - scalar(kQ, 1.0)).norm() < 1e-14);
  CHECK((ratio_eval(id, Multivector(kQ.context())) - scalar(kQ, 1.0)).norm() < 1e-14);

  SliceSeries not_normalized(kQ, 1);
  not_normalized.set_coeff(1, scalar(kQ, 2.0));
  CHECK_THROWS_AS((void)ratio_eval(not_normalized, scalar(kQ, 0.1)), UsageError);
}

TEST_CASE("star inverse routes off-slice for general series") {
  // For series preserving no slice the two inverse routes are only known
  // to agree on-slice; off-slice agreement is probed empirically and
  // recorded, not asserted.  The routes must still produce finite values
  // or a clean zero-set error.
  double worst_off_slice = 0.0;
  int zero_set_hits = 0;
  for (int i = 0; i < 10; ++i) {
    SliceSeries f = random_series(kQ, 12, 1800, i, 0.5, true, 0.2);
    SliceSeries inv = star_inverse_series(f);
    Rng rng(1801, i);
    for (int p = 0; p < 20; ++p) {
      Multivector J = kQ.sphere_sample_one(1802, 20 * i + p);
      double r = rng.uniform(0.0, 0.9);
      double phi = rng.uniform(0.0, 3.14159265358979323846);
      SlicePoint pt{r * std::cos(phi), r * std::sin(phi), J};
      Multivector series_route = eval(inv, pt);
      CHECK(series_route.all_finite());
      try {
        Multivector pointwise = star_inverse_eval(f, kQ.embed(pt));
        CHECK(pointwise.all_finite());
        worst_off_slice = std::max(worst_off_slice, relative_residual(series_route, pointwise));
      } catch (const ZeroSetError&) {
        ++zero_set_hits;
      }
    }
  }
  INFO("off-slice route disagreement: ", worst_off_slice, ", zero-set hits: ", zero_set_hits);
  CHECK(std::isfinite(worst_off_slice));
}

TEST_CASE("derivative matches finite differences") {
  for (int i = 0; i < 10; ++i) {
    SliceSeries f = random_series(kQ, 16, 1600, i, 0.8);
    SliceSeries d = derivative(f);
    Multivector axis = kQ.default_axis();
    Rng rng(1700, i);
    for (int p = 0; p < 20; ++p) {
      double u = rng.uniform(-0.85, 0.85);
      const double h = 1e-5;
      Multivector fd =
          (eval(f, SlicePoint{u + h, 0.0, axis}) - eval(f, SlicePoint{u - h, 0.0, axis})) *
          (0.5 / h);
      CHECK(relative_residual(fd, eval(d, SlicePoint{u, 0.0, axis})) < 1e-6);
    }
  }
}

TEST_CASE("tail bounds") {
  // Closed forms at m = 1 recover the full sums r/(1-r)^2 and r(1+r)/(1-r)^3.
  for (double r : {0.3, 0.5, 0.9}) {
    CHECK(tail_sum_linear(1, r) == doctest::Approx(r / ((1 - r) * (1 - r))).epsilon(1e-12));
    CHECK(tail_sum_quadratic(1, r) ==
          doctest::Approx(r * (1 + r) / std::pow(1 - r, 3)).epsilon(1e-12));
  }
  // Direct summation oracle.
  for (int m : {5, 17}) {
    for (double r : {0.4, 0.8}) {
      double lin = 0.0, quad = 0.0;
      for (int k = m; k < 4000; ++k) {
        lin += k * std::pow(r, k);
        quad += double(k) * k * std::pow(r, k);
      }
      CHECK(tail_sum_linear(m, r) == doctest::Approx(lin).epsilon(1e-10));
      CHECK(tail_sum_quadratic(m, r) == doctest::Approx(quad).epsilon(1e-10));
    }
  }
}
