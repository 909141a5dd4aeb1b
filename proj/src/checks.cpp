#include "slicereg/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slicereg/json_io.hpp"
#include "slicereg/rng.hpp"

namespace slicereg {

namespace {

constexpr double kPi = std::numbers::pi;

Multivector imaginary_part(const Multivector& q) {
  Multivector out = q;
  out.set_coeff(0, 0.0);
  return out;
}

// Random point in the ball of radius rmax with nonnegative slice angle.
SlicePoint random_point(Rng& rng, const Multivector& axis, double rmin, double rmax) {
  double r = rng.uniform(rmin, rmax);
  double phi = rng.uniform(0.0, kPi);
  return SlicePoint{r * std::cos(phi), r * std::sin(phi), axis};
}

struct Worst {
  double value = 0.0;
  nlohmann::json witness = nlohmann::json::object();

  template <typename MakeWitness>
  void observe(double v, MakeWitness&& make) {
    if (v > value || witness.empty()) {
      value = v;
      witness = make();
    }
  }
};

}  // namespace

CheckReport finalize_report(std::string name, std::int64_t samples, double max_residual,
                            double tolerance, nlohmann::json witness) {
  CheckReport r;
  r.name = std::move(name);
  r.samples = samples;
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.pass = max_residual <= tolerance;
  r.witness = std::move(witness);
  return r;
}

void merge_reports(CheckReport& into, const CheckReport& from) {
  into.samples += from.samples;
  if (from.max_residual > into.max_residual) {
    into.max_residual = from.max_residual;
    into.witness = from.witness;
  }
  into.pass = into.pass && from.pass;
}

namespace {

Multivector random_unit_mv(const ContextPtr& ctx, Rng& rng) {
  const int dim = ctx->dim();
  while (true) {
    Multivector a(ctx);
    for (int m = 0; m < dim; ++m) a.set_coeff(m, rng.normal());
    double n = a.norm();
    if (n > 1e-6) return a * (1.0 / n);
  }
}

Multivector random_unit_paravector(const ContextPtr& ctx, Rng& rng) {
  while (true) {
    Multivector a(ctx);
    a.set_coeff(0, rng.normal());
    for (int i = 0; i < ctx->generators(); ++i) a.set_coeff(1u << i, rng.normal());
    double n = a.norm();
    if (n > 1e-6) return a * (1.0 / n);
  }
}

}  // namespace

CheckReport check_algebra_axioms(const ContextPtr& ctx, int samples, std::uint64_t seed,
                                 double tol) {
  const int dim = ctx->dim();
  const int n = ctx->generators();
  Worst worst;

  // Exact table laws first: generator squares, anticommutation, and (for
  // dimensions where the cube of the table is cheap) associativity of the
  // blade product itself.
  for (int i = 0; i < n; ++i) {
    unsigned mi = 1u << i;
    if (ctx->sign(mi, mi) != -1 || CliffordContext::product_mask(mi, mi) != 0u) {
      worst.observe(1.0, [&] { return nlohmann::json{{"law", "generator_square"}, {"i", i}}; });
    }
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      unsigned mj = 1u << j;
      if (ctx->sign(mi, mj) != -ctx->sign(mj, mi)) {
        worst.observe(1.0, [&] {
          return nlohmann::json{{"law", "anticommutation"}, {"i", i}, {"j", j}};
        });
      }
    }
  }
  if (dim <= 32) {
    for (unsigned a = 0; a < static_cast<unsigned>(dim); ++a) {
      for (unsigned b = 0; b < static_cast<unsigned>(dim); ++b) {
        for (unsigned c = 0; c < static_cast<unsigned>(dim); ++c) {
          int lhs = ctx->sign(a, b) * ctx->sign(a ^ b, c);
          int rhs = ctx->sign(b, c) * ctx->sign(a, b ^ c);
          if (lhs != rhs) {
            worst.observe(1.0, [&] {
              return nlohmann::json{{"law", "table_associativity"}, {"a", a}, {"b", b}, {"c", c}};
            });
          }
        }
      }
    }
  }

  for (int i = 0; i < samples; ++i) {
    Rng rng = substream(seed, "axioms", i);
    Multivector a = random_unit_mv(ctx, rng);
    Multivector b = random_unit_mv(ctx, rng);
    Multivector c = random_unit_mv(ctx, rng);
    double assoc = relative_residual((a * b) * c, a * (b * c));
    double anti = relative_residual((a * b).conjugate(), b.conjugate() * a.conjugate());
    double invol = relative_residual(a.conjugate().conjugate(), a);
    double inner_conj = relative_residual(inner(a, b), inner(a.conjugate(), b.conjugate()));
    double res = std::max({assoc, anti, invol, inner_conj});
    worst.observe(res, [&] {
      return nlohmann::json{{"sample", i},
                            {"associativity", assoc},
                            {"conjugate_antiautomorphism", anti},
                            {"conjugate_involution", invol},
                            {"inner_conjugate_invariance", inner_conj}};
    });
  }
  return finalize_report("algebra_axioms", samples, worst.value, tol, std::move(worst.witness));
}

CheckReport check_zero_divisor_witness() {
  ContextPtr ctx = make_context(3);
  Multivector a = Multivector::scalar(ctx, 1.0);
  a.set_coeff(0b111u, 1.0);
  Multivector b = Multivector::scalar(ctx, 1.0);
  b.set_coeff(0b111u, -1.0);
  Multivector prod = a * b;
  double residual = prod.norm();  // must be exactly zero
  nlohmann::json witness{{"norm_a", a.norm()},
                         {"norm_b", b.norm()},
                         {"norm_product", prod.norm()},
                         {"norm_product_expected", 0.0},
                         {"norm_factor_product", a.norm() * b.norm()}};
  // |ab| = 0 while |a||b| = 2: the multiplicativity gap must be exact.
  if (std::fabs(a.norm() * b.norm() - 2.0) > 1e-15) residual = std::max(residual, 1.0);
  return finalize_report("zero_divisor_witness", 1, residual, 0.0, std::move(witness));
}

CheckReport check_norm_multiplicativity(const ContextPtr& ctx, int samples, std::uint64_t seed,
                                        double tol) {
  Worst worst;
  for (int i = 0; i < samples; ++i) {
    Rng rng = substream(seed, "norm_mult", i);
    Multivector p = random_unit_paravector(ctx, rng);
    Multivector m = random_unit_mv(ctx, rng);
    double res = std::max(std::fabs((p * m).norm() - p.norm() * m.norm()),
                          std::fabs((m * p).norm() - m.norm() * p.norm()));
    worst.observe(res, [&] {
      return nlohmann::json{{"sample", i}, {"paravector", to_json(p)}, {"other", to_json(m)}};
    });
  }
  return finalize_report("norm_multiplicativity", samples, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_inverse_roundtrip(const ContextPtr& ctx, int samples, std::uint64_t seed,
                                    double tol) {
  Worst worst;
  Multivector one = Multivector::scalar(ctx, 1.0);
  int skipped = 0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = substream(seed, "inverse_roundtrip", i);
    Multivector a = random_unit_mv(ctx, rng);
    try {
      Multivector inv = a.inverse();
      double res = std::max(relative_residual(a * inv, one), relative_residual(inv * a, one));
      worst.observe(res, [&] { return nlohmann::json{{"sample", i}, {"a", to_json(a)}}; });
    } catch (const NotInvertibleError&) {
      ++skipped;  // random unit multivectors are invertible almost surely
    }
  }
  CheckReport r = finalize_report("inverse_roundtrip", samples - skipped, worst.value, tol,
                                  std::move(worst.witness));
  r.witness["skipped_singular"] = skipped;
  return r;
}

CheckReport check_wedge_orthogonality(const SliceStructure& s, int samples, std::uint64_t seed,
                                      double tol) {
  Worst worst;
  Multivector one = Multivector::scalar(s.context(), 1.0);
  for (int i = 0; i < samples; ++i) {
    Multivector I = s.sphere_sample_one(stream_id("wedge_I", seed), i);
    Multivector J = s.sphere_sample_one(stream_id("wedge_J", seed), i);
    Multivector w = wedge_half(I, J);
    Multivector iw = I * w;
    const Multivector* set[4] = {&one, &I, &w, &iw};
    double res = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) res = std::max(res, std::fabs(inner(*set[p], *set[q])));
    }
    double t = inner(I, J);
    res = std::max(res, std::fabs(w.norm() * w.norm() - (1.0 - t * t)));
    worst.observe(res, [&] {
      return nlohmann::json{{"sample", i}, {"axis_I", to_json(I)}, {"axis_J", to_json(J)}};
    });
  }
  return finalize_report("wedge_orthogonality", samples, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_embed_decompose(const SliceStructure& s, int samples, std::uint64_t seed,
                                  double tol) {
  Worst worst;
  for (int i = 0; i < samples; ++i) {
    Rng rng = substream(seed, "embed_decompose", i);
    Multivector x(s.context());
    x.set_coeff(0, rng.normal());
    for (unsigned m : s.imaginary_masks()) x.set_coeff(m, rng.normal());
    SlicePoint p = s.decompose(x);
    double res = 1.0;
    if (p.v >= 0.0 && s.is_sphere_element(p.axis, 1e-9)) {
      Multivector back = s.embed(p);
      back -= x;
      res = back.norm() / (1.0 + x.norm());
    }
    worst.observe(res, [&] { return nlohmann::json{{"sample", i}, {"x", to_json(x)}}; });
  }
  return finalize_report("embed_decompose", samples, worst.value, tol, std::move(worst.witness));
}

CheckReport check_sphere_sampler(const SliceStructure& s, int contract_samples,
                                 int isotropy_samples, std::uint64_t seed, double tol) {
  Worst worst;
  Multivector one = Multivector::scalar(s.context(), 1.0);
  for (int i = 0; i < contract_samples; ++i) {
    Multivector I = s.sphere_sample_one(seed, i);
    double res = std::fabs(I.norm() - 1.0);
    Multivector sq = I * I;
    sq += one;
    res = std::max(res, sq.norm());
    for (unsigned m = 0; m < static_cast<unsigned>(I.dim()); ++m) {
      bool allowed = false;
      for (unsigned im : s.imaginary_masks()) allowed = allowed || im == m;
      if (!allowed) res = std::max(res, std::fabs(I.coeff(m)));
    }
    worst.observe(res, [&] { return nlohmann::json{{"sample", i}, {"axis", to_json(I)}}; });
  }

  Multivector mean(s.context());
  for (int i = 0; i < isotropy_samples; ++i) {
    mean += s.sphere_sample_one(stream_id("isotropy", seed), i);
  }
  mean *= 1.0 / isotropy_samples;
  double mean_max = 0.0;
  for (unsigned m : s.imaginary_masks()) mean_max = std::max(mean_max, std::fabs(mean.coeff(m)));
  double bound = 3.0 / std::sqrt(static_cast<double>(isotropy_samples));

  double residual = worst.value;
  if (mean_max > bound) residual = std::max(residual, 1.0);
  CheckReport r = finalize_report("sphere_sampler", contract_samples + isotropy_samples,
                                  residual, tol, std::move(worst.witness));
  r.witness["mean_max_abs"] = mean_max;
  r.witness["isotropy_bound"] = bound;
  return r;
}

CheckReport check_representation_formula(const SliceSeries& f, int points, std::uint64_t seed,
                                         double tol) {
  const SliceStructure& s = f.structure();
  Worst worst;
  for (int i = 0; i < points; ++i) {
    Rng rng = substream(seed, "representation", i);
    Multivector I = s.sphere_sample_one(stream_id("representation_I", seed), i);
    Multivector J = s.sphere_sample_one(stream_id("representation_J", seed), i);
    SlicePoint pt = random_point(rng, J, 0.0, 0.9);
    Multivector x = s.embed(pt);
    double res = relative_residual(eval_representation(f, I, x), eval(f, x));
    worst.observe(res, [&] {
      return nlohmann::json{
          {"u", pt.u}, {"v", pt.v}, {"axis_I", to_json(I)}, {"axis_J", to_json(J)}};
    });
  }
  return finalize_report("representation_formula", points, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_slice_closure(const SliceSeries& f, const Multivector& axis, int points,
                                std::uint64_t seed, double tol) {
  double scale = 0.0;
  for (int k = 0; k <= f.degree(); ++k) scale = std::max(scale, f.coeff(k).norm());
  if (slice_preservation_defect(f, axis, /*allow_right_rotation=*/false) > 1e-12 * (1.0 + scale)) {
    throw PreconditionError("closure check needs coefficients in the plane of the axis");
  }
  Multivector one = Multivector::scalar(f.structure().context(), 1.0);
  Worst worst;
  for (int i = 0; i < points; ++i) {
    Rng rng = substream(seed, "closure", i);
    SlicePoint pt = random_point(rng, axis, 0.0, 0.9);
    Multivector val = eval(f, pt);
    Multivector proj = one * inner(val, one);
    proj += axis * inner(val, axis);
    proj -= val;
    double res = proj.norm() / (1.0 + val.norm());
    worst.observe(res, [&] { return nlohmann::json{{"u", pt.u}, {"v", pt.v}}; });
  }
  return finalize_report("slice_closure", points, worst.value, tol, std::move(worst.witness));
}

CheckReport check_splitting_roundtrip(const SliceSeries& f, const Multivector& axis, int points,
                                      std::uint64_t seed, double tol) {
  SplittingResult split = splitting(f, axis);
  Worst worst;
  for (int i = 0; i < points; ++i) {
    Rng rng = substream(seed, "splitting", i);
    double r = rng.uniform(0.0, 0.9);
    double phi = rng.uniform(0.0, 2.0 * kPi);
    std::complex<double> z = std::polar(r, phi);

    Multivector recon(f.structure().context());
    for (std::size_t t = 0; t < split.module_blades.size(); ++t) {
      std::complex<double> c = eval(split.components[t], z);
      Multivector plane = axis * c.imag();
      plane.set_coeff(0, plane.coeff(0) + c.real());
      recon += plane * split.module_blades[t];
    }
    double v = z.imag();
    Multivector a = axis;
    if (v < 0) {
      a = -a;
      v = -v;
    }
    double res = relative_residual(recon, eval(f, SlicePoint{z.real(), v, a}));
    worst.observe(res, [&] {
      return nlohmann::json{{"z", {z.real(), z.imag()}}, {"axis", to_json(axis)}};
    });
  }
  return finalize_report("splitting_roundtrip", points, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_ext_section(const SliceStructure& s, int series_count, int degree,
                              std::uint64_t seed, double tol) {
  Worst worst;
  for (int i = 0; i < series_count; ++i) {
    Rng rng = substream(seed, "ext_section", i);
    ComplexSeries F;
    for (int k = 0; k <= degree; ++k) F.coeffs.emplace_back(rng.normal(), rng.normal());
    Multivector axis = s.sphere_sample_one(stream_id("ext_axis", seed), i);
    SplittingResult split = splitting(ext(F, axis, s), axis);
    double res = 0.0;
    for (int k = 0; k <= degree; ++k) {
      res = std::max(res, std::abs(split.components[0].coeffs[k] - F.coeffs[k]));
    }
    for (std::size_t t = 1; t < split.components.size(); ++t) {
      for (const auto& c : split.components[t].coeffs) res = std::max(res, std::abs(c));
    }
    worst.observe(res, [&] { return nlohmann::json{{"series", i}, {"axis", to_json(axis)}}; });
  }
  return finalize_report("ext_section", series_count, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_star_inverse_two_sided(const SliceSeries& f, double tol) {
  SliceSeries inv = star_inverse_series(f);
  SliceSeries left = star_product(f, inv, f.degree());
  SliceSeries right = star_product(inv, f, f.degree());
  double res = 0.0;
  for (int k = 0; k <= f.degree(); ++k) {
    Multivector dl = left.coeff(k);
    Multivector dr = right.coeff(k);
    if (k == 0) {
      dl.set_coeff(0, dl.coeff(0) - 1.0);
      dr.set_coeff(0, dr.coeff(0) - 1.0);
    }
    res = std::max({res, dl.norm(), dr.norm()});
  }
  return finalize_report("star_inverse_two_sided", f.degree() + 1, res, tol,
                         nlohmann::json{{"degree", f.degree()}});
}

CheckReport check_star_inverse_routes(const SliceSeries& f, int points, std::uint64_t seed,
                                      double tol) {
  const SliceStructure& s = f.structure();
  SliceSeries inv = star_inverse_series(f);
  Worst worst;
  for (int i = 0; i < points; ++i) {
    Rng rng = substream(seed, "inverse_routes", i);
    Multivector J = s.sphere_sample_one(stream_id("routes_axis", seed), i);
    SlicePoint pt = random_point(rng, J, 0.0, 0.9);
    Multivector series_route = eval(inv, pt);
    Multivector pointwise_route = star_inverse_eval(f, s.embed(pt));
    double res = relative_residual(series_route, pointwise_route);
    worst.observe(res, [&] {
      return nlohmann::json{{"u", pt.u}, {"v", pt.v}, {"axis", to_json(J)}};
    });
  }
  return finalize_report("star_inverse_routes", points, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_derivative_fd(const SliceSeries& f, int points, std::uint64_t seed, double tol,
                                double step) {
  SliceSeries d = derivative(f);
  Multivector axis = f.structure().default_axis();
  Worst worst;
  for (int i = 0; i < points; ++i) {
    Rng rng = substream(seed, "derivative_fd", i);
    double u = rng.uniform(-0.85, 0.85);
    Multivector hi = eval(f, SlicePoint{u + step, 0.0, axis});
    Multivector lo = eval(f, SlicePoint{u - step, 0.0, axis});
    Multivector fd = (hi - lo) * (0.5 / step);
    double res = relative_residual(fd, eval(d, SlicePoint{u, 0.0, axis}));
    worst.observe(res, [&] { return nlohmann::json{{"u", u}}; });
  }
  return finalize_report("derivative_fd", points, worst.value, tol, std::move(worst.witness));
}

double slice_preservation_defect(const SliceSeries& f, const Multivector& axis,
                                 bool allow_right_rotation) {
  const SliceStructure& s = f.structure();
  if (!s.is_sphere_element(axis)) {
    throw InvalidPointError("axis is not in the imaginary sphere");
  }
  const ContextPtr& ctx = s.context();

  Multivector w = Multivector::scalar(ctx, 1.0);
  if (allow_right_rotation && s.kind() == StructureKind::quaternion) {
    // Allow a constant right rotation: project onto span{w, I w} with w
    // the largest coefficient (for unrotated series this is span{1, I}).
    double best = -1.0;
    for (int k = 0; k <= f.degree(); ++k) {
      double n = f.coeff(k).norm();
      if (n > best) {
        best = n;
        w = f.coeff(k);
      }
    }
    if (best <= 0.0) return 0.0;  // zero series
    w *= 1.0 / best;
  }
  Multivector iw = axis * w;

  double defect = 0.0;
  for (int k = 0; k <= f.degree(); ++k) {
    const Multivector& a = f.coeff(k);
    Multivector proj = w * inner(a, w);
    proj += iw * inner(a, iw);
    proj -= a;
    defect = std::max(defect, proj.norm());
  }
  return defect;
}

namespace {

void require_slice_preserving(const SliceSeries& f, const Multivector& axis) {
  double scale = 0.0;
  for (int k = 0; k <= f.degree(); ++k) scale = std::max(scale, f.coeff(k).norm());
  if (slice_preservation_defect(f, axis) > 1e-12 * (1.0 + scale)) {
    throw PreconditionError("series coefficients do not preserve the slice of the given axis");
  }
}

}  // namespace

CheckReport check_identity_general(const SliceSeries& f, const Multivector& axis, int points,
                                   int axes, std::uint64_t seed, double tol,
                                   double im_form_tol) {
  const SliceStructure& s = f.structure();
  const bool quat = s.kind() == StructureKind::quaternion;
  Worst worst;
  double worst_im = 0.0;

  for (int p = 0; p < points; ++p) {
    Rng rng = substream(seed, "identity_point", p);
    SlicePoint base = random_point(rng, axis, 0.0, 0.9);
    Multivector plus = eval(f, SlicePoint{base.u, base.v, axis});
    Multivector minus = eval(f, SlicePoint{base.u, base.v, -axis});
    double np2 = plus.norm() * plus.norm();
    double nm2 = minus.norm() * minus.norm();
    Multivector asym = plus * minus.conjugate();
    asym -= minus * plus.conjugate();

    for (int a = 0; a < axes; ++a) {
      Multivector J = s.sphere_sample_one(stream_id("identity_axis", seed), p * 131071u + a);
      double t = inner(axis, J);
      Multivector w = wedge_half(axis, J);
      Multivector x = eval(f, SlicePoint{base.u, base.v, J});
      double lhs = x.norm() * x.norm();
      double cross = 0.5 * inner(asym, w);
      double rhs = 0.5 * (1.0 + t) * np2 + 0.5 * (1.0 - t) * nm2 - cross;
      double res = relative_residual(lhs, rhs);
      worst.observe(res, [&] {
        return nlohmann::json{{"u", base.u},
                              {"v", base.v},
                              {"axis_I", to_json(axis)},
                              {"axis_J", to_json(J)},
                              {"lhs", lhs},
                              {"rhs", rhs}};
      });
      if (quat) {
        double im_form = inner(imaginary_part(plus * minus.conjugate()), w);
        worst_im = std::max(worst_im, relative_residual(cross, im_form));
      }
    }
  }

  // The imaginary-part form carries its own 1e-12 budget; expressing it
  // in units of the main tolerance keeps pass <=> residual <= tolerance.
  double combined = worst.value;
  if (quat) combined = std::max(combined, worst_im * (tol / im_form_tol));
  CheckReport r = finalize_report("identity_general", std::int64_t(points) * axes, combined,
                                  tol, std::move(worst.witness));
  if (quat) r.witness["im_form_residual"] = worst_im;
  r.witness["identity_residual"] = worst.value;
  return r;
}

CheckReport check_convex_combination(const SliceSeries& f, const Multivector& axis, int points,
                                     int axes, std::uint64_t seed, double tol,
                                     double cross_tol) {
  const SliceStructure& s = f.structure();
  require_slice_preserving(f, axis);
  Worst worst;
  double worst_cross = 0.0;

  for (int p = 0; p < points; ++p) {
    Rng rng = substream(seed, "convex_point", p);
    SlicePoint base = random_point(rng, axis, 0.0, 0.9);
    Multivector plus = eval(f, SlicePoint{base.u, base.v, axis});
    Multivector minus = eval(f, SlicePoint{base.u, base.v, -axis});
    double np2 = plus.norm() * plus.norm();
    double nm2 = minus.norm() * minus.norm();
    Multivector asym = plus * minus.conjugate();
    asym -= minus * plus.conjugate();

    for (int a = 0; a < axes; ++a) {
      Multivector J = s.sphere_sample_one(stream_id("convex_axis", seed), p * 131071u + a);
      double t = inner(axis, J);
      Multivector x = eval(f, SlicePoint{base.u, base.v, J});
      double lhs = x.norm() * x.norm();
      double rhs = 0.5 * (1.0 + t) * np2 + 0.5 * (1.0 - t) * nm2;
      double res = relative_residual(lhs, rhs);
      double cross = 0.5 * inner(asym, wedge_half(axis, J));
      worst_cross = std::max(worst_cross, std::fabs(cross) / (1.0 + lhs + rhs));
      worst.observe(res, [&] {
        return nlohmann::json{{"u", base.u},
                              {"v", base.v},
                              {"axis_I", to_json(axis)},
                              {"axis_J", to_json(J)},
                              {"lhs", lhs},
                              {"rhs", rhs}};
      });
    }
  }

  double combined = std::max(worst.value, worst_cross * (tol / cross_tol));
  CheckReport r = finalize_report("convex_combination", std::int64_t(points) * axes, combined,
                                  tol, std::move(worst.witness));
  r.witness["cross_term_residual"] = worst_cross;
  r.witness["convex_residual"] = worst.value;
  return r;
}

CheckReport check_affine_in_inner(const SliceSeries& f, const Multivector& axis, int points,
                                  int axes, std::uint64_t seed, double tol) {
  const SliceStructure& s = f.structure();
  require_slice_preserving(f, axis);
  Worst worst;

  for (int p = 0; p < points; ++p) {
    Rng rng = substream(seed, "affine_point", p);
    SlicePoint base = random_point(rng, axis, 0.0, 0.9);
    std::vector<double> ts(axes), ys(axes);
    double st = 0, stt = 0, sy = 0, sty = 0, ymax = 0;
    for (int a = 0; a < axes; ++a) {
      Multivector J = s.sphere_sample_one(stream_id("affine_axis", seed), p * 131071u + a);
      Multivector x = eval(f, SlicePoint{base.u, base.v, J});
      ts[a] = inner(axis, J);
      ys[a] = x.norm() * x.norm();
      st += ts[a];
      stt += ts[a] * ts[a];
      sy += ys[a];
      sty += ts[a] * ys[a];
      ymax = std::max(ymax, std::fabs(ys[a]));
    }
    double n = axes;
    double denom = n * stt - st * st;
    double q = denom > 1e-12 ? (n * sty - st * sy) / denom : 0.0;
    double c0 = (sy - q * st) / n;
    for (int a = 0; a < axes; ++a) {
      double res = std::fabs(ys[a] - c0 - q * ts[a]) / (1.0 + ymax);
      worst.observe(res, [&] {
        return nlohmann::json{{"u", base.u}, {"v", base.v}, {"t", ts[a]}, {"y", ys[a]}};
      });
    }
  }
  return finalize_report("affine_in_inner", std::int64_t(points) * axes, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport sphere_extrema_check(const SliceSeries& f, const Multivector& axis, double u,
                                 double v, int axis_samples, std::uint64_t seed, double tol) {
  const SliceStructure& s = f.structure();
  require_slice_preserving(f, axis);

  Multivector val_plus = eval(f, SlicePoint{u, v, axis});
  Multivector val_minus = eval(f, SlicePoint{u, v, -axis});
  double plus = val_plus.norm();
  double minus = val_minus.norm();
  double end_max = std::max(plus, minus);
  double end_min = std::min(plus, minus);
  // Equal endpoint values mean f is constant on the whole sphere u + v*S
  // (a degenerate sphere); callers can reject catalog inputs on this.
  double separation = (val_plus - val_minus).norm();

  double seen_max = 0.0, seen_min = 0.0, overshoot = 0.0;
  bool first = true;
  for (int a = 0; a < axis_samples + 2; ++a) {
    Multivector J = a == 0   ? axis
                    : a == 1 ? -axis
                             : s.sphere_sample_one(stream_id("extrema_axis", seed), a - 2);
    double val = eval(f, SlicePoint{u, v, J}).norm();
    if (first || val > seen_max) seen_max = val;
    if (first || val < seen_min) seen_min = val;
    first = false;
    overshoot = std::max({overshoot, val - end_max, end_min - val});
  }
  double scale = 1.0 + end_max;
  double residual = std::max({overshoot, std::fabs(seen_max - end_max),
                              std::fabs(seen_min - end_min)}) /
                    scale;
  nlohmann::json witness{{"u", u},
                         {"v", v},
                         {"endpoint_max", end_max},
                         {"endpoint_min", end_min},
                         {"sampled_max", seen_max},
                         {"sampled_min", seen_min},
                         {"endpoint_separation", separation}};
  return finalize_report("sphere_extrema", axis_samples + 2, residual, tol, std::move(witness));
}

namespace {

struct BoundViolation {
  double value = 0.0;
  const char* which = "";
};

// Signed violations of the six bounds at radius r; slack widens each bound
// by the truncation tail of the entry.
BoundViolation bound_violation(double r, double fval, double dval, double ratv,
                               double slack_f, double slack_d, double slack_r) {
  double lo_f = r / ((1.0 + r) * (1.0 + r));
  double hi_f = r / ((1.0 - r) * (1.0 - r));
  double lo_d = (1.0 - r) / std::pow(1.0 + r, 3);
  double hi_d = (1.0 + r) / std::pow(1.0 - r, 3);
  double lo_r = (1.0 - r) / (1.0 + r);
  double hi_r = (1.0 + r) / (1.0 - r);

  BoundViolation out;
  auto upd = [&out](double v, const char* name) {
    if (v > out.value) {
      out.value = v;
      out.which = name;
    }
  };
  upd(lo_f - fval - slack_f, "growth_lower");
  upd(fval - hi_f - slack_f, "growth_upper");
  upd(lo_d - dval - slack_d, "distortion_lower");
  upd(dval - hi_d - slack_d, "distortion_upper");
  upd(lo_r - ratv - slack_r, "ratio_lower");
  upd(ratv - hi_r - slack_r, "ratio_upper");
  return out;
}

}  // namespace

CheckReport check_growth_distortion(const SeedFunction& f, int points, std::uint64_t seed,
                                    double tol, int max_degree) {
  if (!f.normalized) {
    throw PreconditionError("growth/distortion bounds need a normalized catalog entry");
  }
  const SliceStructure& s = f.series.structure();
  const int n = f.series.degree();
  SliceSeries deriv = derivative(f.series);
  SliceSeries rat = ratio_series(f.series, max_degree);

  Worst worst;
  for (int p = 0; p < points; ++p) {
    Rng rng = substream(seed, "growth_point", p);
    bool on_slice = (p % 2) == 0;
    Multivector J = on_slice ? f.axis
                             : s.sphere_sample_one(stream_id("growth_axis", seed), p);
    SlicePoint pt = random_point(rng, J, 0.05, 0.9);
    double r = std::hypot(pt.u, pt.v);

    double fval = eval(f.series, pt).norm();
    double dval = eval(deriv, pt).norm();
    double ratv = eval(rat, pt).norm();

    double slack_f = f.coeff_slope * tail_sum_linear(n + 1, r);
    // |b_k| <= C (k+1)^2 for the derivative tail.
    double slack_d = f.coeff_slope * tail_sum_quadratic(n + 1, r) / r;
    // Ratio coefficients are bounded by 4C(k+1)^2 for the catalog (the
    // star inverse of f/x has total coefficient mass <= 4); the factor 2
    // covers the partially-accumulated top-degree convolution terms.
    double slack_r = 8.0 * f.coeff_slope * tail_sum_quadratic(n + 1, r) / r;

    BoundViolation bv = bound_violation(r, fval, dval, ratv, slack_f, slack_d, slack_r);
    worst.observe(std::max(0.0, bv.value), [&] {
      return nlohmann::json{{"entry", f.name},
                            {"u", pt.u},
                            {"v", pt.v},
                            {"axis", to_json(J)},
                            {"radius", r},
                            {"bound", bv.which},
                            {"f", fval},
                            {"fprime", dval},
                            {"ratio", ratv}};
    });
  }
  return finalize_report("growth_distortion_ratio", points, worst.value, tol,
                         std::move(worst.witness));
}

CheckReport check_koebe_anchor_values(const SliceStructure& s, int degree, double tol) {
  SliceSeries k0 = koebe_series(s, s.default_axis(), 0.0, degree);
  SliceSeries d = derivative(k0);
  Multivector half = Multivector::scalar(s.context(), 0.5);
  Multivector mhalf = Multivector::scalar(s.context(), -0.5);

  double worst = 0.0;
  nlohmann::json values;
  auto probe = [&](const char* name, double got, double want) {
    values[name] = got;
    worst = std::max(worst, std::fabs(got - want));
  };
  probe("f_at_half", eval(k0, half).norm(), 2.0);
  probe("f_at_minus_half", eval(k0, mhalf).norm(), 2.0 / 9.0);
  probe("fprime_at_half", eval(d, half).norm(), 12.0);
  probe("ratio_at_half", ratio_eval(k0, half).norm(), 3.0);
  return finalize_report("koebe_anchor_values", 4, worst, tol, std::move(values));
}

namespace {

// Smallest signed margin of the six bounds over deterministic probes on
// the entry's defining slice.  Angles include the extremal direction when
// the entry is a Koebe rotation.
double min_probe_margin(const SeedFunction& f) {
  SliceSeries deriv = derivative(f.series);
  SliceSeries rat = ratio_series(f.series);
  KoebeRotation kr = is_koebe_rotation(f.series);

  std::vector<double> angles;
  for (int k = 0; k < 16; ++k) angles.push_back(k * kPi / 8.0);
  if (kr.matches) {
    angles.push_back(-kr.theta);
    angles.push_back(kPi - kr.theta);
  }

  double min_margin = std::numeric_limits<double>::infinity();
  for (double r : {0.3, 0.5, 0.7, 0.9}) {
    for (double phi : angles) {
      double u = r * std::cos(phi);
      double v = r * std::sin(phi);
      Multivector axis = f.axis;
      if (v < 0) {
        axis = -axis;
        v = -v;
      }
      SlicePoint pt{u, v, axis};
      double fval = eval(f.series, pt).norm();
      double dval = eval(deriv, pt).norm();
      double ratv = eval(rat, pt).norm();
      double margins[] = {fval - r / ((1.0 + r) * (1.0 + r)),
                          r / ((1.0 - r) * (1.0 - r)) - fval,
                          dval - (1.0 - r) / std::pow(1.0 + r, 3),
                          (1.0 + r) / std::pow(1.0 - r, 3) - dval,
                          ratv - (1.0 - r) / (1.0 + r),
                          (1.0 + r) / (1.0 - r) - ratv};
      for (double m : margins) min_margin = std::min(min_margin, std::fabs(m));
    }
  }
  return min_margin;
}

}  // namespace

CheckReport check_equality_cases(std::span<const SeedFunction> catalog, double margin_tol,
                                 double gap_tol) {
  nlohmann::json detail = nlohmann::json::object();
  std::int64_t samples = 0;
  double residual = 0.0;  // 0 when every entry is consistent, 1 otherwise
  for (const SeedFunction& f : catalog) {
    if (!f.normalized) continue;
    ++samples;
    double margin = min_probe_margin(f);
    bool extremal = is_koebe_rotation(f.series).matches;
    bool consistent = extremal ? margin <= margin_tol : margin >= gap_tol;
    detail[f.name] = {{"min_margin", margin}, {"extremal", extremal}};
    if (!consistent) residual = 1.0;
  }
  return finalize_report("equality_cases", samples, residual, 0.0, std::move(detail));
}

KoebeRotation is_koebe_rotation(const SliceSeries& f, double tol) {
  KoebeRotation out{false, 0.0, f.structure().default_axis(), 0.0};
  if (f.degree() < 2) return out;
  if (f.coeff(0).norm() > tol) return out;
  {
    Multivector a1 = f.coeff(1);
    a1.set_coeff(0, a1.coeff(0) - 1.0);
    if (a1.norm() > tol) return out;
  }

  const Multivector& a2 = f.coeff(2);
  double alpha = a2.scalar_part();
  Multivector imag = imaginary_part(a2);
  double beta = imag.norm();
  if (std::fabs(std::hypot(alpha, beta) - 2.0) > tol) return out;

  double theta;
  Multivector axis = f.structure().default_axis();
  if (beta <= tol) {
    theta = alpha > 0 ? 0.0 : kPi;
  } else {
    axis = imag * (1.0 / beta);
    if (!f.structure().is_sphere_element(axis, 1e-9)) return out;
    theta = std::atan2(beta, alpha);
  }

  double err = 0.0;
  for (int k = 2; k <= f.degree(); ++k) {
    double arg = (k - 1) * theta;
    Multivector want = axis * (k * std::sin(arg));
    want.set_coeff(0, want.coeff(0) + k * std::cos(arg));
    want -= f.coeff(k);
    err = std::max(err, want.norm());
    if (err > tol) break;
  }
  out.theta = theta;
  out.axis = axis;
  out.max_coeff_error = err;
  out.matches = err <= tol;
  return out;
}

namespace {

double pair_ratio(const SliceSeries& f, const Multivector& axis, std::complex<double> z,
                  std::complex<double> w) {
  auto at = [&](std::complex<double> c) {
    double v = c.imag();
    Multivector a = axis;
    if (v < 0) {
      a = -a;
      v = -v;
    }
    return eval(f, SlicePoint{c.real(), v, a});
  };
  double dist = std::abs(z - w);
  if (dist < 1e-9) return std::numeric_limits<double>::infinity();
  Multivector d = at(z) - at(w);
  return d.norm() / dist;
}

}  // namespace

CheckReport check_slice_injectivity(const SliceSeries& f, const Multivector& axis, int grid_size,
                                    double min_ratio_tol) {
  if (grid_size < 4) throw UsageError("injectivity grid too small");
  const double radius = 0.9;

  std::vector<std::complex<double>> pts;
  std::vector<Multivector> vals;
  double step = 2.0 * radius / (grid_size - 1);
  for (int i = 0; i < grid_size; ++i) {
    for (int j = 0; j < grid_size; ++j) {
      double re = -radius + i * step;
      double im = -radius + j * step;
      if (re * re + im * im > radius * radius) continue;
      pts.emplace_back(re, im);
      double v = im;
      Multivector a = axis;
      if (v < 0) {
        a = -a;
        v = -v;
      }
      vals.push_back(eval(f, SlicePoint{re, v, a}));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Multivector d = vals[i] - vals[j];
      double dist2 = std::norm(pts[i] - pts[j]);
      double q = (d.norm() * d.norm()) / dist2;
      if (q < best) {
        best = q;
        bi = i;
        bj = j;
      }
    }
  }

  // Pattern-search refinement around the worst pair; a genuine collision
  // inside the disc drives the ratio to the noise floor, while an
  // injective restriction bottoms out at its true separation constant.
  std::complex<double> z = pts[bi], w = pts[bj];
  double ratio = std::sqrt(best);
  double h = step;
  for (int iter = 0; iter < 160 && h > 1e-14; ++iter) {
    bool improved = false;
    const std::complex<double> dirs[] = {{h, 0}, {-h, 0}, {0, h}, {0, -h}};
    for (const auto& d : dirs) {
      for (int which = 0; which < 2; ++which) {
        std::complex<double> zc = z + (which == 0 ? d : std::complex<double>(0, 0));
        std::complex<double> wc = w + (which == 1 ? d : std::complex<double>(0, 0));
        if (std::abs(zc) > radius || std::abs(wc) > radius) continue;
        double q = pair_ratio(f, axis, zc, wc);
        if (q < ratio) {
          ratio = q;
          z = zc;
          w = wc;
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }

  nlohmann::json witness{{"separation", ratio},
                         {"z", {z.real(), z.imag()}},
                         {"w", {w.real(), w.imag()}},
                         {"axis", to_json(axis)},
                         {"grid", grid_size}};
  // Residual is the shortfall of the separation constant below the floor,
  // so zero means injective at grid resolution.
  return finalize_report("slice_injectivity", static_cast<std::int64_t>(pts.size()),
                         std::max(0.0, min_ratio_tol - ratio), 0.0, std::move(witness));
}

std::optional<RotatedSliceForm> detect_rotated_slice_preserving(const SliceSeries& f,
                                                                const Multivector& axis,
                                                                int samples, std::uint64_t seed,
                                                                double criterion_tol) {
  const SliceStructure& s = f.structure();
  if (s.kind() != StructureKind::quaternion) {
    throw PreconditionError("rotation detection is defined for quaternion structures");
  }
  SplittingResult split = splitting(f, axis);
  const ComplexSeries& F = split.components[0];
  const ComplexSeries& G = split.components[1];

  double f_scale = 0.0, g_scale = 0.0;
  for (int k = 0; k <= f.degree(); ++k) f_scale = std::max(f_scale, f.coeff(k).norm());
  for (const auto& c : G.coeffs) g_scale = std::max(g_scale, std::abs(c));

  if (g_scale <= 1e-12 * (1.0 + f_scale)) {
    // No second component: f already preserves the slice.
    return RotatedSliceForm{{0.0, 0.0}, Multivector::scalar(s.context(), 1.0), f};
  }

  std::vector<std::complex<double>> zs;
  for (int i = 0; i < samples; ++i) {
    Rng rng = substream(seed, "detector_sample", i);
    double r = rng.uniform(0.1, 0.9);
    double phi = rng.uniform(0.0, 2.0 * kPi);
    zs.push_back(std::polar(r, phi));
  }
  for (const auto& z : zs) {
    std::complex<double> lhs = eval(F, z) * eval(G, std::conj(z));
    std::complex<double> rhs = eval(F, std::conj(z)) * eval(G, z);
    double res = std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
    if (res > criterion_tol) return std::nullopt;
  }

  // lambda = F/G fitted over samples where G is safely nonzero.
  std::complex<double> num(0.0, 0.0);
  double den = 0.0;
  for (const auto& z : zs) {
    std::complex<double> g = eval(G, z);
    if (std::abs(g) <= 1e-8) continue;
    num += eval(F, z) * std::conj(g);
    den += std::norm(g);
  }
  if (den == 0.0) return std::nullopt;
  std::complex<double> lambda = num / den;

  const Multivector& k_axis = split.completion[0];
  double scale = std::sqrt(1.0 + std::norm(lambda));
  Multivector unit = axis * lambda.imag();
  unit.set_coeff(0, lambda.real());
  unit += k_axis;
  unit *= 1.0 / scale;

  ComplexSeries scaled = G;
  for (auto& c : scaled.coeffs) c *= scale;
  SliceSeries factor = ext(scaled, axis, s);

  // Validate the reconstruction on mixed on/off-slice points.
  for (int i = 0; i < std::max(samples, 8); ++i) {
    Rng rng = substream(seed, "detector_validate", i);
    Multivector J = s.sphere_sample_one(stream_id("detector_axis", seed), i);
    SlicePoint pt = random_point(rng, J, 0.0, 0.9);
    Multivector lhs = eval(f, pt);
    Multivector rhs = eval(factor, pt) * unit;
    if (relative_residual(lhs, rhs) > 1e-9) return std::nullopt;
  }
  return RotatedSliceForm{lambda, std::move(unit), std::move(factor)};
}

int winding_root_count(const std::function<std::complex<double>(std::complex<double>)>& fn,
                       std::complex<double> target, double radius, int nodes,
                       double integer_tol) {
  if (nodes < 16) throw UsageError("winding integral needs more nodes");
  double total = 0.0;
  std::complex<double> prev = fn(std::polar(radius, 0.0)) - target;
  if (std::abs(prev) == 0.0) throw NumericalError("root on the winding contour");
  std::complex<double> first = prev;
  for (int k = 1; k <= nodes; ++k) {
    std::complex<double> cur =
        k == nodes ? first : fn(std::polar(radius, 2.0 * kPi * k / nodes)) - target;
    if (std::abs(cur) == 0.0) throw NumericalError("root on the winding contour");
    total += std::arg(cur / prev);
    prev = cur;
  }
  double count = total / (2.0 * kPi);
  double rounded = std::round(count);
  if (std::fabs(count - rounded) > integer_tol) {
    throw NumericalError("winding integral is not close to an integer; resample");
  }
  return static_cast<int>(rounded);
}

CheckReport check_koebe_quarter(const SeedFunction& f, std::span<const double> radii,
                                std::span<const std::complex<double>> targets,
                                const KoebeQuarterOptions& opts) {
  if (!f.normalized || !f.slice_value) {
    throw PreconditionError("covering checks need a normalized entry with a slice closed form");
  }
  if (f.series.structure().kind() != StructureKind::quaternion) {
    throw PreconditionError("the one-quarter covering statement is quaternionic");
  }
  require_slice_preserving(f.series, f.axis);

  // Boundary minima: by the sphere-extrema reduction the minimum of |f|
  // over |q| = r equals the minimum of the classical restriction over the
  // slice circle, which the closed form evaluates at machine precision.
  double worst = 0.0;
  std::vector<double> minima;
  bool monotone = true;
  for (double r : radii) {
    double mn = std::numeric_limits<double>::infinity();
    for (int k = 0; k < opts.angle_samples; ++k) {
      double phi = 2.0 * kPi * k / opts.angle_samples;
      mn = std::min(mn, std::abs(f.slice_value(std::polar(r, phi))));
    }
    if (!minima.empty() && mn < minima.back() - 1e-12) monotone = false;
    minima.push_back(mn);
    worst = std::max(worst, r / ((1.0 + r) * (1.0 + r)) - mn);
  }

  nlohmann::json counts = nlohmann::json::array();
  bool coverage_ok = true;
  for (const auto& w : targets) {
    int c = winding_root_count([&](std::complex<double> z) { return f.slice_value(z); }, w,
                               opts.winding_radius, opts.winding_nodes);
    bool asserted = std::abs(w) < 0.25;
    if (asserted && c < 1) coverage_ok = false;
    counts.push_back({{"target", {w.real(), w.imag()}}, {"count", c}, {"asserted", asserted}});
  }

  nlohmann::json witness{{"entry", f.name},
                         {"radii", std::vector<double>(radii.begin(), radii.end())},
                         {"minima", minima},
                         {"monotone", monotone},
                         // observed limit of the boundary minima; an
                         // estimate of the covering radius, never exact
                         {"r0_estimate", minima.empty() ? 0.0 : minima.back()},
                         {"root_counts", counts}};
  double residual = std::max(worst, 0.0);
  if (!monotone || !coverage_ok) residual = std::max(residual, 1.0);
  return finalize_report("koebe_quarter", static_cast<std::int64_t>(radii.size()), residual,
                         opts.tol, std::move(witness));
}

}  // namespace slicereg
