#include "slicereg/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slicereg/json_io.hpp"
#include "slicereg/rng.hpp"
#include "slicereg/sampling.hpp"

namespace slicereg {

void RunConfig::validate() const {
  if (kind == StructureKind::paravector) {
    if (n < 1 || n > kMaxGenerators) {
      throw ConfigError("paravector structure needs 1 <= n <= 8");
    }
  } else if (n != 2) {
    throw ConfigError("the quaternion structure fixes n = 2");
  }
  if (degree < 2 || degree > 4096) throw ConfigError("degree must be in [2, 4096]");
  if (points < 10) throw ConfigError("need at least 10 sample points");
  if (axes < 2) throw ConfigError("need at least 2 sphere axes");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(r_max > 0.0 && r_max < 1.0)) throw ConfigError("r_max must lie in (0, 1)");
}

SliceStructure RunConfig::structure() const {
  return kind == StructureKind::quaternion ? SliceStructure::quaternion()
                                           : SliceStructure::paravector(n);
}

namespace {

// Slice-preserving random series whose symmetrization stays far from zero
// on the closed 0.9-ball, so both star-inverse routes are well defined.
SliceSeries tame_slice_preserving(const SliceStructure& s, const Multivector& axis, int degree,
                                  std::uint64_t seed, std::uint64_t stream) {
  SliceSeries f = random_slice_preserving_series(s, axis, degree, seed, stream, 0.25, true);
  for (int k = 1; k <= f.degree(); ++k) f.set_coeff(k, f.coeff(k) * 0.4);
  return f;
}

}  // namespace

std::vector<CheckReport> run_verification_suite(const RunConfig& config) {
  config.validate();
  const SliceStructure s = config.structure();
  const ContextPtr& ctx = s.context();
  const std::uint64_t seed = config.seed;
  const bool quat = config.kind == StructureKind::quaternion;
  const int max_degree = std::max(config.degree, kDefaultMaxDegree);

  std::vector<SeedFunction> catalog = seed_catalog(s, config.degree);
  std::vector<CheckReport> out;

  // Algebra layer.
  out.push_back(check_algebra_axioms(ctx, 1000, seed));
  out.push_back(check_zero_divisor_witness());
  out.push_back(check_norm_multiplicativity(ctx, 1000, seed));
  out.push_back(check_inverse_roundtrip(ctx, 500, seed));
  out.push_back(check_wedge_orthogonality(s, 500, seed));
  out.push_back(check_embed_decompose(s, 500, seed));
  out.push_back(check_sphere_sampler(s, 1000, 100000, seed));

  const int series_points = std::max(10, config.points / 10);
  const int rand_degree = std::min(config.degree, 24);

  // General modulus identity: arbitrary coefficients, no slice premise.
  {
    CheckReport agg;
    bool first = true;
    for (int i = 0; i < 10; ++i) {
      SliceSeries f = random_series(s, rand_degree, seed, 1000 + i, 0.8);
      Multivector axis = s.sphere_sample_one(stream_id("suite_identity_axis", seed), i);
      CheckReport r = check_identity_general(f, axis, series_points, config.axes,
                                             seed + i, config.tolerance);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));
  }

  // Convex combination + cross term for slice-preserving inputs: random
  // plane series, the catalog, and (quaternions) right-rotated instances.
  {
    std::vector<std::pair<SliceSeries, Multivector>> inputs;
    for (int i = 0; i < 8; ++i) {
      Multivector axis = s.sphere_sample_one(stream_id("suite_convex_axis", seed), i);
      inputs.emplace_back(random_slice_preserving_series(s, axis, rand_degree, seed, 2000 + i, 0.8),
                          axis);
    }
    for (const SeedFunction& f : catalog) {
      if (f.normalized) inputs.emplace_back(f.series, f.axis);
    }
    if (quat) {
      for (int i = 0; i < 2; ++i) {
        Multivector axis = s.sphere_sample_one(stream_id("suite_rotated_axis", seed), i);
        SliceSeries g = random_slice_preserving_series(s, axis, rand_degree, seed, 2100 + i, 0.8);
        inputs.emplace_back(rotate_right(g, random_unit(s, seed, 2200 + i)), axis);
      }
      for (const SeedFunction& f : catalog) {
        if (!f.normalized) inputs.emplace_back(f.series, f.axis);  // moebius entry
      }
    }
    CheckReport agg;
    bool first = true;
    int idx = 0;
    for (const auto& [f, axis] : inputs) {
      CheckReport r = check_convex_combination(f, axis, series_points, config.axes, seed + idx,
                                               config.tolerance);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
      ++idx;
    }
    out.push_back(std::move(agg));

    // Affine dependence of |f|^2 on <I,J> over spheres, three inputs.
    CheckReport affine;
    first = true;
    for (int i = 0; i < 3 && i < static_cast<int>(inputs.size()); ++i) {
      CheckReport r = check_affine_in_inner(inputs[i].first, inputs[i].second, series_points,
                                            config.axes, seed + 7 * i, config.tolerance);
      if (first) {
        affine = std::move(r);
        first = false;
      } else {
        merge_reports(affine, r);
      }
    }
    out.push_back(std::move(affine));

    // Sphere extrema at a few deterministic spheres.
    CheckReport extrema;
    first = true;
    const double uv[][2] = {{0.2, 0.3}, {-0.35, 0.25}, {0.0, 0.6}};
    for (int i = 0; i < 3 && i < static_cast<int>(inputs.size()); ++i) {
      for (auto& p : uv) {
        CheckReport r = sphere_extrema_check(inputs[i].first, inputs[i].second, p[0], p[1],
                                             std::max(64, config.axes * 8), seed + 11 * i,
                                             config.tolerance);
        if (first) {
          extrema = std::move(r);
          first = false;
        } else {
          merge_reports(extrema, r);
        }
      }
    }
    out.push_back(std::move(extrema));
  }

  // Representation formula on random series.
  {
    CheckReport agg;
    bool first = true;
    for (int i = 0; i < 10; ++i) {
      SliceSeries f = random_series(s, rand_degree, seed, 3000 + i, 0.8);
      CheckReport r = check_representation_formula(f, series_points * 4, seed + i);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));
  }

  // Slice closure of plane-coefficient series.
  {
    CheckReport agg;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
      Multivector axis = s.sphere_sample_one(stream_id("suite_closure_axis", seed), i);
      SliceSeries f = random_slice_preserving_series(s, axis, rand_degree, seed, 4000 + i, 0.8);
      CheckReport r = check_slice_closure(f, axis, series_points, seed + i);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));
  }

  // Splitting round trip and the ext section property.
  {
    CheckReport agg;
    bool first = true;
    for (int i = 0; i < 10; ++i) {
      SliceSeries f = random_series(s, rand_degree, seed, 5000 + i, 0.8);
      Multivector axis = s.sphere_sample_one(stream_id("suite_split_axis", seed), i);
      CheckReport r = check_splitting_roundtrip(f, axis, 50, seed + i);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));
    out.push_back(check_ext_section(s, 10, rand_degree, seed));
  }

  // Star inverse: coefficient recursion two-sidedness and both routes.
  {
    CheckReport agg;
    bool first = true;
    for (int i = 0; i < 50; ++i) {
      SliceSeries f = random_series(s, 32, seed, 6000 + i, 0.5, true, 0.1);
      CheckReport r = check_star_inverse_two_sided(f);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));

    CheckReport routes;
    first = true;
    for (int i = 0; i < 10; ++i) {
      Multivector axis = s.sphere_sample_one(stream_id("suite_routes_axis", seed), i);
      SliceSeries f = tame_slice_preserving(s, axis, 64, seed, 6100 + i);
      CheckReport r = check_star_inverse_routes(f, 30, seed + i);
      if (first) {
        routes = std::move(r);
        first = false;
      } else {
        merge_reports(routes, r);
      }
    }
    out.push_back(std::move(routes));
  }

  // Derivative against finite differences.
  {
    CheckReport agg;
    bool first = true;
    for (int i = 0; i < 10; ++i) {
      SliceSeries f = random_series(s, rand_degree, seed, 7000 + i, 0.8);
      CheckReport r = check_derivative_fd(f, 20, seed + i);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));
  }

  // Geometric function theory layer over the catalog.
  {
    CheckReport agg;
    bool first = true;
    for (const SeedFunction& f : catalog) {
      if (!f.normalized) continue;
      CheckReport r = check_growth_distortion(f, config.points, seed, 1e-8, max_degree);
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));
  }
  out.push_back(check_koebe_anchor_values(s, std::max(config.degree, 256)));

  // The equality-case and injectivity probes concern the underlying
  // functions, not their truncations: at low degree the extremal entries
  // cannot attain their anchors and truncated tails can fake collisions
  // on the 0.9 disc, so these checks run on a catalog of degree >= 512.
  std::vector<SeedFunction> fn_catalog =
      config.degree >= 512 ? catalog : seed_catalog(s, 512);
  out.push_back(check_equality_cases(fn_catalog));

  // Degenerate-set probe: no catalog entry may be constant on any sphere
  // u + v*S with v > 0, measured by the separation of the two endpoint
  // values on the preserved slice (they coincide exactly when the whole
  // sphere does).
  {
    double min_separation = std::numeric_limits<double>::infinity();
    std::int64_t samples = 0;
    nlohmann::json detail = nlohmann::json::object();
    for (const SeedFunction& f : catalog) {
      if (!f.normalized) continue;
      double entry_min = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 50; ++i) {
        Rng rng = substream(seed, "degenerate_probe", i);
        double r = rng.uniform(0.1, 0.9);
        double phi = rng.uniform(0.1, std::numbers::pi - 0.1);
        double u = r * std::cos(phi), v = r * std::sin(phi);
        Multivector d = eval(f.series, SlicePoint{u, v, f.axis}) -
                        eval(f.series, SlicePoint{u, v, -f.axis});
        entry_min = std::min(entry_min, d.norm());
        ++samples;
      }
      detail[f.name] = entry_min;
      min_separation = std::min(min_separation, entry_min);
    }
    detail["min_separation"] = min_separation;
    out.push_back(finalize_report("degenerate_set_empty", samples,
                                  std::max(0.0, 1e-9 - min_separation), 0.0,
                                  std::move(detail)));
  }

  // Coefficient-level detection of extremal rotations.
  {
    bool ok = true;
    nlohmann::json detail = nlohmann::json::object();
    for (const SeedFunction& f : catalog) {
      if (!f.normalized) continue;
      KoebeRotation kr = is_koebe_rotation(f.series);
      bool extremal_name = f.name.rfind("koebe", 0) == 0;
      detail[f.name] = kr.matches;
      if (kr.matches != extremal_name) ok = false;
    }
    {
      // A perturbed rotation must be rejected (fixed probe degree).
      SliceSeries k = koebe_series(s, s.default_axis(), 0.7, 48);
      Multivector a5 = k.coeff(5);
      a5.set_coeff(0, a5.coeff(0) + 1e-3);
      k.set_coeff(5, a5);
      detail["perturbed"] = is_koebe_rotation(k).matches;
      if (is_koebe_rotation(k).matches) ok = false;
    }
    CheckReport r = finalize_report("koebe_rotation_detector",
                                    static_cast<std::int64_t>(catalog.size()) + 1, ok ? 0.0 : 1.0,
                                    0.0, std::move(detail));
    out.push_back(std::move(r));
  }

  // Slice injectivity of the catalog plus the non-univalent control.
  {
    const std::vector<SeedFunction>& inject_catalog = fn_catalog;
    CheckReport agg;
    bool first = true;
    for (const SeedFunction& f : inject_catalog) {
      if (!f.normalized) continue;
      Multivector J = s.sphere_sample_one(stream_id("suite_inject_axis", seed), 1);
      CheckReport r = check_slice_injectivity(f.series, J, 64);
      r.witness["entry"] = f.name;
      if (first) {
        agg = std::move(r);
        first = false;
      } else {
        merge_reports(agg, r);
      }
    }
    out.push_back(std::move(agg));

    SliceSeries bad(s, 2);
    bad.set_coeff(1, Multivector::scalar(ctx, 1.0));
    bad.set_coeff(2, Multivector::scalar(ctx, 0.9));
    CheckReport control =
        check_slice_injectivity(bad, s.default_axis(), 64);
    bool collision_found = !control.pass;
    CheckReport flagged = finalize_report("injectivity_negative_control", control.samples,
                                          collision_found ? 0.0 : 1.0, 0.0,
                                          std::move(control.witness));
    out.push_back(std::move(flagged));

    // Cross-slice collision probe: whether normalized slice-injective
    // functions are injective across different slices is open; the
    // observed minimum separation is reported without assertion.
    {
      double min_ratio = std::numeric_limits<double>::infinity();
      nlohmann::json detail = nlohmann::json::object();
      std::int64_t samples = 0;
      for (const SeedFunction& f : inject_catalog) {
        if (!f.normalized) continue;
        double entry_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 200; ++i) {
          Rng rng = substream(seed, "cross_slice", i);
          Multivector J1 = s.sphere_sample_one(stream_id("cross_slice_J1", seed), i);
          Multivector J2 = s.sphere_sample_one(stream_id("cross_slice_J2", seed), i);
          SlicePoint p1{rng.uniform(-0.9, 0.9), rng.uniform(0.0, 0.9), J1};
          SlicePoint p2{rng.uniform(-0.9, 0.9), rng.uniform(0.0, 0.9), J2};
          Multivector x1 = s.embed(p1);
          Multivector x2 = s.embed(p2);
          if (x1.norm() > 0.9 || x2.norm() > 0.9) continue;
          double dist = (x1 - x2).norm();
          if (dist < 1e-9) continue;
          double ratio = (eval(f.series, p1) - eval(f.series, p2)).norm() / dist;
          entry_min = std::min(entry_min, ratio);
          ++samples;
        }
        detail[f.name] = entry_min;
        min_ratio = std::min(min_ratio, entry_min);
      }
      // Open in the theory: the separation is reported, never asserted.
      detail["min_cross_slice_separation"] = min_ratio;
      out.push_back(finalize_report("cross_slice_collisions", samples, 0.0, 0.0,
                                    std::move(detail)));
    }
  }

  if (quat) {
    // Rotated-form detector: constructed positives, generic negatives.
    {
      double worst_res = 0.0;
      int failures = 0;
      for (int i = 0; i < 20; ++i) {
        Multivector axis = s.sphere_sample_one(stream_id("suite_det_axis", seed), i);
        SliceSeries g = random_slice_preserving_series(s, axis, 24, seed, 8000 + i, 0.7);
        Multivector u = random_unit(s, seed, 8100 + i);
        SliceSeries f = rotate_right(g, u);
        auto det = detect_rotated_slice_preserving(f, axis, 40, seed + i);
        if (det) {
          for (int p = 0; p < 20; ++p) {
            Rng rng = substream(seed, "suite_det_val", 100 * i + p);
            Multivector J = s.sphere_sample_one(stream_id("suite_det_valaxis", seed), 100 * i + p);
            double r = rng.uniform(0.0, 0.9);
            double phi = rng.uniform(0.0, 3.14159265358979323846);
            SlicePoint pt{r * std::cos(phi), r * std::sin(phi), J};
            worst_res = std::max(
                worst_res, relative_residual(eval(f, pt), eval(det->factor, pt) * det->unit));
          }
        } else {
          ++failures;
        }
      }
      if (failures > 0) worst_res = 1.0;
      CheckReport r = finalize_report("rotated_detector_positive", 20, worst_res, 1e-9,
                                      nlohmann::json{{"undetected", failures}});
      out.push_back(std::move(r));
    }
    {
      int accepted = 0;
      for (int i = 0; i < 20; ++i) {
        SliceSeries f = random_series(s, 16, seed, 9000 + i, 0.8);
        if (detect_rotated_slice_preserving(f, s.default_axis(), 40, seed + i)) ++accepted;
      }
      out.push_back(finalize_report("rotated_detector_negative", 20, accepted, 0.0,
                                    nlohmann::json{{"accepted", accepted}}));
    }

    // One-quarter covering over the normalized catalog.
    {
      const double radii[] = {0.3, 0.5, 0.7, 0.9, 0.99, 0.999};
      const std::complex<double> targets[] = {
          {0.2, 0.0}, {-0.2, 0.1}, {0.0, 0.15}, {-0.3, 0.0}, {0.35, 0.2}};
      CheckReport agg;
      bool first = true;
      for (const SeedFunction& f : catalog) {
        if (!f.normalized || !f.slice_value) continue;
        CheckReport r = check_koebe_quarter(f, radii, targets);
        if (first) {
          agg = std::move(r);
          first = false;
        } else {
          merge_reports(agg, r);
        }
      }
      out.push_back(std::move(agg));
    }
  }

  return out;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.pass; });
}

nlohmann::json suite_to_json(const RunConfig& config, const std::vector<CheckReport>& reports) {
  nlohmann::json cfg{{"structure", config.kind == StructureKind::quaternion ? "quaternion"
                                                                            : "paravector"},
                     {"n", config.n},
                     {"degree", config.degree},
                     {"points", config.points},
                     {"axes", config.axes},
                     {"seed", config.seed},
                     {"tolerance", config.tolerance},
                     {"r_max", config.r_max},
                     {"out", config.out}};
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckReport& r : reports) checks.push_back(to_json(r));
  return nlohmann::json{{"config", std::move(cfg)}, {"checks", std::move(checks)}};
}

}  // namespace slicereg
