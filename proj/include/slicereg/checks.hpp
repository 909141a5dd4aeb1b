#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "slicereg/catalog.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

// Outcome of one named verification.  `pass` is equivalent to
// max_residual <= tolerance (bound-style checks fold their violation
// margin into max_residual); the witness records the worst-case input.
struct CheckReport {
  std::string name;
  std::int64_t samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json witness = nlohmann::json::object();
};

CheckReport finalize_report(std::string name, std::int64_t samples, double max_residual,
                            double tolerance, nlohmann::json witness);

// Combines per-input reports of the same check into one (worst residual
// wins, witnesses of the worst input kept, sample counts added).
void merge_reports(CheckReport& into, const CheckReport& from);

// --- algebra-level checks -------------------------------------------------

// Exhaustive blade-table laws (generator squares, anticommutation, table
// associativity when the dimension permits) plus sampled floating-point
// associativity and conjugate anti-automorphism on unit multivectors.
CheckReport check_algebra_axioms(const ContextPtr& ctx, int samples, std::uint64_t seed,
                                 double tol = 1e-12);

// (1 + e_123)(1 - e_123) = 0 in R_3 while |a||b| = 2: norm
// multiplicativity genuinely fails off the paravector subspace.
CheckReport check_zero_divisor_witness();

// | |ab| - |a||b| | for unit pairs with one paravector factor, both orders.
CheckReport check_norm_multiplicativity(const ContextPtr& ctx, int samples, std::uint64_t seed,
                                        double tol = 1e-12);

CheckReport check_inverse_roundtrip(const ContextPtr& ctx, int samples, std::uint64_t seed,
                                    double tol = 1e-10);

// Orthogonality of {1, I, I^J, I(I^J)} and |I^J|^2 = 1 - <I,J>^2.
CheckReport check_wedge_orthogonality(const SliceStructure& s, int samples, std::uint64_t seed,
                                      double tol = 1e-12);

CheckReport check_embed_decompose(const SliceStructure& s, int samples, std::uint64_t seed,
                                  double tol = 1e-12);

// Sphere-sampler contract (unit, squares to -1, right subspace) and
// per-coordinate isotropy of the sample mean.
CheckReport check_sphere_sampler(const SliceStructure& s, int contract_samples,
                                 int isotropy_samples, std::uint64_t seed, double tol = 1e-12);

// --- series-level checks ----------------------------------------------------

CheckReport check_representation_formula(const SliceSeries& f, int points, std::uint64_t seed,
                                         double tol = 1e-10);

// Values of a plane-coefficient series stay in that plane on its slice.
CheckReport check_slice_closure(const SliceSeries& f, const Multivector& axis, int points,
                                std::uint64_t seed, double tol = 1e-12);

CheckReport check_splitting_roundtrip(const SliceSeries& f, const Multivector& axis, int points,
                                      std::uint64_t seed, double tol = 1e-10);

// splitting(ext(F, axis), axis) returns F in the scalar component.
CheckReport check_ext_section(const SliceStructure& s, int series_count, int degree,
                              std::uint64_t seed, double tol = 1e-12);

CheckReport check_star_inverse_two_sided(const SliceSeries& f, double tol = 1e-10);

// Coefficient-recursion route against the pointwise route
// sym(f)(x)^{-1} conj-series(f)(x) at mixed on/off-slice points.
CheckReport check_star_inverse_routes(const SliceSeries& f, int points, std::uint64_t seed,
                                      double tol = 1e-8);

// Termwise derivative against central differences along the real axis.
CheckReport check_derivative_fd(const SliceSeries& f, int points, std::uint64_t seed,
                                double tol = 1e-6, double step = 1e-5);

// Distance of the coefficients from the slice-preserving premise: the
// plane span{1, axis}, or (when allow_right_rotation, quaternions only)
// that plane right-multiplied by one unit, probed via the largest
// coefficient.
double slice_preservation_defect(const SliceSeries& f, const Multivector& axis,
                                 bool allow_right_rotation = true);

// |f(u+vJ)|^2 against the two slice values plus the wedge cross term, for
// arbitrary coefficients.  On quaternions additionally compares the cross
// term with its imaginary-part form (fixed 1e-12 budget, folded into pass).
CheckReport check_identity_general(const SliceSeries& f, const Multivector& axis, int points,
                                   int axes, std::uint64_t seed, double tol = 1e-9,
                                   double im_form_tol = 1e-12);

// Convex-combination form for slice-preserving (possibly right-rotated)
// series; also verifies the cross term vanishes within cross_tol.
// Throws PreconditionError when the coefficients violate the premise.
CheckReport check_convex_combination(const SliceSeries& f, const Multivector& axis, int points,
                                     int axes, std::uint64_t seed, double tol = 1e-9,
                                     double cross_tol = 1e-12);

// Least-squares affine fit of |f(u+vJ)|^2 against <I,J> over sampled J.
CheckReport check_affine_in_inner(const SliceSeries& f, const Multivector& axis, int points,
                                  int axes, std::uint64_t seed, double tol = 1e-9);

// Sampled max/min of |f| over the sphere u + v*S against the endpoint
// values on the preserved slice; +/-axis are always included so equality
// is attained exactly.
CheckReport sphere_extrema_check(const SliceSeries& f, const Multivector& axis, double u,
                                 double v, int axis_samples, std::uint64_t seed,
                                 double tol = 1e-9);

// Growth, distortion and ratio bounds at sampled on- and off-slice points
// with |x| <= 0.9.  The permissible violation is widened by the truncation
// tail budget of the entry, so the residual reflects genuine violations.
CheckReport check_growth_distortion(const SeedFunction& f, int points, std::uint64_t seed,
                                    double tol = 1e-8, int max_degree = kDefaultMaxDegree);

// Closed-form equality anchors of the extremal function at x = +/- 1/2.
CheckReport check_koebe_anchor_values(const SliceStructure& s, int degree, double tol = 1e-8);

// Margin-zero samples occur exactly for the extremal rotations: probes the
// bound margins at deterministic slice points (including each entry's own
// extremal direction) and cross-checks with is_koebe_rotation.
CheckReport check_equality_cases(std::span<const SeedFunction> catalog, double margin_tol = 1e-8,
                                 double gap_tol = 1e-6);

struct KoebeRotation {
  bool matches;
  double theta;
  Multivector axis;
  double max_coeff_error;
};

// Detects coefficients of the form a_k = k e^{I(k-1)theta}: fits (theta,
// axis) from a_2 and verifies every coefficient within tol (absolute).
KoebeRotation is_koebe_rotation(const SliceSeries& f, double tol = 1e-6);

// Two-point separation |f(z)-f(w)| >= c |z-w| over a grid in the disc of
// radius 0.9 on the slice of `axis`, sharpened by a local pattern search
// around the worst pair.  Passes when the refined c exceeds min_ratio_tol.
CheckReport check_slice_injectivity(const SliceSeries& f, const Multivector& axis, int grid_size,
                                    double min_ratio_tol = 1e-6);

struct RotatedSliceForm {
  std::complex<double> lambda;
  Multivector unit;    // |unit| = 1 with f = factor * unit
  SliceSeries factor;  // slice-preserving for the tested axis
};

// Decides whether f equals a slice-preserving function times a constant
// unit, testing F(z)G(conj z) = F(conj z)G(z) on the splitting components;
// on success reconstructs (lambda, unit, factor) with sampled residual
// below 1e-9.  Empty when the criterion fails.
std::optional<RotatedSliceForm> detect_rotated_slice_preserving(const SliceSeries& f,
                                                                const Multivector& axis,
                                                                int samples, std::uint64_t seed,
                                                                double criterion_tol = 1e-10);

// Zeros of fn - target inside |z| <= radius counted by accumulating
// argument increments around the sampled circle.  Throws NumericalError
// when the winding is farther than integer_tol from an integer.
int winding_root_count(const std::function<std::complex<double>(std::complex<double>)>& fn,
                       std::complex<double> target, double radius, int nodes = 4096,
                       double integer_tol = 0.1);

struct KoebeQuarterOptions {
  int angle_samples = 2048;
  int winding_nodes = 4096;
  double winding_radius = 0.999;
  double tol = 1e-8;
};

// Covering behaviour of a normalized catalog entry on quaternions:
// (a) boundary minima of |f| on |q| = r against r/(1+r)^2, reduced to the
//     preserved slice and sampled densely in angle via the exact closed
//     form (the truncated series is useless near the boundary);
// (b) root counts of F - w for targets with |w| < 1/4 (asserted >= 1);
//     counts for other targets are reported without assertion;
// (c) minima must be nondecreasing along the radii grid.
CheckReport check_koebe_quarter(const SeedFunction& f, std::span<const double> radii,
                                std::span<const std::complex<double>> targets,
                                const KoebeQuarterOptions& opts = {});

}  // namespace slicereg
