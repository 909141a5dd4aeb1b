#pragma once

#include <cstdint>
#include <vector>

#include "slicereg/clifford.hpp"

namespace slicereg {

enum class StructureKind { paravector, quaternion };

// A point written in slice form u + v*I with v >= 0 and I a unit element
// squaring to -1.
struct SlicePoint {
  double u;
  double v;
  Multivector axis;
};

// The variable space of a slice function together with its sphere of
// imaginary units:
//   - paravector(n): points live in span{1, e_1..e_n} inside R_n, axes are
//     unit 1-vectors;
//   - quaternion: R_2 viewed as H (i = e_1, j = e_2, k = e_1 e_2), points
//     are arbitrary quaternions, axes are unit elements of span{i, j, k}.
class SliceStructure {
 public:
  static SliceStructure paravector(int n);
  static SliceStructure quaternion();

  StructureKind kind() const { return kind_; }
  const ContextPtr& context() const { return ctx_; }
  int generators() const { return ctx_->generators(); }

  // Blade masks spanning the ambient space of the imaginary sphere.
  const std::vector<unsigned>& imaginary_masks() const { return imag_masks_; }

  // Number of orthonormal imaginary units a splitting basis uses
  // (n for paravectors, 2 for quaternions).
  int splitting_rank() const;

  bool in_variable_subspace(const Multivector& x, double tol = 1e-12) const;
  bool is_sphere_element(const Multivector& axis, double tol = 1e-12) const;

  Multivector default_axis() const;  // e_1, the pinned axis for real points

  // u + v*axis.  Throws InvalidPointError when the axis fails the unit
  // imaginary invariants or v < 0.
  Multivector embed(const SlicePoint& p) const;

  // Splits x into (u, v, I); real points get the default axis.  Throws
  // InvalidPointError when x has blade content outside the variable space.
  SlicePoint decompose(const Multivector& x) const;

  // Deterministic isotropic samples from the imaginary sphere; sample k
  // depends only on (seed, k).
  std::vector<Multivector> sphere_sample(int count, std::uint64_t seed) const;
  Multivector sphere_sample_one(std::uint64_t seed, std::uint64_t index) const;

  bool operator==(const SliceStructure& o) const {
    return kind_ == o.kind_ && ctx_->generators() == o.ctx_->generators();
  }

 private:
  SliceStructure(StructureKind kind, ContextPtr ctx, std::vector<unsigned> imag_masks)
      : kind_(kind), ctx_(std::move(ctx)), imag_masks_(std::move(imag_masks)) {}

  StructureKind kind_;
  ContextPtr ctx_;
  std::vector<unsigned> imag_masks_;
};

void require_same_structure(const SliceStructure& a, const SliceStructure& b);

}  // namespace slicereg
