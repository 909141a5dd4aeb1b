#include "slicereg/slice.hpp"

#include <bit>
#include <cmath>

#include "slicereg/rng.hpp"

namespace slicereg {

SliceStructure SliceStructure::paravector(int n) {
  ContextPtr ctx = make_context(n);
  std::vector<unsigned> masks;
  for (int i = 0; i < n; ++i) masks.push_back(1u << i);
  return SliceStructure(StructureKind::paravector, std::move(ctx), std::move(masks));
}

SliceStructure SliceStructure::quaternion() {
  ContextPtr ctx = make_context(2);
  return SliceStructure(StructureKind::quaternion, std::move(ctx), {0b01u, 0b10u, 0b11u});
}

int SliceStructure::splitting_rank() const {
  return kind_ == StructureKind::paravector ? ctx_->generators() : 2;
}

bool SliceStructure::in_variable_subspace(const Multivector& x, double tol) const {
  if (x.context()->generators() != ctx_->generators()) return false;
  if (kind_ == StructureKind::quaternion) return true;
  return is_paravector(x, tol);
}

bool SliceStructure::is_sphere_element(const Multivector& axis, double tol) const {
  if (axis.context()->generators() != ctx_->generators()) return false;
  // Supported on the imaginary masks only.
  double stray = 0.0;
  for (unsigned m = 0; m < static_cast<unsigned>(axis.dim()); ++m) {
    bool allowed = false;
    for (unsigned im : imag_masks_) {
      if (im == m) {
        allowed = true;
        break;
      }
    }
    if (!allowed) stray = std::max(stray, std::fabs(axis.coeff(m)));
  }
  if (stray > tol) return false;
  if (std::fabs(axis.norm() - 1.0) > tol) return false;
  Multivector sq = axis * axis;
  sq += Multivector::scalar(ctx_, 1.0);
  return sq.norm() <= tol;
}

Multivector SliceStructure::default_axis() const { return Multivector::blade(ctx_, 1u); }

Multivector SliceStructure::embed(const SlicePoint& p) const {
  if (p.v < 0.0) throw InvalidPointError("slice point has negative imaginary radius");
  if (!is_sphere_element(p.axis)) {
    throw InvalidPointError("axis is not a unit imaginary element of this structure");
  }
  Multivector x = p.axis * p.v;
  x.set_coeff(0, x.coeff(0) + p.u);
  return x;
}

SlicePoint SliceStructure::decompose(const Multivector& x) const {
  if (!in_variable_subspace(x)) {
    throw InvalidPointError("point lies outside the structure's variable subspace");
  }
  double u = x.scalar_part();
  Multivector imag(ctx_);
  double v2 = 0.0;
  for (unsigned m : imag_masks_) {
    double c = x.coeff(m);
    imag.set_coeff(m, c);
    v2 += c * c;
  }
  double v = std::sqrt(v2);
  if (v == 0.0) return SlicePoint{u, 0.0, default_axis()};
  imag *= 1.0 / v;
  return SlicePoint{u, v, imag};
}

Multivector SliceStructure::sphere_sample_one(std::uint64_t seed, std::uint64_t index) const {
  Rng rng = substream(seed, "sphere_sample", index);
  Multivector axis(ctx_);
  while (true) {
    double n2 = 0.0;
    for (unsigned m : imag_masks_) {
      double g = rng.normal();
      axis.set_coeff(m, g);
      n2 += g * g;
    }
    double n = std::sqrt(n2);
    if (n > 1e-6) {
      axis *= 1.0 / n;
      return axis;
    }
  }
}

std::vector<Multivector> SliceStructure::sphere_sample(int count, std::uint64_t seed) const {
  if (count < 1) throw UsageError("sample count must be positive");
  std::vector<Multivector> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(sphere_sample_one(seed, k));
  return out;
}

void require_same_structure(const SliceStructure& a, const SliceStructure& b) {
  if (!(a == b)) throw UsageError("slice structures do not match");
}

}  // namespace slicereg
