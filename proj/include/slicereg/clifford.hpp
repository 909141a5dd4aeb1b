#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "slicereg/errors.hpp"

namespace slicereg {

class CliffordContext;
using ContextPtr = std::shared_ptr<const CliffordContext>;

// Real Clifford algebra with n anticommuting generators, each squaring
// to -1.  Basis blades are indexed by bitmask: bit i set means generator
// e_{i+1} participates, so mask 0 is the scalar unit and mask 0b11 is
// e_1 e_2.  Blade products reduce to a sign lookup plus a mask xor:
//
//   e_A e_B = sign(A, B) * e_{A xor B}
//
// where the sign counts the transpositions needed to interleave the two
// index lists (anticommutation) and one extra -1 per repeated generator.
class CliffordContext {
 public:
  int generators() const { return n_; }
  int dim() const { return dim_; }

  int sign(unsigned a, unsigned b) const { return signs_[a * dim_ + b]; }
  static unsigned product_mask(unsigned a, unsigned b) { return a ^ b; }

  // Grade-dependent sign of the Clifford conjugate: (-1)^{r(r+1)/2}.
  int conjugate_sign(unsigned mask) const { return conj_signs_[mask]; }

  // Contexts are immutable and interned per n.
  static ContextPtr get(int n);

 private:
  explicit CliffordContext(int n);

  int n_;
  int dim_;
  std::vector<std::int8_t> signs_;
  std::vector<std::int8_t> conj_signs_;
};

// Generator count is capped so the sign table and the dense inversion
// solve stay trivially sized.
inline constexpr int kMaxGenerators = 8;

ContextPtr make_context(int n);

// Element of R_n held as one real coefficient per basis blade.
class Multivector {
 public:
  explicit Multivector(ContextPtr ctx);
  Multivector(ContextPtr ctx, std::vector<double> coeffs);

  static Multivector scalar(const ContextPtr& ctx, double value);
  static Multivector blade(const ContextPtr& ctx, unsigned mask, double value = 1.0);

  const ContextPtr& context() const { return ctx_; }
  int dim() const { return static_cast<int>(coeffs_.size()); }
  std::span<const double> coeffs() const { return coeffs_; }

  double coeff(unsigned mask) const { return coeffs_[mask]; }
  void set_coeff(unsigned mask, double value) { coeffs_[mask] = value; }

  double scalar_part() const { return coeffs_[0]; }
  double norm() const;
  bool all_finite() const;

  Multivector conjugate() const;

  // Two-sided inverse via the dense left-multiplication solve; paravectors
  // take the closed-form path conj(x)/|x|^2.  Throws NotInvertibleError on
  // zero divisors (the pivot-ratio threshold is 1e-12).
  Multivector inverse() const;

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }

  friend Multivector operator*(const Multivector& a, const Multivector& b);

 private:
  ContextPtr ctx_;
  std::vector<double> coeffs_;
};

// Euclidean inner product <a,b> = Sc(a conj(b)) = componentwise dot.
double inner(const Multivector& a, const Multivector& b);

// Antisymmetric half of the product, (ab - ba)/2.
Multivector wedge_half(const Multivector& a, const Multivector& b);

// True when every blade coefficient outside the scalar+vector part
// vanishes within tol.
bool is_paravector(const Multivector& a, double tol = 0.0);

void require_same_context(const Multivector& a, const Multivector& b);

}  // namespace slicereg
