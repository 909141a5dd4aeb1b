#pragma once

#include <complex>
#include <vector>

#include "slicereg/slice.hpp"

namespace slicereg {

// Truncated complex power series (the one-slice restriction of a slice
// function, or a splitting component).
struct ComplexSeries {
  std::vector<std::complex<double>> coeffs;  // c_0 .. c_N

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

std::complex<double> eval(const ComplexSeries& f, std::complex<double> z);

// Truncated power series sum_k x^k a_k with multivector coefficients on
// the right -- the working representation of a slice function on a ball.
// Values are contractual only for |x| <= r_max together with the tail
// bounds below.
class SliceSeries {
 public:
  SliceSeries(SliceStructure structure, int degree);
  SliceSeries(SliceStructure structure, std::vector<Multivector> coeffs);

  const SliceStructure& structure() const { return structure_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Multivector& coeff(int k) const {
    if (k < 0 || k > degree()) throw UsageError("coefficient index out of range");
    return coeffs_[k];
  }
  void set_coeff(int k, Multivector value);

  static SliceSeries unit(const SliceStructure& s);      // constant 1
  static SliceSeries identity(const SliceStructure& s);  // x

 private:
  SliceStructure structure_;
  std::vector<Multivector> coeffs_;
};

// Star products truncate at min(N1 + N2, max_degree).
inline constexpr int kDefaultMaxDegree = 512;

// Evaluation decomposes x = u + v*I, raises w = u + iv to powers in the
// commuting plane and re-embeds, so x^k a_k = Re(w^k) a_k + I (Im(w^k) a_k).
// Only one multivector product is needed per call.
Multivector eval(const SliceSeries& f, const SlicePoint& p);
Multivector eval(const SliceSeries& f, const Multivector& x);

// Reconstructs f(u + vJ) from the two values on the slice of `axis`:
//   f(u+vJ) = (f(u+vI) + f(u-vI))/2 + JI (f(u-vI) - f(u+vI))/2.
Multivector eval_representation(const SliceSeries& f, const Multivector& axis,
                                const Multivector& x);

// Termwise slice derivative: b_k = (k+1) a_{k+1}.
SliceSeries derivative(const SliceSeries& f);

// Convolution product c_k = sum_j a_j b_{k-j} (left factor's coefficients
// first; not commutative).
SliceSeries star_product(const SliceSeries& f, const SliceSeries& g,
                         int max_degree = kDefaultMaxDegree);

// Coefficients replaced by their Clifford conjugates.
SliceSeries series_conjugate(const SliceSeries& f);

// f * conj(f); equals conj(f) * f coefficientwise.
SliceSeries symmetrization(const SliceSeries& f, int max_degree = kDefaultMaxDegree);

// Star inverse at coefficient level: b_0 = a_0^{-1},
// b_k = -a_0^{-1} sum_{j>=1} a_j b_{k-j}.  Throws NotInvertibleError when
// a_0 has no inverse.
SliceSeries star_inverse_series(const SliceSeries& f);

// Pointwise star inverse (sym(f)(x))^{-1} * conj-series(f)(x).  Throws
// ZeroSetError when sym(f)(x) is not invertible.  Internal products are
// kept at full degree so polynomial inputs evaluate exactly.
Multivector star_inverse_eval(const SliceSeries& f, const Multivector& x);

// Unique slice extension of a one-slice power series: a_k = Re c_k + Im c_k * I.
SliceSeries ext(const ComplexSeries& f, const Multivector& axis, const SliceStructure& s);

// Shift the coefficients down one degree; requires a_0 = 0 (within 1e-12).
SliceSeries divide_by_variable(const SliceSeries& f);

// The slice extension of z f'(z)/f(z) for normalized f (a_0 = 0, a_1 = 1),
// computed as (f' * (f/x)^{-star}) so it is regular at the origin.
Multivector ratio_eval(const SliceSeries& f, const Multivector& x,
                       int max_degree = kDefaultMaxDegree);
SliceSeries ratio_series(const SliceSeries& f, int max_degree = kDefaultMaxDegree);

// Splitting of the restriction to the slice of `axis` over a module basis
// of blades built from a deterministic orthonormal completion:
//   f_I(z) = sum_A F_A(z) I_A.
struct SplittingResult {
  Multivector axis;
  std::vector<Multivector> completion;     // I_2 .. I_m
  std::vector<Multivector> module_blades;  // I_A in subset-mask order, 2^{m-1}
  std::vector<ComplexSeries> components;   // F_A, aligned with module_blades
};

// Orthonormal completion I_2..I_m of the axis inside the imaginary
// subspace: ambient basis elements are fed to Gram-Schmidt in index order,
// skipping the one with the largest |<axis, e_j>| (ties to the smaller
// index).  m = splitting_rank().
std::vector<Multivector> completion_basis(const SliceStructure& s, const Multivector& axis);

SplittingResult splitting(const SliceSeries& f, const Multivector& axis);

// Tail sums of k r^k and k^2 r^k from k = `from`, used to budget the
// truncation error of catalog series with |a_k| <= C k or <= C k^2.
double tail_sum_linear(int from, double r);
double tail_sum_quadratic(int from, double r);

double relative_residual(double lhs, double rhs);
double relative_residual(const Multivector& lhs, const Multivector& rhs);

}  // namespace slicereg
