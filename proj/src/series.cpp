#include "slicereg/series.hpp"

#include <algorithm>
#include <cmath>

#include "dense_lu.hpp"

namespace slicereg {

std::complex<double> eval(const ComplexSeries& f, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

SliceSeries::SliceSeries(SliceStructure structure, int degree)
    : structure_(std::move(structure)) {
  if (degree < 0) throw UsageError("series degree must be nonnegative");
  coeffs_.assign(degree + 1, Multivector(structure_.context()));
}

SliceSeries::SliceSeries(SliceStructure structure, std::vector<Multivector> coeffs)
    : structure_(std::move(structure)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("series needs at least the constant coefficient");
  for (const Multivector& c : coeffs_) {
    if (c.context()->generators() != structure_.context()->generators()) {
      throw UsageError("series coefficient from a different algebra");
    }
  }
}

void SliceSeries::set_coeff(int k, Multivector value) {
  if (k < 0 || k > degree()) throw UsageError("coefficient index out of range");
  if (value.context()->generators() != structure_.context()->generators()) {
    throw UsageError("series coefficient from a different algebra");
  }
  coeffs_[k] = std::move(value);
}

SliceSeries SliceSeries::unit(const SliceStructure& s) {
  SliceSeries f(s, 0);
  f.set_coeff(0, Multivector::scalar(s.context(), 1.0));
  return f;
}

SliceSeries SliceSeries::identity(const SliceStructure& s) {
  SliceSeries f(s, 1);
  f.set_coeff(1, Multivector::scalar(s.context(), 1.0));
  return f;
}

Multivector eval(const SliceSeries& f, const SlicePoint& p) {
  const ContextPtr& ctx = f.structure().context();
  std::complex<double> w(p.u, p.v);
  std::complex<double> wk(1.0, 0.0);
  Multivector re_acc(ctx);
  Multivector im_acc(ctx);
  for (int k = 0; k <= f.degree(); ++k) {
    const Multivector& a = f.coeff(k);
    double re = wk.real(), im = wk.imag();
    if (re != 0.0) re_acc += a * re;
    if (im != 0.0) im_acc += a * im;
    wk *= w;
  }
  re_acc += p.axis * im_acc;
  return re_acc;
}

Multivector eval(const SliceSeries& f, const Multivector& x) {
  return eval(f, f.structure().decompose(x));
}

Multivector eval_representation(const SliceSeries& f, const Multivector& axis,
                                const Multivector& x) {
  const SliceStructure& s = f.structure();
  if (!s.is_sphere_element(axis)) {
    throw InvalidPointError("representation axis is not in the imaginary sphere");
  }
  SlicePoint p = s.decompose(x);
  Multivector plus = eval(f, SlicePoint{p.u, p.v, axis});
  Multivector minus = eval(f, SlicePoint{p.u, p.v, -axis});
  Multivector out = (plus + minus) * 0.5;
  out += (p.axis * axis) * ((minus - plus) * 0.5);
  return out;
}

SliceSeries derivative(const SliceSeries& f) {
  if (f.degree() == 0) return SliceSeries(f.structure(), 0);
  SliceSeries out(f.structure(), f.degree() - 1);
  for (int k = 0; k < f.degree(); ++k) out.set_coeff(k, f.coeff(k + 1) * double(k + 1));
  return out;
}

SliceSeries star_product(const SliceSeries& f, const SliceSeries& g, int max_degree) {
  require_same_structure(f.structure(), g.structure());
  int deg = std::min(f.degree() + g.degree(), max_degree);
  SliceSeries out(f.structure(), deg);
  for (int j = 0; j <= f.degree(); ++j) {
    if (j > deg) break;
    const Multivector& a = f.coeff(j);
    int top = std::min(g.degree(), deg - j);
    for (int i = 0; i <= top; ++i) {
      Multivector term = a * g.coeff(i);
      term += out.coeff(j + i);
      out.set_coeff(j + i, std::move(term));
    }
  }
  return out;
}

SliceSeries series_conjugate(const SliceSeries& f) {
  SliceSeries out(f.structure(), f.degree());
  for (int k = 0; k <= f.degree(); ++k) out.set_coeff(k, f.coeff(k).conjugate());
  return out;
}

SliceSeries symmetrization(const SliceSeries& f, int max_degree) {
  return star_product(f, series_conjugate(f), max_degree);
}

SliceSeries star_inverse_series(const SliceSeries& f) {
  Multivector a0_inv(f.structure().context());
  try {
    a0_inv = f.coeff(0).inverse();
  } catch (const NotInvertibleError&) {
    throw NotInvertibleError("constant coefficient is not invertible");
  }
  SliceSeries out(f.structure(), f.degree());
  out.set_coeff(0, a0_inv);
  for (int k = 1; k <= f.degree(); ++k) {
    Multivector s(f.structure().context());
    for (int j = 1; j <= k; ++j) s += f.coeff(j) * out.coeff(k - j);
    out.set_coeff(k, -(a0_inv * s));
  }
  return out;
}

Multivector star_inverse_eval(const SliceSeries& f, const Multivector& x) {
  int full = 2 * std::max(f.degree(), 1);
  Multivector sym_val = eval(symmetrization(f, full), x);
  Multivector inv(f.structure().context());
  try {
    inv = sym_val.inverse();
  } catch (const NotInvertibleError&) {
    throw ZeroSetError("point lies in the zero set of the symmetrization");
  }
  return inv * eval(series_conjugate(f), x);
}

SliceSeries ext(const ComplexSeries& f, const Multivector& axis, const SliceStructure& s) {
  if (!s.is_sphere_element(axis)) {
    throw InvalidPointError("extension axis is not in the imaginary sphere");
  }
  SliceSeries out(s, std::max(f.degree(), 0));
  for (int k = 0; k <= f.degree(); ++k) {
    Multivector a = axis * f.coeffs[k].imag();
    a.set_coeff(0, a.coeff(0) + f.coeffs[k].real());
    out.set_coeff(k, std::move(a));
  }
  return out;
}

SliceSeries divide_by_variable(const SliceSeries& f) {
  if (f.coeff(0).norm() > 1e-12) {
    throw UsageError("series has nonzero constant term; cannot divide by the variable");
  }
  if (f.degree() == 0) return SliceSeries(f.structure(), 0);
  SliceSeries out(f.structure(), f.degree() - 1);
  for (int k = 1; k <= f.degree(); ++k) out.set_coeff(k - 1, f.coeff(k));
  return out;
}

SliceSeries ratio_series(const SliceSeries& f, int max_degree) {
  if (f.coeff(0).norm() > 1e-12) throw UsageError("ratio requires a_0 = 0");
  Multivector a1 = f.coeff(1);
  a1.set_coeff(0, a1.coeff(0) - 1.0);
  if (f.degree() < 1 || a1.norm() > 1e-12) throw UsageError("ratio requires a_1 = 1");
  SliceSeries g = divide_by_variable(f);
  return star_product(derivative(f), star_inverse_series(g), max_degree);
}

Multivector ratio_eval(const SliceSeries& f, const Multivector& x, int max_degree) {
  return eval(ratio_series(f, max_degree), x);
}

std::vector<Multivector> completion_basis(const SliceStructure& s, const Multivector& axis) {
  if (!s.is_sphere_element(axis)) {
    throw InvalidPointError("completion axis is not in the imaginary sphere");
  }
  const auto& masks = s.imaginary_masks();
  // Drop the ambient direction most aligned with the axis.
  std::size_t skip = 0;
  double best = -1.0;
  for (std::size_t j = 0; j < masks.size(); ++j) {
    double a = std::fabs(axis.coeff(masks[j]));
    if (a > best + 1e-15) {
      best = a;
      skip = j;
    }
  }
  std::vector<Multivector> ortho{axis};
  int want = s.splitting_rank() - 1;
  for (std::size_t j = 0; j < masks.size() && static_cast<int>(ortho.size()) < want + 1; ++j) {
    if (j == skip) continue;
    Multivector v = Multivector::blade(s.context(), masks[j]);
    for (const Multivector& b : ortho) v -= b * inner(v, b);
    double n = v.norm();
    if (n < 1e-9) throw InternalError("Gram-Schmidt breakdown completing the axis");
    v *= 1.0 / n;
    ortho.push_back(std::move(v));
  }
  if (static_cast<int>(ortho.size()) != want + 1) {
    throw InternalError("ambient space too small to complete the axis");
  }
  return std::vector<Multivector>(ortho.begin() + 1, ortho.end());
}

SplittingResult splitting(const SliceSeries& f, const Multivector& axis) {
  const SliceStructure& s = f.structure();
  std::vector<Multivector> completion = completion_basis(s, axis);
  const int rank = s.splitting_rank();
  const int blade_count = 1 << (rank - 1);
  const ContextPtr& ctx = s.context();
  const int dim = ctx->dim();

  std::vector<Multivector> blades;
  blades.reserve(blade_count);
  for (int sub = 0; sub < blade_count; ++sub) {
    Multivector b = Multivector::scalar(ctx, 1.0);
    for (int i = 0; i < rank - 1; ++i) {
      if (sub & (1 << i)) b = b * completion[i];
    }
    blades.push_back(std::move(b));
  }

  // a_k = sum_A (alpha + I beta) I_A is one real linear system per
  // coefficient; the columns {I_A, I*I_A} form a basis of the algebra, so
  // a single factorization serves all k.
  std::vector<double> mat(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int t = 0; t < blade_count; ++t) {
    Multivector ib = axis * blades[t];
    for (int row = 0; row < dim; ++row) {
      mat[static_cast<std::size_t>(row) * dim + 2 * t] = blades[t].coeff(row);
      mat[static_cast<std::size_t>(row) * dim + 2 * t + 1] = ib.coeff(row);
    }
  }
  detail::DenseLu lu(std::move(mat), dim);
  if (lu.nearly_singular(1e-12)) {
    throw InternalError("splitting basis is numerically degenerate");
  }

  std::vector<ComplexSeries> components(blade_count);
  for (auto& c : components) c.coeffs.resize(f.degree() + 1);
  std::vector<double> rhs(dim);
  for (int k = 0; k <= f.degree(); ++k) {
    auto coeffs = f.coeff(k).coeffs();
    std::copy(coeffs.begin(), coeffs.end(), rhs.begin());
    lu.solve(rhs);
    for (int t = 0; t < blade_count; ++t) {
      components[t].coeffs[k] = std::complex<double>(rhs[2 * t], rhs[2 * t + 1]);
    }
  }
  return SplittingResult{axis, std::move(completion), std::move(blades), std::move(components)};
}

// sum_{k>=m} k r^k = r^m (m(1-r) + r) / (1-r)^2
double tail_sum_linear(int from, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  double m = from;
  return std::pow(r, m) * (m * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r));
}

// sum_{k>=m} k^2 r^k = r^m (m^2 - (2m^2-2m-1) r + (m-1)^2 r^2) / (1-r)^3
double tail_sum_quadratic(int from, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  double m = from;
  double num = m * m - (2.0 * m * m - 2.0 * m - 1.0) * r + (m - 1.0) * (m - 1.0) * r * r;
  return std::pow(r, m) * num / std::pow(1.0 - r, 3);
}

double relative_residual(double lhs, double rhs) {
  return std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs) + std::fabs(rhs));
}

double relative_residual(const Multivector& lhs, const Multivector& rhs) {
  Multivector d = lhs - rhs;
  return d.norm() / (1.0 + lhs.norm() + rhs.norm());
}

}  // namespace slicereg
