#include "slicereg/clifford.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <mutex>

#include "dense_lu.hpp"

namespace slicereg {

namespace {

// Transpositions needed to merge the index lists of e_a and e_b into
// canonical ascending order: pairs (j in a, i in b) with j > i.
int reorder_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
  return (swaps & 1) ? -1 : 1;
}

}  // namespace

CliffordContext::CliffordContext(int n) : n_(n), dim_(1 << n) {
  signs_.resize(static_cast<std::size_t>(dim_) * dim_);
  for (unsigned a = 0; a < static_cast<unsigned>(dim_); ++a) {
    for (unsigned b = 0; b < static_cast<unsigned>(dim_); ++b) {
      int s = reorder_sign(a, b);
      if (std::popcount(a & b) & 1) s = -s;  // each repeated generator squares to -1
      signs_[a * dim_ + b] = static_cast<std::int8_t>(s);
    }
  }
  conj_signs_.resize(dim_);
  for (unsigned m = 0; m < static_cast<unsigned>(dim_); ++m) {
    int r = std::popcount(m);
    conj_signs_[m] = static_cast<std::int8_t>((r * (r + 1) / 2) % 2 == 0 ? 1 : -1);
  }
}

ContextPtr CliffordContext::get(int n) {
  if (n < 1 || n > kMaxGenerators) {
    throw ConfigError("generator count must be between 1 and 8, got " + std::to_string(n));
  }
  static std::array<ContextPtr, kMaxGenerators + 1> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n] = ContextPtr(new CliffordContext(n));
  return cache[n];
}

ContextPtr make_context(int n) { return CliffordContext::get(n); }

Multivector::Multivector(ContextPtr ctx) : ctx_(std::move(ctx)), coeffs_(ctx_->dim(), 0.0) {}

Multivector::Multivector(ContextPtr ctx, std::vector<double> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != ctx_->dim()) {
    throw UsageError("coefficient count does not match algebra dimension");
  }
}

Multivector Multivector::scalar(const ContextPtr& ctx, double value) {
  Multivector m(ctx);
  m.coeffs_[0] = value;
  return m;
}

Multivector Multivector::blade(const ContextPtr& ctx, unsigned mask, double value) {
  if (mask >= static_cast<unsigned>(ctx->dim())) throw UsageError("blade mask out of range");
  Multivector m(ctx);
  m.coeffs_[mask] = value;
  return m;
}

double Multivector::norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

bool Multivector::all_finite() const {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

Multivector Multivector::conjugate() const {
  Multivector out(ctx_);
  for (unsigned m = 0; m < coeffs_.size(); ++m) {
    out.coeffs_[m] = ctx_->conjugate_sign(m) * coeffs_[m];
  }
  return out;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  require_same_context(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  require_same_context(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  require_same_context(a, b);
  const CliffordContext& ctx = *a.ctx_;
  const int dim = ctx.dim();
  Multivector out(a.ctx_);
  for (int i = 0; i < dim; ++i) {
    double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      double bj = b.coeffs_[j];
      if (bj == 0.0) continue;
      out.coeffs_[i ^ j] += ai * bj * ctx.sign(i, j);
    }
  }
  return out;
}

double inner(const Multivector& a, const Multivector& b) {
  require_same_context(a, b);
  double s = 0.0;
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
  return s;
}

Multivector wedge_half(const Multivector& a, const Multivector& b) {
  Multivector out = a * b;
  out -= b * a;
  return out * 0.5;
}

bool is_paravector(const Multivector& a, double tol) {
  for (unsigned m = 0; m < static_cast<unsigned>(a.dim()); ++m) {
    if (std::popcount(m) > 1 && std::fabs(a.coeff(m)) > tol) return false;
  }
  return true;
}

void require_same_context(const Multivector& a, const Multivector& b) {
  if (a.context()->generators() != b.context()->generators()) {
    throw UsageError("multivectors belong to different Clifford algebras");
  }
}

Multivector Multivector::inverse() const {
  const int dim = ctx_->dim();

  if (is_paravector(*this)) {
    double n2 = 0.0;
    for (double c : coeffs_) n2 += c * c;
    if (n2 == 0.0) throw NotInvertibleError("zero has no inverse");
    Multivector out = conjugate();
    out *= 1.0 / n2;
    return out;
  }

  // Left-multiplication matrix: column j holds the blade coefficients of
  // (this * e_j).  Solving L x = e_0 yields a right inverse, which in a
  // finite-dimensional associative algebra is automatically two-sided.
  std::vector<double> mat(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    double ci = coeffs_[i];
    if (ci == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      mat[static_cast<std::size_t>(i ^ j) * dim + j] += ci * ctx_->sign(i, j);
    }
  }
  detail::DenseLu lu(std::move(mat), dim);
  if (lu.nearly_singular(1e-12)) {
    throw NotInvertibleError("multivector is a zero divisor or zero");
  }
  std::vector<double> rhs(dim, 0.0);
  rhs[0] = 1.0;
  lu.solve(rhs);
  return Multivector(ctx_, std::move(rhs));
}

}  // namespace slicereg
