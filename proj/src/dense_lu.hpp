#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace slicereg::detail {

// Dense LU factorization with partial pivoting, sized for the 2^n x 2^n
// systems behind multivector inversion and splitting (n <= 8).  Near
// singularity is judged by the pivot ratio, so callers get a scale-free
// criterion.
class DenseLu {
 public:
  DenseLu(std::vector<double> matrix, int n) : n_(n), lu_(std::move(matrix)), piv_(n) {
    factor();
  }

  bool nearly_singular(double rel_tol) const {
    return pivot_min_ < rel_tol * pivot_max_;
  }

  double pivot_min() const { return pivot_min_; }
  double pivot_max() const { return pivot_max_; }

  // Solves in place; only meaningful when !nearly_singular(...).
  void solve(std::span<double> rhs) const {
    for (int i = 0; i < n_; ++i) {
      int p = piv_[i];
      if (p != i) std::swap(rhs[i], rhs[p]);
    }
    for (int i = 1; i < n_; ++i) {
      double s = rhs[i];
      for (int j = 0; j < i; ++j) s -= lu_[i * n_ + j] * rhs[j];
      rhs[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = rhs[i];
      for (int j = i + 1; j < n_; ++j) s -= lu_[i * n_ + j] * rhs[j];
      rhs[i] = s / lu_[i * n_ + i];
    }
  }

 private:
  void factor() {
    pivot_min_ = 0.0;
    pivot_max_ = 0.0;
    for (int k = 0; k < n_; ++k) {
      int p = k;
      double best = std::fabs(lu_[k * n_ + k]);
      for (int i = k + 1; i < n_; ++i) {
        double v = std::fabs(lu_[i * n_ + k]);
        if (v > best) {
          best = v;
          p = i;
        }
      }
      piv_[k] = p;
      if (p != k) {
        for (int j = 0; j < n_; ++j) std::swap(lu_[k * n_ + j], lu_[p * n_ + j]);
      }
      double piv = lu_[k * n_ + k];
      double mag = std::fabs(piv);
      if (k == 0) {
        pivot_min_ = pivot_max_ = mag;
      } else {
        pivot_min_ = std::min(pivot_min_, mag);
        pivot_max_ = std::max(pivot_max_, mag);
      }
      if (mag == 0.0) continue;  // exact singularity; ratio test reports it
      for (int i = k + 1; i < n_; ++i) {
        double m = lu_[i * n_ + k] / piv;
        lu_[i * n_ + k] = m;
        if (m == 0.0) continue;
        for (int j = k + 1; j < n_; ++j) lu_[i * n_ + j] -= m * lu_[k * n_ + j];
      }
    }
  }

  int n_;
  std::vector<double> lu_;
  std::vector<int> piv_;
  double pivot_min_ = 0.0;
  double pivot_max_ = 0.0;
};

}  // namespace slicereg::detail
