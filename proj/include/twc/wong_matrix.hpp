#pragma once

#include "twc/multi_index.hpp"
#include "twc/phase_space.hpp"
#include "twc/types.hpp"

namespace twc {

/// Coefficients of a = sum c_{alpha1, alpha2} rho_{alpha1, alpha2}; rows are
/// indexed by alpha1, columns by alpha2 (flat IndexSet order). The same matrix
/// is the Hermite-basis matrix of the operator A a.
class WongCoeffMatrix {
 public:
  WongCoeffMatrix() = default;
  WongCoeffMatrix(int d, int n_max);
  WongCoeffMatrix(IndexSet index, CMatrix entries);

  static WongCoeffMatrix unit(int d, int n_max, const PairIndex& alpha);
  /// The diagonal all-ones matrix (identity under the twisted product).
  static WongCoeffMatrix identity(int d, int n_max);

  int dim() const noexcept { return index_.dim(); }
  int n_max() const noexcept { return index_.n_max(); }
  const IndexSet& index() const noexcept { return index_; }
  const CMatrix& entries() const noexcept { return entries_; }
  CMatrix& entries() noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

  Complex operator()(const PairIndex& alpha) const;
  Complex& operator()(const PairIndex& alpha);

  /// L2 norm of a (Frobenius norm, rho is orthonormal).
  double l2_norm() const { return entries_.norm(); }

  /// Copy onto a larger or smaller cutoff; entries outside are dropped or zero.
  WongCoeffMatrix resized(int n_max) const;

 private:
  IndexSet index_;
  CMatrix entries_;
};

/// Hermite-basis matrix M of an operator: the operator sends h_beta to
/// sum_gamma M(gamma, beta) h_gamma; equivalently its kernel is
/// sum M(gamma, beta) h_gamma(x) h_beta(y).
class KernelMatrix {
 public:
  KernelMatrix() = default;
  KernelMatrix(IndexSet index, CMatrix entries);

  int dim() const noexcept { return index_.dim(); }
  int n_max() const noexcept { return index_.n_max(); }
  const IndexSet& index() const noexcept { return index_; }
  const CMatrix& entries() const noexcept { return entries_; }
  CMatrix& entries() noexcept { return entries_; }

 private:
  IndexSet index_;
  CMatrix entries_;
};

void require_same_shape(const WongCoeffMatrix& a, const WongCoeffMatrix& b, const char* what);

}  // namespace twc
