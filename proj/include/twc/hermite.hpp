#pragma once

#include <functional>
#include <span>
#include <vector>

#include "twc/grid.hpp"
#include "twc/multi_index.hpp"
#include "twc/types.hpp"

namespace twc {

/// L2-normalized Hermite function h_k(x), by the three-term recurrence
///   h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x).
/// Throws InvalidArgument for k < 0.
double hermite_eval(int k, double x);

/// h_0(x), ..., h_{k_max}(x) into out (size k_max + 1). The recurrence is
/// carried with a running exponent so it neither underflows nor overflows.
void hermite_eval_all(int k_max, double x, std::span<double> out);

/// Table T(k, i) = h_k(xs[i]) for k = 0..k_max.
RMatrix hermite_table(int k_max, std::span<const double> xs);

/// Tensor-product Hermite function h_alpha(x), x in R^d.
double hermite_eval(const MultiIndex& alpha, std::span<const double> x);

struct QuadratureRule {
  std::vector<double> nodes;
  /// Weights against e^{-x^2}. For n beyond ~360 the outermost weights underflow.
  std::vector<double> weights;
  /// weights[i] * exp(nodes[i]^2); always strictly positive and finite.
  std::vector<double> scaled_weights;
  int exact_degree = 0;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Hermite rule, 1 <= n <= 512.
QuadratureRule gauss_hermite_rule(int n);

/// Hermite coefficients c_alpha of f = sum c_alpha h_alpha on the
/// hyper-rectangle index set.
class HermiteCoeffVector {
 public:
  HermiteCoeffVector() = default;
  HermiteCoeffVector(int d, int n_max);
  HermiteCoeffVector(IndexSet index, CVector coeffs);

  static HermiteCoeffVector unit(int d, int n_max, const MultiIndex& alpha);

  int dim() const noexcept { return index_.dim(); }
  int n_max() const noexcept { return index_.n_max(); }
  const IndexSet& index() const noexcept { return index_; }
  const CVector& coeffs() const noexcept { return coeffs_; }
  CVector& coeffs() noexcept { return coeffs_; }

  Complex operator[](const MultiIndex& alpha) const { return coeffs_(static_cast<Eigen::Index>(index_.flat(alpha))); }
  Complex& operator[](const MultiIndex& alpha) { return coeffs_(static_cast<Eigen::Index>(index_.flat(alpha))); }

  /// L2 norm of the represented function (Parseval).
  double l2_norm() const { return coeffs_.norm(); }

 private:
  IndexSet index_;
  CVector coeffs_;
};

/// Samples of a function of x in R^d at the tensor nodes of a 1D rule,
/// row-major over the d coordinates.
struct NodalSamples {
  int d = 1;
  QuadratureRule rule;
  std::vector<Complex> values;
};

/// Samples f at the tensor nodes of `rule`.
NodalSamples sample_at_nodes(int d, const QuadratureRule& rule,
                             const std::function<Complex(std::span<const double>)>& f);

/// c_alpha = <f, h_alpha> by tensor Gauss-Hermite quadrature (e^{+x^2} folded
/// into the weights). Throws ResolutionError when the rule has fewer than
/// n_max + 1 nodes.
HermiteCoeffVector project_to_hermite(const NodalSamples& f, int n_max);

/// Same, sampling f at the default 4 (n_max + 1) nodes.
HermiteCoeffVector project_to_hermite(const std::function<Complex(std::span<const double>)>& f, int d,
                                      int n_max);

/// c_k = <f, h_k> for a 1D uniform-grid function by the trapezoid rule. Throws
/// ResolutionError when the box or spacing cannot resolve h_{n_max}.
HermiteCoeffVector project_to_hermite(const GridFunction& f, int n_max);

/// sum_alpha c_alpha h_alpha(x) at the tensor nodes of `rule`.
NodalSamples synthesize_at_nodes(const HermiteCoeffVector& f, const QuadratureRule& rule);

/// sum_k c_k h_k on a 1D uniform grid.
GridFunction synthesize_on_grid(const HermiteCoeffVector& f, const GridSpec& spec);

/// Harmonic oscillator H = |x|^2 - Delta in coefficient form: c_alpha -> (2|alpha| + d) c_alpha.
HermiteCoeffVector apply_H_coeff(const HermiteCoeffVector& f);

/// Grid realization of |x|^2 - d^2/dx^2 by second differences (d = 1).
GridFunction apply_H_grid(const GridFunction& f);

}  // namespace twc
