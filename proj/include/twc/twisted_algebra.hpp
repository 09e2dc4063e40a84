#pragma once

#include <span>
#include <vector>

#include "twc/grid.hpp"
#include "twc/wong_matrix.hpp"

namespace twc {

struct ExpandOptions {
  /// Largest tolerated fraction of grid L2 mass outside the index set.
  double max_tail_fraction = 1e-8;
};

/// c_{alpha1, alpha2} = <a, rho_{alpha1, alpha2}> by phase-space quadrature
/// (d = 1). Throws TruncationError when the tail mass exceeds the tolerance.
WongCoeffMatrix expand(const GridFunction& a, int n_max, const ExpandOptions& options = {});

/// Pointwise sum of c_alpha rho_alpha on the grid (d = 1).
GridFunction synthesize(const WongCoeffMatrix& c, const GridSpec& spec);

/// The kernel map A in coefficient space: rho_{alpha1, alpha2} -> h_{alpha1} (x) h_{alpha2};
/// entries are unchanged.
KernelMatrix kernel_map_A_coeff(const WongCoeffMatrix& c);
WongCoeffMatrix inverse_kernel_map_A_coeff(const KernelMatrix& k);

/// Grid samples of sum M(gamma, beta) h_gamma(x) h_beta(y) (d = 1).
GridFunction synthesize_kernel(const KernelMatrix& k, const GridSpec& spec);

/// a *_sigma b in coefficient space: the matrix product Ca Cb.
WongCoeffMatrix twisted_convolution_coeff(const WongCoeffMatrix& a, const WongCoeffMatrix& b);

/// Direct quadrature of (2/pi)^{1/2} int a(X - Y) b(Y) e^{2 i sigma(X,Y)} dY at every
/// grid point. O(M^2) in the number of grid points M; requires an odd number of
/// points per axis so that X - Y stays on the grid.
GridFunction twisted_convolution_grid(const GridFunction& a, const GridFunction& b,
                                      const BoundaryPolicy& policy = {});

/// a *_sigma b_k for several right factors sharing one left factor.
std::vector<GridFunction> twisted_convolution_grid(const GridFunction& a, std::span<const GridFunction> bs,
                                                   const BoundaryPolicy& policy = {});

/// Quadrature pairing (a *_sigma psi, psi).
Complex twisted_pairing_grid(const GridFunction& a, const GridFunction& psi, const BoundaryPolicy& policy = {});

/// F_sigma in coefficient space: the exact sign map c_{alpha} -> (-1)^{|alpha1|} c_{alpha}.
WongCoeffMatrix symplectic_fourier_coeff(const WongCoeffMatrix& c);

/// Op^w(a) = (2 pi)^{-d/2} A(F_sigma a) as a Hermite-basis operator matrix.
KernelMatrix weyl_quantize(const WongCoeffMatrix& symbol);

/// Symbol of an operator matrix: inverse of weyl_quantize.
WongCoeffMatrix weyl_symbol(const KernelMatrix& op);

/// Weyl product with Op^w(a # b) = Op^w(a) Op^w(b):
///   a # b = (2 pi)^{-d/2} a *_sigma (F_sigma b).
WongCoeffMatrix weyl_product(const WongCoeffMatrix& a, const WongCoeffMatrix& b);

}  // namespace twc
