#pragma once

#include "twc/grid.hpp"
#include "twc/multi_index.hpp"
#include "twc/types.hpp"

// Grid realizations of the phase-space transforms for d = 1. Phase space is
// R^2 with axes (x, xi); operator kernels are R^2 with axes (x, y). Both use
// the same axis spec as the 1D inputs.
//
// Sign conventions:
//   W_{f,g}(x,xi)   = (2 pi)^{-1/2} int f(x - y/2) conj(g(x + y/2)) e^{+i y xi} dy
//   (A a)(x,y)      = (2 pi)^{-1/2} int a((y - x)/2, xi) e^{-i (x + y) xi} dxi
//   (F_sigma a)(X)  = pi^{-1} int a(Y) e^{2 i sigma(X,Y)} dY,  sigma(X,Y) = y xi - x eta

namespace twc {

struct PairIndex {
  MultiIndex first;
  MultiIndex second;

  PairIndex(MultiIndex a, MultiIndex b);
  int dim() const noexcept { return first.dim(); }
  auto operator<=>(const PairIndex&) const = default;
};

/// A^{-1} K: phase-space function whose kernel under A is K,
///   (A^{-1} K)(x, xi) = (2 pi)^{-1/2} int K(-x + y/2, x + y/2) e^{i y xi} dy,
/// with y stepped by twice the grid spacing so both arguments stay on nodes.
GridFunction inverse_kernel_map_grid(const GridFunction& kernel, const BoundaryPolicy& policy = {});

/// Adjoint of inverse_kernel_map_grid with respect to the grid inner products.
GridFunction inverse_kernel_map_grid_adjoint(const GridFunction& a);

/// Wigner distribution W_{f,g} = A^{-1}(f_check (x) conj g) of two 1D grid functions.
GridFunction wigner(const GridFunction& f, const GridFunction& g, const BoundaryPolicy& policy = {});

/// Hermite-Wong function rho_alpha = (-1)^{|alpha_1|} W_{h_{alpha_1}, h_{alpha_2}}.
GridFunction hermite_wong_eval(const PairIndex& alpha, const GridSpec& spec, const BoundaryPolicy& policy = {});

/// rho_alpha(x, xi) at a single point, by direct trapezoid quadrature of the
/// defining y-integral with analytic Hermite values.
Complex hermite_wong_at(const PairIndex& alpha, double x, double xi);

/// Symplectic Fourier transform on the phase-space grid; an involution.
GridFunction symplectic_fourier(const GridFunction& a, const BoundaryPolicy& policy = {});

/// Kernel (A a)(x, y) on the grid: partial inverse Fourier transform in xi at
/// t = x + y, then the pullback u = (y - x)/2 with 12-point Lagrange
/// interpolation at half-node positions.
GridFunction kernel_map_A_grid(const GridFunction& a, const BoundaryPolicy& policy = {});

/// Tensor kernel f(x) g(y) (no conjugation).
GridFunction tensor_kernel(const GridFunction& f, const GridFunction& g);

/// Kernel of the composition: int Ka(x, z) Kb(z, y) dz.
GridFunction compose_kernels_grid(const GridFunction& ka, const GridFunction& kb);

/// f_check(x) = f(-x).
GridFunction reflect(const GridFunction& f);

/// 1D grid samples of h_k.
GridFunction sample_hermite(int k, const GridSpec& spec);

}  // namespace twc
