#pragma once

#include "twc/grid.hpp"
#include "twc/wong_matrix.hpp"

namespace twc {

/// H_sigma rho_{a1,a2} = (2|a1| + d) rho_{a1,a2}.
WongCoeffMatrix apply_H_sigma_coeff(const WongCoeffMatrix& c);
/// conj(H)_sigma rho_{a1,a2} = (2|a2| + d) rho_{a1,a2}.
WongCoeffMatrix apply_H_bar_sigma_coeff(const WongCoeffMatrix& c);

/// T_sigma^N in linear domain. Throws RangeError when an entry overflows; use
/// apply_T_sigma_log then.
WongCoeffMatrix apply_T_sigma_coeff(const WongCoeffMatrix& c, int power);

/// Entries of T_sigma^N a stored as log|c| and arg c. Zero entries have log -inf.
struct LogMagnitudeMatrix {
  IndexSet index;
  RMatrix log_abs;
  RMatrix arg;
};
LogMagnitudeMatrix apply_T_sigma_log(const WongCoeffMatrix& c, int power);

/// log((2|a1| + d)(2|a2| + d)), the log eigenvalue of T_sigma on rho_{a1,a2}.
double log_t_sigma_eigenvalue(const IndexSet& index, std::size_t row, std::size_t col);

enum class LadderFamily { Z1, Z1Tilde, Z2, Z2Tilde };

struct LadderKind {
  LadderFamily family;
  int axis = 0;
};

struct LadderResult {
  WongCoeffMatrix value;
  /// A raised index left the cutoff and its term was dropped.
  bool truncated = false;
};

/// Z1 lowers alpha2 (+sqrt(2 a)), Z1~ raises alpha2 (-sqrt(2 a + 2)),
/// Z2 lowers alpha1 (-sqrt(2 a)), Z2~ raises alpha1 (+sqrt(2 a + 2)).
LadderResult apply_ladder(const WongCoeffMatrix& c, LadderKind kind);

/// H_sigma = -1/2 sum_j (Z2_j Z2~_j + Z2~_j Z2_j), evaluated on a padded copy so
/// the result is exact at the cutoff.
WongCoeffMatrix h_sigma_from_ladders(const WongCoeffMatrix& c);
/// conj(H)_sigma = -1/2 sum_j (Z1_j Z1~_j + Z1~_j Z1_j).
WongCoeffMatrix h_bar_sigma_from_ladders(const WongCoeffMatrix& c);

/// Finite-difference H_sigma on a phase-space grid, D = -i d/dx, 4th-order
/// central differences:
///   (x^2 + xi^2) a - (a_xx + a_xixi)/4 + xi D_x a - x D_xi a.
GridFunction apply_H_sigma_grid(const GridFunction& a, double boundary_tolerance = 1e-6);
GridFunction apply_H_bar_sigma_grid(const GridFunction& a, double boundary_tolerance = 1e-6);

/// Relative Frobenius gap between A(H_sigma^N1 conj(H)_sigma^N2 a) and
/// H_1^N1 H_2^N2 (A a), the right side built from apply_H_coeff on each tensor factor.
double intertwine_check(const WongCoeffMatrix& c, int n1, int n2);

}  // namespace twc
