#include "twc/oscillators.hpp"

#include <cmath>
#include <limits>

#include "twc/errors.hpp"
#include "twc/hermite.hpp"
#include "twc/twisted_algebra.hpp"

namespace twc {

namespace {

RVector eigen_weights(const IndexSet& index) {
  RVector w(static_cast<Eigen::Index>(index.size()));
  for (std::size_t k = 0; k < index.size(); ++k)
    w(static_cast<Eigen::Index>(k)) = 2.0 * index.degree(k) + index.dim();
  return w;
}

void check_power(int power) {
  if (power < 0) throw InvalidArgument("power must be non-negative");
}

}  // namespace

WongCoeffMatrix apply_H_sigma_coeff(const WongCoeffMatrix& c) {
  return WongCoeffMatrix(c.index(), eigen_weights(c.index()).asDiagonal() * c.entries());
}

WongCoeffMatrix apply_H_bar_sigma_coeff(const WongCoeffMatrix& c) {
  return WongCoeffMatrix(c.index(), c.entries() * eigen_weights(c.index()).asDiagonal());
}

double log_t_sigma_eigenvalue(const IndexSet& index, std::size_t row, std::size_t col) {
  const double d = index.dim();
  return std::log(2.0 * index.degree(row) + d) + std::log(2.0 * index.degree(col) + d);
}

WongCoeffMatrix apply_T_sigma_coeff(const WongCoeffMatrix& c, int power) {
  check_power(power);
  WongCoeffMatrix out = c;
  if (power == 0) return out;
  const auto n = static_cast<std::size_t>(c.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      Complex& v = out.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
      if (v == Complex{}) continue;
      double scale;
      if (power <= 20) {
        const double d = c.dim();
        scale = std::pow((2.0 * c.index().degree(r) + d) * (2.0 * c.index().degree(s) + d), power);
      } else {
        scale = std::exp(power * log_t_sigma_eigenvalue(c.index(), r, s));
      }
      v *= scale;
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw RangeError("T_sigma power overflows double precision; use the log-magnitude form");
    }
  }
  return out;
}

LogMagnitudeMatrix apply_T_sigma_log(const WongCoeffMatrix& c, int power) {
  check_power(power);
  const auto n = c.size();
  LogMagnitudeMatrix out{c.index(), RMatrix(n, n), RMatrix(n, n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      const Complex v = c.entries()(r, s);
      if (v == Complex{}) {
        out.log_abs(r, s) = -std::numeric_limits<double>::infinity();
        out.arg(r, s) = 0.0;
        continue;
      }
      out.log_abs(r, s) = std::log(std::abs(v)) +
                          power * log_t_sigma_eigenvalue(c.index(), static_cast<std::size_t>(r), static_cast<std::size_t>(s));
      out.arg(r, s) = std::arg(v);
    }
  }
  return out;
}

LadderResult apply_ladder(const WongCoeffMatrix& c, LadderKind kind) {
  if (kind.axis < 0 || kind.axis >= c.dim()) throw InvalidArgument("ladder axis outside the dimension");
  const IndexSet& index = c.index();
  const bool on_rows = kind.family == LadderFamily::Z2 || kind.family == LadderFamily::Z2Tilde;
  const bool raise = kind.family == LadderFamily::Z1Tilde || kind.family == LadderFamily::Z2Tilde;
  // Z1: +sqrt(2a), Z1~: -sqrt(2a+2), Z2: -sqrt(2a), Z2~: +sqrt(2a+2).
  const double sign = (kind.family == LadderFamily::Z1 || kind.family == LadderFamily::Z2Tilde) ? 1.0 : -1.0;

  LadderResult result{WongCoeffMatrix(index, CMatrix::Zero(c.size(), c.size())), false};
  const CMatrix& in = c.entries();
  CMatrix& out = result.value.entries();
  for (std::size_t k = 0; k < index.size(); ++k) {
    const int a = index.component(k, kind.axis);
    const double factor = sign * std::sqrt(raise ? 2.0 * a + 2.0 : 2.0 * a);
    const auto target = index.neighbor(k, kind.axis, raise ? 1 : -1);
    const auto src = static_cast<Eigen::Index>(k);
    if (!target) {
      if (raise) {
        const bool dropped = on_rows ? (in.row(src).array() != Complex{}).any() : (in.col(src).array() != Complex{}).any();
        result.truncated = result.truncated || dropped;
      }
      continue;
    }
    const auto dst = static_cast<Eigen::Index>(*target);
    if (on_rows) {
      out.row(dst) += factor * in.row(src);
    } else {
      out.col(dst) += factor * in.col(src);
    }
  }
  return result;
}

namespace {

WongCoeffMatrix from_ladders(const WongCoeffMatrix& c, LadderFamily lower, LadderFamily raise) {
  const WongCoeffMatrix padded = c.resized(c.n_max() + 1);
  WongCoeffMatrix sum(padded.index(), CMatrix::Zero(padded.size(), padded.size()));
  for (int j = 0; j < c.dim(); ++j) {
    const WongCoeffMatrix up = apply_ladder(padded, {raise, j}).value;
    const WongCoeffMatrix down = apply_ladder(padded, {lower, j}).value;
    sum.entries() += apply_ladder(up, {lower, j}).value.entries();
    sum.entries() += apply_ladder(down, {raise, j}).value.entries();
  }
  sum.entries() *= -0.5;
  return sum.resized(c.n_max());
}

}  // namespace

WongCoeffMatrix h_sigma_from_ladders(const WongCoeffMatrix& c) {
  return from_ladders(c, LadderFamily::Z2, LadderFamily::Z2Tilde);
}

WongCoeffMatrix h_bar_sigma_from_ladders(const WongCoeffMatrix& c) {
  return from_ladders(c, LadderFamily::Z1, LadderFamily::Z1Tilde);
}

namespace {

// sign = +1: H_sigma, sign = -1: conj(H)_sigma (the transport terms flip).
GridFunction symplectic_oscillator_grid(const GridFunction& a, double boundary_tolerance, double sign) {
  if (a.dims() != 2) throw ShapeMismatch("symplectic oscillator expects a phase-space grid function");
  check_boundary(a, BoundaryPolicy{true, boundary_tolerance}, "symplectic oscillator");
  const GridSpec& spec = a.spec();
  const int n = spec.points;
  const double h = spec.spacing();
  const Complex minus_i{0.0, -1.0};
  auto at = [&](int i, int j) -> Complex {
    if (i < 0 || j < 0 || i >= n || j >= n) return {};
    return a(i, j);
  };
  GridFunction out(2, spec);
  for (int i = 0; i < n; ++i) {
    const double x = spec.node(i);
    for (int j = 0; j < n; ++j) {
      const double xi = spec.node(j);
      const Complex f0 = at(i, j);
      const Complex xp1 = at(i + 1, j), xp2 = at(i + 2, j), xm1 = at(i - 1, j), xm2 = at(i - 2, j);
      const Complex yp1 = at(i, j + 1), yp2 = at(i, j + 2), ym1 = at(i, j - 1), ym2 = at(i, j - 2);
      const Complex dx = (-xp2 + 8.0 * xp1 - 8.0 * xm1 + xm2) / (12.0 * h);
      const Complex dxi = (-yp2 + 8.0 * yp1 - 8.0 * ym1 + ym2) / (12.0 * h);
      const Complex dxx = (-xp2 + 16.0 * xp1 - 30.0 * f0 + 16.0 * xm1 - xm2) / (12.0 * h * h);
      const Complex dxixi = (-yp2 + 16.0 * yp1 - 30.0 * f0 + 16.0 * ym1 - ym2) / (12.0 * h * h);
      out(i, j) = (x * x + xi * xi) * f0 - 0.25 * (dxx + dxixi) + sign * (xi * minus_i * dx - x * minus_i * dxi);
    }
  }
  return out;
}

}  // namespace

GridFunction apply_H_sigma_grid(const GridFunction& a, double boundary_tolerance) {
  return symplectic_oscillator_grid(a, boundary_tolerance, 1.0);
}

GridFunction apply_H_bar_sigma_grid(const GridFunction& a, double boundary_tolerance) {
  return symplectic_oscillator_grid(a, boundary_tolerance, -1.0);
}

double intertwine_check(const WongCoeffMatrix& c, int n1, int n2) {
  check_power(n1);
  check_power(n2);
  WongCoeffMatrix left = c;
  for (int k = 0; k < n1; ++k) left = apply_H_sigma_coeff(left);
  for (int k = 0; k < n2; ++k) left = apply_H_bar_sigma_coeff(left);
  const CMatrix lhs = kernel_map_A_coeff(left).entries();

  // Kernel sum M(g, b) h_g(x) h_b(y): H_1 acts on each column, H_2 on each row.
  CMatrix rhs = kernel_map_A_coeff(c).entries();
  const auto n = rhs.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    HermiteCoeffVector v(c.index(), rhs.col(col));
    for (int k = 0; k < n1; ++k) v = apply_H_coeff(v);
    rhs.col(col) = v.coeffs();
  }
  for (Eigen::Index row = 0; row < n; ++row) {
    HermiteCoeffVector v(c.index(), rhs.row(row).transpose());
    for (int k = 0; k < n2; ++k) v = apply_H_coeff(v);
    rhs.row(row) = v.coeffs().transpose();
  }
  const double scale = rhs.norm();
  const double gap = (lhs - rhs).norm();
  return scale > 0.0 ? gap / scale : gap;
}

}  // namespace twc
