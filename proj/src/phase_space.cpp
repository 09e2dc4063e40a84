#include "twc/phase_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "twc/errors.hpp"
#include "twc/hermite.hpp"

namespace twc {

namespace {


void require_phase_space(const GridFunction& a, const char* what) {
  if (a.dims() != 2) throw ShapeMismatch(std::string(what) + " expects a 2-axis grid");
}

// E(k + n - 1, m) = exp(2 i k h xi_m), k in [-(n-1), n-1].
CMatrix wigner_phase_table(const GridSpec& spec) {
  const int n = spec.points;
  const double h = spec.spacing();
  CMatrix e(2 * n - 1, n);
  for (int k = -(n - 1); k <= n - 1; ++k)
    for (int m = 0; m < n; ++m) e(k + n - 1, m) = std::polar(1.0, 2.0 * k * h * spec.node(m));
  return e;
}

// Lagrange interpolation weights on integer nodes start..start+S-1 at position p.
constexpr int kStencil = 12;

struct Stencil {
  int start = 0;
  std::array<double, kStencil> w{};
};

Stencil lagrange_stencil(double p, int n) {
  Stencil s;
  s.start = std::clamp(static_cast<int>(std::floor(p)) - kStencil / 2 + 1, 0, n - kStencil);
  for (int r = 0; r < kStencil; ++r) {
    double w = 1.0;
    const double xr = s.start + r;
    for (int q = 0; q < kStencil; ++q) {
      if (q == r) continue;
      const double xq = s.start + q;
      w *= (p - xq) / (xr - xq);
    }
    s.w[static_cast<std::size_t>(r)] = w;
  }
  return s;
}

}  // namespace

PairIndex::PairIndex(MultiIndex a, MultiIndex b) : first(std::move(a)), second(std::move(b)) {
  if (first.dim() != second.dim()) throw InvalidArgument("pair index components must share the dimension");
}

GridFunction inverse_kernel_map_grid(const GridFunction& kernel, const BoundaryPolicy& policy) {
  require_phase_space(kernel, "inverse kernel map");
  check_boundary(kernel, policy, "inverse kernel map");
  const GridSpec& spec = kernel.spec();
  const int n = spec.points;
  const double h = spec.spacing();
  const auto K = kernel.matrix();

  CMatrix g = CMatrix::Zero(n, 2 * n - 1);
  for (int i = 0; i < n; ++i) {
    const int k_lo = std::max(i - n + 1, -i);
    const int k_hi = std::min(i, n - 1 - i);
    for (int k = k_lo; k <= k_hi; ++k) g(i, k + n - 1) = K(n - 1 - i + k, i + k);
  }
  const double c = 2.0 * h / std::sqrt(2.0 * kPi);
  GridFunction out(2, spec);
  out.matrix() = (g * wigner_phase_table(spec)) * c;
  return out;
}

GridFunction inverse_kernel_map_grid_adjoint(const GridFunction& a) {
  require_phase_space(a, "inverse kernel map adjoint");
  const GridSpec& spec = a.spec();
  const int n = spec.points;
  const double h = spec.spacing();
  const CMatrix ahat = a.matrix() * wigner_phase_table(spec).adjoint();
  const double c = 2.0 * h / std::sqrt(2.0 * kPi);
  GridFunction out(2, spec);
  auto M = out.matrix();
  for (int i = 0; i < n; ++i) {
    const int k_lo = std::max(i - n + 1, -i);
    const int k_hi = std::min(i, n - 1 - i);
    for (int k = k_lo; k <= k_hi; ++k) M(n - 1 - i + k, i + k) = c * ahat(i, k + n - 1);
  }
  return out;
}

GridFunction reflect(const GridFunction& f) {
  if (f.dims() != 1) throw ShapeMismatch("reflect expects a 1D grid function");
  GridFunction out(1, f.spec());
  const int n = f.points();
  for (int i = 0; i < n; ++i) out(i) = f(n - 1 - i);
  return out;
}

GridFunction tensor_kernel(const GridFunction& f, const GridFunction& g) {
  if (f.dims() != 1) throw ShapeMismatch("tensor kernel expects 1D factors");
  require_same_grid(f, g, "tensor kernel");
  const int n = f.points();
  GridFunction k(2, f.spec());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = f(i) * g(j);
  return k;
}

GridFunction wigner(const GridFunction& f, const GridFunction& g, const BoundaryPolicy& policy) {
  if (f.dims() != 1 || g.dims() != 1) throw ShapeMismatch("wigner expects 1D grid functions (d = 1)");
  require_same_grid(f, g, "wigner");
  check_boundary(f, policy, "wigner");
  check_boundary(g, policy, "wigner");
  GridFunction gbar = g;
  for (auto& v : gbar.values()) v = std::conj(v);
  return inverse_kernel_map_grid(tensor_kernel(reflect(f), gbar), BoundaryPolicy{false, policy.tolerance});
}

GridFunction sample_hermite(int k, const GridSpec& spec) {
  spec.validate();
  GridFunction f(1, spec);
  for (int i = 0; i < spec.points; ++i) f(i) = hermite_eval(k, spec.node(i));
  return f;
}

GridFunction hermite_wong_eval(const PairIndex& alpha, const GridSpec& spec, const BoundaryPolicy& policy) {
  if (alpha.dim() != 1) throw UnsupportedRange("phase-space grids are implemented for d = 1");
  if (alpha.first.max_entry() > 32 || alpha.second.max_entry() > 32)
    throw InvalidArgument("Hermite-Wong grid evaluation supports indices up to 32");
  GridFunction w = wigner(sample_hermite(alpha.first[0], spec), sample_hermite(alpha.second[0], spec), policy);
  if (alpha.first.degree() % 2 != 0) w *= -1.0;
  return w;
}

namespace {

// (-1)^a (2 pi)^{-1/2} int h_a(x - y/2) h_b(x + y/2) e^{i y xi} dy.
Complex hermite_wong_at_1d(int a, int b, double x, double xi) {
  const double reach = std::sqrt(2.0 * std::max(a, b) + 1.0) + 12.0;
  const double y_max = 2.0 * (reach + std::abs(x));
  const double step = 0.02;
  const int m = static_cast<int>(std::ceil(y_max / step));
  std::vector<double> ha(static_cast<std::size_t>(a) + 1), hb(static_cast<std::size_t>(b) + 1);
  Complex s{};
  for (int k = -m; k <= m; ++k) {
    const double y = k * step;
    hermite_eval_all(a, x - 0.5 * y, ha);
    hermite_eval_all(b, x + 0.5 * y, hb);
    s += ha.back() * hb.back() * std::polar(1.0, y * xi);
  }
  s *= step / std::sqrt(2.0 * kPi);
  return (a % 2 == 0) ? s : -s;
}

}  // namespace

Complex hermite_wong_at(const PairIndex& alpha, double x, double xi) {
  if (alpha.dim() != 1) throw InvalidArgument("scalar point evaluation needs d = 1");
  return hermite_wong_at_1d(alpha.first[0], alpha.second[0], x, xi);
}

GridFunction symplectic_fourier(const GridFunction& a, const BoundaryPolicy& policy) {
  require_phase_space(a, "symplectic Fourier transform");
  check_boundary(a, policy, "symplectic Fourier transform");
  const GridSpec& spec = a.spec();
  const int n = spec.points;
  const double h = spec.spacing();
  CMatrix e(n, n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) e(j, m) = std::polar(1.0, 2.0 * spec.node(j) * spec.node(m));
  // F(i, m) = (h^2/pi) sum_{j,n} conj(E(i,n)) a(j,n) E(j,m)
  const CMatrix at_e = a.matrix().transpose() * e;
  GridFunction out(2, spec);
  out.matrix() = (e.conjugate() * at_e) * (h * h / kPi);
  return out;
}

GridFunction kernel_map_A_grid(const GridFunction& a, const BoundaryPolicy& policy) {
  require_phase_space(a, "kernel map A");
  check_boundary(a, policy, "kernel map A");
  const GridSpec& spec = a.spec();
  const int n = spec.points;
  if (n < kStencil) throw InvalidArgument("grid too small for the interpolation stencil");
  const double h = spec.spacing();
  const double L = spec.half_width;

  // B(u_k, s) = (2 pi)^{-1/2} h sum_m a(u_k, xi_m) exp(-i t_s xi_m), t_s = -2L + s h.
  CMatrix phase(n, 2 * n - 1);
  for (int m = 0; m < n; ++m)
    for (int s = 0; s < 2 * n - 1; ++s) phase(m, s) = std::polar(1.0, -(-2.0 * L + s * h) * spec.node(m));
  const CMatrix b = (a.matrix() * phase) * (h / std::sqrt(2.0 * kPi));

  // u = (y_j - x_i)/2 sits at grid position (j - i + n - 1)/2.
  std::vector<Stencil> stencils(static_cast<std::size_t>(2 * n - 1));
  for (int q = 0; q < 2 * n - 1; ++q) {
    if (q % 2 == 1) stencils[static_cast<std::size_t>(q)] = lagrange_stencil(0.5 * q, n);
  }

  GridFunction out(2, spec);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int q = j - i + n - 1;
      const int s = i + j;
      if (q % 2 == 0) {
        out(i, j) = b(q / 2, s);
      } else {
        const Stencil& st = stencils[static_cast<std::size_t>(q)];
        Complex v{};
        for (int r = 0; r < kStencil; ++r) v += st.w[static_cast<std::size_t>(r)] * b(st.start + r, s);
        out(i, j) = v;
      }
    }
  }
  return out;
}

GridFunction compose_kernels_grid(const GridFunction& ka, const GridFunction& kb) {
  require_phase_space(ka, "kernel composition");
  require_same_grid(ka, kb, "kernel composition");
  GridFunction out(2, ka.spec());
  out.matrix() = (ka.matrix() * kb.matrix()) * ka.spec().spacing();
  return out;
}

}  // namespace twc
