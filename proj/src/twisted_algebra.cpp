#include "twc/twisted_algebra.hpp"

#include <cmath>
#include <vector>

#include "parallel.hpp"
#include "twc/errors.hpp"
#include "twc/hermite.hpp"

namespace twc {

namespace {

void require_grid_d1(const WongCoeffMatrix& c, const char* what) {
  if (c.dim() != 1) throw UnsupportedRange(std::string(what) + " is implemented on grids for d = 1 only");
}

CMatrix hermite_rows(int n_max, const GridSpec& spec) {
  const auto x = spec.nodes();
  return hermite_table(n_max, x).cast<Complex>();
}

// (-1)^{|alpha|} on the flat index set.
RVector parity_signs(const IndexSet& index) {
  RVector s(static_cast<Eigen::Index>(index.size()));
  for (std::size_t k = 0; k < index.size(); ++k) s(static_cast<Eigen::Index>(k)) = (index.degree(k) % 2 == 0) ? 1.0 : -1.0;
  return s;
}

}  // namespace

WongCoeffMatrix expand(const GridFunction& a, int n_max, const ExpandOptions& options) {
  if (a.dims() != 2) throw ShapeMismatch("expand expects a phase-space grid function");
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  const GridSpec& spec = a.spec();
  const double h = spec.spacing();
  // c_{ab} = <a, A^{-1}(h_a (x) h_b)> = h^2 sum_{p,q} h_a(x_p) M(p,q) h_b(x_q), M the adjoint image of a.
  const GridFunction m = inverse_kernel_map_grid_adjoint(a);
  const CMatrix t = hermite_rows(n_max, spec);
  CMatrix c = (t * m.matrix()) * t.transpose();
  c *= h * h;
  WongCoeffMatrix out(IndexSet(1, n_max), std::move(c));

  const double total = a.l2_norm();
  if (total > 0.0) {
    const double kept = out.l2_norm();
    const double tail = std::max(0.0, total * total - kept * kept) / (total * total);
    if (tail > options.max_tail_fraction)
      throw TruncationError("expansion leaves mass outside the index cutoff, raise n_max", tail);
  }
  return out;
}

GridFunction synthesize_kernel(const KernelMatrix& k, const GridSpec& spec) {
  if (k.dim() != 1) throw UnsupportedRange("kernel synthesis on grids is implemented for d = 1 only");
  spec.validate();
  const CMatrix t = hermite_rows(k.n_max(), spec);
  GridFunction out(2, spec);
  out.matrix() = t.transpose() * k.entries() * t;
  return out;
}

GridFunction synthesize(const WongCoeffMatrix& c, const GridSpec& spec) {
  require_grid_d1(c, "synthesis");
  return inverse_kernel_map_grid(synthesize_kernel(kernel_map_A_coeff(c), spec), BoundaryPolicy{false, 0.0});
}

KernelMatrix kernel_map_A_coeff(const WongCoeffMatrix& c) { return KernelMatrix(c.index(), c.entries()); }

WongCoeffMatrix inverse_kernel_map_A_coeff(const KernelMatrix& k) { return WongCoeffMatrix(k.index(), k.entries()); }

WongCoeffMatrix twisted_convolution_coeff(const WongCoeffMatrix& a, const WongCoeffMatrix& b) {
  require_same_shape(a, b, "twisted convolution");
  return WongCoeffMatrix(a.index(), a.entries() * b.entries());
}

std::vector<GridFunction> twisted_convolution_grid(const GridFunction& a, std::span<const GridFunction> bs,
                                                   const BoundaryPolicy& policy) {
  if (a.dims() != 2) throw ShapeMismatch("twisted convolution expects phase-space grid functions");
  if (a.points() % 2 == 0) throw InvalidArgument("twisted convolution on a grid needs an odd number of points per axis");
  check_boundary(a, policy, "twisted convolution");
  for (const auto& b : bs) {
    require_same_grid(a, b, "twisted convolution");
    check_boundary(b, policy, "twisted convolution");
  }
  const GridSpec& spec = a.spec();
  const int n = spec.points;
  const int c = spec.center();
  const double h = spec.spacing();
  const auto nn = static_cast<Eigen::Index>(n) * n;
  const auto nb = static_cast<Eigen::Index>(bs.size());
  if (nb == 0) return {};

  // E(i, k) = exp(2 i x_i x_k); the phase of sigma(X, Y) = y xi - x eta is E(k, m) conj(E(i, l)).
  CMatrix e(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) e(i, k) = std::polar(1.0, 2.0 * spec.node(i) * spec.node(k));

  CMatrix bmat(nn, nb);
  for (Eigen::Index j = 0; j < nb; ++j)
    bmat.col(j) = Eigen::Map<const CVector>(bs[static_cast<std::size_t>(j)].values().data(), nn);

  const double scale = std::sqrt(2.0 / kPi) * h * h;
  CMatrix result(nn, nb);
  constexpr Eigen::Index kBlock = 128;
  const auto blocks = static_cast<std::size_t>((nn + kBlock - 1) / kBlock);
  detail::parallel_for(blocks, [&](std::size_t b0, std::size_t b1) {
    CMatrix rows(kBlock, nn);
    for (std::size_t blk = b0; blk < b1; ++blk) {
      const Eigen::Index r0 = static_cast<Eigen::Index>(blk) * kBlock;
      const Eigen::Index len = std::min(kBlock, nn - r0);
      rows.setZero();
      for (Eigen::Index r = 0; r < len; ++r) {
        const int i = static_cast<int>((r0 + r) / n);
        const int m = static_cast<int>((r0 + r) % n);
        for (int k = 0; k < n; ++k) {
          const int p = i - k + c;
          if (p < 0 || p >= n) continue;
          const Complex ekm = e(k, m);
          for (int l = 0; l < n; ++l) {
            const int q = m - l + c;
            if (q < 0 || q >= n) continue;
            rows(r, static_cast<Eigen::Index>(k) * n + l) = a(p, q) * ekm * std::conj(e(i, l));
          }
        }
      }
      result.middleRows(r0, len).noalias() = rows.topRows(len) * bmat;
    }
  });

  std::vector<GridFunction> out;
  out.reserve(bs.size());
  for (Eigen::Index j = 0; j < nb; ++j) {
    GridFunction g(2, spec);
    Eigen::Map<CVector>(g.values().data(), nn) = result.col(j) * scale;
    out.push_back(std::move(g));
  }
  return out;
}

GridFunction twisted_convolution_grid(const GridFunction& a, const GridFunction& b, const BoundaryPolicy& policy) {
  return std::move(twisted_convolution_grid(a, std::span<const GridFunction>(&b, 1), policy).front());
}

Complex twisted_pairing_grid(const GridFunction& a, const GridFunction& psi, const BoundaryPolicy& policy) {
  return inner_product(twisted_convolution_grid(a, psi, policy), psi);
}

WongCoeffMatrix symplectic_fourier_coeff(const WongCoeffMatrix& c) {
  return WongCoeffMatrix(c.index(), parity_signs(c.index()).asDiagonal() * c.entries());
}

KernelMatrix weyl_quantize(const WongCoeffMatrix& symbol) {
  const double scale = std::pow(2.0 * kPi, -0.5 * symbol.dim());
  return KernelMatrix(symbol.index(), (parity_signs(symbol.index()).asDiagonal() * symbol.entries()) * scale);
}

WongCoeffMatrix weyl_symbol(const KernelMatrix& op) {
  const double scale = std::pow(2.0 * kPi, 0.5 * op.dim());
  return WongCoeffMatrix(op.index(), (parity_signs(op.index()).asDiagonal() * op.entries()) * scale);
}

WongCoeffMatrix weyl_product(const WongCoeffMatrix& a, const WongCoeffMatrix& b) {
  require_same_shape(a, b, "Weyl product");
  const double scale = std::pow(2.0 * kPi, -0.5 * a.dim());
  return WongCoeffMatrix(a.index(), (a.entries() * (parity_signs(b.index()).asDiagonal() * b.entries())) * scale);
}

}  // namespace twc
