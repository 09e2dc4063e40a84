#include "twc/hermite.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "twc/errors.hpp"

namespace twc {

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);
const double kPiQuarter = std::pow(kPi, -0.25);

double scaled_value(double p, double log_scale) {
  if (p == 0.0) return 0.0;
  const double v = std::exp(std::log(std::abs(p)) + log_scale);
  return p < 0 ? -v : v;
}

}  // namespace

void hermite_eval_all(int k_max, double x, std::span<double> out) {
  if (k_max < 0) throw InvalidArgument("Hermite order must be non-negative");
  if (out.size() < static_cast<std::size_t>(k_max) + 1) throw InvalidArgument("output span too short");
  // h_k(x) = p_k * exp(log_scale); p carries the recurrence, log_scale starts at -x^2/2.
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = kPiQuarter;
  out[0] = scaled_value(cur, log_scale);
  for (int k = 0; k < k_max; ++k) {
    const double next = x * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
    out[static_cast<std::size_t>(k) + 1] = scaled_value(cur, log_scale);
  }
}

double hermite_eval(int k, double x) {
  if (k < 0) throw InvalidArgument("Hermite order must be non-negative");
  std::vector<double> v(static_cast<std::size_t>(k) + 1);
  hermite_eval_all(k, x, v);
  return v.back();
}

double hermite_eval(const MultiIndex& alpha, std::span<const double> x) {
  if (static_cast<int>(x.size()) != alpha.dim()) throw InvalidArgument("point dimension does not match multi-index");
  double p = 1.0;
  for (int j = 0; j < alpha.dim(); ++j) p *= hermite_eval(alpha[j], x[static_cast<std::size_t>(j)]);
  return p;
}

RMatrix hermite_table(int k_max, std::span<const double> xs) {
  RMatrix t(k_max + 1, static_cast<Eigen::Index>(xs.size()));
  std::vector<double> col(static_cast<std::size_t>(k_max) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    hermite_eval_all(k_max, xs[i], col);
    for (int k = 0; k <= k_max; ++k) t(k, static_cast<Eigen::Index>(i)) = col[static_cast<std::size_t>(k)];
  }
  return t;
}

QuadratureRule gauss_hermite_rule(int n) {
  if (n < 1 || n > 512) throw InvalidArgument("Gauss-Hermite node count must be in [1, 512]");
  QuadratureRule rule;
  rule.exact_degree = 2 * n - 1;
  if (n == 1) {
    rule.nodes = {0.0};
    rule.weights = {std::sqrt(kPi)};
    rule.scaled_weights = {std::sqrt(kPi)};
    return rule;
  }

  // Golub-Welsch for the nodes, then Newton on h_n using h_n' = sqrt(2n) h_{n-1} - x h_n.
  RVector diag = RVector::Zero(n);
  RVector sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> x(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(x.begin(), x.end());

  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  for (auto& xi : x) {
    for (int it = 0; it < 8; ++it) {
      hermite_eval_all(n, xi, h);
      const double hn = h[static_cast<std::size_t>(n)];
      const double dn = std::sqrt(2.0 * n) * h[static_cast<std::size_t>(n) - 1] - xi * hn;
      if (dn == 0.0) break;
      const double step = hn / dn;
      xi -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(xi))) break;
    }
  }
  // Exact symmetry about the origin.
  for (int i = 0; i < n / 2; ++i) {
    const double m = 0.5 * (x[static_cast<std::size_t>(n - 1 - i)] - x[static_cast<std::size_t>(i)]);
    x[static_cast<std::size_t>(i)] = -m;
    x[static_cast<std::size_t>(n - 1 - i)] = m;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;

  rule.nodes = x;
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.scaled_weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    hermite_eval_all(n - 1, x[ui], std::span<double>(h.data(), static_cast<std::size_t>(n)));
    const double hm = h[static_cast<std::size_t>(n) - 1];
    rule.scaled_weights[ui] = 1.0 / (n * hm * hm);
    rule.weights[ui] = rule.scaled_weights[ui] * std::exp(-x[ui] * x[ui]);
  }
  return rule;
}

HermiteCoeffVector::HermiteCoeffVector(int d, int n_max)
    : index_(d, n_max), coeffs_(CVector::Zero(static_cast<Eigen::Index>(index_.size()))) {}

HermiteCoeffVector::HermiteCoeffVector(IndexSet index, CVector coeffs) : index_(index), coeffs_(std::move(coeffs)) {
  if (static_cast<std::size_t>(coeffs_.size()) != index_.size())
    throw ShapeMismatch("coefficient count does not match the index set");
}

HermiteCoeffVector HermiteCoeffVector::unit(int d, int n_max, const MultiIndex& alpha) {
  HermiteCoeffVector v(d, n_max);
  v[alpha] = 1.0;
  return v;
}

NodalSamples sample_at_nodes(int d, const QuadratureRule& rule,
                             const std::function<Complex(std::span<const double>)>& f) {
  if (d < 1 || d > 2) throw InvalidArgument("dimension d must be 1 or 2");
  NodalSamples s{d, rule, {}};
  const std::size_t n = rule.size();
  if (d == 1) {
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double p[1] = {rule.nodes[i]};
      s.values[i] = f(p);
    }
  } else {
    s.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double p[2] = {rule.nodes[i], rule.nodes[j]};
        s.values[i * n + j] = f(p);
      }
  }
  return s;
}

HermiteCoeffVector project_to_hermite(const NodalSamples& f, int n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  const std::size_t n = f.rule.size();
  if (n < static_cast<std::size_t>(n_max) + 1)
    throw ResolutionError("quadrature rule too small for the requested cutoff", static_cast<std::size_t>(n_max) + 1);
  const auto ni = static_cast<Eigen::Index>(n);
  // TW(k, i) = h_k(x_i) * w_i e^{x_i^2}
  RMatrix tw = hermite_table(n_max, f.rule.nodes);
  for (Eigen::Index i = 0; i < ni; ++i) tw.col(i) *= f.rule.scaled_weights[static_cast<std::size_t>(i)];
  const CMatrix twc = tw.cast<Complex>();
  HermiteCoeffVector out(f.d, n_max);
  if (f.d == 1) {
    if (f.values.size() != n) throw ShapeMismatch("nodal sample count mismatch");
    const Eigen::Map<const CVector> v(f.values.data(), ni);
    out.coeffs() = twc * v;
  } else {
    if (f.values.size() != n * n) throw ShapeMismatch("nodal sample count mismatch");
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> v(f.values.data(), ni, ni);
    const RowMajor c = twc * v * twc.transpose();
    out.coeffs() = Eigen::Map<const CVector>(c.data(), c.size());
  }
  return out;
}

HermiteCoeffVector project_to_hermite(const std::function<Complex(std::span<const double>)>& f, int d, int n_max) {
  const int nodes = std::min(512, 4 * (n_max + 1));
  return project_to_hermite(sample_at_nodes(d, gauss_hermite_rule(nodes), f), n_max);
}

HermiteCoeffVector project_to_hermite(const GridFunction& f, int n_max) {
  if (f.dims() != 1) throw UnsupportedRange("uniform-grid projection is implemented for d = 1");
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  const auto& spec = f.spec();
  const double turning = std::sqrt(2.0 * n_max + 1.0);
  const double needed_half_width = turning + 4.0;
  const double needed_spacing = kPi / (2.0 * turning + 6.0);
  if (spec.half_width < needed_half_width || spec.spacing() > needed_spacing) {
    const double L = std::max(spec.half_width, needed_half_width);
    throw ResolutionError("grid cannot resolve Hermite functions up to the cutoff",
                          static_cast<std::size_t>(std::ceil(2.0 * L / needed_spacing)) + 1);
  }
  const auto x = spec.nodes();
  const RMatrix t = hermite_table(n_max, x);
  const Eigen::Map<const CVector> v(f.values().data(), static_cast<Eigen::Index>(f.size()));
  HermiteCoeffVector out(1, n_max);
  out.coeffs() = t.cast<Complex>() * v * spec.spacing();
  return out;
}

NodalSamples synthesize_at_nodes(const HermiteCoeffVector& f, const QuadratureRule& rule) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  const CMatrix t = hermite_table(f.n_max(), rule.nodes).cast<Complex>();
  NodalSamples s{f.dim(), rule, {}};
  if (f.dim() == 1) {
    const CVector v = t.transpose() * f.coeffs();
    s.values.assign(v.data(), v.data() + n);
  } else {
    const auto side = static_cast<Eigen::Index>(f.n_max() + 1);
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> c(f.coeffs().data(), side, side);
    const RowMajor v = t.transpose() * c * t;
    s.values.assign(v.data(), v.data() + v.size());
  }
  return s;
}

GridFunction synthesize_on_grid(const HermiteCoeffVector& f, const GridSpec& spec) {
  if (f.dim() != 1) throw UnsupportedRange("grid synthesis is implemented for d = 1");
  const auto x = spec.nodes();
  const CVector v = hermite_table(f.n_max(), x).cast<Complex>().transpose() * f.coeffs();
  return GridFunction(1, spec, std::vector<Complex>(v.data(), v.data() + v.size()));
}

HermiteCoeffVector apply_H_coeff(const HermiteCoeffVector& f) {
  HermiteCoeffVector out = f;
  const int d = f.dim();
  for (std::size_t k = 0; k < f.index().size(); ++k)
    out.coeffs()(static_cast<Eigen::Index>(k)) *= static_cast<double>(2 * f.index().degree(k) + d);
  return out;
}

GridFunction apply_H_grid(const GridFunction& f) {
  if (f.dims() != 1) throw UnsupportedRange("grid harmonic oscillator is implemented for d = 1");
  const int n = f.points();
  const double h = f.spec().spacing();
  GridFunction out(1, f.spec());
  auto at = [&](int i) { return (i < 0 || i >= n) ? Complex{} : f(i); };
  for (int i = 0; i < n; ++i) {
    const double x = f.spec().node(i);
    out(i) = x * x * f(i) - (at(i + 1) - 2.0 * f(i) + at(i - 1)) / (h * h);
  }
  return out;
}

}  // namespace twc
