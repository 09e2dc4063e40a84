#include "twc/positivity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "twc/errors.hpp"
#include "twc/oscillators.hpp"
#include "twc/twisted_algebra.hpp"

namespace twc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEnvelopeFloor = 1e-300;

// log sum_k exp(a_k) z_k for unit phases z_k.
LogComplex log_sum(const std::vector<double>& log_abs, const std::vector<Complex>& phases) {
  double top = kNegInf;
  for (double v : log_abs) top = std::max(top, v);
  LogComplex out;
  if (top == kNegInf) return out;
  Complex s{};
  for (std::size_t k = 0; k < log_abs.size(); ++k) {
    if (log_abs[k] == kNegInf) continue;
    s += std::exp(log_abs[k] - top) * phases[k];
  }
  const double m = std::abs(s);
  if (m == 0.0) return out;
  out.log_abs = top + std::log(m);
  out.phase = s / m;
  return out;
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::Roumieu: return "roumieu";
    case Flavor::Beurling: return "beurling";
    case Flavor::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Flavor parse_flavor(const std::string& s) {
  const std::string v = lower(s);
  if (v == "roumieu") return Flavor::Roumieu;
  if (v == "beurling") return Flavor::Beurling;
  if (v == "indeterminate") return Flavor::Indeterminate;
  throw InvalidArgument("unknown flavor '" + s + "' (expected roumieu or beurling)");
}

const char* to_string(GrowthNorm n) { return n == GrowthNorm::Origin ? "origin" : "sup"; }

const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Pass: return "pass";
    case VerifyStatus::Fail: return "fail";
    case VerifyStatus::Degenerate: return "degenerate";
    case VerifyStatus::Refused: return "refused";
  }
  return "fail";
}

Complex LogComplex::value() const {
  if (is_zero()) return {};
  return std::exp(log_abs) * phase;
}

PositivityResult is_positive_twisted(const WongCoeffMatrix& c, double tol) {
  const CMatrix& m = c.entries();
  if (m.rows() != m.cols()) throw ShapeMismatch("positivity test needs a square coefficient matrix");
  PositivityResult res;
  const double norm = m.norm();
  if (norm == 0.0) {
    res.positive = true;
    return res;
  }
  res.hermitian_defect = (m - m.adjoint()).norm() / norm;
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
  const RVector& ev = eig.eigenvalues();
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  res.min_relative_eigenvalue = spectral > 0.0 ? ev(0) / spectral : 0.0;
  const bool hermitian = res.hermitian_defect <= tol;
  const bool psd = res.min_relative_eigenvalue >= -tol;
  res.positive = hermitian && psd;
  if (res.positive) return res;

  CVector v;
  if (!psd) {
    v = eig.eigenvectors().col(0);
  } else {
    // Hermitian part is PSD: the skew part makes v^* C v non-real.
    const CMatrix skew = (m - m.adjoint()) * Complex(0.0, -0.5);
    Eigen::SelfAdjointEigenSolver<CMatrix> se(skew);
    const auto k = se.eigenvalues().size();
    v = std::abs(se.eigenvalues()(0)) >= std::abs(se.eigenvalues()(k - 1)) ? se.eigenvectors().col(0)
                                                                             : se.eigenvectors().col(k - 1);
  }
  PositivityWitness w{v, v.dot(m * v), WongCoeffMatrix(c.index(), CMatrix::Zero(m.rows(), m.cols()))};
  w.psi.entries().col(static_cast<Eigen::Index>(c.index().flat(MultiIndex::zero(c.dim())))) = v;
  res.witness = std::move(w);
  return res;
}

double default_planted_rate(double s, int n_max, int horizon) {
  if (!(s > 0.0)) throw InvalidArgument("planted order s must be positive");
  const double p = 1.0 / (2.0 * s);
  const double reach = std::max(1.0, 0.75 * n_max);
  return std::max(1, horizon) / (p * std::pow(reach, p));
}

WongCoeffMatrix gram(std::span<const HermiteCoeffVector> generators) {
  if (generators.empty()) throw InvalidArgument("gram needs at least one generator");
  const IndexSet& index = generators.front().index();
  CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(index.size()));
  for (const auto& f : generators) {
    if (!(f.index() == index)) throw ShapeMismatch("generators have different index sets");
    c.noalias() += f.coeffs() * f.coeffs().adjoint();
  }
  return WongCoeffMatrix(index, std::move(c));
}

PositiveElement random_positive_element(const PlantedParams& params) {
  if (params.rank < 1) throw InvalidArgument("rank must be at least 1");
  if (!(params.s > 0.0)) throw InvalidArgument("planted order s must be positive");
  if (params.n_max < 0) throw InvalidArgument("n_max must be non-negative");
  const double rate = std::isnan(params.rate) ? default_planted_rate(params.s, params.n_max, params.growth_horizon)
                                              : params.rate;
  if (!(rate > 0.0)) throw InvalidArgument("planted rate must be positive");
  const IndexSet index(params.d, params.n_max);
  const double p = 1.0 / (2.0 * params.s);
  std::mt19937_64 rng(params.seed);
  PositiveElement out;
  out.rate = rate;
  for (int k = 0; k < params.rank; ++k) {
    HermiteCoeffVector f(params.d, params.n_max);
    for (std::size_t a = 0; a < index.size(); ++a) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double mag = std::exp(-rate * std::pow(static_cast<double>(index.degree(a)), p));
      f.coeffs()(static_cast<Eigen::Index>(a)) = std::polar(mag, 2.0 * kPi * u);
    }
    out.generators.push_back(std::move(f));
  }
  out.c = gram(out.generators);
  return out;
}

double hermite_wong_origin(const PairIndex& alpha) {
  return alpha.first == alpha.second ? std::pow(2.0 / kPi, 0.5 * alpha.dim()) : 0.0;
}

LogComplex t_sigma_origin(const WongCoeffMatrix& c, int power) {
  if (power < 0) throw InvalidArgument("power must be non-negative");
  const IndexSet& index = c.index();
  std::vector<double> logs;
  std::vector<Complex> phases;
  for (std::size_t a = 0; a < index.size(); ++a) {
    const Complex v = c.entries()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
    if (v == Complex{}) continue;
    logs.push_back(std::log(std::abs(v)) + 2.0 * power * std::log(2.0 * index.degree(a) + index.dim()));
    phases.push_back(v / std::abs(v));
  }
  LogComplex out = log_sum(logs, phases);
  if (!out.is_zero()) out.log_abs += 0.5 * index.dim() * std::log(2.0 / kPi);
  return out;
}

TraceIdentity trace_identity_check(std::span<const HermiteCoeffVector> generators, int power) {
  if (generators.empty()) throw InvalidArgument("trace identity needs at least one generator");
  if (power < 0) throw InvalidArgument("power must be non-negative");
  std::vector<double> logs;
  for (const auto& f : generators) {
    for (std::size_t a = 0; a < f.index().size(); ++a) {
      const double m = std::abs(f.coeffs()(static_cast<Eigen::Index>(a)));
      if (m == 0.0) continue;
      logs.push_back(2.0 * std::log(m) + 2.0 * power * std::log(2.0 * f.index().degree(a) + f.dim()));
    }
  }
  TraceIdentity t;
  t.log_lhs = log_sum(logs, std::vector<Complex>(logs.size(), Complex{1.0, 0.0})).log_abs;
  const LogComplex origin = t_sigma_origin(gram(generators), power);
  t.log_rhs = origin.log_abs + 0.5 * generators.front().dim() * std::log(kPi / 2.0);
  if (t.log_lhs == kNegInf && t.log_rhs == kNegInf) {
    t.relative_gap = 0.0;
  } else {
    t.relative_gap = std::abs(std::expm1(t.log_rhs - t.log_lhs));
  }
  return t;
}

// ------------------------------------------------------------------ decay

namespace {

struct ProfilePoint {
  double residual;
  double intercept;
  double rate;
};

ProfilePoint profile_at(std::span<const double> w, std::span<const double> y, double p) {
  // y = A - r w^p, linear least squares in (A, r).
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    design(k, 0) = 1.0;
    design(k, 1) = -std::pow(w[static_cast<std::size_t>(k)], p);
    rhs(k) = y[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
  const double rms = std::sqrt((design * sol - rhs).squaredNorm() / static_cast<double>(n));
  return {rms, sol(0), sol(1)};
}

}  // namespace

EnvelopeFit fit_envelope(std::span<const double> weights, std::span<const double> log_values) {
  if (weights.size() != log_values.size()) throw ShapeMismatch("envelope weights and values differ in length");
  EnvelopeFit fit;
  fit.n_points = static_cast<int>(weights.size());
  if (weights.size() < 3) return fit;
  constexpr double kLo = 0.1, kHi = 8.0;
  constexpr int kGrid = 400;
  double best_p = kLo;
  double best_res = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kGrid; ++k) {
    const double p = kLo * std::pow(kHi / kLo, static_cast<double>(k) / kGrid);
    const double r = profile_at(weights, log_values, p).residual;
    if (r < best_res) {
      best_res = r;
      best_p = p;
    }
  }
  const double step = std::pow(kHi / kLo, 1.0 / kGrid);
  double a = std::max(kLo, best_p / step), b = std::min(kHi, best_p * step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = profile_at(weights, log_values, x1).residual, f2 = profile_at(weights, log_values, x2).residual;
  for (int it = 0; it < 80 && b - a > 1e-12 * b; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = profile_at(weights, log_values, x1).residual;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = profile_at(weights, log_values, x2).residual;
    }
  }
  double p = 0.5 * (a + b);
  ProfilePoint pp = profile_at(weights, log_values, p);
  if (best_res < pp.residual) {
    p = best_p;
    pp = profile_at(weights, log_values, p);
  }
  fit.exponent = p;
  fit.rate = pp.rate;
  fit.intercept = pp.intercept;
  fit.residual = pp.residual;
  fit.ok = std::isfinite(pp.rate) && pp.rate > 0.0;
  return fit;
}

DecayFit classify_decay(const WongCoeffMatrix& c) {
  DecayFit out;
  const IndexSet& index = c.index();
  const auto n = static_cast<std::size_t>(c.size());
  const int n_max = c.n_max();
  std::map<int, double> by_degree;
  std::map<long, double> by_product;
  int nonzero = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      const double v = std::abs(c.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)));
      if (!(v >= kEnvelopeFloor)) continue;
      ++nonzero;
      const int m = index.degree(r) + index.degree(s);
      if (m >= 1 && m <= n_max) {
        auto [it, fresh] = by_degree.try_emplace(m, v);
        if (!fresh) it->second = std::max(it->second, v);
      }
      const long w = (1L + index.degree(r)) * (1L + index.degree(s));
      if (w >= 2 && w <= n_max + 1) {
        auto [it, fresh] = by_product.try_emplace(w, v);
        if (!fresh) it->second = std::max(it->second, v);
      }
    }
  }
  std::vector<double> w_deg, y_deg, w_prod, y_prod;
  int dyadic_shells = 0, last_shell = -1;
  for (const auto& [m, v] : by_degree) {
    w_deg.push_back(m);
    y_deg.push_back(std::log(v));
    const int shell = static_cast<int>(std::floor(std::log2(static_cast<double>(m))));
    if (shell != last_shell) {
      ++dyadic_shells;
      last_shell = shell;
    }
  }
  for (const auto& [w, v] : by_product) {
    w_prod.push_back(static_cast<double>(w));
    y_prod.push_back(std::log(v));
  }

  out.n_points = static_cast<int>(w_deg.size());
  if (nonzero < 12 || dyadic_shells < 3) {
    out.note = "too few nonzero coefficients across index shells; finite expansions sit in every class";
    return out;
  }
  out.total_degree = fit_envelope(w_deg, y_deg);
  out.product_weight = fit_envelope(w_prod, y_prod);
  if (out.product_weight.ok) out.s_product = 1.0 / (4.0 * out.product_weight.exponent);
  if (!out.total_degree.ok) {
    out.note = "envelope does not decay; no Pilipovic order fits";
    return out;
  }
  out.s_hat = 1.0 / (2.0 * out.total_degree.exponent);
  out.r_hat = out.total_degree.rate;
  out.residual = out.total_degree.residual;
  out.flavor = Flavor::Roumieu;
  out.preferred_weight = (out.product_weight.ok && out.product_weight.residual < out.total_degree.residual)
                             ? "product_weight"
                             : "total_degree";
  out.note = "single-rate fit (Roumieu); Beurling membership is not decidable from one truncation";
  return out;
}

// ----------------------------------------------------------------- growth

void fit_growth(GrowthSequence& seq, int fit_from) {
  const int n_upper = static_cast<int>(seq.values_log.size()) - 1;
  if (fit_from < 0) fit_from = n_upper >= 8 ? n_upper / 2 : 0;
  seq.fit_from = fit_from;
  seq.fitted = false;
  std::vector<int> ns;
  for (int N = fit_from; N <= n_upper; ++N) {
    if (!std::isfinite(seq.values_log[static_cast<std::size_t>(N)])) {
      seq.note = "growth sequence vanishes or is not finite; no fit";
      return;
    }
    ns.push_back(N);
  }
  if (ns.size() < 4) {
    seq.note = "fewer than four points in the fit window";
    return;
  }
  const auto m = static_cast<Eigen::Index>(ns.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double N = ns[static_cast<std::size_t>(k)];
    design(k, 0) = 1.0;
    design(k, 1) = 2.0 * N;
    design(k, 2) = 4.0 * std::lgamma(N + 1.0);
    rhs(k) = seq.values_log[static_cast<std::size_t>(ns[static_cast<std::size_t>(k)])];
  }
  const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
  seq.intercept = sol(0);
  seq.log_h = sol(1);
  seq.s = sol(2);
  seq.residual = std::sqrt((design * sol - rhs).squaredNorm() / static_cast<double>(m));
  seq.fitted = true;
}

GrowthSequence growth_sequence(const WongCoeffMatrix& c, int n_upper, const GrowthOptions& options) {
  if (n_upper < 4) throw InvalidArgument("growth sequence needs N_max >= 4");
  GrowthSequence seq;
  seq.norm = options.norm;
  if (options.norm == GrowthNorm::Origin) {
    bool sign_change = false;
    for (int N = 0; N <= n_upper; ++N) {
      const LogComplex g = t_sigma_origin(c, N);
      seq.values_log.push_back(g.log_abs);
      if (!g.is_zero() && std::abs(g.phase - Complex{1.0, 0.0}) > 1e-9) sign_change = true;
    }
    fit_growth(seq, options.fit_from);
    if (sign_change) seq.note += (seq.note.empty() ? "" : "; ") + std::string("origin values are not all positive");
    return seq;
  }
  if (n_upper > kMaxSupPower) throw UnsupportedRange("sup-norm growth is limited to N_max <= 12");
  if (c.dim() != 1) throw UnsupportedRange("sup-norm growth uses phase-space grids, d = 1 only");
  WongCoeffMatrix t = c;
  for (int N = 0; N <= n_upper; ++N) {
    if (N > 0) t = apply_T_sigma_coeff(t, 1);
    const double m = synthesize(t, options.grid).max_abs();
    seq.values_log.push_back(m > 0.0 ? std::log(m) : kNegInf);
  }
  fit_growth(seq, options.fit_from);
  return seq;
}

// ----------------------------------------------------------- verification

RegularityReport verify_regularity(const WongCoeffMatrix& c, std::optional<double> planted_s,
                                   const VerifyOptions& options) {
  RegularityReport rep;
  rep.planted_s = planted_s;
  rep.d = c.dim();
  rep.n_max = c.n_max();
  rep.N_max = options.N_max;
  rep.positivity = is_positive_twisted(c, options.psd_tolerance);
  if (!rep.positivity.positive) {
    rep.status = VerifyStatus::Refused;
    rep.notes.emplace_back("input is not positive for the twisted convolution; the theorem does not apply");
    return rep;
  }
  rep.growth = growth_sequence(c, options.N_max, options.growth);
  rep.decay = classify_decay(c);
  if (rep.decay.flavor == Flavor::Indeterminate) {
    rep.status = VerifyStatus::Degenerate;
    rep.pass = true;
    rep.notes.emplace_back("finite or too sparse expansion: " + rep.decay.note);
    return rep;
  }
  if (!rep.growth.fitted) {
    rep.status = VerifyStatus::Fail;
    rep.notes.emplace_back("growth fit failed: " + rep.growth.note);
    return rep;
  }
  const double tol = options.s_tolerance;
  bool ok = std::abs(rep.growth.s - rep.decay.s_hat) <= tol;
  if (!ok) rep.notes.emplace_back("growth and decay orders disagree");
  if (planted_s) {
    if (std::abs(rep.growth.s - *planted_s) > tol) {
      ok = false;
      rep.notes.emplace_back("growth order misses the planted order");
    }
    if (std::abs(rep.decay.s_hat - *planted_s) > tol) {
      ok = false;
      rep.notes.emplace_back("decay order misses the planted order");
    }
  }
  rep.pass = ok;
  rep.status = ok ? VerifyStatus::Pass : VerifyStatus::Fail;
  return rep;
}

RegularityReport verify_regularity_theorem(const PlantedParams& params, const VerifyOptions& options) {
  PlantedParams p = params;
  p.growth_horizon = options.N_max;
  if (std::isnan(params.rate)) p.rate = default_planted_rate(p.s, p.n_max, p.growth_horizon);
  const PositiveElement e = random_positive_element(p);
  RegularityReport rep = verify_regularity(e.c, p.s, options);
  rep.planted_rate = e.rate;
  rep.seed = p.seed;
  rep.rank = p.rank;
  return rep;
}

WeylReport verify_weyl_positive(const WongCoeffMatrix& symbol, std::optional<double> planted_s,
                                const VerifyOptions& options) {
  WeylReport rep;
  const KernelMatrix op = weyl_quantize(symbol);
  rep.operator_positivity = is_positive_twisted(WongCoeffMatrix(op.index(), op.entries()), options.psd_tolerance);
  if (!rep.operator_positivity.positive) {
    rep.regularity.status = VerifyStatus::Refused;
    rep.regularity.planted_s = planted_s;
    rep.regularity.d = symbol.dim();
    rep.regularity.n_max = symbol.n_max();
    rep.regularity.N_max = options.N_max;
    rep.regularity.positivity = rep.operator_positivity;
    rep.regularity.notes.emplace_back("Weyl operator is not positive semi-definite");
    return rep;
  }
  rep.regularity = verify_regularity(symplectic_fourier_coeff(symbol), planted_s, options);
  rep.pass = rep.regularity.pass;
  return rep;
}

WongCoeffMatrix planted_weyl_symbol(const PlantedParams& params) {
  return symplectic_fourier_coeff(random_positive_element(params).c);
}

}  // namespace twc
