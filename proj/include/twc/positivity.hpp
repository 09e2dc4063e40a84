#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twc/grid.hpp"
#include "twc/hermite.hpp"
#include "twc/wong_matrix.hpp"

namespace twc {

enum class Flavor { Roumieu, Beurling, Indeterminate };
const char* to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

// ---------------------------------------------------------------- positivity

struct PositivityWitness {
  /// Unit vector v with v^* C v negative (or non-real for non-Hermitian C).
  CVector vector;
  /// v^* C v, which equals (a *_sigma psi, psi).
  Complex pairing;
  /// psi = sum_alpha v_alpha rho_{alpha, 0}.
  WongCoeffMatrix psi;
};

struct PositivityResult {
  bool positive = false;
  /// ||C - C^*||_F / ||C||_F.
  double hermitian_defect = 0.0;
  /// Smallest eigenvalue of the Hermitian part, relative to its spectral norm.
  double min_relative_eigenvalue = 0.0;
  std::optional<PositivityWitness> witness;
};

inline constexpr double kDefaultPsdTolerance = 1e-10;

/// a is positive semi-definite for *_sigma iff A a is a positive operator, i.e.
/// iff the coefficient matrix is Hermitian positive semi-definite.
PositivityResult is_positive_twisted(const WongCoeffMatrix& c, double tol = kDefaultPsdTolerance);

// ------------------------------------------------------------ planted elements

struct PlantedParams {
  int d = 1;
  int n_max = 48;
  int rank = 3;
  double s = 0.5;
  /// Decay rate r in |c_k| = exp(-r k^{1/(2s)}); NaN selects default_planted_rate.
  double rate = std::numeric_limits<double>::quiet_NaN();
  Flavor flavor = Flavor::Roumieu;
  std::uint64_t seed = 0;
  /// Only used to derive the default rate.
  int growth_horizon = 40;
};

/// Rate that puts the dominant index of (T_sigma^N a)(0,0) at N = horizon at
/// three quarters of the cutoff, so the growth sequence stays resolvable.
double default_planted_rate(double s, int n_max, int horizon);

struct PositiveElement {
  WongCoeffMatrix c;
  std::vector<HermiteCoeffVector> generators;
  double rate = 0.0;
};

/// C = sum_k v_k v_k^*, |v_k[alpha]| = exp(-r |alpha|^{1/(2s)}) with random phases
/// drawn deterministically from the seed.
PositiveElement random_positive_element(const PlantedParams& params);

/// Gram matrix sum_k f_k f_k^*.
WongCoeffMatrix gram(std::span<const HermiteCoeffVector> generators);

// --------------------------------------------------------- origin and traces

/// A complex number stored as log|z| and z/|z|; zero has log_abs = -inf.
struct LogComplex {
  double log_abs = -std::numeric_limits<double>::infinity();
  Complex phase{1.0, 0.0};

  bool is_zero() const noexcept { return log_abs == -std::numeric_limits<double>::infinity(); }
  Complex value() const;
};

/// rho_{a1,a2}(0,0) = (2/pi)^{d/2} delta_{a1,a2}.
double hermite_wong_origin(const PairIndex& alpha);

/// (T_sigma^N a)(0,0) = (2/pi)^{d/2} sum_alpha c_{alpha,alpha} (2|alpha| + d)^{2N},
/// accumulated in log domain.
LogComplex t_sigma_origin(const WongCoeffMatrix& c, int power);

struct TraceIdentity {
  double log_lhs = 0.0;  ///< log sum_k ||H^N f_k||^2
  double log_rhs = 0.0;  ///< log (pi/2)^{d/2} (T_sigma^N a)(0,0), a = sum A^{-1}(f_k (x) conj f_k)
  double relative_gap = 0.0;
};
TraceIdentity trace_identity_check(std::span<const HermiteCoeffVector> generators, int power);

// ---------------------------------------------------------- decay classifier

/// Least-squares fit of log y = intercept - rate * w^p over envelope points,
/// profiled over the exponent p.
struct EnvelopeFit {
  bool ok = false;
  double exponent = 0.0;
  double rate = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS residual in log|c|
  int n_points = 0;
};
EnvelopeFit fit_envelope(std::span<const double> weights, std::span<const double> log_values);

struct DecayFit {
  double s_hat = 0.0;
  double r_hat = 0.0;
  Flavor flavor = Flavor::Indeterminate;
  double residual = 0.0;
  int n_points = 0;
  /// Fit against the total degree |alpha| = |alpha1| + |alpha2|; s = 1/(2p).
  EnvelopeFit total_degree;
  /// Fit against <alpha1><alpha2>; s = 1/(4p).
  EnvelopeFit product_weight;
  double s_product = 0.0;
  /// "total_degree" or "product_weight": the weight with the smaller residual.
  std::string preferred_weight;
  std::string note;
};

/// Envelope regression over per-degree shell maxima of |c_alpha|, restricted to
/// the shells |alpha| <= n_max that the hyper-rectangle holds completely.
DecayFit classify_decay(const WongCoeffMatrix& c);

// ----------------------------------------------------------- growth sequence

enum class GrowthNorm { Origin, Sup };
const char* to_string(GrowthNorm n);

inline constexpr int kMaxSupPower = 12;

struct GrowthOptions {
  GrowthNorm norm = GrowthNorm::Origin;
  /// First N used in the fit; negative selects N_max / 2 (all N when N_max < 8).
  int fit_from = -1;
  GridSpec grid = kDefaultGrid;
};

struct GrowthSequence {
  GrowthNorm norm = GrowthNorm::Origin;
  /// log |g_N| for N = 0..N_max; -inf for g_N = 0.
  std::vector<double> values_log;
  bool fitted = false;
  double log_h = 0.0;
  double s = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  int fit_from = 0;
  std::string note;
};

/// Fits log g_N ~ c + 2N log h + 4s log N! by least squares over N >= fit_from.
void fit_growth(GrowthSequence& seq, int fit_from);

/// Origin mode uses t_sigma_origin (exact). Sup mode synthesizes T_sigma^N a on
/// the grid and takes the max modulus; N_max > 12 throws UnsupportedRange.
GrowthSequence growth_sequence(const WongCoeffMatrix& c, int n_upper, const GrowthOptions& options = {});

// -------------------------------------------------------------- verification

enum class VerifyStatus { Pass, Fail, Degenerate, Refused };
const char* to_string(VerifyStatus s);

struct VerifyOptions {
  int N_max = 40;
  double s_tolerance = 0.15;
  double psd_tolerance = kDefaultPsdTolerance;
  GrowthOptions growth;
};

struct RegularityReport {
  VerifyStatus status = VerifyStatus::Fail;
  bool pass = false;
  std::optional<double> planted_s;
  std::optional<double> planted_rate;
  std::optional<std::uint64_t> seed;
  std::optional<int> rank;
  int d = 1;
  int n_max = 0;
  int N_max = 0;
  PositivityResult positivity;
  GrowthSequence growth;
  DecayFit decay;
  std::vector<std::string> notes;
};

/// Checks positivity, then the growth of (T_sigma^N a)(0,0) against the
/// coefficient decay: both fitted orders must agree (and match planted_s when given).
RegularityReport verify_regularity(const WongCoeffMatrix& c, std::optional<double> planted_s,
                                   const VerifyOptions& options = {});

/// Generates a planted positive element and runs verify_regularity on it.
RegularityReport verify_regularity_theorem(const PlantedParams& params, const VerifyOptions& options = {});

struct WeylReport {
  bool pass = false;
  /// Positivity of Op^w(a) in the Hermite basis.
  PositivityResult operator_positivity;
  /// The regularity pipeline run on F_sigma a.
  RegularityReport regularity;
};

/// Op^w(a) >= 0 plus growth of (T_sigma^N F_sigma a)(0,0) => a regular.
WeylReport verify_weyl_positive(const WongCoeffMatrix& symbol, std::optional<double> planted_s,
                                const VerifyOptions& options = {});

/// Symbol a = F_sigma b of a planted positive element b, so Op^w(a) >= 0.
WongCoeffMatrix planted_weyl_symbol(const PlantedParams& params);

}  // namespace twc
