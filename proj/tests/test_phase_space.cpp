#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "twc/errors.hpp"
#include "twc/hermite.hpp"
#include "twc/phase_space.hpp"
#include "twc/twisted_algebra.hpp"

using namespace twc;

namespace {

PairIndex pi1(int a, int b) { return PairIndex(MultiIndex{a}, MultiIndex{b}); }

const GridSpec kOdd{8.0, 257};

}  // namespace

TEST_CASE("Wigner of h0 is the Gaussian sqrt(2/pi) exp(-x^2 - xi^2)") {
  const GridFunction w = wigner(sample_hermite(0, kOdd), sample_hermite(0, kOdd));
  double worst = 0.0;
  for (int i = 0; i < kOdd.points; i += 3)
    for (int j = 0; j < kOdd.points; j += 3) {
      const double x = kOdd.node(i), xi = kOdd.node(j);
      worst = std::max(worst, std::abs(w(i, j) - std::sqrt(2.0 / kPi) * std::exp(-x * x - xi * xi)));
    }
  CHECK(worst < 1e-12);
  CHECK(w(kOdd.center(), kOdd.center()).real() == doctest::Approx(0.7978845608).epsilon(1e-10));
  CHECK(w.l2_norm() == doctest::Approx(1.0).epsilon(1e-10));

  // Closed form cross-checked by the point quadrature at a finer step.
  CHECK(std::abs(hermite_wong_at(pi1(0, 0), 0.7, -0.4) - std::sqrt(2.0 / kPi) * std::exp(-0.49 - 0.16)) < 1e-12);
}

TEST_CASE("Wigner orthogonality for h0, h1") {
  const GridFunction w00 = wigner(sample_hermite(0, kDefaultGrid), sample_hermite(0, kDefaultGrid));
  const GridFunction w01 = wigner(sample_hermite(0, kDefaultGrid), sample_hermite(1, kDefaultGrid));
  CHECK(std::abs(inner_product(w01, w01) - 1.0) < 1e-10);
  CHECK(std::abs(inner_product(w00, w01)) < 1e-12);
}

TEST_CASE("Hermite-Wong functions at the origin") {
  CHECK(std::abs(hermite_wong_at(pi1(0, 0), 0.0, 0.0) - std::sqrt(2.0 / kPi)) < 1e-12);
  CHECK(std::abs(hermite_wong_at(pi1(1, 0), 0.0, 0.0)) < 1e-14);
  CHECK(std::abs(hermite_wong_at(pi1(3, 3), 0.0, 0.0) - std::sqrt(2.0 / kPi)) < 1e-12);
  const GridFunction r = hermite_wong_eval(pi1(2, 2), kOdd);
  CHECK(std::abs(r(kOdd.center(), kOdd.center()) - std::sqrt(2.0 / kPi)) < 1e-10);
  // Grid samples agree with the pointwise quadrature off the origin.
  const GridFunction r31 = hermite_wong_eval(pi1(3, 1), kOdd);
  CHECK(std::abs(r31(140, 100) - hermite_wong_at(pi1(3, 1), kOdd.node(140), kOdd.node(100))) < 1e-10);
}

TEST_CASE("Hermite-Wong functions are orthonormal on the grid") {
  std::vector<GridFunction> rho;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) rho.push_back(hermite_wong_eval(pi1(a, b), kDefaultGrid));
  double worst = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p)
    for (std::size_t q = p; q < rho.size(); ++q)
      worst = std::max(worst, std::abs(inner_product(rho[p], rho[q]) - Complex(p == q ? 1.0 : 0.0)));
  CHECK(worst < 1e-6);
}

TEST_CASE("symplectic Fourier eigenvalues and involution") {
  for (auto [a, b] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{1, 3}, std::pair{4, 2}}) {
    const GridFunction r = hermite_wong_eval(pi1(a, b), kDefaultGrid);
    const double sign = a % 2 == 0 ? 1.0 : -1.0;
    const GridFunction f = symplectic_fourier(r);
    CHECK(oracle::rel_gap(f, Complex(sign) * r) < 1e-6);
    CHECK(oracle::rel_gap(symplectic_fourier(f, BoundaryPolicy{false, 0.0}), r) < 1e-8);
  }
}

TEST_CASE("kernel map A on Hermite-Wong functions") {
  for (auto [a, b] : {std::pair{0, 0}, std::pair{2, 1}, std::pair{3, 5}}) {
    const GridFunction k = kernel_map_A_grid(hermite_wong_eval(pi1(a, b), kDefaultGrid));
    const GridFunction ref = tensor_kernel(sample_hermite(a, kDefaultGrid), sample_hermite(b, kDefaultGrid));
    CHECK((k - ref).max_abs() < 1e-6);
  }
}

TEST_CASE("A is unitary and inverts A^{-1} on random band-limited data") {
  std::mt19937_64 rng(11);
  const WongCoeffMatrix c = oracle::random_wong(rng, 1, 5);
  const GridFunction a = synthesize(c, kDefaultGrid);
  const GridFunction k = kernel_map_A_grid(a);
  CHECK(k.l2_norm() == doctest::Approx(a.l2_norm()).epsilon(1e-6));
  CHECK(a.l2_norm() == doctest::Approx(c.l2_norm()).epsilon(1e-8));
  CHECK(oracle::rel_gap(inverse_kernel_map_grid(k), a) < 1e-6);
}

TEST_CASE("A(W_{f,g}) recovers reflect(f) x conj(g)") {
  const GridSpec spec = kDefaultGrid;
  GridFunction f(1, spec), g(1, spec);
  for (int i = 0; i < spec.points; ++i) {
    const double x = spec.node(i);
    f(i) = std::exp(-0.5 * (x - 1.0) * (x - 1.0)) * std::polar(1.0, 0.7 * x);
    g(i) = std::exp(-0.6 * (x + 0.5) * (x + 0.5)) * Complex(1.0, x);
  }
  const GridFunction k = kernel_map_A_grid(wigner(f, g));
  GridFunction gbar = g;
  for (auto& v : gbar.values()) v = std::conj(v);
  CHECK((k - tensor_kernel(reflect(f), gbar)).max_abs() < 1e-6);
}

TEST_CASE("adjoint of the inverse kernel map") {
  std::mt19937_64 rng(3);
  const GridSpec spec{6.0, 48};
  std::normal_distribution<double> n;
  GridFunction k(2, spec), a(2, spec);
  for (auto& v : k.values()) v = {n(rng), n(rng)};
  for (auto& v : a.values()) v = {n(rng), n(rng)};
  const Complex lhs = inner_product(inverse_kernel_map_grid(k, BoundaryPolicy{false, 0.0}), a);
  const Complex rhs = inner_product(k, inverse_kernel_map_grid_adjoint(a));
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
}

TEST_CASE("kernel composition is h-weighted matrix product") {
  const GridSpec spec = kDefaultGrid;
  const GridFunction k1 = tensor_kernel(sample_hermite(0, spec), sample_hermite(1, spec));
  const GridFunction k2 = tensor_kernel(sample_hermite(1, spec), sample_hermite(2, spec));
  const GridFunction ref = tensor_kernel(sample_hermite(0, spec), sample_hermite(2, spec));
  CHECK((compose_kernels_grid(k1, k2) - ref).max_abs() < 1e-10);
}

TEST_CASE("strict boundary policy and unsupported inputs") {
  GridFunction wide(1, GridSpec{3.0, 64});
  for (int i = 0; i < 64; ++i) wide(i) = std::exp(-0.1 * wide.spec().node(i) * wide.spec().node(i));
  CHECK_THROWS_AS(wigner(wide, wide), TruncationError);
  CHECK_NOTHROW(wigner(wide, wide, BoundaryPolicy{false, 0.0}));
  CHECK_THROWS_AS(hermite_wong_eval(PairIndex(MultiIndex{0, 0}, MultiIndex{0, 0}), kDefaultGrid), UnsupportedRange);
  CHECK_THROWS_AS(PairIndex(MultiIndex{0}, MultiIndex{0, 1}), InvalidArgument);
  CHECK_THROWS_AS(wigner(sample_hermite(0, kDefaultGrid), sample_hermite(0, kOdd)), GridMismatch);
}
