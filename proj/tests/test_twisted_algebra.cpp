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

const GridSpec kSmall{7.0, 65};

}  // namespace

TEST_CASE("expand on Hermite-Wong and Wigner samples") {
  const WongCoeffMatrix c = expand(hermite_wong_eval(pi1(1, 2), kDefaultGrid), 6);
  CHECK((c.entries() - WongCoeffMatrix::unit(1, 6, pi1(1, 2)).entries()).cwiseAbs().maxCoeff() < 1e-8);

  const GridFunction w = wigner(sample_hermite(0, kDefaultGrid), sample_hermite(0, kDefaultGrid));
  const WongCoeffMatrix c0 = expand(w, 4);
  CHECK((c0.entries() - WongCoeffMatrix::unit(1, 4, pi1(0, 0)).entries()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("synthesize mirrors expand") {
  const GridFunction s = synthesize(WongCoeffMatrix::unit(1, 3, pi1(1, 2)), kDefaultGrid);
  CHECK(oracle::rel_gap(s, hermite_wong_eval(pi1(1, 2), kDefaultGrid)) < 1e-12);
  const GridFunction w = wigner(sample_hermite(0, kDefaultGrid), sample_hermite(0, kDefaultGrid));
  CHECK(oracle::rel_gap(synthesize(WongCoeffMatrix::unit(1, 0, pi1(0, 0)), kDefaultGrid), w) < 1e-12);
}

TEST_CASE("expand(synthesize(C)) round trip") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const WongCoeffMatrix c = oracle::random_wong(rng, 1, 6);
    const WongCoeffMatrix back = expand(synthesize(c, kDefaultGrid), 6);
    CHECK((back.entries() - c.entries()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("expand refuses a cutoff that drops mass") {
  const GridFunction r = hermite_wong_eval(pi1(5, 1), kDefaultGrid);
  CHECK_THROWS_AS(expand(r, 3), TruncationError);
}

TEST_CASE("kernel_map_A_coeff relabels and matches the grid map") {
  std::mt19937_64 rng(9);
  const WongCoeffMatrix c = oracle::random_wong(rng, 1, 4);
  const KernelMatrix k = kernel_map_A_coeff(c);
  CHECK(k.entries() == c.entries());
  CHECK(inverse_kernel_map_A_coeff(k).entries() == c.entries());
  const GridFunction kernel_grid = kernel_map_A_grid(synthesize(c, kDefaultGrid));
  const GridFunction kernel_coeff = synthesize_kernel(k, kDefaultGrid);
  CHECK((kernel_grid - kernel_coeff).max_abs() < 1e-6);

  const GridFunction k00 = synthesize_kernel(kernel_map_A_coeff(WongCoeffMatrix::unit(1, 2, pi1(0, 0))), kDefaultGrid);
  CHECK((k00 - tensor_kernel(sample_hermite(0, kDefaultGrid), sample_hermite(0, kDefaultGrid))).max_abs() < 1e-15);
}

TEST_CASE("Hermitian coefficients give a self-adjoint kernel") {
  std::mt19937_64 rng(2);
  WongCoeffMatrix c = oracle::random_wong(rng, 1, 4);
  c.entries() = (c.entries() + c.entries().adjoint()).eval();
  const GridFunction k = synthesize_kernel(kernel_map_A_coeff(c), kDefaultGrid);
  const auto m = k.matrix();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("coefficient twisted product: delta rule and identity") {
  const auto r01 = WongCoeffMatrix::unit(1, 4, pi1(0, 1));
  const auto p = twisted_convolution_coeff(r01, WongCoeffMatrix::unit(1, 4, pi1(1, 3)));
  CHECK(p.entries() == WongCoeffMatrix::unit(1, 4, pi1(0, 3)).entries());
  CHECK(twisted_convolution_coeff(r01, WongCoeffMatrix::unit(1, 4, pi1(2, 3))).l2_norm() == 0.0);
  std::mt19937_64 rng(1);
  const WongCoeffMatrix c = oracle::random_wong(rng, 2, 2);
  CHECK(twisted_convolution_coeff(c, WongCoeffMatrix::identity(2, 2)).entries() == c.entries());
  CHECK_THROWS_AS(twisted_convolution_coeff(c, WongCoeffMatrix::identity(2, 3)), ShapeMismatch);
}

TEST_CASE("grid twisted convolution agrees with plain-loop quadrature") {
  const GridFunction a = hermite_wong_eval(pi1(0, 1), kSmall);
  const GridFunction b = hermite_wong_eval(pi1(1, 3), kSmall);
  const GridFunction ab = twisted_convolution_grid(a, b);
  for (auto [i, m] : {std::pair{32, 32}, std::pair{36, 28}, std::pair{25, 40}})
    CHECK(std::abs(ab(i, m) - oracle::twisted_point(a, b, i, m)) < 1e-13);
}

TEST_CASE("grid twisted convolution reproduces the delta rule") {
  const GridFunction a = hermite_wong_eval(pi1(0, 1), kSmall);
  const std::vector<GridFunction> bs{hermite_wong_eval(pi1(1, 3), kSmall), hermite_wong_eval(pi1(2, 3), kSmall),
                                     GridFunction(2, kSmall)};
  const auto out = twisted_convolution_grid(a, bs);
  CHECK(oracle::rel_gap(out[0], hermite_wong_eval(pi1(0, 3), kSmall)) < 1e-5);
  CHECK(out[1].l2_norm() < 1e-5);
  CHECK(out[2].max_abs() == 0.0);
  CHECK_THROWS_AS(twisted_convolution_grid(GridFunction(2, kDefaultGrid), GridFunction(2, kDefaultGrid)),
                  InvalidArgument);
}

TEST_CASE("grid product of random elements matches Ca Cb") {
  std::mt19937_64 rng(21);
  const WongCoeffMatrix ca = oracle::random_wong(rng, 1, 3);
  const WongCoeffMatrix cb = oracle::random_wong(rng, 1, 3);
  const GridFunction grid = twisted_convolution_grid(synthesize(ca, kSmall), synthesize(cb, kSmall));
  const GridFunction coeff = synthesize(twisted_convolution_coeff(ca, cb), kSmall);
  CHECK(oracle::rel_gap(grid, coeff) < 1e-5);
}

TEST_CASE("twisted pairing of rho_{a,0} equals the matrix entry") {
  const GridFunction a = synthesize(WongCoeffMatrix::unit(1, 2, pi1(1, 1)), kSmall);
  const GridFunction psi = hermite_wong_eval(pi1(1, 0), kSmall);
  CHECK(std::abs(twisted_pairing_grid(a, psi) - 1.0) < 1e-6);
}

TEST_CASE("symplectic Fourier transform in coefficient space") {
  const auto f = symplectic_fourier_coeff(WongCoeffMatrix::unit(1, 3, pi1(1, 2)));
  CHECK(f(pi1(1, 2)) == Complex(-1.0));
  const auto g = symplectic_fourier_coeff(WongCoeffMatrix::unit(2, 2, PairIndex(MultiIndex{1, 1}, MultiIndex{0, 1})));
  CHECK(g(PairIndex(MultiIndex{1, 1}, MultiIndex{0, 1})) == Complex(1.0));
}

TEST_CASE("Weyl quantization anchors") {
  const double c = 1.0 / std::sqrt(2.0 * kPi);
  const KernelMatrix q0 = weyl_quantize(WongCoeffMatrix::unit(1, 2, pi1(0, 0)));
  CHECK(q0.entries()(0, 0).real() == doctest::Approx(c));
  CHECK(q0.entries().cwiseAbs().sum() == doctest::Approx(c));
  const KernelMatrix q1 = weyl_quantize(WongCoeffMatrix::unit(1, 2, pi1(1, 0)));
  CHECK(q1.entries()(1, 0).real() == doctest::Approx(-c));

  std::mt19937_64 rng(4);
  const WongCoeffMatrix a = oracle::random_wong(rng, 1, 5);
  CHECK((weyl_symbol(weyl_quantize(a)).entries() - a.entries()).norm() < 1e-13 * a.l2_norm());
}

TEST_CASE("Weyl product: homomorphism, associativity, sign identity") {
  std::mt19937_64 rng(8);
  for (int d : {1, 2}) {
    const WongCoeffMatrix a = oracle::random_wong(rng, d, 3);
    const WongCoeffMatrix b = oracle::random_wong(rng, d, 3);
    const WongCoeffMatrix e = oracle::random_wong(rng, d, 3);
    const CMatrix lhs = weyl_quantize(weyl_product(a, b)).entries();
    const CMatrix rhs = weyl_quantize(a).entries() * weyl_quantize(b).entries();
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    const CMatrix l2 = weyl_product(weyl_product(a, b), e).entries();
    const CMatrix r2 = weyl_product(a, weyl_product(b, e)).entries();
    CHECK((l2 - r2).norm() <= 1e-10 * r2.norm());
    // a # b = (2 pi)^{-d/2} a *_sigma (F_sigma b)
    const CMatrix viaconv =
        twisted_convolution_coeff(a, symplectic_fourier_coeff(b)).entries() * std::pow(2.0 * kPi, -0.5 * d);
    CHECK((weyl_product(a, b).entries() - viaconv).norm() <= 1e-13 * viaconv.norm());
  }
}

TEST_CASE("grid routines are d = 1 only") {
  CHECK_THROWS_AS(synthesize(WongCoeffMatrix(2, 2), kDefaultGrid), UnsupportedRange);
}

TEST_CASE("resized keeps the common block") {
  std::mt19937_64 rng(12);
  const WongCoeffMatrix c = oracle::random_wong(rng, 2, 3);
  const WongCoeffMatrix up = c.resized(5);
  CHECK(up(PairIndex(MultiIndex{3, 1}, MultiIndex{2, 0})) == c(PairIndex(MultiIndex{3, 1}, MultiIndex{2, 0})));
  CHECK(up(PairIndex(MultiIndex{4, 1}, MultiIndex{2, 0})) == Complex{});
  CHECK(up.resized(3).entries() == c.entries());
  CHECK(up.l2_norm() == doctest::Approx(c.l2_norm()));
}
