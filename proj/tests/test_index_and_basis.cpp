#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include "twc/errors.hpp"
#include "twc/grid.hpp"
#include "twc/hermite.hpp"
#include "twc/multi_index.hpp"

using namespace twc;

namespace {

using Big = boost::multiprecision::cpp_dec_float_50;

// h_k from the Rodrigues formula H_k = (-1)^k e^{x^2} (d/dx)^k e^{-x^2}, carried as
// polynomial coefficients (P_{k+1} = P_k' - 2x P_k) in 50-digit arithmetic.
double rodrigues_hermite(int k, double xd) {
  std::vector<Big> p{Big(1)};
  for (int step = 0; step < k; ++step) {
    std::vector<Big> q(p.size() + 1, Big(0));
    for (std::size_t j = 1; j < p.size(); ++j) q[j - 1] += Big(static_cast<int>(j)) * p[j];
    for (std::size_t j = 0; j < p.size(); ++j) q[j + 1] -= Big(2) * p[j];
    p = std::move(q);
  }
  const Big x(xd);
  Big hk(0);
  for (std::size_t j = p.size(); j-- > 0;) hk = hk * x + p[j];
  if (k % 2 == 1) hk = -hk;
  Big norm = boost::multiprecision::pow(Big(2), k) * boost::multiprecision::sqrt(boost::math::constants::pi<Big>());
  for (int j = 2; j <= k; ++j) norm *= j;
  return (hk * boost::multiprecision::exp(-x * x / 2) / boost::multiprecision::sqrt(norm)).convert_to<double>();
}

}  // namespace

TEST_CASE("multi-index basics") {
  MultiIndex a{1, 2};
  CHECK(a.dim() == 2);
  CHECK(a.degree() == 3);
  CHECK(a.max_entry() == 2);
  CHECK(a.log_factorial() == doctest::Approx(std::log(2.0)));
  CHECK(a.to_string() == "(1,2)");
  CHECK(a.shifted(0, -1) == MultiIndex{0, 2});
  CHECK_FALSE(MultiIndex{0, 2}.shifted(0, -1).has_value());
  CHECK_THROWS_AS(MultiIndex({-1}), InvalidArgument);
  MultiIndex big{4096, 4096};
  CHECK(big.degree() == 8192);
  CHECK(std::isfinite(big.log_factorial()));
}

TEST_CASE("index set is the hyper-rectangle in row-major order") {
  IndexSet s(2, 3);
  CHECK(s.size() == 16);
  CHECK(s.flat(MultiIndex{0, 0}) == 0);
  CHECK(s.flat(MultiIndex{0, 1}) == 1);
  CHECK(s.flat(MultiIndex{1, 0}) == 4);
  CHECK(s.contains(MultiIndex{3, 3}));
  CHECK_FALSE(s.contains(MultiIndex{4, 0}));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const MultiIndex a = s.at(k);
    CHECK(s.flat(a) == k);
    CHECK(s.degree(k) == a.degree());
    CHECK(s.component(k, 1) == a[1]);
  }
  CHECK(s.neighbor(s.flat(MultiIndex{1, 3}), 1, 1) == std::nullopt);
  CHECK(*s.neighbor(s.flat(MultiIndex{1, 2}), 0, 1) == s.flat(MultiIndex{2, 2}));
  CHECK_THROWS(IndexSet(3, 2));
}

TEST_CASE("hermite_eval anchors") {
  CHECK(hermite_eval(0, 0.0) == doctest::Approx(0.751125544).epsilon(1e-9));
  CHECK(hermite_eval(1, 0.0) == 0.0);
  CHECK(hermite_eval(5, 1.3) == doctest::Approx(rodrigues_hermite(5, 1.3)).epsilon(1e-14));
  CHECK_THROWS_AS(hermite_eval(-1, 0.0), InvalidArgument);
}

TEST_CASE("hermite recurrence agrees with 50-digit Rodrigues values") {
  double worst = 0.0;
  for (int k : {0, 1, 2, 3, 7, 12, 20, 30}) {
    for (double x : {-4.1, -1.0, 0.3, 2.2, 5.5}) {
      const double ref = rodrigues_hermite(k, x);
      worst = std::max(worst, std::abs(hermite_eval(k, x) - ref));
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("hermite values stay finite far out and at high order") {
  CHECK(hermite_eval(400, 30.0) > 0.0);
  CHECK(std::isfinite(hermite_eval(2000, 10.0)));
  CHECK(hermite_eval(3, 60.0) == 0.0);
}

TEST_CASE("Gauss-Hermite rules") {
  const auto r1 = gauss_hermite_rule(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(std::sqrt(kPi)));
  const auto r2 = gauss_hermite_rule(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(r2.weights[0] == doctest::Approx(std::sqrt(kPi) / 2));
  CHECK(r2.weights[1] == doctest::Approx(std::sqrt(kPi) / 2));
  for (int n : {3, 10, 40, 100, 200}) {
    const auto r = gauss_hermite_rule(n);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(sum == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (double w : r.scaled_weights) CHECK(w > 0.0);
  }
  // Monomial moments int x^{2m} e^{-x^2} dx = Gamma(m + 1/2).
  const auto r = gauss_hermite_rule(12);
  for (int m = 0; 2 * m <= r.exact_degree; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * m);
    CHECK(s == doctest::Approx(std::tgamma(m + 0.5)).epsilon(1e-12));
  }
  CHECK_THROWS(gauss_hermite_rule(0));
  CHECK_THROWS(gauss_hermite_rule(513));
}

TEST_CASE("project_to_hermite on samples") {
  auto h3 = [](std::span<const double> x) { return Complex(hermite_eval(3, x[0])); };
  const auto c = project_to_hermite(h3, 1, 10);
  for (int k = 0; k <= 10; ++k) CHECK(std::abs(c[MultiIndex{k}] - Complex(k == 3 ? 1.0 : 0.0)) < 1e-13);

  auto mix = [](std::span<const double> x) { return Complex((hermite_eval(0, x[0]) + hermite_eval(2, x[0])) / std::sqrt(2.0)); };
  const auto m = project_to_hermite(mix, 1, 6);
  CHECK(m[MultiIndex{0}].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(m[MultiIndex{2}].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(m[MultiIndex{1}]) < 1e-14);

  NodalSamples few = sample_at_nodes(1, gauss_hermite_rule(5), h3);
  try {
    (void)project_to_hermite(few, 8);
    FAIL("expected ResolutionError");
  } catch (const ResolutionError& e) {
    CHECK(e.required_nodes() == 9);
  }
}

TEST_CASE("shifted Gaussian matches the coherent-state expansion") {
  const double x0 = 0.5;
  auto f = [x0](std::span<const double> x) {
    return Complex(std::pow(kPi, -0.25) * std::exp(-0.5 * (x[0] - x0) * (x[0] - x0)));
  };
  const int n_max = 20;
  const auto c = project_to_hermite(f, 1, n_max);
  // Independent check: the same inner products at ten times the node count.
  const auto fine = project_to_hermite(sample_at_nodes(1, gauss_hermite_rule(10 * (n_max + 1)), f), n_max);
  const double z = x0 / std::sqrt(2.0);
  for (int k = 0; k <= n_max; ++k) {
    const double analytic = std::exp(-0.5 * z * z) * std::pow(z, k) / std::sqrt(boost::math::factorial<double>(k));
    CHECK(std::abs(c[MultiIndex{k}].real() - analytic) < 1e-13);
    CHECK(std::abs(fine[MultiIndex{k}].real() - analytic) < 1e-13);
  }
}

TEST_CASE("grid projection and its resolution guard") {
  const GridSpec spec{10.0, 257};
  GridFunction g(1, spec);
  for (int i = 0; i < spec.points; ++i) g(i) = hermite_eval(3, spec.node(i));
  const auto c = project_to_hermite(g, 12);
  for (int k = 0; k <= 12; ++k) CHECK(std::abs(c[MultiIndex{k}] - Complex(k == 3 ? 1.0 : 0.0)) < 1e-10);
  CHECK_THROWS_AS(project_to_hermite(GridFunction(1, GridSpec{4.0, 64}), 20), ResolutionError);

  const auto back = synthesize_on_grid(c, spec);
  CHECK((back - g).max_abs() < 1e-10);
}

TEST_CASE("tensor projection in two dimensions") {
  auto f = [](std::span<const double> x) { return Complex(hermite_eval(1, x[0]) * hermite_eval(2, x[1])); };
  const auto c = project_to_hermite(f, 2, 4);
  CHECK(std::abs(c[MultiIndex{1, 2}] - 1.0) < 1e-13);
  CHECK(c.l2_norm() == doctest::Approx(1.0));
  const auto back = synthesize_at_nodes(c, gauss_hermite_rule(7));
  const std::vector<double> pt{back.rule.nodes[2], back.rule.nodes[5]};
  CHECK(back.values[2 * 7 + 5].real() == doctest::Approx(f(pt).real()));
}

TEST_CASE("harmonic oscillator in coefficient form") {
  CHECK(apply_H_coeff(HermiteCoeffVector::unit(1, 5, MultiIndex{0}))[MultiIndex{0}] == Complex(1.0));
  CHECK(apply_H_coeff(HermiteCoeffVector::unit(1, 5, MultiIndex{3}))[MultiIndex{3}] == Complex(7.0));
  CHECK(apply_H_coeff(HermiteCoeffVector::unit(2, 3, MultiIndex{1, 2}))[MultiIndex{1, 2}] == Complex(8.0));
}

TEST_CASE("grid oscillator on h_k") {
  const GridSpec spec{10.0, 1001};
  for (int k : {0, 2, 5}) {
    GridFunction f(1, spec);
    for (int i = 0; i < spec.points; ++i) f(i) = hermite_eval(k, spec.node(i));
    const GridFunction hf = apply_H_grid(f);
    CHECK((hf - Complex(2.0 * k + 1.0) * f).l2_norm() < 1e-3 * (2.0 * k + 1.0));
  }
}

TEST_CASE("Parseval on a random coefficient vector") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  HermiteCoeffVector v(1, 15);
  for (Eigen::Index k = 0; k < v.coeffs().size(); ++k) v.coeffs()(k) = {g(rng), g(rng)};
  const GridSpec spec{10.0, 401};
  CHECK(synthesize_on_grid(v, spec).l2_norm() == doctest::Approx(v.l2_norm()).epsilon(1e-10));
}

TEST_CASE("grid functions: arithmetic, boundary, binary round trip") {
  const GridSpec spec{6.0, 33};
  GridFunction f(2, spec);
  for (int i = 0; i < 33; ++i)
    for (int j = 0; j < 33; ++j) f(i, j) = Complex(std::exp(-spec.node(i) * spec.node(i)), spec.node(j));
  CHECK(f.boundary_ratio() > 0.5);
  CHECK_THROWS_AS(check_boundary(f, BoundaryPolicy{}, "test"), TruncationError);
  CHECK_NOTHROW(check_boundary(f, BoundaryPolicy{false, 1e-7}, "test"));

  std::stringstream buf;
  write_grid_binary(buf, f);
  const GridFunction g = read_grid_binary(buf);
  CHECK(g.dims() == 2);
  CHECK(g.spec() == spec);
  CHECK(g.values() == f.values());

  std::stringstream bad("xx");
  CHECK_THROWS_AS(read_grid_binary(bad), IoError);
  CHECK_THROWS_AS(GridFunction(1, GridSpec{8.0, 8}), InvalidArgument);
  CHECK_THROWS_AS(f + GridFunction(2, GridSpec{6.0, 35}), GridMismatch);
  CHECK(inner_product(f, f).real() == doctest::Approx(f.l2_norm() * f.l2_norm()));
}
