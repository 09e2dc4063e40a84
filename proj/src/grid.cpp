#include "twc/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>

#include "twc/errors.hpp"

namespace twc {

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = node(i);
  return x;
}

void GridSpec::validate() const {
  if (points < 16) throw InvalidArgument("grid needs at least 16 points per axis");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("grid half width must be positive");
}

GridFunction::GridFunction(int dims, GridSpec spec) : dims_(dims), spec_(spec) {
  if (dims < 1 || dims > 2) throw UnsupportedRange("grid functions have 1 or 2 axes (d = 1 only)");
  spec_.validate();
  std::size_t n = 1;
  for (int k = 0; k < dims; ++k) n *= static_cast<std::size_t>(spec.points);
  values_.assign(n, Complex{});
}

GridFunction::GridFunction(int dims, GridSpec spec, std::vector<Complex> values) : GridFunction(dims, spec) {
  if (values.size() != values_.size()) throw ShapeMismatch("grid value count does not match the grid");
  values_ = std::move(values);
}

Eigen::Map<GridFunction::RowMajor> GridFunction::matrix() {
  if (dims_ != 2) throw ShapeMismatch("matrix view needs a 2-axis grid");
  return {values_.data(), spec_.points, spec_.points};
}

Eigen::Map<const GridFunction::RowMajor> GridFunction::matrix() const {
  if (dims_ != 2) throw ShapeMismatch("matrix view needs a 2-axis grid");
  return {values_.data(), spec_.points, spec_.points};
}

double GridFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s * std::pow(spec_.spacing(), dims_));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::boundary_ratio() const {
  const double peak = max_abs();
  if (peak == 0.0) return 0.0;
  const int n = spec_.points;
  auto edge = [n](int i) { return i < 2 || i >= n - 2; };
  double m = 0.0;
  if (dims_ == 1) {
    for (int i = 0; i < n; ++i)
      if (edge(i)) m = std::max(m, std::abs((*this)(i)));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (edge(i) || edge(j)) m = std::max(m, std::abs((*this)(i, j)));
  }
  return m / peak;
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same_grid(*this, o, "addition");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same_grid(*this, o, "subtraction");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator*(Complex s, GridFunction a) { return a *= s; }

Complex inner_product(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b, "inner product");
  Complex s{};
  for (std::size_t k = 0; k < a.size(); ++k) s += a.values()[k] * std::conj(b.values()[k]);
  return s * std::pow(a.spec().spacing(), a.dims());
}

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
  if (a.dims() != b.dims() || !(a.spec() == b.spec()))
    throw GridMismatch(std::string("grid mismatch in ") + what);
}

void check_boundary(const GridFunction& f, const BoundaryPolicy& policy, const char* what) {
  if (!f.all_finite()) throw InvalidArgument(std::string(what) + ": non-finite grid values");
  if (!policy.strict) return;
  const double r = f.boundary_ratio();
  if (r > policy.tolerance)
    throw TruncationError(std::string(what) + ": boundary amplitude above tolerance, enlarge the box", r);
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary grid format assumes a little-endian host");

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("truncated grid file");
  return v;
}

}  // namespace

void write_grid_binary(std::ostream& out, const GridFunction& f) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.dims()));
  put<double>(out, f.spec().half_width);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.points()));
  for (const auto& v : f.values()) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  if (!out) throw IoError("failed to write grid data");
}

GridFunction read_grid_binary(std::istream& in) {
  const auto dims = get<std::uint32_t>(in);
  const auto L = get<double>(in);
  const auto n = get<std::uint32_t>(in);
  GridFunction f(static_cast<int>(dims), GridSpec{L, static_cast<int>(n)});
  for (auto& v : f.values()) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = {re, im};
  }
  return f;
}

}  // namespace twc
