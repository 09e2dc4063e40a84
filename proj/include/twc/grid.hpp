#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "twc/types.hpp"

namespace twc {

/// Uniform axis with endpoints +-L included.
struct GridSpec {
  double half_width = 8.0;
  int points = 256;

  double spacing() const noexcept { return 2.0 * half_width / (points - 1); }
  double node(int i) const noexcept { return -half_width + i * spacing(); }
  std::vector<double> nodes() const;
  /// Throws InvalidArgument unless points >= 16 and half_width > 0.
  void validate() const;
  bool has_origin_node() const noexcept { return points % 2 == 1; }
  int center() const noexcept { return (points - 1) / 2; }

  bool operator==(const GridSpec&) const = default;
};

/// Default phase-space box for d = 1.
inline constexpr GridSpec kDefaultGrid{8.0, 256};

/// Complex samples on the tensor grid spec^dims, row-major (first axis slowest).
/// dims = 1 is a function on R, dims = 2 a function on phase space R^2
/// (axes (x, xi)) or an operator kernel (axes (x, y)).
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int dims, GridSpec spec);
  GridFunction(int dims, GridSpec spec, std::vector<Complex> values);

  int dims() const noexcept { return dims_; }
  const GridSpec& spec() const noexcept { return spec_; }
  int points() const noexcept { return spec_.points; }
  std::size_t size() const noexcept { return values_.size(); }

  std::vector<Complex>& values() noexcept { return values_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  Complex& operator()(int i) { return values_[static_cast<std::size_t>(i)]; }
  Complex operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }
  Complex& operator()(int i, int j) { return values_[flat(i, j)]; }
  Complex operator()(int i, int j) const { return values_[flat(i, j)]; }

  /// Row-major matrix view (dims = 2): rows index the first axis.
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<RowMajor> matrix();
  Eigen::Map<const RowMajor> matrix() const;

  /// Trapezoid-free Riemann L2 norm: sqrt(sum |v|^2 h^dims).
  double l2_norm() const;
  double max_abs() const;
  /// max |v| over the outermost two layers divided by max |v| (0 for the zero function).
  double boundary_ratio() const;
  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(Complex s);

 private:
  std::size_t flat(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(spec_.points) + static_cast<std::size_t>(j);
  }

  int dims_ = 0;
  GridSpec spec_{};
  std::vector<Complex> values_;
};

GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator*(Complex s, GridFunction a);

/// Quadrature inner product <a, b> = sum a conj(b) h^dims.
Complex inner_product(const GridFunction& a, const GridFunction& b);

/// Throws GridMismatch unless both share dims and axis spec.
void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what);

/// Boundary handling for grid transforms: strict mode throws TruncationError
/// when boundary_ratio() exceeds the tolerance.
struct BoundaryPolicy {
  bool strict = true;
  double tolerance = 1e-7;
};

void check_boundary(const GridFunction& f, const BoundaryPolicy& policy, const char* what);

/// Binary layout, little-endian: u32 dims, f64 L, u32 points_per_axis, then
/// row-major values as interleaved (f64 re, f64 im).
void write_grid_binary(std::ostream& out, const GridFunction& f);
GridFunction read_grid_binary(std::istream& in);

}  // namespace twc
