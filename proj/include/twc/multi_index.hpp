#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace twc {

/// Multi-index alpha in N^d. Entries are non-negative.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }

  int dim() const noexcept { return static_cast<int>(entries_.size()); }
  int operator[](int j) const { return entries_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& entries() const noexcept { return entries_; }

  /// |alpha|, the sum of entries.
  long degree() const noexcept;
  /// log(alpha!) = sum_j log(alpha_j!).
  double log_factorial() const;
  int max_entry() const noexcept;

  /// alpha + delta * e_axis, or nullopt when an entry would become negative.
  std::optional<MultiIndex> shifted(int axis, int delta) const;

  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// The hyper-rectangle {alpha in N^d : alpha_j <= n_max for all j}, flattened in
/// row-major order (first coordinate varies slowest).
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(int d, int n_max);

  int dim() const noexcept { return d_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return size_; }

  bool contains(const MultiIndex& alpha) const noexcept;
  std::size_t flat(const MultiIndex& alpha) const;
  MultiIndex at(std::size_t flat_index) const;
  /// |alpha| of the flat index, precomputed.
  int degree(std::size_t flat_index) const { return degrees_[flat_index]; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  /// Component j of the flat index.
  int component(std::size_t flat_index, int axis) const;
  /// Flat index of alpha + delta e_axis, nullopt when it leaves the set.
  std::optional<std::size_t> neighbor(std::size_t flat_index, int axis, int delta) const;

  bool operator==(const IndexSet& o) const noexcept { return d_ == o.d_ && n_max_ == o.n_max_; }

 private:
  int d_ = 0;
  int n_max_ = -1;
  std::size_t size_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<int> degrees_;
};

}  // namespace twc
