#include "twc/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twc/errors.hpp"

namespace twc {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw InvalidArgument("multi-index entries must be non-negative");
  }
}

long MultiIndex::degree() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0L);
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int e : entries_) s += std::lgamma(e + 1.0);
  return s;
}

int MultiIndex::max_entry() const noexcept {
  return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

std::optional<MultiIndex> MultiIndex::shifted(int axis, int delta) const {
  auto e = entries_;
  auto& v = e.at(static_cast<std::size_t>(axis));
  if (v + delta < 0) return std::nullopt;
  v += delta;
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(entries_[j]);
  }
  return s + ")";
}

IndexSet::IndexSet(int d, int n_max) : d_(d), n_max_(n_max) {
  if (d < 1 || d > 2) throw InvalidArgument("dimension d must be 1 or 2");
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  const auto side = static_cast<std::size_t>(n_max + 1);
  strides_.assign(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j) strides_[static_cast<std::size_t>(j)] = strides_[static_cast<std::size_t>(j) + 1] * side;
  size_ = strides_[0] * side;
  degrees_.resize(size_);
  for (std::size_t f = 0; f < size_; ++f) {
    int deg = 0;
    for (int j = 0; j < d; ++j) deg += component(f, j);
    degrees_[f] = deg;
  }
}

bool IndexSet::contains(const MultiIndex& alpha) const noexcept {
  if (alpha.dim() != d_) return false;
  for (int e : alpha.entries())
    if (e > n_max_) return false;
  return true;
}

std::size_t IndexSet::flat(const MultiIndex& alpha) const {
  if (!contains(alpha)) throw InvalidArgument("multi-index " + alpha.to_string() + " outside index set");
  std::size_t f = 0;
  for (int j = 0; j < d_; ++j) f += strides_[static_cast<std::size_t>(j)] * static_cast<std::size_t>(alpha[j]);
  return f;
}

int IndexSet::component(std::size_t flat_index, int axis) const {
  const auto side = static_cast<std::size_t>(n_max_ + 1);
  return static_cast<int>((flat_index / strides_[static_cast<std::size_t>(axis)]) % side);
}

MultiIndex IndexSet::at(std::size_t flat_index) const {
  std::vector<int> e(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) e[static_cast<std::size_t>(j)] = component(flat_index, j);
  return MultiIndex(std::move(e));
}

std::optional<std::size_t> IndexSet::neighbor(std::size_t flat_index, int axis, int delta) const {
  const int v = component(flat_index, axis) + delta;
  if (v < 0 || v > n_max_) return std::nullopt;
  const auto stride = static_cast<long long>(strides_[static_cast<std::size_t>(axis)]);
  return static_cast<std::size_t>(static_cast<long long>(flat_index) + delta * stride);
}

}  // namespace twc
