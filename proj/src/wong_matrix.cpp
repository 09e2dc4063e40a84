#include "twc/wong_matrix.hpp"

#include <algorithm>

#include "twc/errors.hpp"

namespace twc {

namespace {

Eigen::Index flat_of(const IndexSet& index, const MultiIndex& alpha) {
  if (alpha.dim() != index.dim()) throw ShapeMismatch("multi-index dimension does not match the index set");
  if (!index.contains(alpha)) throw InvalidArgument("multi-index " + alpha.to_string() + " is outside the index set");
  return static_cast<Eigen::Index>(index.flat(alpha));
}

void check_square(const IndexSet& index, const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(index.size());
  if (m.rows() != n || m.cols() != n) throw ShapeMismatch("coefficient matrix does not match the index set size");
}

}  // namespace

WongCoeffMatrix::WongCoeffMatrix(int d, int n_max) : index_(d, n_max) {
  const auto n = static_cast<Eigen::Index>(index_.size());
  entries_ = CMatrix::Zero(n, n);
}

WongCoeffMatrix::WongCoeffMatrix(IndexSet index, CMatrix entries) : index_(std::move(index)), entries_(std::move(entries)) {
  check_square(index_, entries_);
}

WongCoeffMatrix WongCoeffMatrix::unit(int d, int n_max, const PairIndex& alpha) {
  WongCoeffMatrix c(d, n_max);
  c(alpha) = 1.0;
  return c;
}

WongCoeffMatrix WongCoeffMatrix::identity(int d, int n_max) {
  WongCoeffMatrix c(d, n_max);
  c.entries_.setIdentity();
  return c;
}

Complex WongCoeffMatrix::operator()(const PairIndex& alpha) const {
  return entries_(flat_of(index_, alpha.first), flat_of(index_, alpha.second));
}

Complex& WongCoeffMatrix::operator()(const PairIndex& alpha) {
  return entries_(flat_of(index_, alpha.first), flat_of(index_, alpha.second));
}

WongCoeffMatrix WongCoeffMatrix::resized(int n_max) const {
  WongCoeffMatrix out(dim(), n_max);
  const int keep = std::min(n_max, this->n_max());
  IndexSet small(dim(), keep);
  std::vector<Eigen::Index> from(small.size()), to(small.size());
  for (std::size_t k = 0; k < small.size(); ++k) {
    const MultiIndex a = small.at(k);
    from[k] = static_cast<Eigen::Index>(index_.flat(a));
    to[k] = static_cast<Eigen::Index>(out.index_.flat(a));
  }
  for (std::size_t r = 0; r < small.size(); ++r)
    for (std::size_t c = 0; c < small.size(); ++c) out.entries_(to[r], to[c]) = entries_(from[r], from[c]);
  return out;
}

KernelMatrix::KernelMatrix(IndexSet index, CMatrix entries) : index_(std::move(index)), entries_(std::move(entries)) {
  check_square(index_, entries_);
}

void require_same_shape(const WongCoeffMatrix& a, const WongCoeffMatrix& b, const char* what) {
  if (!(a.index() == b.index()))
    throw ShapeMismatch(std::string(what) + ": operands have different dimension or cutoff");
}

}  // namespace twc
