#include "adini/sparse.hpp"

#include "adini/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace adini {

SparseSym::SparseSym(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols)
    : n_(n), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(cols_.size(), 0.0) {
  if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != cols_.size())
    throw std::invalid_argument("SparseSym: inconsistent row pointers");
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1] || !std::is_sorted(cols_.begin() + row_ptr_[i], cols_.begin() + row_ptr_[i + 1]))
      throw std::invalid_argument("SparseSym: row pattern not sorted");
  }
  for (std::size_t c : cols_)
    if (c >= n_) throw std::invalid_argument("SparseSym: column out of range");
}

std::size_t SparseSym::find(std::size_t i, std::size_t j) const {
  if (i >= n_) return npos;
  const auto begin = cols_.begin() + row_ptr_[i];
  const auto end = cols_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return npos;
  return static_cast<std::size_t>(it - cols_.begin());
}

double SparseSym::entry(std::size_t i, std::size_t j) const {
  const std::size_t p = find(i, j);
  return p == npos ? 0.0 : vals_[p];
}

void SparseSym::add(std::size_t i, std::size_t j, double v) {
  const std::size_t p = find(i, j);
  if (p == npos) throw std::out_of_range("SparseSym::add: entry outside pattern");
  vals_[p] += v;
}

void SparseSym::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("SparseSym::multiply: size mismatch");
  parallel_for(n_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double s = 0.0;
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += vals_[p] * x[cols_[p]];
      y[i] = s;
    }
  });
}

std::vector<double> SparseSym::multiply(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseSym::diagonal() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = entry(i, i);
  return d;
}

DenseMatrix SparseSym::to_dense() const {
  DenseMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) m(i, cols_[p]) = vals_[p];
  return m;
}

bool SparseSym::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const std::size_t q = find(cols_[p], i);
      if (q == npos || vals_[q] != vals_[p]) return false;
    }
  }
  return true;
}

}  // namespace adini
