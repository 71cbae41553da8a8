#pragma once

#include "adini/dense.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace adini {

/// Symmetric sparse matrix in compressed-row form. Both triangles are stored
/// so products run row by row; assembly writes (i, j) and (j, i) from the same
/// local entry, so the stored matrix is exactly symmetric.
class SparseSym {
 public:
  SparseSym() = default;
  /// Empty matrix with the given pattern; cols of each row must be sorted.
  SparseSym(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols);

  std::size_t size() const { return n_; }
  std::size_t nnz() const { return cols_.size(); }
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }
  std::vector<double>& values() { return vals_; }

  /// Position of (i, j) in values(), or npos when outside the pattern.
  std::size_t find(std::size_t i, std::size_t j) const;
  double entry(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, double v);

  /// y = A x; rows are processed in parallel.
  std::vector<double> multiply(std::span<const double> x) const;
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> diagonal() const;
  DenseMatrix to_dense() const;
  bool is_symmetric() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

}  // namespace adini
