#pragma once

#include "adini/dense.hpp"
#include "adini/sparse.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace adini {

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  double seconds = 0.0;
};

struct CgOptions {
  double tol = 1e-10;
  /// 0 selects 50 * sqrt(n).
  std::size_t maxit = 0;
};

struct CgResult {
  std::vector<double> x;
  SolveReport report;
};

/// Raised when CG hits its iteration cap; carries the best iterate seen.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, CgResult best) : std::runtime_error(what), best_(std::move(best)) {}
  const CgResult& best() const { return best_; }

 private:
  CgResult best_;
};

/// Jacobi-preconditioned conjugate gradients until ||b - Ax|| <= tol ||b||.
/// b = 0 returns x = 0 without iterating.
CgResult cg_solve(const SparseSym& a, const std::vector<double>& b, const CgOptions& options = {});

/// LU factorisation with partial pivoting. Throws std::runtime_error when a
/// pivot falls below n * eps * max|A|.
std::vector<double> dense_solve(const DenseMatrix& a, const std::vector<double>& b);

}  // namespace adini
