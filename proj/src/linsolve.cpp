#include "adini/linsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace adini {

CgResult cg_solve(const SparseSym& a, const std::vector<double>& b, const CgOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("cg_solve: rhs size mismatch");
  if (!(options.tol > 0.0)) throw std::invalid_argument("cg_solve: tolerance must be positive");
  const std::size_t maxit =
      options.maxit > 0 ? options.maxit : std::max<std::size_t>(1, static_cast<std::size_t>(50.0 * std::sqrt(double(n))));
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  CgResult out;
  out.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.report.seconds = elapsed();
    return out;
  }

  std::vector<double> inv_diag = a.diagonal();
  for (double& v : inv_diag) {
    if (!(v > 0.0)) throw std::invalid_argument("cg_solve: non-positive diagonal entry");
    v = 1.0 / v;
  }

  std::vector<double> r = b, z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double res = 1.0;
  std::vector<double> best = out.x;
  double best_res = 1.0;

  for (std::size_t it = 1; it <= maxit; ++it) {
    a.multiply(p, ap);
    const double alpha = rz / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      out.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    res = norm2(r) / bnorm;
    out.report.iterations = it;
    if (res < best_res) {
      best_res = res;
      best = out.x;
    }
    if (res <= options.tol) {
      out.report.relative_residual = res;
      out.report.seconds = elapsed();
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  CgResult fallback{std::move(best), {maxit, best_res, elapsed()}};
  throw SolverError("cg_solve: no convergence after " + std::to_string(maxit) + " iterations (relative residual " +
                        std::to_string(best_res) + ")",
                    std::move(fallback));
}

std::vector<double> dense_solve(const DenseMatrix& a, const std::vector<double>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("dense_solve: dimension mismatch");
  DenseMatrix lu = a;
  std::vector<double> x = b;
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  const double tiny = std::max<double>(1, n) * std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (!(std::abs(lu(piv, k)) > tiny)) throw std::runtime_error("dense_solve: matrix is singular to working precision");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(x[k], x[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / lu(k, k);
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
      x[i] -= l * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
    x[k] = s / lu(k, k);
  }
  return x;
}

}  // namespace adini
