#pragma once

#include "adini/assembly.hpp"
#include "adini/field.hpp"
#include "adini/linsolve.hpp"
#include "adini/mesh.hpp"
#include "adini/shape_table.hpp"

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace adini {

/// Errors of one discrete solution against the exact field.
struct ErrorRecord {
  double h = 0.0;
  std::size_t n = 0;
  double l2 = 0.0;
  double h1 = 0.0;
  /// Broken H2 seminorm |u - u_h|_{2,h}.
  double h2 = 0.0;
  std::size_t dofs = 0;
  SolveReport report;
};

/// L2, H1 and broken H2 norms of u - w_h, where w_h is given by its global
/// coefficient vector. Fills l2, h1, h2 and h; the rest stays default.
ErrorRecord error_norms(const Field& u, const BoxMesh& mesh, std::span<const double> coeffs, const ShapeCache& cache);

/// |w_h|_{2,h} of a discrete field.
double broken_h2(const BoxMesh& mesh, std::span<const double> coeffs, const ShapeCache& cache);

/// a_h(u, w_h) - (f, w_h) by elementwise quadrature.
double consistency_error(const Field& u, const Field& f, const BoxMesh& mesh, std::span<const double> w,
                         const ShapeCache& cache);

/// Seeded smooth probe prod_k x_k^2 (1 - x_k)^2 * q with q a random cubic of
/// small rational coefficients; value and gradient vanish on the unit box boundary.
FieldPtr random_clamped_field(std::size_t dim, std::uint64_t seed);

struct ConsistencyRecord {
  double h = 0.0;
  std::size_t n = 0;
  /// E_h(u, w_h) with w_h the nodal interpolant of the probe.
  double error = 0.0;
  double w_norm = 0.0;
  /// |E_h| / |w_h|_{2,h}
  double ratio = 0.0;
};

/// E_h(u, Pi_h w) with f = bilaplacian(u), using an n-point rule per axis.
ConsistencyRecord measure_consistency(const FieldPtr& u, const FieldPtr& w, const BoxMesh& mesh, int quad_points = 6);

struct ProblemOptions {
  int quad_assembly = 4;
  int quad_error = 6;
  CgOptions cg;
  /// Solve by dense LU instead of CG (intended for small systems).
  bool dense = false;
};

struct DiscreteSolution {
  /// Global coefficient vector, clamped entries zero.
  std::vector<double> coeffs;
  std::size_t free_dofs = 0;
  SolveReport report;
};

/// Assembles and solves a_h(u_h, v_h) = (f, v_h) on the mesh.
DiscreteSolution solve_problem(const BoxMesh& mesh, const Field& f, const ProblemOptions& options = {});

/// Solves with f = bilaplacian(u) and measures the errors.
ErrorRecord run_case(const FieldPtr& u, const BoxMesh& mesh, const ProblemOptions& options = {});

/// Observed orders between consecutive records: orders[i] = {l2, h1, h2}
/// for the pair (i, i+1).
struct RateTable {
  std::vector<ErrorRecord> records;
  std::vector<std::array<double, 3>> orders;
};

/// Throws std::invalid_argument for fewer than two records or h not strictly decreasing.
RateTable rate_table(std::vector<ErrorRecord> records);

/// log(e0 / e1) / log(h0 / h1).
double observed_order(double e0, double e1, double h0, double h1);

struct LowerBoundReport {
  /// ||u - u_h||_{L2} * N^2 per level.
  std::vector<double> scaled;
  double ratio = 0.0;
  bool pass = false;
};

inline constexpr double kLowerBoundRatio = 4.0;

/// Passes iff every scaled error is positive and max / min <= 4.
LowerBoundReport lower_bound_check(std::span<const double> l2_errors, std::span<const std::size_t> ns);
/// Runs u on unit meshes of the given sizes and applies the rule above.
LowerBoundReport lower_bound_check(const FieldPtr& u, std::size_t dim, std::span<const std::size_t> ns,
                                   const ProblemOptions& options = {});

/// Both sides of
///   (-f, u - u_h) = a_h(u, P - u_h) - (f, P - u_h) + a_h(u - P, u - P)
///                 + a_h(u - P, u_h - P) + 2 (f, P - u) + 2 a_h(u - P, P),
/// with P the global nodal interpolant of u.
struct Identity19Report {
  double lhs = 0.0;
  std::array<double, 6> terms{};
  double rhs = 0.0;
  /// |lhs - rhs| / (|lhs| + |rhs| + 1)
  double residual = 0.0;
  SolveReport report;
};

Identity19Report identity19_check(const FieldPtr& u, const BoxMesh& mesh, const ProblemOptions& options = {});

}  // namespace adini
