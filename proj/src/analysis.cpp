#include "adini/analysis.hpp"

#include "adini/lemmas.hpp"
#include "adini/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace adini {

namespace {

// Value, gradient and Hessian of a discrete field at one quadrature point.
struct DiscreteJet {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> hess;

  explicit DiscreteJet(std::size_t d) : grad(d), hess(d * d) {}

  void evaluate(const ElementTable& t, std::size_t q, std::span<const double> local) {
    const std::size_t d = t.dim;
    value = 0.0;
    std::fill(grad.begin(), grad.end(), 0.0);
    std::fill(hess.begin(), hess.end(), 0.0);
    for (std::size_t a = 0; a < t.dofs; ++a) {
      const double c = local[a];
      if (c == 0.0) continue;
      value += c * t.phi(q, a);
      const double* g = t.grad.data() + (q * t.dofs + a) * d;
      const double* h = t.hess.data() + (q * t.dofs + a) * d * d;
      for (std::size_t k = 0; k < d; ++k) grad[k] += c * g[k];
      for (std::size_t kl = 0; kl < d * d; ++kl) hess[kl] += c * h[kl];
    }
  }
};

std::vector<double> gather(std::span<const double> global, const std::vector<std::size_t>& dofs) {
  std::vector<double> local(dofs.size());
  for (std::size_t a = 0; a < dofs.size(); ++a) local[a] = global[dofs[a]];
  return local;
}

void check_coefficients(const BoxMesh& mesh, std::span<const double> coeffs) {
  if (coeffs.size() != mesh.vertex_count() * (mesh.dim() + 1))
    throw std::invalid_argument("coefficient vector does not match the mesh");
}

// Sums per-element contributions in element order.
template <class PerElement>
std::vector<double> element_totals(const BoxMesh& mesh, std::size_t width, PerElement&& body) {
  const std::size_t ne = mesh.element_count();
  std::vector<double> partial(ne * width, 0.0);
  parallel_for(ne, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) body(e, std::span<double>(partial.data() + e * width, width));
  });
  std::vector<double> total(width, 0.0);
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t i = 0; i < width; ++i) total[i] += partial[e * width + i];
  return total;
}

double frobenius_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

ErrorRecord error_norms(const Field& u, const BoxMesh& mesh, std::span<const double> coeffs, const ShapeCache& cache) {
  check_coefficients(mesh, coeffs);
  const std::size_t d = mesh.dim();
  const auto sums = element_totals(mesh, 3, [&](std::size_t e, std::span<double> acc) {
    const CellGeometry cell = mesh.element_geometry(e);
    const auto entry = cache.get(cell);
    const ElementTable& t = entry->table;
    const auto local = gather(coeffs, global_dofs(mesh, e));
    DiscreteJet w(d);
    std::vector<double> x(d), g(d), hess(d * d);
    double v = 0.0;
    for (std::size_t q = 0; q < t.points; ++q) {
      quadrature_point(cell, t, q, x);
      u.jet2(x, v, g, hess);
      w.evaluate(t, q, local);
      const double e0 = v - w.value;
      double e1 = 0.0, e2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) e1 += (g[k] - w.grad[k]) * (g[k] - w.grad[k]);
      for (std::size_t kl = 0; kl < d * d; ++kl) e2 += (hess[kl] - w.hess[kl]) * (hess[kl] - w.hess[kl]);
      acc[0] += t.weights[q] * e0 * e0;
      acc[1] += t.weights[q] * e1;
      acc[2] += t.weights[q] * e2;
    }
  });
  ErrorRecord r;
  r.h = mesh.h();
  r.n = mesh.cells(0);
  r.l2 = std::sqrt(sums[0]);
  r.h1 = std::sqrt(sums[1]);
  r.h2 = std::sqrt(sums[2]);
  return r;
}

double broken_h2(const BoxMesh& mesh, std::span<const double> coeffs, const ShapeCache& cache) {
  check_coefficients(mesh, coeffs);
  const std::size_t d = mesh.dim();
  const auto sums = element_totals(mesh, 1, [&](std::size_t e, std::span<double> acc) {
    const auto entry = cache.get(mesh.element_geometry(e));
    const ElementTable& t = entry->table;
    const auto local = gather(coeffs, global_dofs(mesh, e));
    DiscreteJet w(d);
    for (std::size_t q = 0; q < t.points; ++q) {
      w.evaluate(t, q, local);
      acc[0] += t.weights[q] * frobenius_dot(w.hess, w.hess);
    }
  });
  return std::sqrt(sums[0]);
}

double consistency_error(const Field& u, const Field& f, const BoxMesh& mesh, std::span<const double> w,
                         const ShapeCache& cache) {
  check_coefficients(mesh, w);
  const std::size_t d = mesh.dim();
  const auto sums = element_totals(mesh, 1, [&](std::size_t e, std::span<double> acc) {
    const CellGeometry cell = mesh.element_geometry(e);
    const auto entry = cache.get(cell);
    const ElementTable& t = entry->table;
    const auto local = gather(w, global_dofs(mesh, e));
    DiscreteJet wj(d);
    std::vector<double> x(d), g(d), hess(d * d);
    double v = 0.0;
    for (std::size_t q = 0; q < t.points; ++q) {
      quadrature_point(cell, t, q, x);
      u.jet2(x, v, g, hess);
      wj.evaluate(t, q, local);
      acc[0] += t.weights[q] * (frobenius_dot(hess, wj.hess) - f.value(x) * wj.value);
    }
  });
  return sums[0];
}

FieldPtr random_clamped_field(std::size_t dim, std::uint64_t seed) {
  RationalSampler rng(seed);
  return std::make_shared<PolynomialField>(u2_polynomial(dim) * rng.total_degree(dim, 3));
}

ConsistencyRecord measure_consistency(const FieldPtr& u, const FieldPtr& w, const BoxMesh& mesh, int quad_points) {
  const FieldPtr f = bilaplacian(u);
  const ShapeCache cache(mesh.dim(), gauss_rule(quad_points), false);
  const std::vector<double> wh = nodal_interpolant(*w, mesh);
  ConsistencyRecord r;
  r.h = mesh.h();
  r.n = mesh.cells(0);
  r.error = consistency_error(*u, *f, mesh, wh, cache);
  r.w_norm = broken_h2(mesh, wh, cache);
  r.ratio = r.w_norm > 0.0 ? std::abs(r.error) / r.w_norm : 0.0;
  return r;
}

DiscreteSolution solve_problem(const BoxMesh& mesh, const Field& f, const ProblemOptions& options) {
  const DofMap dofs(mesh);
  const ShapeCache cache(mesh.dim(), gauss_rule(options.quad_assembly));
  const SparseSym a = assemble(mesh, dofs, cache);
  const std::vector<double> b = load_vector(f, mesh, dofs, cache);
  DiscreteSolution out;
  out.free_dofs = dofs.free_count();
  if (options.dense) {
    out.coeffs = dofs.expand(dense_solve(a.to_dense(), b));
    const auto r = a.multiply(dofs.restrict_to_free(out.coeffs));
    double num = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) num += (b[i] - r[i]) * (b[i] - r[i]);
    const double bn = norm2(b);
    out.report.relative_residual = bn > 0.0 ? std::sqrt(num) / bn : 0.0;
    return out;
  }
  CgResult cg = cg_solve(a, b, options.cg);
  out.coeffs = dofs.expand(cg.x);
  out.report = cg.report;
  return out;
}

ErrorRecord run_case(const FieldPtr& u, const BoxMesh& mesh, const ProblemOptions& options) {
  const FieldPtr f = bilaplacian(u);
  const DiscreteSolution s = solve_problem(mesh, *f, options);
  const ShapeCache cache(mesh.dim(), gauss_rule(options.quad_error), false);
  ErrorRecord r = error_norms(*u, mesh, s.coeffs, cache);
  r.dofs = s.free_dofs;
  r.report = s.report;
  return r;
}

double observed_order(double e0, double e1, double h0, double h1) { return std::log(e0 / e1) / std::log(h0 / h1); }

RateTable rate_table(std::vector<ErrorRecord> records) {
  if (records.size() < 2) throw std::invalid_argument("rate_table: need at least two records");
  for (std::size_t i = 0; i + 1 < records.size(); ++i)
    if (!(records[i + 1].h < records[i].h)) throw std::invalid_argument("rate_table: h must be strictly decreasing");
  RateTable t;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = records[i + 1];
    t.orders.push_back({observed_order(a.l2, b.l2, a.h, b.h), observed_order(a.h1, b.h1, a.h, b.h),
                        observed_order(a.h2, b.h2, a.h, b.h)});
  }
  t.records = std::move(records);
  return t;
}

LowerBoundReport lower_bound_check(std::span<const double> l2_errors, std::span<const std::size_t> ns) {
  if (l2_errors.size() != ns.size() || ns.empty()) throw std::invalid_argument("lower_bound_check: size mismatch");
  LowerBoundReport r;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = static_cast<double>(ns[i]);
    const double s = l2_errors[i] * n * n;
    r.scaled.push_back(s);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  r.ratio = lo > 0.0 ? hi / lo : INFINITY;
  r.pass = lo > 0.0 && std::isfinite(hi) && r.ratio <= kLowerBoundRatio;
  return r;
}

LowerBoundReport lower_bound_check(const FieldPtr& u, std::size_t dim, std::span<const std::size_t> ns,
                                   const ProblemOptions& options) {
  std::vector<double> errors;
  for (std::size_t n : ns) errors.push_back(run_case(u, unit_mesh(dim, n), options).l2);
  return lower_bound_check(errors, ns);
}

Identity19Report identity19_check(const FieldPtr& u, const BoxMesh& mesh, const ProblemOptions& options) {
  const FieldPtr f = bilaplacian(u);
  const DiscreteSolution s = solve_problem(mesh, *f, options);
  const std::vector<double> pi = nodal_interpolant(*u, mesh);
  const ShapeCache cache(mesh.dim(), gauss_rule(options.quad_error), false);
  const std::size_t d = mesh.dim();

  // Slots: 0 lhs, then the six right-hand terms.
  const auto sums = element_totals(mesh, 7, [&](std::size_t e, std::span<double> acc) {
    const CellGeometry cell = mesh.element_geometry(e);
    const auto entry = cache.get(cell);
    const ElementTable& t = entry->table;
    const auto dofs = global_dofs(mesh, e);
    const auto pl = gather(pi, dofs);
    const auto hl = gather(s.coeffs, dofs);
    DiscreteJet p(d), uh(d);
    std::vector<double> x(d), g(d), hu(d * d), e_h(d * d), p_minus_uh(d * d);
    double v = 0.0;
    for (std::size_t q = 0; q < t.points; ++q) {
      quadrature_point(cell, t, q, x);
      u->jet2(x, v, g, hu);
      p.evaluate(t, q, pl);
      uh.evaluate(t, q, hl);
      const double fx = f->value(x);
      for (std::size_t kl = 0; kl < d * d; ++kl) {
        e_h[kl] = hu[kl] - p.hess[kl];
        p_minus_uh[kl] = p.hess[kl] - uh.hess[kl];
      }
      const double w = t.weights[q];
      acc[0] += w * (-fx * (v - uh.value));
      acc[1] += w * frobenius_dot(hu, p_minus_uh);
      acc[2] += w * (-fx * (p.value - uh.value));
      acc[3] += w * frobenius_dot(e_h, e_h);
      acc[4] += w * -frobenius_dot(e_h, p_minus_uh);
      acc[5] += w * 2.0 * fx * (p.value - v);
      acc[6] += w * 2.0 * frobenius_dot(e_h, p.hess);
    }
  });
  Identity19Report r;
  r.lhs = sums[0];
  for (std::size_t i = 0; i < 6; ++i) {
    r.terms[i] = sums[i + 1];
    r.rhs += sums[i + 1];
  }
  r.residual = std::abs(r.lhs - r.rhs) / (std::abs(r.lhs) + std::abs(r.rhs) + 1.0);
  r.report = s.report;
  return r;
}

}  // namespace adini
