#include "adini/assembly.hpp"
#include "adini/lemmas.hpp"
#include "adini/linsolve.hpp"
#include "adini/parallel.hpp"
#include "support.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace adini {
namespace {

using test::q;

// Exact element stiffness sum_{k,l} int_K d_kl phi_a d_kl phi_b.
std::vector<std::vector<Rational>> exact_stiffness(const AdiniElement& e) {
  const std::size_t n = e.dof_count(), d = e.dim();
  std::vector<std::vector<RationalPoly>> hess(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) hess[a].push_back(diff(diff(e.basis(a), k), l));
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Rational s = 0;
      for (std::size_t kl = 0; kl < d * d; ++kl) s += integrate_box(hess[a][kl] * hess[b][kl], e.geometry());
      out[a][b] = out[b][a] = s;
    }
  return out;
}

double max_abs(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s = std::max(s, std::abs(v));
  return s;
}

class ByDimension : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ByDimension, LocalStiffnessMatchesExactIntegration) {
  const std::size_t d = GetParam();
  RationalSampler rng(60 + d);
  const QuadRule rule = gauss_rule(4);
  const ShapeCache cache(d, rule);
  for (int t = 0; t < (d == 3 ? 3 : 10); ++t) {
    const Box box = rng.box(d);
    const AdiniElement e = build_element(box);
    const auto exact = exact_stiffness(e);
    const DenseMatrix direct = local_stiffness(e, rule);
    const DenseMatrix& cached = cache.get(CellGeometry::from_box(box))->stiffness;
    const double scale = max_abs(direct);
    for (std::size_t a = 0; a < e.dof_count(); ++a)
      for (std::size_t b = 0; b < e.dof_count(); ++b) {
        EXPECT_NEAR(direct(a, b), to_double(exact[a][b]), 1e-12 * scale);
        EXPECT_NEAR(cached(a, b), to_double(exact[a][b]), 1e-12 * scale);
      }
  }
}

TEST_P(ByDimension, LocalStiffnessIsSymmetricAndAnnihilatesAffineData) {
  const std::size_t d = GetParam();
  RationalSampler rng(70 + d);
  const Box box = rng.box(d);
  const DenseMatrix k = local_stiffness(build_element(box), gauss_rule(4));
  EXPECT_TRUE(k.is_symmetric());
  for (std::size_t axis = 0; axis <= d; ++axis) {
    // Nodal data of 1 or x_axis.
    const RationalPoly p = axis == 0 ? RationalPoly::constant(d, 1) : RationalPoly::variable(d, axis - 1);
    std::vector<double> v;
    for (const auto& vd : nodal_data(p, box)) {
      v.push_back(to_double(vd.value));
      for (const auto& g : vd.gradient) v.push_back(to_double(g));
    }
    const auto kv = k.multiply(v);
    for (double x : kv) EXPECT_NEAR(x, 0.0, 1e-12 * max_abs(k) * (1.0 + norm2(v)));
  }
}

TEST_P(ByDimension, GlobalAffineFieldsAreInTheKernel) {
  const std::size_t d = GetParam();
  const BoxMesh mesh = graded_mesh(RationalVector(d, 0), RationalVector(d, 1), std::vector<std::size_t>(d, 3), 5, 0.3);
  const ShapeCache cache(d, gauss_rule(4));
  const SparseSym a = assemble_unconstrained(mesh, cache);
  double amax = 0.0;
  for (double v : a.values()) amax = std::max(amax, std::abs(v));
  for (std::size_t axis = 0; axis <= d; ++axis) {
    RationalPoly p = RationalPoly::constant(d, q(1, 3));
    if (axis > 0) p += RationalPoly::variable(d, axis - 1);
    const auto v = nodal_interpolant(PolynomialField(p), mesh);
    for (double x : a.multiply(v)) EXPECT_NEAR(x, 0.0, 1e-12 * amax * norm2(v));
  }
}

TEST_P(ByDimension, UnconstrainedKernelHasDimensionDPlusOne) {
  const std::size_t d = GetParam();
  const BoxMesh mesh = unit_mesh(d, 2);
  const SparseSym a = assemble_unconstrained(mesh, ShapeCache(d, gauss_rule(4)));
  const DenseMatrix dense = a.to_dense();
  Eigen::MatrixXd m(dense.rows(), dense.cols());
  for (std::size_t i = 0; i < dense.rows(); ++i)
    for (std::size_t j = 0; j < dense.cols(); ++j) m(static_cast<long>(i), static_cast<long>(j)) = dense(i, j);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  EXPECT_EQ(static_cast<std::size_t>(lu.dimensionOfKernel()), d + 1);
}

TEST_P(ByDimension, ClampedMatrixIsSymmetricPositiveDefinite) {
  const std::size_t d = GetParam();
  const BoxMesh mesh = graded_mesh(RationalVector(d, 0), RationalVector(d, 1), std::vector<std::size_t>(d, 4), 3, 0.2);
  const DofMap dofs(mesh);
  const SparseSym a = assemble(mesh, dofs, ShapeCache(d, gauss_rule(4)));
  EXPECT_EQ(a.size(), dofs.free_count());
  EXPECT_TRUE(a.is_symmetric());
  std::mt19937_64 rng(d);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(a.size());
    for (auto& v : x) v = g(rng);
    EXPECT_GT(dot(x, a.multiply(x)), 0.0);
  }
  for (double v : a.diagonal()) EXPECT_GT(v, 0.0);
  std::vector<double> b(a.size(), 1.0);
  EXPECT_NO_THROW(cg_solve(a, b));
}

INSTANTIATE_TEST_SUITE_P(Dimensions, ByDimension, ::testing::Values(1u, 2u, 3u));

TEST(Assembly, TwoByTwoMeshGivesExactCentreBlock) {
  const BoxMesh mesh = unit_mesh(2, 2);
  const DofMap dofs(mesh);
  const SparseSym a = assemble(mesh, dofs, ShapeCache(2, gauss_rule(4)));
  ASSERT_EQ(a.size(), 3u);
  const std::size_t centre = mesh.vertex_index({1, 1});
  std::vector<std::vector<Rational>> expected(3, std::vector<Rational>(3, 0));
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto ke = exact_stiffness(build_element(mesh.element_box(e)));
    const auto g = global_dofs(mesh, e);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (g[i] / 3 == centre && g[j] / 3 == centre) expected[g[i] % 3][g[j] % 3] += ke[i][j];
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a.entry(i, j), to_double(expected[i][j]), 1e-12 * to_double(expected[0][0]));
}

TEST(Assembly, NoFreeDofsIsAnError) {
  const BoxMesh mesh = unit_mesh(2, 1);
  EXPECT_THROW(assemble(mesh, DofMap(mesh), ShapeCache(2, gauss_rule(4))), std::runtime_error);
}

TEST(Assembly, SparsityPatternDoesNotDependOnJitter) {
  const RationalVector lo{0, 0}, hi{1, 1};
  const BoxMesh u = uniform_mesh(lo, hi, {5, 4});
  const BoxMesh g = graded_mesh(lo, hi, {5, 4}, 9, 0.4);
  const ShapeCache cache(2, gauss_rule(4));
  const SparseSym au = assemble(u, DofMap(u), cache), ag = assemble(g, DofMap(g), cache);
  EXPECT_EQ(au.row_ptr(), ag.row_ptr());
  EXPECT_EQ(au.cols(), ag.cols());
}

TEST(Assembly, ResultIsIndependentOfThreadCount) {
  const BoxMesh mesh = graded_mesh({0, 0, 0}, {1, 1, 1}, {5, 5, 5}, 1, 0.3);
  const DofMap dofs(mesh);
  const std::size_t saved = thread_count();
  set_thread_count(1);
  const SparseSym a1 = assemble(mesh, dofs, ShapeCache(3, gauss_rule(4)));
  const auto b1 = load_vector(*bilaplacian(make_u1(3)), mesh, dofs, ShapeCache(3, gauss_rule(4)));
  set_thread_count(7);
  const SparseSym a7 = assemble(mesh, dofs, ShapeCache(3, gauss_rule(4)));
  const auto b7 = load_vector(*bilaplacian(make_u1(3)), mesh, dofs, ShapeCache(3, gauss_rule(4)));
  set_thread_count(saved);
  EXPECT_EQ(a1.values(), a7.values());
  EXPECT_EQ(b1, b7);
}

TEST(Assembly, LoadVectorOfZeroAndOne) {
  const BoxMesh mesh = unit_mesh(2, 2);
  const DofMap dofs(mesh);
  const ShapeCache cache(2, gauss_rule(4));
  for (double v : load_vector(PolynomialField(RationalPoly(2)), mesh, dofs, cache)) EXPECT_EQ(v, 0.0);
  const auto b = load_vector(PolynomialField(RationalPoly::constant(2, 1)), mesh, dofs, cache);
  // Oracle: the integral of each centre basis function over its four elements.
  const std::size_t centre = mesh.vertex_index({1, 1});
  std::vector<Rational> expected(3, 0);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const AdiniElement el = build_element(mesh.element_box(e));
    const auto g = global_dofs(mesh, e);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] / 3 == centre) expected[g[i] % 3] += integrate_box(el.basis(i), el.geometry());
  }
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(b[k], to_double(expected[k]), 1e-14);
  EXPECT_GT(b[0], 0.0);
}

TEST(Assembly, LoadVectorIsLinear) {
  const BoxMesh mesh = unit_mesh(3, 3);
  const DofMap dofs(mesh);
  const ShapeCache cache(3, gauss_rule(4));
  RationalSampler rng(2);
  const RationalPoly f = rng.total_degree(3, 2), g = rng.total_degree(3, 3);
  const auto bf = load_vector(PolynomialField(f), mesh, dofs, cache);
  const auto bg = load_vector(PolynomialField(g), mesh, dofs, cache);
  const auto bc = load_vector(PolynomialField(Rational(2) * f + Rational(-3) * g), mesh, dofs, cache);
  for (std::size_t i = 0; i < bc.size(); ++i) EXPECT_NEAR(bc[i], 2 * bf[i] - 3 * bg[i], 1e-13);
}

TEST(Assembly, DiscreteSolutionIsGalerkinOrthogonal) {
  const BoxMesh mesh = unit_mesh(2, 6);
  const DofMap dofs(mesh);
  const ShapeCache cache(2, gauss_rule(4));
  const SparseSym a = assemble(mesh, dofs, cache);
  const auto b = load_vector(*bilaplacian(make_u1(2)), mesh, dofs, cache);
  const CgResult sol = cg_solve(a, b, {1e-13, 0});
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int t = 0; t < 10; ++t) {
    std::vector<double> v(a.size());
    for (auto& x : v) x = n(rng);
    const double lhs = dot(a.multiply(sol.x), v), rhs = dot(b, v);
    EXPECT_NEAR(lhs, rhs, 1e-9 * norm2(b) * norm2(v));
  }
}

TEST(Assembly, NodalInterpolantHoldsValuesAndGradients) {
  const BoxMesh mesh = unit_mesh(2, 2);
  const RationalPoly p = test::poly(2, {{{2, 1}, 1}, {{0, 1}, 3}});
  const auto v = nodal_interpolant(PolynomialField(p), mesh);
  ASSERT_EQ(v.size(), 27u);
  const std::size_t vertex = mesh.vertex_index({2, 1});  // (1, 1/2)
  EXPECT_DOUBLE_EQ(v[vertex * 3], 0.5 + 1.5);
  EXPECT_DOUBLE_EQ(v[vertex * 3 + 1], 1.0);
  EXPECT_DOUBLE_EQ(v[vertex * 3 + 2], 4.0);
}

TEST(Assembly, DumpFormat) {
  const BoxMesh mesh = unit_mesh(2, 3);
  const SparseSym a = assemble(mesh, DofMap(mesh), ShapeCache(2, gauss_rule(4)));
  std::ostringstream os;
  dump_matrix(os, a);
  std::istringstream is(os.str());
  std::size_t n = 0, nnz = 0;
  is >> n >> nnz;
  EXPECT_EQ(n, a.size());
  EXPECT_EQ(nnz, a.nnz());
  std::size_t lines = 0, i = 0, j = 0;
  double v = 0;
  while (is >> i >> j >> v) {
    EXPECT_EQ(v, a.entry(i, j));
    ++lines;
  }
  EXPECT_EQ(lines, nnz);
}

}  // namespace
}  // namespace adini
