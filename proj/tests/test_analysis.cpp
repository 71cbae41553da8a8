#include "adini/analysis.hpp"
#include "adini/lemmas.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace adini {
namespace {

using test::poly;

TEST(ErrorNorms, GlobalCubicsAreReproducedExactly) {
  RationalSampler rng(12);
  for (std::size_t d = 1; d <= 3; ++d) {
    const BoxMesh mesh = graded_mesh(RationalVector(d, 0), RationalVector(d, 1), std::vector<std::size_t>(d, 3), 8, 0.3);
    const ShapeCache cache(d, gauss_rule(6));
    const PolynomialField u(rng.total_degree(d, 3));
    const auto coeffs = nodal_interpolant(u, mesh);
    const ErrorRecord r = error_norms(u, mesh, coeffs, cache);
    EXPECT_LE(r.l2, 1e-12) << d;
    EXPECT_LE(r.h1, 1e-12) << d;
    EXPECT_LE(r.h2, 1e-11) << d;
    EXPECT_NEAR(r.h, mesh.h(), 0.0);
  }
}

TEST(ErrorNorms, ZeroFieldAgainstOwnZeroCoefficients) {
  const BoxMesh mesh = unit_mesh(2, 4);
  const std::vector<double> zero(mesh.vertex_count() * 3, 0.0);
  const ErrorRecord r = error_norms(PolynomialField(RationalPoly(2)), mesh, zero, ShapeCache(2, gauss_rule(6)));
  EXPECT_EQ(r.l2, 0.0);
  EXPECT_EQ(r.h2, 0.0);
}

TEST(ErrorNorms, L2NormOfKnownPolynomialAgainstZero) {
  // ||x y||_{L2(0,1)^2} = 1/3.
  const BoxMesh mesh = unit_mesh(2, 2);
  const std::vector<double> zero(mesh.vertex_count() * 3, 0.0);
  const ErrorRecord r = error_norms(PolynomialField(poly(2, {{{1, 1}, 1}})), mesh, zero, ShapeCache(2, gauss_rule(6)));
  EXPECT_NEAR(r.l2, 1.0 / 3.0, 1e-14);
  // |x y|_2^2 = 2 * int 1 = 2.
  EXPECT_NEAR(r.h2, std::sqrt(2.0), 1e-14);
  EXPECT_THROW(error_norms(PolynomialField(RationalPoly(2)), mesh, std::vector<double>(5), ShapeCache(2, gauss_rule(6))),
               std::invalid_argument);
}

TEST(Convergence, QuinticProductHalvesBrokenH2ErrorAtSecondOrder) {
  const FieldPtr u = make_u2(2);
  const ErrorRecord coarse = run_case(u, unit_mesh(2, 8));
  const ErrorRecord fine = run_case(u, unit_mesh(2, 16));
  const double ratio = coarse.h2 / fine.h2;
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
  EXPECT_LT(fine.l2, coarse.l2);
  EXPECT_EQ(fine.dofs, 3u * 15u * 15u);
}

TEST(Consistency, ZeroProbeGivesZero) {
  const BoxMesh mesh = unit_mesh(2, 4);
  const FieldPtr u = make_u1(2);
  const std::vector<double> w(mesh.vertex_count() * 3, 0.0);
  EXPECT_EQ(consistency_error(*u, *bilaplacian(u), mesh, w, ShapeCache(2, gauss_rule(6))), 0.0);
}

TEST(Consistency, OneDimensionalHermiteSpaceIsConforming) {
  // Cubic Hermite functions are C^1, so integration by parts leaves no jump terms.
  const FieldPtr u = make_u2(1);
  const FieldPtr w = random_clamped_field(1, 3);
  for (std::size_t n : {4u, 8u}) {
    const ConsistencyRecord r = measure_consistency(u, w, unit_mesh(1, n));
    EXPECT_LE(std::abs(r.error), 1e-12 * r.w_norm) << n;
  }
}

TEST(Consistency, RatioDecaysUnderRefinement) {
  const FieldPtr u = make_u2(2);
  const FieldPtr w = random_clamped_field(2, 7);
  const ConsistencyRecord a = measure_consistency(u, w, unit_mesh(2, 4));
  const ConsistencyRecord b = measure_consistency(u, w, unit_mesh(2, 8));
  EXPECT_GT(a.w_norm, 0.0);
  EXPECT_LT(b.ratio, a.ratio / 2.5);
  EXPECT_NEAR(a.ratio, std::abs(a.error) / a.w_norm, 1e-15 * a.ratio);
}

TEST(Consistency, ProbeIsClampedAndSeeded) {
  const FieldPtr w = random_clamped_field(3, 5);
  const std::vector<double> face{1.0, 0.4, 0.6};
  EXPECT_NEAR(w->value(face), 0.0, 1e-14);
  EXPECT_NEAR(w->derivative(face, std::vector<int>{1, 0, 0}), 0.0, 1e-14);
  const std::vector<double> inside{0.3, 0.4, 0.6};
  EXPECT_EQ(w->value(inside), random_clamped_field(3, 5)->value(inside));
  EXPECT_NE(w->value(inside), random_clamped_field(3, 6)->value(inside));
}

TEST(InterpolationDefect, CubicsHaveNoDefect) {
  RationalSampler rng(1);
  const AdiniElement e = build_element(rng.box(2));
  const RationalPoly u = rng.total_degree(2, 3), v = rng.adini(2);
  const auto [lhs, rhs] = interpolation_defect_sides(u, v, e);
  EXPECT_EQ(lhs, 0);
  EXPECT_EQ(rhs, 0);
}

TEST(InterpolationDefect, PureQuarticAgainstConstantCurvature) {
  RationalSampler rng(2);
  const AdiniElement e = build_element(rng.box(2));
  const RationalPoly u = poly(2, {{{4, 0}, 1}});
  const RationalPoly v = poly(2, {{{2, 0}, 1}});
  const auto [lhs, rhs] = interpolation_defect_sides(u, v, e);
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(rhs, 0);
}

TEST(InterpolationDefect, MixedQuarticMatchesClosedForm) {
  // u = x^2 y^2 on the reference square, v = x^2: the right side is
  // -h_y^2/3 * int 4 * 2 = -(1/3) * 8 * 4 = -32/3.
  const AdiniElement e = build_element(Box::reference(2));
  const auto [lhs, rhs] = interpolation_defect_sides(poly(2, {{{2, 2}, 1}}), poly(2, {{{2, 0}, 1}}), e);
  EXPECT_EQ(rhs, test::q(-32, 3));
  EXPECT_EQ(lhs, rhs);
}

TEST(ErrorIdentity, ZeroSolutionGivesZeroes) {
  const auto zero = std::make_shared<PolynomialField>(RationalPoly(2));
  const Identity19Report z = identity19_check(zero, unit_mesh(2, 4));
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  EXPECT_EQ(z.residual, 0.0);
}

TEST(ErrorIdentity, HoldsForBothSolutionsInTwoAndThreeDimensions) {
  // The identity needs Galerkin orthogonality under the rule used for the
  // error terms, so the load vector of the non-polynomial solution uses it too.
  ProblemOptions matched;
  matched.quad_assembly = matched.quad_error;
  for (std::size_t d = 2; d <= 3; ++d)
    for (const FieldPtr& u : {make_u1(d), make_u2(d)}) {
      const Identity19Report r = identity19_check(u, unit_mesh(d, 4), matched);
      EXPECT_LE(r.residual, 1e-8) << d;
      double sum = 0.0;
      for (double t : r.terms) sum += t;
      EXPECT_NEAR(sum, r.rhs, 1e-14 * std::abs(r.rhs));
    }
}

TEST(ErrorIdentity, LooseSolverToleranceShowsUp) {
  const FieldPtr u = make_u1(2);
  ProblemOptions tight, loose;
  tight.cg.tol = 1e-12;
  loose.cg.tol = 1e-3;
  const double rt = identity19_check(u, unit_mesh(2, 8), tight).residual;
  const double rl = identity19_check(u, unit_mesh(2, 8), loose).residual;
  EXPECT_GT(rl, rt);
}

TEST(LowerBound, SecondOrderErrorsPass) {
  const std::vector<std::size_t> ns{4, 8, 16};
  const std::vector<double> errors{1.0 / 16, 1.0 / 64, 1.0 / 256};
  const LowerBoundReport r = lower_bound_check(errors, ns);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.ratio, 1.0, 1e-14);
}

TEST(LowerBound, ThirdOrderErrorsFail) {
  const std::vector<std::size_t> ns{4, 8, 16, 32, 64};
  std::vector<double> errors;
  for (std::size_t n : ns) errors.push_back(std::pow(static_cast<double>(n), -3.0));
  const LowerBoundReport r = lower_bound_check(errors, ns);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.ratio, 16.0, 1e-12);
}

TEST(LowerBound, ZeroErrorFailsAndSizesMustMatch) {
  const std::vector<std::size_t> ns{4, 8};
  const std::vector<double> errors{0.0, 0.0};
  EXPECT_FALSE(lower_bound_check(errors, ns).pass);
  const std::vector<double> one{1.0};
  EXPECT_THROW(lower_bound_check(one, ns), std::invalid_argument);
}

ErrorRecord synthetic(double h, double p) {
  ErrorRecord r;
  r.h = h;
  r.l2 = std::pow(h, p);
  r.h1 = std::pow(h, p - 1);
  r.h2 = std::pow(h, p - 2);
  return r;
}

TEST(RateTable, RecoversPowerLaws) {
  for (double p : {2.0, 4.0}) {
    const RateTable t = rate_table({synthetic(0.5, p), synthetic(0.25, p), synthetic(0.125, p)});
    ASSERT_EQ(t.orders.size(), 2u);
    for (const auto& o : t.orders) {
      EXPECT_NEAR(o[0], p, 1e-12);
      EXPECT_NEAR(o[1], p - 1, 1e-12);
      EXPECT_NEAR(o[2], p - 2, 1e-12);
    }
  }
  EXPECT_NEAR(observed_order(1.0, 0.25, 0.2, 0.1), 2.0, 1e-14);
}

TEST(RateTable, RejectsBadInput) {
  EXPECT_THROW(rate_table({synthetic(0.5, 2)}), std::invalid_argument);
  EXPECT_THROW(rate_table({synthetic(0.25, 2), synthetic(0.5, 2)}), std::invalid_argument);
  EXPECT_THROW(rate_table({synthetic(0.25, 2), synthetic(0.25, 2)}), std::invalid_argument);
}

}  // namespace
}  // namespace adini
