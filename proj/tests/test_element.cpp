#include "adini/element.hpp"
#include "adini/lemmas.hpp"
#include "adini/shape_table.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace adini {
namespace {

using test::poly;
using test::q;

// Independent enumeration of {0..3}^d filtered by the P_A membership rule.
std::vector<Exponent> enumerate_adini_monomials(std::size_t d) {
  std::vector<Exponent> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    Exponent alpha(d);
    std::size_t rem = code;
    for (std::size_t k = 0; k < d; ++k) {
      alpha[k] = static_cast<int>(rem % 4);
      rem /= 4;
    }
    int high = 0;
    for (int a : alpha) high += a >= 2;
    if (high == 0 || (high == 1)) out.push_back(alpha);
  }
  std::sort(out.begin(), out.end());
  return out;
}

class ByDimension : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ByDimension, ShapeMonomialsMatchEnumeration) {
  const std::size_t d = GetParam();
  const auto m = shape_monomials(d);
  EXPECT_EQ(m.size(), (d + 1) * (std::size_t{1} << d));
  EXPECT_EQ(std::set<Exponent>(m.begin(), m.end()).size(), m.size());
  EXPECT_EQ(m, enumerate_adini_monomials(d));
}

TEST_P(ByDimension, UnisolventOnRandomBoxes) {
  const std::size_t d = GetParam();
  RationalSampler rng(100 + d);
  for (int t = 0; t < 20; ++t) {
    const Box box = rng.box(d);
    const AdiniElement e = build_element(box);
    EXPECT_EQ(e.dof_count(), adini_dof_count(d));
    EXPECT_TRUE(unisolvent(e)) << to_string(box.center()[0]);
  }
}

TEST_P(ByDimension, VandermondeDeterminantIsNonzero) {
  const std::size_t d = GetParam();
  RationalSampler rng(200 + d);
  const Box box = rng.box(d);
  const auto monomials = shape_monomials(d);
  const std::size_t n = monomials.size();
  // Rows: parameters (vertex value, then each partial); columns: physical monomials.
  std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n));
  for (std::size_t vert = 0; vert < box.vertex_count(); ++vert) {
    const auto x = box.vertex(vert);
    for (std::size_t c = 0; c < n; ++c) {
      const Exponent& a = monomials[c];
      Rational value = 1;
      for (std::size_t k = 0; k < d; ++k) value *= pow(x[k], static_cast<unsigned>(a[k]));
      v[vert * (d + 1)][c] = value;
      for (std::size_t k = 0; k < d; ++k) {
        Rational g = a[k] == 0 ? Rational(0) : Rational(a[k]) * pow(x[k], static_cast<unsigned>(a[k] - 1));
        for (std::size_t l = 0; l < d; ++l)
          if (l != k) g *= pow(x[l], static_cast<unsigned>(a[l]));
        v[vert * (d + 1) + 1 + k][c] = g;
      }
    }
  }
  EXPECT_NE(test::determinant(v), 0);
  EXPECT_NE(build_element(box).vandermonde_determinant(), 0);
}

TEST_P(ByDimension, BasisLiesInShapeSpace) {
  const std::size_t d = GetParam();
  const AdiniElement e = build_element(Box::reference(d));
  for (const auto& phi : e.basis()) EXPECT_TRUE(in_adini_space(phi));
}

TEST_P(ByDimension, CubicsAreReproduced) {
  const std::size_t d = GetParam();
  RationalSampler rng(300 + d);
  const Box box = rng.box(d);
  const AdiniElement e = build_element(box);
  for (int t = 0; t < 20; ++t) {
    const RationalPoly p = rng.total_degree(d, 3);
    EXPECT_EQ(interp_nodal(nodal_data(p, box), e), p);
  }
}

TEST_P(ByDimension, PureSecondDerivativesAreBilinear) {
  const std::size_t d = GetParam();
  RationalSampler rng(400 + d);
  const AdiniElement e = build_element(rng.box(d));
  const ShapeDerivatives sd = shape_derivatives(e);
  for (std::size_t a = 0; a < e.dof_count(); ++a) {
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_TRUE(in_q1(sd.second[a][i][i]));
      for (std::size_t j = 0; j < d; ++j) EXPECT_EQ(sd.second[a][i][j], sd.second[a][j][i]);
    }
  }
}

TEST_P(ByDimension, ScaledReferenceTableMatchesDirectTabulation) {
  const std::size_t d = GetParam();
  RationalSampler rng(500 + d);
  const QuadRule rule = gauss_rule(4);
  const ReferenceTable ref(d, rule);
  for (int t = 0; t < 3; ++t) {
    const Box box = rng.box(d);
    const ElementTable direct = tabulate(build_element(box), rule);
    const ElementTable scaled = ref.scaled(CellGeometry::from_box(box));
    ASSERT_EQ(direct.value.size(), scaled.value.size());
    auto compare = [](const std::vector<double>& a, const std::vector<double>& b) {
      double scale = 0.0;
      for (double v : a) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12 * scale) << i;
    };
    compare(direct.value, scaled.value);
    compare(direct.grad, scaled.grad);
    compare(direct.hess, scaled.hess);
    for (std::size_t qp = 0; qp < direct.points; ++qp) EXPECT_DOUBLE_EQ(direct.weights[qp], scaled.weights[qp]);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, ByDimension, ::testing::Values(1u, 2u, 3u));

TEST(Element, HermiteBasisOnReferenceInterval) {
  const AdiniElement e = build_element(Box::reference(1));
  // Value 1 at xi = -1, slope 0 there, zero value and slope at xi = +1:
  // (1/4)(1 - xi)^2 (2 + xi) = (2 - 3 xi + xi^3) / 4.
  EXPECT_EQ(e.basis(0), poly(1, {{{0}, q(1, 2)}, {{1}, q(-3, 4)}, {{3}, q(1, 4)}}));
}

TEST(Element, NodalMatrixIsIdentity) {
  RationalSampler rng(9);
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto m = nodal_matrix(build_element(rng.box(d)));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m[i][j], i == j ? 1 : 0);
  }
}

TEST(Element, InterpNodalExamples) {
  const Box ref = Box::reference(2);
  const AdiniElement e = build_element(ref);
  const RationalPoly p = poly(2, {{{3, 1}, 1}});
  EXPECT_EQ(interp_nodal(nodal_data(p, ref), e), p);
  NodalValues zero(4, VertexData{0, {0, 0}});
  EXPECT_TRUE(interp_nodal(zero, e).is_zero());
  const RationalPoly bil = poly(2, {{{1, 1}, 3}, {{1, 0}, -2}, {{0, 0}, q(1, 7)}});
  EXPECT_EQ(interp_nodal(nodal_data(bil, ref), e), bil);
}

TEST(Element, InterpBilinearExamples) {
  const Box ref = Box::reference(2);
  const RationalPoly x1x2 = poly(2, {{{1, 1}, 1}});
  EXPECT_EQ(interp_bilinear(nodal_data(x1x2, ref), ref), x1x2);
  const RationalPoly x1sq = poly(2, {{{2, 0}, 1}});
  EXPECT_EQ(interp_bilinear(nodal_data(x1sq, ref), ref), RationalPoly::constant(2, 1));
  const RationalPoly c = RationalPoly::constant(2, q(5, 3));
  EXPECT_EQ(interp_bilinear(nodal_data(c, ref), ref), c);
}

TEST(Element, CellAverageExamples) {
  RationalSampler rng(4);
  const Box box = rng.box(3);
  EXPECT_EQ(cell_average(RationalPoly::constant(3, q(2, 9)), box), q(2, 9));
  const Box centred({0, 0}, {q(1, 3), 2});
  EXPECT_EQ(cell_average(poly(2, {{{1, 0}, 1}}), centred), 0);
  EXPECT_EQ(cell_average(poly(3, {{{2, 0, 0}, 1}}), Box::reference(3)), q(1, 3));
}

TEST(Element, R1Examples) {
  const Box ref = Box::reference(3);
  EXPECT_TRUE(r1(poly(3, {{{1, 1, 1}, 2}, {{0, 1, 0}, 1}}), ref).is_zero());
  EXPECT_EQ(r1(poly(3, {{{2, 0, 0}, 1}}), ref), poly(3, {{{2, 0, 0}, 1}, {{0, 0, 0}, -1}}));
  RationalSampler rng(6);
  for (int t = 0; t < 10; ++t) {
    const Box box = rng.box(2);
    const RationalPoly p = rng.total_degree(2, 4);
    const RationalPoly once = r1(p, box);
    EXPECT_EQ(r1(once, box), once);
    for (std::size_t v = 0; v < box.vertex_count(); ++v) EXPECT_EQ(eval(once, box.vertex(v)), 0);
  }
}

TEST(Element, FaceExpansionCoefficientsFromTwoDimensionalDisplay) {
  const Box ref = Box::reference(2);
  EXPECT_EQ(b_coefficient(ref, 0, 1, {1, 2}), poly(2, {{{0, 2}, q(1, 2)}, {{0, 0}, q(-1, 2)}}));
  EXPECT_EQ(b_coefficient(ref, 0, 1, {1, 3}), poly(2, {{{0, 3}, q(1, 6)}, {{0, 1}, q(-1, 6)}}));
}

TEST(Element, FaceExpansionCoefficientsVanishOnFacesNormalToJ) {
  RationalSampler rng(8);
  for (int t = 0; t < 5; ++t) {
    const Box box = rng.box(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        for (const auto& alpha : m_set(3, i, j))
          for (Side s : {Side::low, Side::high}) EXPECT_TRUE(restrict_face(b_coefficient(box, i, j, alpha), j, s, box).is_zero());
      }
  }
}

TEST(Element, FaceExpansionCoefficientRejectsIndicesOutsideM) {
  const Box ref = Box::reference(2);
  EXPECT_THROW(b_coefficient(ref, 0, 1, {1, 1}), std::invalid_argument);
  EXPECT_THROW(b_coefficient(ref, 0, 1, {0, 2}), std::invalid_argument);
  EXPECT_THROW(b_coefficient(ref, 0, 0, {1, 2}), std::invalid_argument);
  EXPECT_EQ(m_set(3, 0, 1).size(), 4u);
}

TEST(Element, ShapeDerivativesMatchDirectDifferentiation) {
  const AdiniElement e = build_element(Box({q(1, 2), 2}, {q(1, 4), q(3, 2)}));
  const ShapeDerivatives sd = shape_derivatives(e);
  ASSERT_EQ(sd.first.size(), e.dof_count());
  for (std::size_t a = 0; a < e.dof_count(); ++a)
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(sd.first[a][k], diff(e.basis(a), k));
      for (std::size_t l = 0; l < 2; ++l) EXPECT_EQ(sd.second[a][k][l], diff(diff(e.basis(a), l), k));
    }
}

TEST(Element, NodalDataRejectsWrongShape) {
  const AdiniElement e = build_element(Box::reference(2));
  EXPECT_THROW(interp_nodal(NodalValues(3, VertexData{0, {0, 0}}), e), std::invalid_argument);
  EXPECT_THROW(interp_nodal(NodalValues(4, VertexData{0, {0}}), e), std::invalid_argument);
}

}  // namespace
}  // namespace adini
