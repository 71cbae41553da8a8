#include "adini/field.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace adini {
namespace {

using test::poly;
using test::q;

std::vector<std::vector<double>> random_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<std::vector<double>> out(count, std::vector<double>(dim));
  for (auto& p : out)
    for (auto& v : p) v = u(rng);
  return out;
}

double d_alpha(const Field& f, std::span<const double> x, std::vector<int> alpha) { return f.derivative(x, alpha); }

TEST(Field, SineSquaredFirstDerivativesMatchCentralDifferences) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const FieldPtr u = make_u1(d);
    for (auto x : random_points(d, 20, d)) {
      for (std::size_t k = 0; k < d; ++k) {
        const double step = 1e-5;
        auto xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        const double fd = (u->value(xp) - u->value(xm)) / (2 * step);
        std::vector<int> alpha(d, 0);
        alpha[k] = 1;
        EXPECT_NEAR(d_alpha(*u, x, alpha), fd, 1e-5);
      }
    }
  }
}

TEST(Field, SineSquaredClosedFormValue) {
  const FieldPtr u = make_u1(2);
  const std::vector<double> x{0.25, 0.5};
  EXPECT_NEAR(u->value(x), 0.5, 1e-15);
  const std::vector<double> corner{0.0, 0.3};
  EXPECT_NEAR(u->value(corner), 0.0, 1e-15);
}

TEST(Field, SineSquaredBilaplacianMatchesFiniteDifferences) {
  // Fourth-order 5-point stencil applied twice to the analytic second derivatives,
  // independent of the closed-form fourth derivatives.
  for (std::size_t d = 1; d <= 3; ++d) {
    const FieldPtr u = make_u1(d);
    const FieldPtr f = bilaplacian(u);
    for (auto x : random_points(d, 100 / d, 40 + d)) {
      const double s = 1e-3;
      double expected = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<int> aii(d, 0);
        aii[i] = 2;
        for (std::size_t j = 0; j < d; ++j) {
          auto g = [&](double t) {
            auto y = x;
            y[j] += t;
            return u->derivative(y, aii);
          };
          expected += (-g(2 * s) + 16 * g(s) - 30 * g(0) + 16 * g(-s) - g(-2 * s)) / (12 * s * s);
        }
      }
      EXPECT_NEAR(f->value(x), expected, 1e-6 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(Field, QuinticProductHasSymbolicBilaplacian) {
  const RationalPoly u = u2_polynomial(2);
  const RationalPoly f = bilaplacian(u);
  // Oracle: sum_{i,j} d^4 u / dx_i^2 dx_j^2 by direct differentiation.
  RationalPoly expected(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Exponent a(2, 0);
      a[i] += 2;
      a[j] += 2;
      expected += diff(u, a);
    }
  EXPECT_EQ(f, expected);
  const FieldPtr fu = bilaplacian(make_u2(2));
  ASSERT_NE(fu->polynomial(), nullptr);
  EXPECT_EQ(*fu->polynomial(), expected);
  // In 1D the fourth derivative of x^2 (1 - x)^2 is 24.
  EXPECT_EQ(bilaplacian(u2_polynomial(1)), RationalPoly::constant(1, 24));
}

TEST(Field, U2VanishesWithGradientOnBoundary) {
  const FieldPtr u = make_u2(3);
  for (double t : {0.0, 1.0}) {
    const std::vector<double> x{t, 0.3, 0.7};
    EXPECT_NEAR(u->value(x), 0.0, 1e-15);
    EXPECT_NEAR(u->derivative(x, std::vector<int>{1, 0, 0}), 0.0, 1e-15);
  }
}

TEST(Field, Jet2AgreesWithDerivative) {
  const FieldPtr u = make_u1(3);
  const std::vector<double> x{0.2, 0.6, 0.35};
  double value = 0;
  std::vector<double> grad(3), hess(9);
  u->jet2(x, value, grad, hess);
  EXPECT_NEAR(value, u->value(x), 1e-15);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) {
      std::vector<int> a(3, 0);
      ++a[k];
      ++a[l];
      EXPECT_NEAR(hess[k * 3 + l], u->derivative(x, a), 1e-12);
    }
}

TEST(Field, PolynomialFileParsing) {
  std::istringstream is("# comment\n3/2 2 0\n-1 0 1  # trailing\n\n0.5 2 0\n");
  EXPECT_EQ(read_polynomial(is, 2), poly(2, {{{2, 0}, 2}, {{0, 1}, -1}}));
}

TEST(Field, PolynomialFileErrors) {
  for (const char* text : {"", "# only\n", "1 2\n", "1 2 3 4\n", "x 1 1\n", "1 -1 0\n", "1 1.5 0\n"}) {
    std::istringstream is(text);
    EXPECT_THROW(read_polynomial(is, 2), std::runtime_error) << text;
  }
}

TEST(Field, MakeSolutionFromIdentifiersAndFiles) {
  EXPECT_EQ(make_solution("u1", 2)->polynomial(), nullptr);
  ASSERT_NE(make_solution("u2", 2)->polynomial(), nullptr);
  EXPECT_EQ(*make_solution("u2", 2)->polynomial(), u2_polynomial(2));
  const std::string path = ::testing::TempDir() + "adini_field_poly.txt";
  {
    std::ofstream os(path);
    os << "1 1 1\n";
  }
  EXPECT_EQ(*make_solution(path, 2)->polynomial(), poly(2, {{{1, 1}, 1}}));
  std::remove(path.c_str());
  EXPECT_THROW(make_solution("/nonexistent/adini/poly", 2), std::runtime_error);
}

TEST(Field, DerivativeRejectsBadMultiIndex) {
  const FieldPtr u = make_u1(2);
  const std::vector<double> x{0.1, 0.2};
  EXPECT_THROW(u->derivative(x, std::vector<int>{1}), std::invalid_argument);
}

}  // namespace
}  // namespace adini
