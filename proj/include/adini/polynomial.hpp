#pragma once

#include "adini/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace adini {

/// Multi-index alpha = (alpha_1, ..., alpha_d).
using Exponent = std::vector<int>;

int total_degree(const Exponent& alpha);

/// Unit multi-index e_axis of length dim.
Exponent unit_exponent(std::size_t dim, std::size_t axis);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a sorted map from exponent to coefficient with zero
/// coefficients pruned, so two polynomials are equal iff their term maps are.
/// A polynomial of dimension 0 is a constant; it only arises as the trace of a
/// one-dimensional polynomial on a point face.
class RationalPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit RationalPoly(std::size_t dim = 1) : dim_(dim) {}

  static RationalPoly constant(std::size_t dim, const Rational& c);
  static RationalPoly variable(std::size_t dim, std::size_t axis);
  static RationalPoly monomial(const Exponent& alpha, const Rational& c = 1);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of x^alpha (zero if absent).
  Rational coefficient(const Exponent& alpha) const;

  /// Adds c * x^alpha, pruning the term if it cancels.
  void add_term(const Exponent& alpha, const Rational& c);

  /// Highest exponent of x_axis among all terms (-1 for the zero polynomial).
  int degree(std::size_t axis) const;
  /// Largest per-axis exponent over all axes and terms.
  int max_axis_degree() const;
  int total_degree() const;

  RationalPoly& operator+=(const RationalPoly& q);
  RationalPoly& operator-=(const RationalPoly& q);
  RationalPoly& operator*=(const Rational& c);

  friend bool operator==(const RationalPoly& p, const RationalPoly& q) {
    return p.dim_ == q.dim_ && p.terms_ == q.terms_;
  }

 private:
  std::size_t dim_;
  TermMap terms_;
};

RationalPoly add(const RationalPoly& p, const RationalPoly& q);
RationalPoly sub(const RationalPoly& p, const RationalPoly& q);
RationalPoly mul(const RationalPoly& p, const RationalPoly& q);
RationalPoly scale(const RationalPoly& p, const Rational& c);

inline RationalPoly operator+(const RationalPoly& p, const RationalPoly& q) { return add(p, q); }
inline RationalPoly operator-(const RationalPoly& p, const RationalPoly& q) { return sub(p, q); }
inline RationalPoly operator*(const RationalPoly& p, const RationalPoly& q) { return mul(p, q); }
inline RationalPoly operator*(const Rational& c, const RationalPoly& p) { return scale(p, c); }
inline RationalPoly operator-(const RationalPoly& p) { return scale(p, -1); }

RationalPoly pow(const RationalPoly& p, unsigned exponent);

RationalPoly diff(const RationalPoly& p, std::size_t axis);
/// d^|alpha| p / dx^alpha.
RationalPoly diff(const RationalPoly& p, const Exponent& alpha);

/// Antiderivative along one axis with zero constant of integration.
RationalPoly antiderivative(const RationalPoly& p, std::size_t axis);

/// q(x) = p(x - shift).
RationalPoly shifted(const RationalPoly& p, std::span<const Rational> shift);

/// q(x) = p(factor_1 x_1, ..., factor_d x_d).
RationalPoly scaled_variables(const RationalPoly& p, std::span<const Rational> factor);

/// Exact evaluation by nested Horner over the axes.
Rational eval(const RationalPoly& p, std::span<const Rational> x);
/// Term-by-term sum of c * x^alpha; the reference for eval.
Rational eval_naive(const RationalPoly& p, std::span<const Rational> x);

std::string to_string(const RationalPoly& p);

enum class Side { low, high };

/// Axis-aligned d-rectangle {x_c + xi * h : xi in [-1, 1]^d}.
class Box {
 public:
  Box(RationalVector center, RationalVector half_lengths);

  /// [-1, 1]^dim.
  static Box reference(std::size_t dim);
  /// Box with the given lower and upper corners.
  static Box from_bounds(const RationalVector& lower, const RationalVector& upper);

  std::size_t dim() const { return center_.size(); }
  const RationalVector& center() const { return center_; }
  const RationalVector& half_lengths() const { return half_; }
  Rational lower(std::size_t axis) const { return center_[axis] - half_[axis]; }
  Rational upper(std::size_t axis) const { return center_[axis] + half_[axis]; }
  Rational face_coordinate(std::size_t axis, Side side) const {
    return side == Side::low ? lower(axis) : upper(axis);
  }
  Rational measure() const;

  std::size_t vertex_count() const { return std::size_t{1} << dim(); }
  /// Sign pattern of vertex v in {-1, +1}^d, lexicographic with xi_1 most significant.
  std::vector<int> vertex_signs(std::size_t v) const;
  RationalVector vertex(std::size_t v) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  RationalVector center_;
  RationalVector half_;
};

/// Exact integral over the box.
Rational integrate_box(const RationalPoly& p, const Box& box);

/// Trace on the face x_axis = x_{axis,c} -/+ h_axis, as a polynomial in the
/// remaining dim-1 variables (axis order preserved).
RationalPoly restrict_face(const RationalPoly& p, std::size_t axis, Side side, const Box& box);

/// Substitutes x_axis = value, keeping the variable count (the axis is left with exponent 0).
RationalPoly substitute(const RationalPoly& p, std::size_t axis, const Rational& value);

}  // namespace adini
