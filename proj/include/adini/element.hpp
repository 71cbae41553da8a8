#pragma once

#include "adini/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace adini {

/// Value and full gradient at one vertex.
struct VertexData {
  Rational value;
  RationalVector gradient;
};

/// Nodal parameters D(v) of one cell, vertices in Box::vertex order.
using NodalValues = std::vector<VertexData>;

/// Number of nodal parameters, (d+1) * 2^d.
constexpr std::size_t adini_dof_count(std::size_t d) { return (d + 1) << d; }

/// Monomial basis of Q1 + sum_i x_i^2 Q1: every alpha with all entries <= 1,
/// plus, for each axis i, alpha_i in {2, 3} with the other entries <= 1.
std::vector<Exponent> shape_monomials(std::size_t d);

/// True iff the exponent support of p lies inside shape_monomials(p.dim()).
bool in_adini_space(const RationalPoly& p);
/// True iff every per-axis exponent of p is <= 1.
bool in_q1(const RationalPoly& p);

/// The nodal basis of the Adini element on one d-rectangle.
///
/// Local parameter index = vertex * (d+1) + k, where k = 0 is the vertex value
/// and k = 1..d the physical partial derivative along axis k-1. The basis is a
/// list of polynomials in physical coordinates with phi_a dual to parameter a.
class AdiniElement {
 public:
  explicit AdiniElement(Box geometry);

  std::size_t dim() const { return geometry_.dim(); }
  std::size_t dof_count() const { return basis_.size(); }
  std::size_t vertex_count() const { return geometry_.vertex_count(); }
  const Box& geometry() const { return geometry_; }
  const std::vector<Exponent>& monomials() const { return monomials_; }
  const std::vector<RationalPoly>& basis() const { return basis_; }
  const RationalPoly& basis(std::size_t a) const { return basis_.at(a); }
  /// Determinant of the centred Vandermonde matrix the basis was solved from.
  const Rational& vandermonde_determinant() const { return determinant_; }

 private:
  Box geometry_;
  std::vector<Exponent> monomials_;
  std::vector<RationalPoly> basis_;
  Rational determinant_;
};

/// Builds the nodal basis by exact inversion of the generalised Vandermonde
/// matrix. Throws std::logic_error if the matrix is singular.
AdiniElement build_element(const Box& box);

/// Nodal parameter `index` (see AdiniElement) applied to p.
Rational apply_parameter(const RationalPoly& p, const Box& box, std::size_t index);

/// Full nodal data D(p) on a box.
NodalValues nodal_data(const RationalPoly& p, const Box& box);

/// Matrix of parameters applied to the element's own basis (the identity for a valid element).
std::vector<std::vector<Rational>> nodal_matrix(const AdiniElement& element);

/// Pi_K: the element of P_A(K) with the given nodal data.
RationalPoly interp_nodal(const NodalValues& values, const AdiniElement& element);

/// Pi^1_K: the Q1 interpolant of the vertex values (gradients ignored).
RationalPoly interp_bilinear(const NodalValues& values, const Box& box);
inline RationalPoly interp_bilinear(const NodalValues& values, const AdiniElement& element) {
  return interp_bilinear(values, element.geometry());
}

/// Pi_{0,K}: mean value over the box.
Rational cell_average(const RationalPoly& p, const Box& box);

/// R^1_K p = p - Pi^1_K p.
RationalPoly r1(const RationalPoly& p, const Box& box);

/// M_{i,j}: alpha_i = 1, alpha_j in {2, 3}, every other entry <= 1 (i != j).
std::vector<Exponent> m_set(std::size_t d, std::size_t i, std::size_t j);

/// B^K_i(j, alpha) = 1/alpha_j! [(x_j - x_jc)^alpha_j - h_j^2 (x_j - x_jc)^(alpha_j - 2)]
///                   * (x - x_c)^(alpha - e_i - alpha_j e_j).
/// Throws std::invalid_argument unless i != j and alpha is in M_{i,j}.
RationalPoly b_coefficient(const Box& box, std::size_t i, std::size_t j, const Exponent& alpha);

/// First and second partial derivatives of every basis polynomial.
struct ShapeDerivatives {
  /// first[a][k] = d phi_a / dx_k
  std::vector<std::vector<RationalPoly>> first;
  /// second[a][k][l] = d^2 phi_a / dx_k dx_l, full symmetric table
  std::vector<std::vector<std::vector<RationalPoly>>> second;
};

ShapeDerivatives shape_derivatives(const AdiniElement& element);

}  // namespace adini
