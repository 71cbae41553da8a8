#pragma once

#include "adini/polynomial.hpp"

#include <functional>
#include <span>
#include <vector>

namespace adini {

/// One-dimensional Gauss-Legendre rule on (-1, 1).
struct QuadRule {
  int points_per_axis = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int kMaxGaussPoints = 16;

/// Nodes are the roots of P_n found by Newton iteration on the three-term
/// recurrence. Throws std::invalid_argument unless 1 <= n <= kMaxGaussPoints.
QuadRule gauss_rule(int n);

/// The same rule in extended precision; gauss_rule rounds these values.
struct ExtendedRule {
  int points_per_axis = 0;
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

ExtendedRule gauss_rule_extended(int n);

/// Floating-point cell geometry x = center + xi * half.
struct CellGeometry {
  std::vector<double> center;
  std::vector<double> half;

  std::size_t dim() const { return center.size(); }
  double jacobian() const;
  static CellGeometry from_box(const Box& box);
};

/// Tensor product of a 1D rule in d dimensions. Point q has reference
/// coordinates xi (axis 0 slowest) and weight prod_k w_{q_k}.
class TensorRule {
 public:
  TensorRule(const QuadRule& rule, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> point(std::size_t q) const { return {points_.data() + q * dim_, dim_}; }
  double weight(std::size_t q) const { return weights_[q]; }

 private:
  std::size_t dim_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Tensor rule mapped to the cell, scaled by the Jacobian prod_k h_k.
double integrate_cell(const Integrand& f, const CellGeometry& cell, const QuadRule& rule);
double integrate_cell(const Integrand& f, const Box& box, const QuadRule& rule);

}  // namespace adini
