#include "adini/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adini {

namespace {

// P_n(x) and P_n'(x) from (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
template <class T>
std::pair<T, T> legendre(int n, T x) {
  T p0 = 1, p1 = x;
  if (n == 0) return {T(1), T(0)};
  for (int k = 1; k < n; ++k) {
    const T p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  const T dp = n * (x * p1 - p0) / (x * x - 1);
  return {p1, dp};
}

template <class T>
void newton_rule(int n, std::vector<T>& nodes, std::vector<T>& weights) {
  if (n < 1 || n > kMaxGaussPoints)
    throw std::invalid_argument("gauss_rule: points per axis must be in [1, " + std::to_string(kMaxGaussPoints) +
                                "], got " + std::to_string(n));
  nodes.assign(n, T(0));
  weights.assign(n, T(0));
  const T tol = 8 * std::numeric_limits<T>::epsilon();
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    T x = std::cos(std::numbers::pi_v<T> * (i + T(0.75)) / (n + T(0.5)));
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre(n, x);
      const T dx = p / d;
      x -= dx;
      if (std::abs(dx) <= tol) break;
    }
    const T dp = legendre(n, x).second;
    const T w = 2 / ((1 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0;
}

}  // namespace

ExtendedRule gauss_rule_extended(int n) {
  ExtendedRule rule;
  rule.points_per_axis = n;
  newton_rule(n, rule.nodes, rule.weights);
  return rule;
}

QuadRule gauss_rule(int n) {
  const ExtendedRule ext = gauss_rule_extended(n);
  QuadRule rule;
  rule.points_per_axis = n;
  for (long double x : ext.nodes) rule.nodes.push_back(static_cast<double>(x));
  for (long double w : ext.weights) rule.weights.push_back(static_cast<double>(w));
  return rule;
}

double CellGeometry::jacobian() const {
  double j = 1.0;
  for (double h : half) j *= h;
  return j;
}

CellGeometry CellGeometry::from_box(const Box& box) {
  return CellGeometry{to_double(box.center()), to_double(box.half_lengths())};
}

TensorRule::TensorRule(const QuadRule& rule, std::size_t dim) : dim_(dim) {
  const std::size_t n = rule.nodes.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= n;
  points_.resize(total * dim);
  weights_.assign(total, 1.0);
  for (std::size_t q = 0; q < total; ++q) {
    std::size_t rem = q;
    for (std::size_t k = dim; k-- > 0;) {
      const std::size_t i = rem % n;
      rem /= n;
      points_[q * dim + k] = rule.nodes[i];
      weights_[q] *= rule.weights[i];
    }
  }
}

double integrate_cell(const Integrand& f, const CellGeometry& cell, const QuadRule& rule) {
  const std::size_t d = cell.dim();
  const TensorRule tensor(rule, d);
  std::vector<double> x(d);
  double sum = 0.0;
  for (std::size_t q = 0; q < tensor.size(); ++q) {
    const auto xi = tensor.point(q);
    for (std::size_t k = 0; k < d; ++k) x[k] = cell.center[k] + xi[k] * cell.half[k];
    sum += tensor.weight(q) * f(x);
  }
  return sum * cell.jacobian();
}

double integrate_cell(const Integrand& f, const Box& box, const QuadRule& rule) {
  return integrate_cell(f, CellGeometry::from_box(box), rule);
}

}  // namespace adini
