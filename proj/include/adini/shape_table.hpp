#pragma once

#include "adini/dense.hpp"
#include "adini/element.hpp"
#include "adini/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace adini {

/// Basis values and physical derivatives of one cell's Adini basis at the
/// points of a tensor Gauss rule. Indexing: value[q * n + a],
/// grad[(q * n + a) * d + k], hess[((q * n + a) * d + k) * d + l].
struct ElementTable {
  std::size_t dim = 0;
  std::size_t dofs = 0;
  std::size_t points = 0;
  /// Physical quadrature weights (reference weight times Jacobian).
  std::vector<double> weights;
  /// Reference coordinates xi of each point, points x dim.
  std::vector<double> xi;
  std::vector<double> value;
  std::vector<double> grad;
  std::vector<double> hess;

  double phi(std::size_t q, std::size_t a) const { return value[q * dofs + a]; }
  double dphi(std::size_t q, std::size_t a, std::size_t k) const { return grad[(q * dofs + a) * dim + k]; }
  double d2phi(std::size_t q, std::size_t a, std::size_t k, std::size_t l) const {
    return hess[((q * dofs + a) * dim + k) * dim + l];
  }
};

/// Tabulates an exact element directly: each basis polynomial is re-expanded
/// about the cell centre, converted to binary floats and evaluated.
ElementTable tabulate(const AdiniElement& element, const QuadRule& rule);

/// Tabulates the reference-cube basis once; a cell with half-lengths h is then
/// obtained by the exact affine scaling phi_{v,0}(x) = phi^_{v,0}(xi) and
/// phi_{v,k}(x) = h_k phi^_{v,k}(xi).
class ReferenceTable {
 public:
  ReferenceTable(std::size_t dim, const QuadRule& rule);

  std::size_t dim() const { return table_.dim; }
  const QuadRule& rule() const { return rule_; }
  ElementTable scaled(const CellGeometry& cell) const;

 private:
  QuadRule rule_;
  ElementTable table_;
};

/// Element stiffness sum_{k,l} int_K d_kl phi_a d_kl phi_b from a table.
DenseMatrix local_stiffness(const ElementTable& table);
/// The same sums with the element's exact basis evaluated and accumulated in
/// extended precision at the nodes of the matching Gauss rule.
DenseMatrix local_stiffness(const AdiniElement& element, const QuadRule& rule);

/// Float twins of the basis, tabulated once per distinct cell shape
/// (half-lengths). Stiffness matrices are scaled from reference Hessian Gram
/// matrices accumulated in extended precision. Lookups may run concurrently; each shape is built at most once.
class ShapeCache {
 public:
  struct Entry {
    ElementTable table;
    DenseMatrix stiffness;
  };

  ShapeCache(std::size_t dim, const QuadRule& rule, bool with_stiffness = true);

  std::shared_ptr<const Entry> get(const CellGeometry& cell) const;
  const QuadRule& rule() const { return reference_.rule(); }
  std::size_t dim() const { return reference_.dim(); }
  std::size_t size() const;

 private:
  DenseMatrix scaled_stiffness(const CellGeometry& cell) const;

  ReferenceTable reference_;
  bool with_stiffness_;
  // Reference-cube Hessian Gram matrices per axis pair, in extended precision.
  std::vector<std::vector<long double>> reference_gram_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<double>, std::shared_ptr<const Entry>> entries_;
};

}  // namespace adini
