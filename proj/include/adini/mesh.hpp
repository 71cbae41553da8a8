#pragma once

#include "adini/polynomial.hpp"
#include "adini/quadrature.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

namespace adini {

using MultiIndex = std::vector<std::size_t>;

/// Tensor-product partition of an axis-aligned box into d-rectangles.
///
/// Axis k carries N_k + 1 strictly increasing breakpoints. Elements and
/// vertices are numbered lexicographically with axis 0 most significant.
class BoxMesh {
 public:
  explicit BoxMesh(std::vector<RationalVector> breakpoints);

  std::size_t dim() const { return breakpoints_.size(); }
  std::size_t cells(std::size_t axis) const { return breakpoints_.at(axis).size() - 1; }
  const RationalVector& breakpoints(std::size_t axis) const { return breakpoints_.at(axis); }
  const std::vector<RationalVector>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& coordinates(std::size_t axis) const { return coords_.at(axis); }

  std::size_t element_count() const { return element_count_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t interior_vertex_count() const;

  MultiIndex element_multi_index(std::size_t e) const;
  std::size_t element_index(const MultiIndex& m) const;
  MultiIndex vertex_multi_index(std::size_t v) const;
  std::size_t vertex_index(const MultiIndex& m) const;

  bool is_boundary_vertex(std::size_t v) const;
  RationalVector vertex_coordinates(std::size_t v) const;
  std::vector<double> vertex_point(std::size_t v) const;

  /// Global vertex of local vertex `local` (Box::vertex order) of element e.
  std::size_t element_vertex(std::size_t e, std::size_t local) const;

  Box element_box(const MultiIndex& m) const;
  Box element_box(std::size_t e) const { return element_box(element_multi_index(e)); }
  CellGeometry element_geometry(std::size_t e) const;
  Box domain() const;

  /// Maximum element diameter.
  double h() const;
  /// Max over elements of (largest half-length / smallest half-length).
  double shape_regularity() const;

  friend bool operator==(const BoxMesh& a, const BoxMesh& b) { return a.breakpoints_ == b.breakpoints_; }

 private:
  std::vector<RationalVector> breakpoints_;
  std::vector<std::vector<double>> coords_;
  std::size_t element_count_ = 1;
  std::size_t vertex_count_ = 1;
};

/// Equispaced breakpoints; throws std::invalid_argument on a degenerate
/// domain or a zero subdivision count.
BoxMesh uniform_mesh(const RationalVector& lower, const RationalVector& upper, const std::vector<std::size_t>& counts);
BoxMesh unit_mesh(std::size_t dim, std::size_t n);

/// Uniform breakpoints with every interior breakpoint moved by a seeded
/// offset in [-jitter, jitter) times the uniform spacing. The random factor
/// is drawn on a 2^-19 grid from mt19937_64, so breakpoints stay exact
/// rationals and are reproducible across platforms. jitter must lie in [0, 1/2).
BoxMesh graded_mesh(const RationalVector& lower, const RationalVector& upper, const std::vector<std::size_t>& counts,
                    std::uint64_t seed, double jitter);

/// Plain-text mesh description: "dim d" then one line of breakpoints per axis.
/// Breakpoints are written as exact integers or p/q; decimals are accepted on input.
void write_mesh(std::ostream& os, const BoxMesh& mesh);
/// Throws std::runtime_error on malformed input.
BoxMesh read_mesh(std::istream& is);

/// Global numbering of the vertex DOFs: dof = vertex * (d+1) + k with k = 0
/// the value and k = 1..d the gradient components. Every DOF of a boundary
/// vertex is clamped to zero; the rest are free and numbered consecutively.
class DofMap {
 public:
  static constexpr std::size_t kConstrained = std::numeric_limits<std::size_t>::max();

  explicit DofMap(const BoxMesh& mesh);

  std::size_t dofs_per_vertex() const { return per_vertex_; }
  std::size_t total_dofs() const { return free_index_.size(); }
  std::size_t free_count() const { return free_dofs_.size(); }
  const std::vector<std::size_t>& free_dofs() const { return free_dofs_; }
  /// Free index of a global DOF, or kConstrained.
  std::size_t free_index(std::size_t global) const { return free_index_.at(global); }
  bool is_constrained(std::size_t global) const { return free_index_.at(global) == kConstrained; }

  /// Scatter a free-DOF vector into a global vector (constrained entries zero).
  std::vector<double> expand(const std::vector<double>& free_values) const;
  /// Gather the free entries of a global vector.
  std::vector<double> restrict_to_free(const std::vector<double>& global_values) const;

 private:
  std::size_t per_vertex_;
  std::vector<std::size_t> free_index_;
  std::vector<std::size_t> free_dofs_;
};

/// Global DOFs of an element in the element's local parameter order.
std::vector<std::size_t> global_dofs(const BoxMesh& mesh, std::size_t element);
std::vector<std::size_t> global_dofs(const BoxMesh& mesh, const MultiIndex& element);

}  // namespace adini
