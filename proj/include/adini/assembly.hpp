#pragma once

#include "adini/field.hpp"
#include "adini/mesh.hpp"
#include "adini/shape_table.hpp"
#include "adini/sparse.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace adini {

/// Broken-Hessian stiffness matrix over the free DOFs (clamped DOFs eliminated).
/// Throws std::runtime_error when the mesh has no free DOFs.
SparseSym assemble(const BoxMesh& mesh, const DofMap& dofs, const ShapeCache& cache);

/// Stiffness matrix over every global DOF, boundary included.
SparseSym assemble_unconstrained(const BoxMesh& mesh, const ShapeCache& cache);

/// Entries (f, phi_a) over the free DOFs, by the cache's quadrature rule.
std::vector<double> load_vector(const Field& f, const BoxMesh& mesh, const DofMap& dofs, const ShapeCache& cache);

/// Global coefficient vector (all DOFs) holding u and grad u at every vertex.
std::vector<double> nodal_interpolant(const Field& u, const BoxMesh& mesh);

/// Physical coordinates of quadrature point q of a tabulated cell.
void quadrature_point(const CellGeometry& cell, const ElementTable& table, std::size_t q, std::span<double> x);

/// Coordinate text: "n nnz" then one "i j value" line per stored entry.
void dump_matrix(std::ostream& os, const SparseSym& a);

}  // namespace adini
