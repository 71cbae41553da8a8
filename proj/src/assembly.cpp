#include "adini/assembly.hpp"

#include "adini/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace adini {

namespace {

struct Incidence {
  std::size_t element;
  std::size_t local;
};

// Elements containing vertex v, in increasing element order, with the local
// position of v inside each.
std::vector<Incidence> incident_elements(const BoxMesh& mesh, std::size_t v) {
  const std::size_t d = mesh.dim();
  const MultiIndex m = mesh.vertex_multi_index(v);
  std::vector<Incidence> out;
  MultiIndex cell(d);
  for (std::size_t local = std::size_t{1} << d; local-- > 0;) {
    bool inside = true;
    for (std::size_t k = 0; k < d && inside; ++k) {
      const std::size_t c = (local >> (d - 1 - k)) & 1U;
      if (m[k] < c || m[k] - c >= mesh.cells(k)) inside = false;
      else cell[k] = m[k] - c;
    }
    if (inside) out.push_back({mesh.element_index(cell), local});
  }
  std::sort(out.begin(), out.end(), [](const Incidence& a, const Incidence& b) { return a.element < b.element; });
  return out;
}

// Vertices sharing an element with v (v included), in increasing order.
std::vector<std::size_t> vertex_neighbours(const BoxMesh& mesh, std::size_t v) {
  const std::size_t d = mesh.dim();
  const MultiIndex m = mesh.vertex_multi_index(v);
  std::vector<std::size_t> out;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < d; ++k) combos *= 3;
  MultiIndex w(d);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rem = c;
    bool inside = true;
    for (std::size_t k = d; k-- > 0;) {
      const long off = static_cast<long>(rem % 3) - 1;
      rem /= 3;
      const long coord = static_cast<long>(m[k]) + off;
      if (coord < 0 || coord > static_cast<long>(mesh.cells(k))) inside = false;
      else w[k] = static_cast<std::size_t>(coord);
    }
    if (inside) out.push_back(mesh.vertex_index(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// row_of maps each global DOF to its matrix row or DofMap::kConstrained.
SparseSym assemble_rows(const BoxMesh& mesh, const std::vector<std::size_t>& row_of, std::size_t n,
                        const ShapeCache& cache) {
  const std::size_t d = mesh.dim();
  const std::size_t per = d + 1;
  const std::size_t nv = mesh.vertex_count();

  // Pattern: rows are visited in vertex order, so row i belongs to the i-th free DOF.
  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<std::vector<std::size_t>> row_cols(n);
  parallel_for(nv, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      std::vector<std::size_t> cols;
      for (std::size_t w : vertex_neighbours(mesh, v))
        for (std::size_t k = 0; k < per; ++k)
          if (const std::size_t c = row_of[w * per + k]; c != DofMap::kConstrained) cols.push_back(c);
      std::sort(cols.begin(), cols.end());
      for (std::size_t k = 0; k < per; ++k)
        if (const std::size_t r = row_of[v * per + k]; r != DofMap::kConstrained) row_cols[r] = cols;
    }
  });
  for (std::size_t r = 0; r < n; ++r) row_ptr[r + 1] = row_ptr[r] + row_cols[r].size();
  std::vector<std::size_t> cols;
  cols.reserve(row_ptr[n]);
  for (auto& rc : row_cols) {
    cols.insert(cols.end(), rc.begin(), rc.end());
    rc = {};
  }
  SparseSym a(n, std::move(row_ptr), std::move(cols));

  // Each worker owns the rows of its vertices; contributions arrive in element order.
  auto& vals = a.values();
  parallel_for(nv, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      for (const Incidence& inc : incident_elements(mesh, v)) {
        const auto entry = cache.get(mesh.element_geometry(inc.element));
        const DenseMatrix& m = entry->stiffness;
        const auto glob = global_dofs(mesh, inc.element);
        for (std::size_t k = 0; k < per; ++k) {
          const std::size_t r = row_of[v * per + k];
          if (r == DofMap::kConstrained) continue;
          const std::size_t la = inc.local * per + k;
          for (std::size_t b = 0; b < glob.size(); ++b) {
            const std::size_t c = row_of[glob[b]];
            if (c == DofMap::kConstrained) continue;
            vals[a.find(r, c)] += m(la, b);
          }
        }
      }
    }
  });
  return a;
}

}  // namespace

SparseSym assemble(const BoxMesh& mesh, const DofMap& dofs, const ShapeCache& cache) {
  if (dofs.free_count() == 0) throw std::runtime_error("no free DOFs: every vertex lies on the boundary");
  std::vector<std::size_t> row_of(dofs.total_dofs());
  for (std::size_t g = 0; g < row_of.size(); ++g) row_of[g] = dofs.free_index(g);
  return assemble_rows(mesh, row_of, dofs.free_count(), cache);
}

SparseSym assemble_unconstrained(const BoxMesh& mesh, const ShapeCache& cache) {
  const std::size_t n = mesh.vertex_count() * (mesh.dim() + 1);
  std::vector<std::size_t> row_of(n);
  for (std::size_t g = 0; g < n; ++g) row_of[g] = g;
  return assemble_rows(mesh, row_of, n, cache);
}

void quadrature_point(const CellGeometry& cell, const ElementTable& table, std::size_t q, std::span<double> x) {
  for (std::size_t k = 0; k < table.dim; ++k) x[k] = cell.center[k] + table.xi[q * table.dim + k] * cell.half[k];
}

std::vector<double> load_vector(const Field& f, const BoxMesh& mesh, const DofMap& dofs, const ShapeCache& cache) {
  const std::size_t d = mesh.dim();
  const std::size_t ne = mesh.element_count();
  const std::size_t nloc = adini_dof_count(d);
  std::vector<double> local(ne * nloc, 0.0);
  parallel_for(ne, [&](std::size_t begin, std::size_t end) {
    std::vector<double> x(d);
    for (std::size_t e = begin; e < end; ++e) {
      const CellGeometry cell = mesh.element_geometry(e);
      const auto entry = cache.get(cell);
      const ElementTable& t = entry->table;
      for (std::size_t q = 0; q < t.points; ++q) {
        quadrature_point(cell, t, q, x);
        const double wf = t.weights[q] * f.value(x);
        for (std::size_t a = 0; a < nloc; ++a) local[e * nloc + a] += wf * t.phi(q, a);
      }
    }
  });

  const std::size_t per = d + 1;
  std::vector<double> b(dofs.free_count(), 0.0);
  parallel_for(mesh.vertex_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      if (mesh.is_boundary_vertex(v)) continue;
      for (const Incidence& inc : incident_elements(mesh, v))
        for (std::size_t k = 0; k < per; ++k)
          b[dofs.free_index(v * per + k)] += local[inc.element * nloc + inc.local * per + k];
    }
  });
  return b;
}

std::vector<double> nodal_interpolant(const Field& u, const BoxMesh& mesh) {
  const std::size_t d = mesh.dim();
  const std::size_t per = d + 1;
  std::vector<double> out(mesh.vertex_count() * per);
  parallel_for(mesh.vertex_count(), [&](std::size_t begin, std::size_t end) {
    std::vector<int> alpha(d);
    for (std::size_t v = begin; v < end; ++v) {
      const auto x = mesh.vertex_point(v);
      std::fill(alpha.begin(), alpha.end(), 0);
      out[v * per] = u.derivative(x, alpha);
      for (std::size_t k = 0; k < d; ++k) {
        alpha[k] = 1;
        out[v * per + 1 + k] = u.derivative(x, alpha);
        alpha[k] = 0;
      }
    }
  });
  return out;
}

void dump_matrix(std::ostream& os, const SparseSym& a) {
  os << a.size() << ' ' << a.nnz() << '\n';
  char buf[64];
  const auto& rp = a.row_ptr();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", a.values()[p]);
      os << i << ' ' << a.cols()[p] << ' ' << buf << '\n';
    }
  }
}

}  // namespace adini
