#include "adini/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace adini {

BoxMesh::BoxMesh(std::vector<RationalVector> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw std::invalid_argument("BoxMesh: dimension must be positive");
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    const auto& b = breakpoints_[k];
    if (b.size() < 2) throw std::invalid_argument("BoxMesh: axis " + std::to_string(k) + " needs >= 2 breakpoints");
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
      if (!(b[i] < b[i + 1]))
        throw std::invalid_argument("BoxMesh: breakpoints on axis " + std::to_string(k) + " not strictly increasing");
    coords_.push_back(to_double(b));
    element_count_ *= b.size() - 1;
    vertex_count_ *= b.size();
  }
}

std::size_t BoxMesh::interior_vertex_count() const {
  std::size_t n = 1;
  for (const auto& b : breakpoints_) n *= b.size() - 2;
  return n;
}

MultiIndex BoxMesh::element_multi_index(std::size_t e) const {
  if (e >= element_count_) throw std::out_of_range("element index out of range");
  MultiIndex m(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    m[k] = e % cells(k);
    e /= cells(k);
  }
  return m;
}

std::size_t BoxMesh::element_index(const MultiIndex& m) const {
  if (m.size() != dim()) throw std::out_of_range("element multi-index has wrong length");
  std::size_t e = 0;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (m[k] >= cells(k)) throw std::out_of_range("element multi-index out of range");
    e = e * cells(k) + m[k];
  }
  return e;
}

MultiIndex BoxMesh::vertex_multi_index(std::size_t v) const {
  if (v >= vertex_count_) throw std::out_of_range("vertex index out of range");
  MultiIndex m(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    m[k] = v % (cells(k) + 1);
    v /= cells(k) + 1;
  }
  return m;
}

std::size_t BoxMesh::vertex_index(const MultiIndex& m) const {
  if (m.size() != dim()) throw std::out_of_range("vertex multi-index has wrong length");
  std::size_t v = 0;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (m[k] > cells(k)) throw std::out_of_range("vertex multi-index out of range");
    v = v * (cells(k) + 1) + m[k];
  }
  return v;
}

bool BoxMesh::is_boundary_vertex(std::size_t v) const {
  const auto m = vertex_multi_index(v);
  for (std::size_t k = 0; k < dim(); ++k)
    if (m[k] == 0 || m[k] == cells(k)) return true;
  return false;
}

RationalVector BoxMesh::vertex_coordinates(std::size_t v) const {
  const auto m = vertex_multi_index(v);
  RationalVector x(dim());
  for (std::size_t k = 0; k < dim(); ++k) x[k] = breakpoints_[k][m[k]];
  return x;
}

std::vector<double> BoxMesh::vertex_point(std::size_t v) const {
  const auto m = vertex_multi_index(v);
  std::vector<double> x(dim());
  for (std::size_t k = 0; k < dim(); ++k) x[k] = coords_[k][m[k]];
  return x;
}

std::size_t BoxMesh::element_vertex(std::size_t e, std::size_t local) const {
  const std::size_t d = dim();
  if (local >= (std::size_t{1} << d)) throw std::out_of_range("local vertex index out of range");
  auto m = element_multi_index(e);
  for (std::size_t k = 0; k < d; ++k) m[k] += (local >> (d - 1 - k)) & 1U;
  return vertex_index(m);
}

Box BoxMesh::element_box(const MultiIndex& m) const {
  element_index(m);  // range check
  RationalVector lo(dim()), hi(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    lo[k] = breakpoints_[k][m[k]];
    hi[k] = breakpoints_[k][m[k] + 1];
  }
  return Box::from_bounds(lo, hi);
}

CellGeometry BoxMesh::element_geometry(std::size_t e) const {
  const auto m = element_multi_index(e);
  CellGeometry g;
  g.center.resize(dim());
  g.half.resize(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const Rational lo = breakpoints_[k][m[k]];
    const Rational hi = breakpoints_[k][m[k] + 1];
    g.center[k] = to_double(Rational((lo + hi) / 2));
    g.half[k] = to_double(Rational((hi - lo) / 2));
  }
  return g;
}

Box BoxMesh::domain() const {
  RationalVector lo(dim()), hi(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    lo[k] = breakpoints_[k].front();
    hi[k] = breakpoints_[k].back();
  }
  return Box::from_bounds(lo, hi);
}

double BoxMesh::h() const {
  // Tensor structure: the widest interval on each axis can be combined freely.
  Rational sum = 0;
  for (const auto& b : breakpoints_) {
    Rational widest = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) widest = std::max<Rational>(widest, b[i + 1] - b[i]);
    sum += widest * widest;
  }
  return std::sqrt(to_double(sum));
}

double BoxMesh::shape_regularity() const {
  // The element pairing the widest interval on one axis with the narrowest on
  // another attains the maximum.
  if (dim() == 1) return 1.0;
  Rational ratio = 1;
  std::vector<Rational> wide(dim()), narrow(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const auto& b = breakpoints_[k];
    wide[k] = 0;
    narrow[k] = b.back() - b.front();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const Rational w = b[i + 1] - b[i];
      wide[k] = std::max<Rational>(wide[k], w);
      narrow[k] = std::min<Rational>(narrow[k], w);
    }
  }
  for (std::size_t k = 0; k < dim(); ++k)
    for (std::size_t l = 0; l < dim(); ++l)
      if (k != l) ratio = std::max<Rational>(ratio, wide[k] / narrow[l]);
  return to_double(ratio);
}

BoxMesh uniform_mesh(const RationalVector& lower, const RationalVector& upper, const std::vector<std::size_t>& counts) {
  return graded_mesh(lower, upper, counts, 0, 0.0);
}

BoxMesh unit_mesh(std::size_t dim, std::size_t n) {
  return uniform_mesh(RationalVector(dim, 0), RationalVector(dim, 1), std::vector<std::size_t>(dim, n));
}

BoxMesh graded_mesh(const RationalVector& lower, const RationalVector& upper, const std::vector<std::size_t>& counts,
                    std::uint64_t seed, double jitter) {
  const std::size_t d = lower.size();
  if (d == 0 || upper.size() != d || counts.size() != d)
    throw std::invalid_argument("mesh: domain bounds and subdivision counts must have the same positive length");
  if (!(jitter >= 0.0 && jitter < 0.5)) throw std::invalid_argument("mesh: jitter must lie in [0, 0.5)");
  for (std::size_t k = 0; k < d; ++k) {
    if (!(lower[k] < upper[k])) throw std::invalid_argument("mesh: degenerate domain on axis " + std::to_string(k));
    if (counts[k] < 1) throw std::invalid_argument("mesh: subdivision counts must be >= 1");
  }
  const Rational amplitude = exact_rational(jitter);
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t grid = std::uint64_t{1} << 19;
  std::vector<RationalVector> breakpoints(d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t n = counts[k];
    const Rational spacing = (upper[k] - lower[k]) / Rational(static_cast<unsigned long>(n));
    auto& b = breakpoints[k];
    b.resize(n + 1);
    b.front() = lower[k];
    b.back() = upper[k];
    for (std::size_t i = 1; i < n; ++i) {
      Rational offset = 0;
      if (amplitude != 0) {
        // Top 20 bits of the draw, centred: r in [-1, 1) on a 2^-19 grid.
        const auto t = static_cast<long>(rng() >> 44) - static_cast<long>(grid);
        offset = amplitude * Rational(t, static_cast<unsigned long>(grid));
      }
      b[i] = lower[k] + spacing * (Rational(static_cast<unsigned long>(i)) + offset);
      b[i].canonicalize();
    }
  }
  return BoxMesh(std::move(breakpoints));
}

void write_mesh(std::ostream& os, const BoxMesh& mesh) {
  os << "dim " << mesh.dim() << '\n';
  for (std::size_t k = 0; k < mesh.dim(); ++k) {
    const auto& b = mesh.breakpoints(k);
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << to_string(b[i]);
    os << '\n';
  }
}

BoxMesh read_mesh(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    return std::runtime_error("mesh file line " + std::to_string(line_no) + ": " + what);
  };
  if (!next_line()) throw std::runtime_error("mesh file is empty");
  std::istringstream header(line);
  std::string keyword;
  long dim = 0;
  if (!(header >> keyword >> dim) || keyword != "dim" || dim < 1) throw fail("expected 'dim <d>' with d >= 1");
  std::vector<RationalVector> breakpoints;
  for (long k = 0; k < dim; ++k) {
    if (!next_line()) throw fail("missing breakpoints for axis " + std::to_string(k));
    std::istringstream row(line);
    std::string token;
    RationalVector b;
    while (row >> token) {
      try {
        b.push_back(parse_rational(token));
      } catch (const std::invalid_argument& e) {
        throw fail(e.what());
      }
    }
    breakpoints.push_back(std::move(b));
  }
  if (next_line()) throw fail("unexpected trailing content");
  try {
    return BoxMesh(std::move(breakpoints));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("mesh file: ") + e.what());
  }
}

DofMap::DofMap(const BoxMesh& mesh) : per_vertex_(mesh.dim() + 1) {
  free_index_.assign(mesh.vertex_count() * per_vertex_, kConstrained);
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    for (std::size_t k = 0; k < per_vertex_; ++k) {
      free_index_[v * per_vertex_ + k] = free_dofs_.size();
      free_dofs_.push_back(v * per_vertex_ + k);
    }
  }
}

std::vector<double> DofMap::expand(const std::vector<double>& free_values) const {
  if (free_values.size() != free_dofs_.size()) throw std::invalid_argument("DofMap::expand: size mismatch");
  std::vector<double> out(total_dofs(), 0.0);
  for (std::size_t i = 0; i < free_dofs_.size(); ++i) out[free_dofs_[i]] = free_values[i];
  return out;
}

std::vector<double> DofMap::restrict_to_free(const std::vector<double>& global_values) const {
  if (global_values.size() != total_dofs()) throw std::invalid_argument("DofMap::restrict_to_free: size mismatch");
  std::vector<double> out(free_dofs_.size());
  for (std::size_t i = 0; i < free_dofs_.size(); ++i) out[i] = global_values[free_dofs_[i]];
  return out;
}

std::vector<std::size_t> global_dofs(const BoxMesh& mesh, std::size_t element) {
  const std::size_t d = mesh.dim();
  const std::size_t vertices = std::size_t{1} << d;
  std::vector<std::size_t> out;
  out.reserve(vertices * (d + 1));
  for (std::size_t local = 0; local < vertices; ++local) {
    const std::size_t v = mesh.element_vertex(element, local);
    for (std::size_t k = 0; k <= d; ++k) out.push_back(v * (d + 1) + k);
  }
  return out;
}

std::vector<std::size_t> global_dofs(const BoxMesh& mesh, const MultiIndex& element) {
  return global_dofs(mesh, mesh.element_index(element));
}

}  // namespace adini
