#include "adini/element.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adini {

std::vector<Exponent> shape_monomials(std::size_t d) {
  if (d == 0) throw std::invalid_argument("shape_monomials: d must be positive");
  std::vector<Exponent> out;
  const std::size_t q1_count = std::size_t{1} << d;
  for (std::size_t bits = 0; bits < q1_count; ++bits) {
    Exponent alpha(d);
    for (std::size_t k = 0; k < d; ++k) alpha[k] = (bits >> (d - 1 - k)) & 1U;
    out.push_back(alpha);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (int top : {2, 3}) {
      const std::size_t rest = std::size_t{1} << (d - 1);
      for (std::size_t bits = 0; bits < rest; ++bits) {
        Exponent alpha(d);
        std::size_t b = 0;
        for (std::size_t k = 0; k < d; ++k) {
          if (k == i) {
            alpha[k] = top;
          } else {
            alpha[k] = (bits >> (d - 2 - b)) & 1U;
            ++b;
          }
        }
        out.push_back(alpha);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_adini_space(const RationalPoly& p) {
  const auto monomials = shape_monomials(p.dim());
  const std::set<Exponent> allowed(monomials.begin(), monomials.end());
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& term) { return allowed.contains(term.first); });
}

bool in_q1(const RationalPoly& p) { return p.max_axis_degree() <= 1; }

namespace {

// Parameter `index` applied to the centred monomial y^alpha, y = x - x_c.
Rational centred_parameter(const Exponent& alpha, const Box& box, std::size_t index) {
  const std::size_t d = box.dim();
  const std::size_t v = index / (d + 1);
  const std::size_t k = index % (d + 1);
  const auto signs = box.vertex_signs(v);
  Rational result = 1;
  for (std::size_t l = 0; l < d; ++l) {
    const Rational y = signs[l] * box.half_lengths()[l];
    int a = alpha[l];
    if (k == l + 1) {
      if (a == 0) return 0;
      result *= a;
      --a;
    }
    result *= pow(y, static_cast<unsigned>(a));
  }
  return result;
}

}  // namespace

AdiniElement::AdiniElement(Box geometry) : geometry_(std::move(geometry)) {
  const std::size_t d = geometry_.dim();
  monomials_ = shape_monomials(d);
  const std::size_t n = monomials_.size();

  // Augmented [V | I], V[p][m] = parameter p of y^m; Gauss-Jordan gives V^{-1}.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t m = 0; m < n; ++m) a[p][m] = centred_parameter(monomials_[m], geometry_, p);
    a[p][n + p] = 1;
  }
  determinant_ = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) {
      determinant_ = 0;
      throw std::logic_error("Adini element is not unisolvent on this box: singular Vandermonde matrix");
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      determinant_ = -determinant_;
    }
    const Rational inv = 1 / a[col][col];
    determinant_ *= a[col][col];
    for (auto& entry : a[col]) entry *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = col; c < 2 * n; ++c)
        if (a[col][c] != 0) a[r][c] -= factor * a[col][c];
    }
  }
  // Column b of V^{-1} holds the monomial coefficients of phi_b.
  bool centred_at_origin = std::all_of(geometry_.center().begin(), geometry_.center().end(),
                                       [](const Rational& c) { return c == 0; });
  basis_.reserve(n);
  for (std::size_t b = 0; b < n; ++b) {
    RationalPoly local(d);
    for (std::size_t m = 0; m < n; ++m) local.add_term(monomials_[m], a[m][n + b]);
    basis_.push_back(centred_at_origin ? std::move(local) : shifted(local, geometry_.center()));
  }
}

AdiniElement build_element(const Box& box) { return AdiniElement(box); }

Rational apply_parameter(const RationalPoly& p, const Box& box, std::size_t index) {
  if (p.dim() != box.dim()) throw std::invalid_argument("apply_parameter: dimension mismatch");
  const std::size_t d = box.dim();
  if (index >= adini_dof_count(d)) throw std::out_of_range("apply_parameter: index out of range");
  const std::size_t v = index / (d + 1);
  const std::size_t k = index % (d + 1);
  const auto x = box.vertex(v);
  return k == 0 ? eval(p, x) : eval(diff(p, k - 1), x);
}

NodalValues nodal_data(const RationalPoly& p, const Box& box) {
  if (p.dim() != box.dim()) throw std::invalid_argument("nodal_data: dimension mismatch");
  const std::size_t d = box.dim();
  std::vector<RationalPoly> gradient;
  for (std::size_t k = 0; k < d; ++k) gradient.push_back(diff(p, k));
  NodalValues out(box.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) {
    const auto x = box.vertex(v);
    out[v].value = eval(p, x);
    out[v].gradient.resize(d);
    for (std::size_t k = 0; k < d; ++k) out[v].gradient[k] = eval(gradient[k], x);
  }
  return out;
}

std::vector<std::vector<Rational>> nodal_matrix(const AdiniElement& element) {
  const std::size_t n = element.dof_count();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t b = 0; b < n; ++b) {
    const auto data = nodal_data(element.basis(b), element.geometry());
    const std::size_t d = element.dim();
    for (std::size_t v = 0; v < data.size(); ++v) {
      m[v * (d + 1)][b] = data[v].value;
      for (std::size_t k = 0; k < d; ++k) m[v * (d + 1) + k + 1][b] = data[v].gradient[k];
    }
  }
  return m;
}

namespace {

void check_nodal_shape(const NodalValues& values, std::size_t d, bool need_gradient) {
  if (values.size() != (std::size_t{1} << d)) throw std::invalid_argument("nodal data: expected 2^d vertex records");
  if (need_gradient)
    for (const auto& v : values)
      if (v.gradient.size() != d) throw std::invalid_argument("nodal data: expected d gradient entries per vertex");
}

}  // namespace

RationalPoly interp_nodal(const NodalValues& values, const AdiniElement& element) {
  const std::size_t d = element.dim();
  check_nodal_shape(values, d, true);
  RationalPoly result(d);
  for (std::size_t v = 0; v < values.size(); ++v) {
    result += scale(element.basis(v * (d + 1)), values[v].value);
    for (std::size_t k = 0; k < d; ++k) result += scale(element.basis(v * (d + 1) + k + 1), values[v].gradient[k]);
  }
  return result;
}

RationalPoly interp_bilinear(const NodalValues& values, const Box& box) {
  const std::size_t d = box.dim();
  check_nodal_shape(values, d, false);
  RationalPoly result(d);
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v].value == 0) continue;
    // Q1 Lagrange function of vertex v: prod_k (1 + s_k xi_k) / 2.
    const auto signs = box.vertex_signs(v);
    RationalPoly lagrange = RationalPoly::constant(d, values[v].value);
    for (std::size_t k = 0; k < d; ++k) {
      const Rational& c = box.center()[k];
      const Rational& h = box.half_lengths()[k];
      RationalPoly factor(d);
      factor.add_term(unit_exponent(d, k), Rational(signs[k]) / (2 * h));
      factor.add_term(Exponent(d, 0), Rational(1, 2) - signs[k] * c / (2 * h));
      lagrange = mul(lagrange, factor);
    }
    result += lagrange;
  }
  return result;
}

Rational cell_average(const RationalPoly& p, const Box& box) { return integrate_box(p, box) / box.measure(); }

RationalPoly r1(const RationalPoly& p, const Box& box) {
  if (p.dim() != box.dim()) throw std::invalid_argument("r1: dimension mismatch");
  NodalValues values(box.vertex_count());
  for (std::size_t v = 0; v < values.size(); ++v) values[v].value = eval(p, box.vertex(v));
  return sub(p, interp_bilinear(values, box));
}

std::vector<Exponent> m_set(std::size_t d, std::size_t i, std::size_t j) {
  if (i >= d || j >= d || i == j) throw std::invalid_argument("m_set: need distinct axes i, j < d");
  std::vector<Exponent> out;
  const std::size_t others = d - 2;
  for (int top : {2, 3}) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << others); ++bits) {
      Exponent alpha(d, 0);
      alpha[i] = 1;
      alpha[j] = top;
      std::size_t b = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (k != i && k != j) alpha[k] = (bits >> b++) & 1U;
      out.push_back(alpha);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool in_m_set(const Exponent& alpha, std::size_t i, std::size_t j) {
  if (alpha[i] != 1 || alpha[j] < 2 || alpha[j] > 3) return false;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (k != i && k != j && (alpha[k] < 0 || alpha[k] > 1)) return false;
  return true;
}

}  // namespace

RationalPoly b_coefficient(const Box& box, std::size_t i, std::size_t j, const Exponent& alpha) {
  const std::size_t d = box.dim();
  if (i >= d || j >= d || i == j) throw std::invalid_argument("b_coefficient: need distinct axes i, j < d");
  if (alpha.size() != d || !in_m_set(alpha, i, j))
    throw std::invalid_argument("b_coefficient: multi-index is not in M_{i,j}");

  const auto& c = box.center();
  const auto& h = box.half_lengths();
  auto centred = [&](std::size_t k) {
    RationalPoly y = RationalPoly::variable(d, k);
    y.add_term(Exponent(d, 0), -c[k]);
    return y;
  };

  const unsigned aj = static_cast<unsigned>(alpha[j]);
  const RationalPoly yj = centred(j);
  RationalPoly bracket = pow(yj, aj) - scale(pow(yj, aj - 2), h[j] * h[j]);
  RationalPoly result = scale(bracket, 1 / factorial(aj));
  for (std::size_t k = 0; k < d; ++k) {
    if (k == i || k == j) continue;  // alpha - e_i - alpha_j e_j is zero on both
    if (alpha[k] == 1) result = mul(result, centred(k));
  }
  return result;
}

ShapeDerivatives shape_derivatives(const AdiniElement& element) {
  const std::size_t d = element.dim();
  ShapeDerivatives out;
  out.first.resize(element.dof_count());
  out.second.resize(element.dof_count());
  for (std::size_t a = 0; a < element.dof_count(); ++a) {
    out.first[a].reserve(d);
    for (std::size_t k = 0; k < d; ++k) out.first[a].push_back(diff(element.basis(a), k));
    out.second[a].assign(d, std::vector<RationalPoly>(d, RationalPoly(d)));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) out.second[a][k][l] = diff(out.first[a][k], l);
  }
  return out;
}

}  // namespace adini
