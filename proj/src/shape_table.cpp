#include "adini/shape_table.hpp"

#include "adini/float_poly.hpp"

#include <stdexcept>

namespace adini {

namespace {

ElementTable empty_table(std::size_t d, std::size_t dofs, const TensorRule& tensor) {
  ElementTable t;
  t.dim = d;
  t.dofs = dofs;
  t.points = tensor.size();
  t.weights.resize(t.points);
  t.xi.resize(t.points * d);
  t.value.resize(t.points * dofs);
  t.grad.resize(t.points * dofs * d);
  t.hess.resize(t.points * dofs * d * d);
  for (std::size_t q = 0; q < t.points; ++q) {
    t.weights[q] = tensor.weight(q);
    for (std::size_t k = 0; k < d; ++k) t.xi[q * d + k] = tensor.point(q)[k];
  }
  return t;
}

// Fills value/grad/hess from polynomials in local coordinates y = x - x_c
// evaluated at y = xi * half.
void fill_from_element(ElementTable& t, const AdiniElement& element, const std::vector<double>& half) {
  const std::size_t d = t.dim;
  const auto& c = element.geometry().center();
  RationalVector minus_c(d);
  for (std::size_t k = 0; k < d; ++k) minus_c[k] = -c[k];
  std::vector<double> y(d);
  for (std::size_t a = 0; a < t.dofs; ++a) {
    const RationalPoly local = shifted(element.basis(a), minus_c);
    const FloatPoly value(local);
    std::vector<RationalPoly> first;
    std::vector<FloatPoly> grad, hess;
    for (std::size_t k = 0; k < d; ++k) first.push_back(diff(local, k));
    for (std::size_t k = 0; k < d; ++k) grad.emplace_back(first[k]);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) hess.emplace_back(diff(first[k], l));
    for (std::size_t q = 0; q < t.points; ++q) {
      for (std::size_t k = 0; k < d; ++k) y[k] = t.xi[q * d + k] * half[k];
      t.value[q * t.dofs + a] = value(y);
      for (std::size_t k = 0; k < d; ++k) t.grad[(q * t.dofs + a) * d + k] = grad[k](y);
      for (std::size_t kl = 0; kl < d * d; ++kl) t.hess[(q * t.dofs + a) * d * d + kl] = hess[kl](y);
    }
  }
}

long double to_extended(const Rational& q) {
  const double hi = q.get_d();
  const Rational rest = q - exact_rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

class ExtendedPoly {
 public:
  explicit ExtendedPoly(const RationalPoly& p) {
    for (const auto& [alpha, c] : p.terms()) terms_.emplace_back(alpha, to_extended(c));
  }
  long double operator()(const std::vector<long double>& y) const {
    long double sum = 0;
    for (const auto& [alpha, c] : terms_) {
      long double term = c;
      for (std::size_t k = 0; k < y.size(); ++k)
        for (int e = 0; e < alpha[k]; ++e) term *= y[k];
      sum += term;
    }
    return sum;
  }

 private:
  std::vector<std::pair<Exponent, long double>> terms_;
};

// gram[k * d + l][a * n + b] = sum_q w_q d_kl phi_a d_kl phi_b at y = xi * half,
// for k <= l, with reference weights (no Jacobian).
std::vector<std::vector<long double>> hessian_gram(const AdiniElement& element, const ExtendedRule& rule,
                                                   const std::vector<long double>& half) {
  const std::size_t d = element.dim(), n = element.dof_count(), m = rule.nodes.size();
  const auto& c = element.geometry().center();
  RationalVector minus_c(d);
  for (std::size_t k = 0; k < d; ++k) minus_c[k] = -c[k];
  std::size_t points = 1;
  for (std::size_t k = 0; k < d; ++k) points *= m;
  // hess[(kl * points + q) * n + a]
  std::vector<long double> hess(d * d * points * n, 0);
  std::vector<long double> weight(points, 1);
  std::vector<std::vector<long double>> y(points, std::vector<long double>(d));
  for (std::size_t q = 0; q < points; ++q) {
    std::size_t rem = q;
    for (std::size_t k = d; k-- > 0;) {
      const std::size_t i = rem % m;
      rem /= m;
      y[q][k] = rule.nodes[i] * half[k];
      weight[q] *= rule.weights[i];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const RationalPoly local = shifted(element.basis(a), minus_c);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = k; l < d; ++l) {
        const ExtendedPoly p(diff(diff(local, k), l));
        for (std::size_t q = 0; q < points; ++q) hess[((k * d + l) * points + q) * n + a] = p(y[q]);
      }
  }
  std::vector<std::vector<long double>> gram(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k; l < d; ++l) {
      auto& g = gram[k * d + l];
      g.assign(n * n, 0);
      const long double* h = hess.data() + (k * d + l) * points * n;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          long double s = 0;
          for (std::size_t q = 0; q < points; ++q) s += weight[q] * h[q * n + a] * h[q * n + b];
          g[a * n + b] = g[b * n + a] = s;
        }
    }
  return gram;
}

// sum_{k,l} jac * factor_kl(a, b) * gram_kl(a, b), mixed pairs counted twice.
template <class Factor>
DenseMatrix combine_gram(const std::vector<std::vector<long double>>& gram, std::size_t d, std::size_t n,
                         long double jac, Factor&& factor) {
  DenseMatrix out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      long double s = 0;
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k; l < d; ++l) s += (k == l ? 1 : 2) * factor(a, b, k, l) * gram[k * d + l][a * n + b];
      out(a, b) = out(b, a) = static_cast<double>(jac * s);
    }
  return out;
}

}  // namespace

ElementTable tabulate(const AdiniElement& element, const QuadRule& rule) {
  const std::size_t d = element.dim();
  const TensorRule tensor(rule, d);
  ElementTable t = empty_table(d, element.dof_count(), tensor);
  const auto half = to_double(element.geometry().half_lengths());
  double jac = 1.0;
  for (double h : half) jac *= h;
  for (auto& w : t.weights) w *= jac;
  fill_from_element(t, element, half);
  return t;
}

ReferenceTable::ReferenceTable(std::size_t dim, const QuadRule& rule) : rule_(rule) {
  const AdiniElement reference = build_element(Box::reference(dim));
  const TensorRule tensor(rule, dim);
  table_ = empty_table(dim, reference.dof_count(), tensor);
  fill_from_element(table_, reference, std::vector<double>(dim, 1.0));
}

ElementTable ReferenceTable::scaled(const CellGeometry& cell) const {
  const std::size_t d = table_.dim;
  if (cell.dim() != d) throw std::invalid_argument("ReferenceTable::scaled: dimension mismatch");
  ElementTable t = table_;
  const double jac = cell.jacobian();
  for (auto& w : t.weights) w *= jac;
  std::vector<double> s(t.dofs);
  for (std::size_t a = 0; a < t.dofs; ++a) {
    const std::size_t k = a % (d + 1);
    s[a] = k == 0 ? 1.0 : cell.half[k - 1];
  }
  for (std::size_t q = 0; q < t.points; ++q) {
    for (std::size_t a = 0; a < t.dofs; ++a) {
      const std::size_t qa = q * t.dofs + a;
      t.value[qa] *= s[a];
      for (std::size_t k = 0; k < d; ++k) t.grad[qa * d + k] *= s[a] / cell.half[k];
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) t.hess[(qa * d + k) * d + l] *= s[a] / (cell.half[k] * cell.half[l]);
    }
  }
  return t;
}

DenseMatrix local_stiffness(const ElementTable& t) {
  const std::size_t n = t.dofs;
  const std::size_t dd = t.dim * t.dim;
  DenseMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < t.points; ++q) {
        const double* ha = t.hess.data() + (q * n + a) * dd;
        const double* hb = t.hess.data() + (q * n + b) * dd;
        double h = 0.0;
        for (std::size_t kl = 0; kl < dd; ++kl) h += ha[kl] * hb[kl];
        s += t.weights[q] * h;
      }
      m(a, b) = s;
      m(b, a) = s;
    }
  }
  return m;
}

DenseMatrix local_stiffness(const AdiniElement& element, const QuadRule& rule) {
  const std::size_t d = element.dim();
  std::vector<long double> half(d);
  long double jac = 1;
  for (std::size_t k = 0; k < d; ++k) {
    half[k] = to_extended(element.geometry().half_lengths()[k]);
    jac *= half[k];
  }
  const auto gram = hessian_gram(element, gauss_rule_extended(rule.points_per_axis), half);
  return combine_gram(gram, d, element.dof_count(), jac, [](std::size_t, std::size_t, std::size_t, std::size_t) {
    return 1.0L;
  });
}

ShapeCache::ShapeCache(std::size_t dim, const QuadRule& rule, bool with_stiffness)
    : reference_(dim, rule), with_stiffness_(with_stiffness) {
  if (with_stiffness_)
    reference_gram_ = hessian_gram(build_element(Box::reference(dim)), gauss_rule_extended(rule.points_per_axis),
                                   std::vector<long double>(dim, 1));
}

DenseMatrix ShapeCache::scaled_stiffness(const CellGeometry& cell) const {
  const std::size_t d = dim(), n = adini_dof_count(d);
  std::vector<long double> h(cell.half.begin(), cell.half.end());
  long double jac = 1;
  for (long double v : h) jac *= v;
  // phi_{v,k} = h_k phi^_{v,k}(xi) and d_kl = d^_kl / (h_k h_l).
  std::vector<long double> s(n);
  for (std::size_t a = 0; a < n; ++a) s[a] = a % (d + 1) == 0 ? 1 : h[a % (d + 1) - 1];
  return combine_gram(reference_gram_, d, n, jac, [&](std::size_t a, std::size_t b, std::size_t k, std::size_t l) {
    return s[a] * s[b] / (h[k] * h[k] * h[l] * h[l]);
  });
}

std::shared_ptr<const ShapeCache::Entry> ShapeCache::get(const CellGeometry& cell) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(cell.half);
  if (it != entries_.end()) return it->second;
  auto entry = std::make_shared<Entry>();
  entry->table = reference_.scaled(cell);
  if (with_stiffness_) entry->stiffness = scaled_stiffness(cell);
  return entries_.emplace(cell.half, std::move(entry)).first->second;
}

std::size_t ShapeCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace adini
