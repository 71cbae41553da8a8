#include "adini/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace adini {

namespace {

void require_same_dim(const RationalPoly& p, const RationalPoly& q, const char* op) {
  if (p.dim() != q.dim())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(p.dim()) +
                                " vs " + std::to_string(q.dim()) + ")");
}

void require_point_dim(const RationalPoly& p, std::size_t n) {
  if (p.dim() != n) throw std::invalid_argument("point has wrong number of coordinates");
}

}  // namespace

int total_degree(const Exponent& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

Exponent unit_exponent(std::size_t dim, std::size_t axis) {
  Exponent e(dim, 0);
  e.at(axis) = 1;
  return e;
}

RationalPoly RationalPoly::constant(std::size_t dim, const Rational& c) {
  RationalPoly p(dim);
  p.add_term(Exponent(dim, 0), c);
  return p;
}

RationalPoly RationalPoly::variable(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw std::out_of_range("RationalPoly::variable: axis out of range");
  return monomial(unit_exponent(dim, axis));
}

RationalPoly RationalPoly::monomial(const Exponent& alpha, const Rational& c) {
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("negative exponent");
  RationalPoly p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

Rational RationalPoly::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

void RationalPoly::add_term(const Exponent& alpha, const Rational& c) {
  if (alpha.size() != dim_) throw std::invalid_argument("add_term: exponent length != dim");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int RationalPoly::degree(std::size_t axis) const {
  if (axis >= dim_) throw std::out_of_range("degree: axis out of range");
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[axis]);
  return d;
}

int RationalPoly::max_axis_degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_)
    for (int a : alpha) d = std::max(d, a);
  if (d < 0 && !terms_.empty()) d = 0;
  return d;
}

int RationalPoly::total_degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, adini::total_degree(alpha));
  return d;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& q) {
  require_same_dim(*this, q, "add");
  for (const auto& [alpha, c] : q.terms_) add_term(alpha, c);
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& q) {
  require_same_dim(*this, q, "sub");
  for (const auto& [alpha, c] : q.terms_) add_term(alpha, -c);
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coeff] : terms_) coeff *= c;
  return *this;
}

RationalPoly add(const RationalPoly& p, const RationalPoly& q) {
  RationalPoly r = p;
  r += q;
  return r;
}

RationalPoly sub(const RationalPoly& p, const RationalPoly& q) {
  RationalPoly r = p;
  r -= q;
  return r;
}

RationalPoly scale(const RationalPoly& p, const Rational& c) {
  RationalPoly r = p;
  r *= c;
  return r;
}

RationalPoly mul(const RationalPoly& p, const RationalPoly& q) {
  require_same_dim(p, q, "mul");
  RationalPoly r(p.dim());
  Exponent gamma(p.dim());
  for (const auto& [alpha, a] : p.terms()) {
    for (const auto& [beta, b] : q.terms()) {
      for (std::size_t k = 0; k < gamma.size(); ++k) gamma[k] = alpha[k] + beta[k];
      r.add_term(gamma, a * b);
    }
  }
  return r;
}

RationalPoly pow(const RationalPoly& p, unsigned exponent) {
  RationalPoly r = RationalPoly::constant(p.dim(), 1);
  for (unsigned k = 0; k < exponent; ++k) r = mul(r, p);
  return r;
}

RationalPoly diff(const RationalPoly& p, std::size_t axis) {
  if (axis >= p.dim()) throw std::out_of_range("diff: axis out of range");
  RationalPoly r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha[axis] == 0) continue;
    Exponent beta = alpha;
    --beta[axis];
    r.add_term(beta, c * alpha[axis]);
  }
  return r;
}

RationalPoly diff(const RationalPoly& p, const Exponent& alpha) {
  if (alpha.size() != p.dim()) throw std::invalid_argument("diff: multi-index length != dim");
  RationalPoly r = p;
  for (std::size_t axis = 0; axis < alpha.size(); ++axis)
    for (int k = 0; k < alpha[axis]; ++k) r = diff(r, axis);
  return r;
}

RationalPoly antiderivative(const RationalPoly& p, std::size_t axis) {
  if (axis >= p.dim()) throw std::out_of_range("antiderivative: axis out of range");
  RationalPoly r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    Exponent beta = alpha;
    ++beta[axis];
    r.add_term(beta, c / beta[axis]);
  }
  return r;
}

RationalPoly shifted(const RationalPoly& p, std::span<const Rational> shift) {
  require_point_dim(p, shift.size());
  const std::size_t d = p.dim();
  // (x_k - s_k)^a expanded once per (axis, exponent) on demand.
  std::vector<std::map<int, RationalPoly>> powers(d);
  auto axis_power = [&](std::size_t k, int a) -> const RationalPoly& {
    auto it = powers[k].find(a);
    if (it != powers[k].end()) return it->second;
    RationalPoly linear = RationalPoly::variable(d, k);
    linear.add_term(Exponent(d, 0), -shift[k]);
    return powers[k].emplace(a, pow(linear, static_cast<unsigned>(a))).first->second;
  };
  RationalPoly r(d);
  for (const auto& [alpha, c] : p.terms()) {
    RationalPoly term = RationalPoly::constant(d, c);
    for (std::size_t k = 0; k < d; ++k)
      if (alpha[k] > 0) term = mul(term, axis_power(k, alpha[k]));
    r += term;
  }
  return r;
}

RationalPoly scaled_variables(const RationalPoly& p, std::span<const Rational> factor) {
  require_point_dim(p, factor.size());
  RationalPoly r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    Rational coeff = c;
    for (std::size_t k = 0; k < alpha.size(); ++k) coeff *= pow(factor[k], static_cast<unsigned>(alpha[k]));
    r.add_term(alpha, coeff);
  }
  return r;
}

namespace {

using TermIt = RationalPoly::TermMap::const_iterator;

// Terms in [first, last) share exponents on axes < axis. The map order is
// lexicographic, so terms with equal alpha[axis] are contiguous.
Rational horner(TermIt first, TermIt last, std::size_t axis, std::span<const Rational> x) {
  if (first == last) return 0;
  if (axis == x.size()) return first->second;
  // Group by exponent of x_axis (ascending), evaluate each group recursively.
  std::vector<std::pair<int, Rational>> groups;
  while (first != last) {
    const int a = first->first[axis];
    TermIt group_end = first;
    while (group_end != last && group_end->first[axis] == a) ++group_end;
    groups.emplace_back(a, horner(first, group_end, axis + 1, x));
    first = group_end;
  }
  Rational acc = 0;
  int current = groups.back().first;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    for (; current > it->first; --current) acc *= x[axis];
    acc += it->second;
  }
  for (; current > 0; --current) acc *= x[axis];
  return acc;
}

}  // namespace

Rational eval(const RationalPoly& p, std::span<const Rational> x) {
  require_point_dim(p, x.size());
  return horner(p.terms().begin(), p.terms().end(), 0, x);
}

Rational eval_naive(const RationalPoly& p, std::span<const Rational> x) {
  require_point_dim(p, x.size());
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational term = c;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      for (int j = 0; j < alpha[k]; ++j) term *= x[k];
    sum += term;
  }
  return sum;
}

std::string to_string(const RationalPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : p.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    const bool unit = alpha == Exponent(alpha.size(), 0);
    if (mag != 1 || unit) os << to_string(Rational(mag));
    bool need_sep = mag != 1;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (alpha[k] == 0) continue;
      if (need_sep) os << "*";
      os << "x" << (k + 1);
      if (alpha[k] > 1) os << "^" << alpha[k];
      need_sep = true;
    }
  }
  return os.str();
}

Box::Box(RationalVector center, RationalVector half_lengths)
    : center_(std::move(center)), half_(std::move(half_lengths)) {
  if (center_.size() != half_.size()) throw std::invalid_argument("Box: center/half-length size mismatch");
  if (center_.empty()) throw std::invalid_argument("Box: dimension must be positive");
  for (const auto& h : half_)
    if (h <= 0) throw std::invalid_argument("Box: half-lengths must be positive");
}

Box Box::reference(std::size_t dim) { return Box(RationalVector(dim, 0), RationalVector(dim, 1)); }

Box Box::from_bounds(const RationalVector& lower, const RationalVector& upper) {
  if (lower.size() != upper.size()) throw std::invalid_argument("Box: bound size mismatch");
  RationalVector c(lower.size()), h(lower.size());
  for (std::size_t k = 0; k < lower.size(); ++k) {
    c[k] = (lower[k] + upper[k]) / 2;
    h[k] = (upper[k] - lower[k]) / 2;
  }
  return Box(std::move(c), std::move(h));
}

Rational Box::measure() const {
  Rational m = 1;
  for (const auto& h : half_) m *= 2 * h;
  return m;
}

std::vector<int> Box::vertex_signs(std::size_t v) const {
  const std::size_t d = dim();
  if (v >= vertex_count()) throw std::out_of_range("Box::vertex_signs: vertex index out of range");
  std::vector<int> s(d);
  for (std::size_t k = 0; k < d; ++k) s[k] = (v >> (d - 1 - k)) & 1U ? 1 : -1;
  return s;
}

RationalVector Box::vertex(std::size_t v) const {
  const auto s = vertex_signs(v);
  RationalVector x(dim());
  for (std::size_t k = 0; k < dim(); ++k) x[k] = center_[k] + s[k] * half_[k];
  return x;
}

Rational integrate_box(const RationalPoly& p, const Box& box) {
  if (p.dim() != box.dim()) throw std::invalid_argument("integrate_box: dimension mismatch");
  const std::size_t d = p.dim();
  // Per-axis moments int_{lo}^{hi} x^a dx, memoised by exponent.
  std::vector<std::vector<Rational>> moments(d);
  auto moment = [&](std::size_t k, int a) -> const Rational& {
    auto& m = moments[k];
    while (static_cast<int>(m.size()) <= a) {
      const unsigned e = static_cast<unsigned>(m.size()) + 1;
      m.push_back((pow(box.upper(k), e) - pow(box.lower(k), e)) / e);
    }
    return m[a];
  };
  Rational total = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational term = c;
    for (std::size_t k = 0; k < d; ++k) term *= moment(k, alpha[k]);
    total += term;
  }
  return total;
}

RationalPoly substitute(const RationalPoly& p, std::size_t axis, const Rational& value) {
  if (axis >= p.dim()) throw std::out_of_range("substitute: axis out of range");
  RationalPoly r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    Exponent beta = alpha;
    beta[axis] = 0;
    r.add_term(beta, c * pow(value, static_cast<unsigned>(alpha[axis])));
  }
  return r;
}

RationalPoly restrict_face(const RationalPoly& p, std::size_t axis, Side side, const Box& box) {
  if (p.dim() != box.dim()) throw std::invalid_argument("restrict_face: dimension mismatch");
  if (axis >= p.dim()) throw std::out_of_range("restrict_face: axis out of range");
  const Rational value = box.face_coordinate(axis, side);
  RationalPoly r(p.dim() - 1);
  for (const auto& [alpha, c] : p.terms()) {
    Exponent beta;
    beta.reserve(p.dim() - 1);
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if (k != axis) beta.push_back(alpha[k]);
    r.add_term(beta, c * pow(value, static_cast<unsigned>(alpha[axis])));
  }
  return r;
}

}  // namespace adini
