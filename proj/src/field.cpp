#include "adini/field.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace adini {

double Field::value(std::span<const double> x) const {
  const std::vector<int> zero(dim(), 0);
  return derivative(x, zero);
}

void Field::jet2(std::span<const double> x, double& value, std::span<double> grad, std::span<double> hess) const {
  const std::size_t d = dim();
  std::vector<int> alpha(d, 0);
  value = derivative(x, alpha);
  for (std::size_t k = 0; k < d; ++k) {
    alpha[k] = 1;
    grad[k] = derivative(x, alpha);
    alpha[k] = 0;
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k; l < d; ++l) {
      ++alpha[k];
      ++alpha[l];
      hess[k * d + l] = hess[l * d + k] = derivative(x, alpha);
      --alpha[k];
      --alpha[l];
    }
  }
}

PolynomialField::PolynomialField(RationalPoly p) : Field(p.dim()), poly_(std::move(p)) {
  const std::size_t d = dim();
  std::size_t count = 1;
  for (std::size_t k = 0; k < d; ++k) count *= kCachedOrder + 1;
  cached_.resize(count);
  // Walk alpha in key order; derive each entry from its predecessor along one axis.
  std::vector<RationalPoly> exact(count, RationalPoly(d));
  for (std::size_t id = 0; id < count; ++id) {
    std::size_t rem = id;
    Exponent alpha(d);
    for (std::size_t k = d; k-- > 0;) {
      alpha[k] = static_cast<int>(rem % (kCachedOrder + 1));
      rem /= kCachedOrder + 1;
    }
    std::size_t axis = d;
    for (std::size_t k = d; k-- > 0;)
      if (alpha[k] > 0) {
        axis = k;
        break;
      }
    if (axis == d) {
      exact[id] = poly_;
    } else {
      Exponent parent = alpha;
      --parent[axis];
      exact[id] = diff(exact[key(parent)], axis);
    }
    cached_[id] = FloatPoly(exact[id]);
  }
}

std::size_t PolynomialField::key(std::span<const int> alpha) const {
  std::size_t id = 0;
  for (int a : alpha) id = id * (kCachedOrder + 1) + static_cast<std::size_t>(a);
  return id;
}

double PolynomialField::derivative(std::span<const double> x, std::span<const int> alpha) const {
  if (alpha.size() != dim()) throw std::invalid_argument("derivative: multi-index length != dim");
  bool cached = true;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("derivative: negative order");
    if (a > kCachedOrder) cached = false;
  }
  if (cached) return cached_[key(alpha)](x);
  const Exponent e(alpha.begin(), alpha.end());
  return FloatPoly(diff(poly_, e))(x);
}

namespace {

// m-th derivative of s(t) = sin^2(pi t) = (1 - cos(2 pi t)) / 2.
double sine_squared_derivative(double t, int m) {
  constexpr double pi = std::numbers::pi;
  if (m == 0) {
    const double s = std::sin(pi * t);
    return s * s;
  }
  const double z = 2.0 * pi * t;
  // d^m/dt^m cos(z) = (2 pi)^m cos(z + m pi / 2)
  double c = 0.0;
  switch (m % 4) {
    case 0: c = std::cos(z); break;
    case 1: c = -std::sin(z); break;
    case 2: c = -std::cos(z); break;
    default: c = std::sin(z); break;
  }
  return -0.5 * std::pow(2.0 * pi, m) * c;
}

}  // namespace

double SineSquaredField::derivative(std::span<const double> x, std::span<const int> alpha) const {
  if (alpha.size() != dim() || x.size() != dim()) throw std::invalid_argument("derivative: dimension mismatch");
  double p = 1.0;
  for (std::size_t k = 0; k < dim(); ++k) p *= sine_squared_derivative(x[k], alpha[k]);
  return p;
}

double BilaplacianField::derivative(std::span<const double> x, std::span<const int> alpha) const {
  const std::size_t d = dim();
  std::vector<int> beta(alpha.begin(), alpha.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      beta[i] += 2;
      beta[j] += 2;
      sum += u_->derivative(x, beta);
      beta[i] -= 2;
      beta[j] -= 2;
    }
  }
  return sum;
}

RationalPoly bilaplacian(const RationalPoly& p) {
  const std::size_t d = p.dim();
  RationalPoly f(d);
  for (std::size_t i = 0; i < d; ++i) {
    const RationalPoly pii = diff(diff(p, i), i);
    for (std::size_t j = 0; j < d; ++j) f += diff(diff(pii, j), j);
  }
  return f;
}

FieldPtr bilaplacian(const FieldPtr& u) {
  if (const RationalPoly* p = u->polynomial()) return std::make_shared<PolynomialField>(bilaplacian(*p));
  return std::make_shared<BilaplacianField>(u);
}

FieldPtr make_u1(std::size_t dim) { return std::make_shared<SineSquaredField>(dim); }

RationalPoly u2_polynomial(std::size_t dim) {
  RationalPoly u = RationalPoly::constant(dim, 1);
  for (std::size_t k = 0; k < dim; ++k) {
    RationalPoly one_minus = RationalPoly::constant(dim, 1) - RationalPoly::variable(dim, k);
    RationalPoly factor = RationalPoly::variable(dim, k) * one_minus;
    u = u * factor * factor;
  }
  return u;
}

FieldPtr make_u2(std::size_t dim) { return std::make_shared<PolynomialField>(u2_polynomial(dim)); }

RationalPoly read_polynomial(std::istream& is, std::size_t dim) {
  RationalPoly p(dim);
  std::string line;
  std::size_t line_no = 0;
  bool any = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string coeff_text;
    if (!(row >> coeff_text)) continue;
    auto fail = [&](const std::string& what) {
      return std::runtime_error("polynomial file line " + std::to_string(line_no) + ": " + what);
    };
    Rational coeff;
    try {
      coeff = parse_rational(coeff_text);
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
    Exponent alpha;
    long a = 0;
    std::string token;
    while (row >> token) {
      try {
        std::size_t used = 0;
        a = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw fail("exponent '" + token + "' is not an integer");
      }
      if (a < 0) throw fail("negative exponent");
      alpha.push_back(static_cast<int>(a));
    }
    if (alpha.size() != dim)
      throw fail("expected " + std::to_string(dim) + " exponents, got " + std::to_string(alpha.size()));
    p.add_term(alpha, coeff);
    any = true;
  }
  if (!any) throw std::runtime_error("polynomial file contains no monomials");
  return p;
}

FieldPtr make_solution(const std::string& id, std::size_t dim) {
  if (id == "u1") return make_u1(dim);
  if (id == "u2") return make_u2(dim);
  std::ifstream in(id);
  if (!in) throw std::runtime_error("unknown solution '" + id + "' (expected u1, u2 or a polynomial file)");
  return std::make_shared<PolynomialField>(read_polynomial(in, dim));
}

}  // namespace adini
