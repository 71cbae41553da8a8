#pragma once

#include "adini/float_poly.hpp"
#include "adini/polynomial.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace adini {

/// Scalar field on the domain with partial derivatives on demand.
class Field {
 public:
  explicit Field(std::size_t dim) : dim_(dim) {}
  virtual ~Field() = default;

  std::size_t dim() const { return dim_; }

  /// d^|alpha| u / dx^alpha at x. Implementations support at least |alpha| <= 4.
  virtual double derivative(std::span<const double> x, std::span<const int> alpha) const = 0;

  double value(std::span<const double> x) const;

  /// Value, gradient (d entries) and full Hessian (d*d entries, row-major).
  virtual void jet2(std::span<const double> x, double& value, std::span<double> grad, std::span<double> hess) const;

  /// Exact representation when the field is a polynomial, else nullptr.
  virtual const RationalPoly* polynomial() const { return nullptr; }

 private:
  std::size_t dim_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Field backed by an exact polynomial; derivatives are taken symbolically
/// and evaluated through cached float twins.
class PolynomialField final : public Field {
 public:
  explicit PolynomialField(RationalPoly p);

  double derivative(std::span<const double> x, std::span<const int> alpha) const override;
  const RationalPoly* polynomial() const override { return &poly_; }

 private:
  std::size_t key(std::span<const int> alpha) const;

  RationalPoly poly_;
  // Float twin of d^alpha p for every alpha with entries <= kCachedOrder.
  static constexpr int kCachedOrder = 4;
  std::vector<FloatPoly> cached_;
};

/// u(x) = prod_k sin^2(pi x_k).
class SineSquaredField final : public Field {
 public:
  explicit SineSquaredField(std::size_t dim) : Field(dim) {}
  double derivative(std::span<const double> x, std::span<const int> alpha) const override;
};

/// f = Delta^2 u = sum_{i,j} d^4 u / dx_i^2 dx_j^2, evaluated from u's derivatives.
class BilaplacianField final : public Field {
 public:
  explicit BilaplacianField(FieldPtr u) : Field(u->dim()), u_(std::move(u)) {}
  double derivative(std::span<const double> x, std::span<const int> alpha) const override;

 private:
  FieldPtr u_;
};

/// Delta^2 u; symbolic (a PolynomialField) when u is a polynomial.
FieldPtr bilaplacian(const FieldPtr& u);
RationalPoly bilaplacian(const RationalPoly& p);

/// prod_k sin^2(pi x_k) on the unit box.
FieldPtr make_u1(std::size_t dim);
/// prod_k x_k^2 (1 - x_k)^2 as an exact polynomial.
RationalPoly u2_polynomial(std::size_t dim);
FieldPtr make_u2(std::size_t dim);

/// Reads one monomial per line, "coeff a_1 ... a_d"; '#' starts a comment.
/// Throws std::runtime_error on malformed input.
RationalPoly read_polynomial(std::istream& is, std::size_t dim);

/// Looks up "u1", "u2" or reads a polynomial file at the given path.
FieldPtr make_solution(const std::string& id, std::size_t dim);

}  // namespace adini
