#pragma once

#include "adini/polynomial.hpp"

#include <span>
#include <utility>
#include <vector>

namespace adini {

/// Binary floating-point copy of a RationalPoly, for fast evaluation.
class FloatPoly {
 public:
  FloatPoly() = default;
  explicit FloatPoly(const RationalPoly& p);

  std::size_t dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  double operator()(std::span<const double> x) const;

 private:
  std::size_t dim_ = 0;
  int max_degree_ = 0;
  std::vector<std::pair<Exponent, double>> terms_;
};

}  // namespace adini
