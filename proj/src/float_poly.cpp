#include "adini/float_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace adini {

FloatPoly::FloatPoly(const RationalPoly& p) : dim_(p.dim()), max_degree_(std::max(0, p.max_axis_degree())) {
  terms_.reserve(p.term_count());
  for (const auto& [alpha, c] : p.terms()) terms_.emplace_back(alpha, to_double(c));
}

double FloatPoly::operator()(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("FloatPoly: point has wrong number of coordinates");
  if (terms_.empty()) return 0.0;
  // powers[k * (max+1) + a] = x_k^a
  const int stride = max_degree_ + 1;
  double powers_small[4 * 8];
  std::vector<double> powers_large;
  double* powers = powers_small;
  if (dim_ * stride > std::size(powers_small)) {
    powers_large.resize(dim_ * stride);
    powers = powers_large.data();
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    double* row = powers + k * stride;
    row[0] = 1.0;
    for (int a = 1; a < stride; ++a) row[a] = row[a - 1] * x[k];
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = c;
    for (std::size_t k = 0; k < dim_; ++k) term *= powers[k * stride + alpha[k]];
    sum += term;
  }
  return sum;
}

}  // namespace adini
