#pragma once

#include "adini/element.hpp"
#include "adini/polynomial.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace adini {

/// Outcome of one family of exact checks.
struct LemmaReport {
  explicit LemmaReport(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Description of the first failing input, empty when all checks passed.
  std::string witness;

  bool passed() const { return checks > 0 && failures == 0; }
  void record(bool ok, const std::string& what);
  void merge(const LemmaReport& other);
};

/// Seeded source of small random rationals, boxes and polynomials.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// p / q with |p| <= max_num and 1 <= q <= max_den.
  Rational rational(int max_num = 9, int max_den = 7);
  Rational positive(int max_num = 9, int max_den = 7);
  Box box(std::size_t dim);
  /// Random combination of the given monomials with every coefficient nonzero.
  RationalPoly combination(std::size_t dim, const std::vector<Exponent>& monomials);
  RationalPoly adini(std::size_t dim);
  RationalPoly total_degree(std::size_t dim, int degree);

 private:
  std::mt19937_64 rng_;
};

/// Monomials of total degree <= degree.
std::vector<Exponent> monomials_up_to(std::size_t dim, int degree);

/// The element builds, its nodal matrix is the identity, it has (d+1) 2^d
/// basis polynomials inside P_A and a nonzero Vandermonde determinant.
bool unisolvent(const AdiniElement& element);

/// R1(d w / d x_i) has equal traces on the two faces normal to x_i, for every i.
bool opposite_faces_agree(const RationalPoly& w, const Box& box);

/// The face trace of R1(d w / d x_i) equals
/// sum_{j != i} sum_{alpha in M_ij} B_i(j, alpha) Pi_0(d^alpha w), on both faces and for every i.
bool face_expansion_holds(const RationalPoly& w, const Box& box);

/// Exact test of p in span(spanning).
bool in_span(const RationalPoly& p, const std::vector<RationalPoly>& spanning);

/// Spanning set of S^i_K: ((x_j - x_jc)^2 - h_j^2) (x - x_c)^beta for every axis j
/// and every beta with entries <= 1 and beta_i = 0.
std::vector<RationalPoly> face_space_basis(const Box& box, std::size_t i);

/// R1(d w / d x_i) vanishes at every vertex and lies in S^i_K, for every i.
bool face_space_membership(const RationalPoly& w, const Box& box);

/// Left:  (grad^2 (u - Pi_K u), grad^2 v)_K.
/// Right: -sum_i sum_{j != i} h_j^2 / 3 int_K d^4 u / dx_i^2 dx_j^2 * d^2 v / dx_i^2.
std::pair<Rational, Rational> interpolation_defect_sides(const RationalPoly& u, const RationalPoly& v,
                                                         const AdiniElement& element);

/// Random P4 / P_A pairs on one box; passes iff both sides agree exactly in every trial.
LemmaReport lemma24_check(const Box& box, std::size_t trials, std::uint64_t seed);

/// Every exact element check on `boxes` random rational boxes of dimension d,
/// with `trials` random inputs per box. One report per family, in a fixed order:
/// unisolvence, cubic reproduction, opposite faces, face expansion,
/// face-space membership, interpolation defect.
std::vector<LemmaReport> verify_element_suite(std::size_t dim, std::size_t trials, std::size_t boxes,
                                              std::uint64_t seed);

}  // namespace adini
