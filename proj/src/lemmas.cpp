#include "adini/lemmas.hpp"

#include "adini/parallel.hpp"

#include <map>
#include <sstream>

namespace adini {

void LemmaReport::record(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  if (failures++ == 0) witness = what;
}

void LemmaReport::merge(const LemmaReport& other) {
  checks += other.checks;
  if (other.failures > 0 && failures == 0) witness = other.witness;
  failures += other.failures;
}

Rational RationalSampler::rational(int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  Rational q(num(rng_), den(rng_));
  q.canonicalize();
  return q;
}

Rational RationalSampler::positive(int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  Rational q(num(rng_), den(rng_));
  q.canonicalize();
  return q;
}

Box RationalSampler::box(std::size_t dim) {
  RationalVector c(dim), h(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    c[k] = rational();
    h[k] = positive();
  }
  return Box(c, h);
}

RationalPoly RationalSampler::combination(std::size_t dim, const std::vector<Exponent>& monomials) {
  RationalPoly p(dim);
  for (const auto& alpha : monomials) {
    Rational c = 0;
    while (c == 0) c = rational();
    p.add_term(alpha, c);
  }
  return p;
}

RationalPoly RationalSampler::adini(std::size_t dim) { return combination(dim, shape_monomials(dim)); }

RationalPoly RationalSampler::total_degree(std::size_t dim, int degree) {
  return combination(dim, monomials_up_to(dim, degree));
}

std::vector<Exponent> monomials_up_to(std::size_t dim, int degree) {
  std::vector<Exponent> out;
  Exponent alpha(dim, 0);
  // Odometer over [0, degree]^dim, keeping total degree <= degree.
  while (true) {
    if (total_degree(alpha) <= degree) out.push_back(alpha);
    std::size_t k = dim;
    while (k-- > 0) {
      if (alpha[k] < degree) {
        ++alpha[k];
        break;
      }
      alpha[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

bool unisolvent(const AdiniElement& element) {
  const std::size_t d = element.dim();
  if (element.dof_count() != adini_dof_count(d) || element.monomials().size() != adini_dof_count(d)) return false;
  if (element.vandermonde_determinant() == 0) return false;
  const auto m = nodal_matrix(element);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  for (const auto& phi : element.basis())
    if (!in_adini_space(phi)) return false;
  return true;
}

bool opposite_faces_agree(const RationalPoly& w, const Box& box) {
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const RationalPoly g = r1(diff(w, i), box);
    if (restrict_face(g, i, Side::low, box) != restrict_face(g, i, Side::high, box)) return false;
  }
  return true;
}

bool face_expansion_holds(const RationalPoly& w, const Box& box) {
  const std::size_t d = box.dim();
  for (std::size_t i = 0; i < d; ++i) {
    const RationalPoly g = r1(diff(w, i), box);
    RationalPoly expansion(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      for (const auto& alpha : m_set(d, i, j))
        expansion += cell_average(diff(w, alpha), box) * b_coefficient(box, i, j, alpha);
    }
    for (Side side : {Side::low, Side::high})
      if (restrict_face(g, i, side, box) != restrict_face(expansion, i, side, box)) return false;
  }
  return true;
}

bool in_span(const RationalPoly& p, const std::vector<RationalPoly>& spanning) {
  // Echelon form keyed by leading (largest) exponent.
  std::map<Exponent, RationalPoly> pivots;
  auto reduce = [&](RationalPoly q) {
    while (!q.is_zero()) {
      const auto& [lead, c] = *q.terms().rbegin();
      const auto it = pivots.find(lead);
      if (it == pivots.end()) break;
      const Rational factor = c / it->second.coefficient(lead);
      q -= factor * it->second;
    }
    return q;
  };
  for (const auto& s : spanning) {
    RationalPoly r = reduce(s);
    if (!r.is_zero()) {
      const Exponent lead = r.terms().rbegin()->first;
      pivots.emplace(lead, std::move(r));
    }
  }
  return reduce(p).is_zero();
}

std::vector<RationalPoly> face_space_basis(const Box& box, std::size_t i) {
  const std::size_t d = box.dim();
  const auto& c = box.center();
  const auto& h = box.half_lengths();
  std::vector<RationalPoly> out;
  for (std::size_t j = 0; j < d; ++j) {
    Exponent sq(d, 0);
    sq[j] = 2;
    const RationalPoly bubble = shifted(RationalPoly::monomial(sq), c) - RationalPoly::constant(d, h[j] * h[j]);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      if ((mask >> i) & 1U) continue;
      Exponent beta(d, 0);
      for (std::size_t k = 0; k < d; ++k) beta[k] = static_cast<int>((mask >> k) & 1U);
      out.push_back(bubble * shifted(RationalPoly::monomial(beta), c));
    }
  }
  return out;
}

bool face_space_membership(const RationalPoly& w, const Box& box) {
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const RationalPoly g = r1(diff(w, i), box);
    for (std::size_t v = 0; v < box.vertex_count(); ++v)
      if (eval(g, box.vertex(v)) != 0) return false;
    if (!in_span(g, face_space_basis(box, i))) return false;
  }
  return true;
}

std::pair<Rational, Rational> interpolation_defect_sides(const RationalPoly& u, const RationalPoly& v,
                                                         const AdiniElement& element) {
  const Box& box = element.geometry();
  const std::size_t d = box.dim();
  const RationalPoly e = u - interp_nodal(nodal_data(u, box), element);
  Rational lhs = 0;
  for (std::size_t k = 0; k < d; ++k) {
    const RationalPoly ek = diff(e, k), vk = diff(v, k);
    for (std::size_t l = 0; l < d; ++l) lhs += integrate_box(diff(ek, l) * diff(vk, l), box);
  }
  Rational rhs = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const RationalPoly vii = diff(diff(v, i), i);
    const RationalPoly uii = diff(diff(u, i), i);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      const Rational& hj = box.half_lengths()[j];
      rhs -= hj * hj / 3 * integrate_box(diff(diff(uii, j), j) * vii, box);
    }
  }
  return {lhs, rhs};
}

namespace {

std::string describe(const Box& box) {
  std::ostringstream os;
  os << "box center (";
  for (std::size_t k = 0; k < box.dim(); ++k) os << (k ? ", " : "") << to_string(box.center()[k]);
  os << ") half (";
  for (std::size_t k = 0; k < box.dim(); ++k) os << (k ? ", " : "") << to_string(box.half_lengths()[k]);
  os << ")";
  return os.str();
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

LemmaReport defect_trials(const AdiniElement& element, std::size_t trials, RationalSampler& rng) {
  LemmaReport r("interpolation defect identity");
  const std::size_t d = element.dim();
  for (std::size_t t = 0; t < trials; ++t) {
    const RationalPoly u = rng.total_degree(d, 4);
    const RationalPoly v = rng.adini(d);
    const auto [lhs, rhs] = interpolation_defect_sides(u, v, element);
    r.record(lhs == rhs, describe(element.geometry()) + ", u = " + to_string(u) + ", v = " + to_string(v) +
                             ", lhs = " + to_string(lhs) + ", rhs = " + to_string(rhs));
  }
  return r;
}

}  // namespace

LemmaReport lemma24_check(const Box& box, std::size_t trials, std::uint64_t seed) {
  RationalSampler rng(seed);
  return defect_trials(build_element(box), trials, rng);
}

std::vector<LemmaReport> verify_element_suite(std::size_t dim, std::size_t trials, std::size_t boxes,
                                              std::uint64_t seed) {
  const std::vector<std::string> names = {"unisolvence",      "cubic reproduction",       "opposite faces",
                                          "face expansion",   "face-space membership",    "interpolation defect identity"};
  std::vector<std::vector<LemmaReport>> per_box(boxes);
  parallel_for(boxes, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      RationalSampler rng(mix(seed, b));
      std::vector<LemmaReport> reports;
      for (const auto& n : names) reports.emplace_back(n);
      const Box box = rng.box(dim);
      const std::string where = describe(box);
      AdiniElement element = [&] {
        try {
          return build_element(box);
        } catch (const std::logic_error&) {
          return AdiniElement(Box::reference(dim));
        }
      }();
      reports[0].record(element.geometry() == box && unisolvent(element), where);
      for (std::size_t t = 0; t < trials; ++t) {
        const RationalPoly c = rng.total_degree(dim, 3);
        reports[1].record(interp_nodal(nodal_data(c, box), element) == c, where + ", p = " + to_string(c));
        const RationalPoly w = rng.adini(dim);
        const std::string with_w = where + ", w = " + to_string(w);
        reports[2].record(opposite_faces_agree(w, box), with_w);
        reports[3].record(face_expansion_holds(w, box), with_w);
        reports[4].record(face_space_membership(w, box), with_w);
      }
      reports[5].merge(defect_trials(element, trials, rng));
      per_box[b] = std::move(reports);
    }
  });
  std::vector<LemmaReport> out;
  for (const auto& n : names) out.emplace_back(n);
  for (const auto& reports : per_box)
    for (std::size_t i = 0; i < out.size(); ++i) out[i].merge(reports[i]);
  return out;
}

}  // namespace adini
