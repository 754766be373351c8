#ifndef LOGDIV_TESTS_UTIL_HPP
#define LOGDIV_TESTS_UTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "logdiv/groebner.hpp"
#include "logdiv/parser.hpp"
#include "logdiv/poly.hpp"

namespace logdiv::testutil {

inline Poly P(const std::string& text, const RingPtr& ring) {
  return parse_expression(text, ring);
}

inline Poly random_poly(std::mt19937& rng, const RingPtr& ring, int max_terms,
                        int max_deg, int max_coef = 5) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> dexp(0, max_deg);
  std::uniform_int_distribution<int> dcoef(-max_coef, max_coef);
  Poly p(ring);
  int t = nterms(rng);
  for (int k = 0; k < t; ++k) {
    Exp e(ring->size());
    int budget = max_deg;
    for (std::size_t i = 0; i < ring->size(); ++i) {
      int d = dexp(rng) % (budget + 1);
      e[i] = d;
      budget -= d;
    }
    p.add_term(e, Rat(dcoef(rng)));
  }
  return p;
}

inline Poly random_nonzero_poly(std::mt19937& rng, const RingPtr& ring,
                                int max_terms, int max_deg) {
  for (;;) {
    Poly p = random_poly(rng, ring, max_terms, max_deg);
    if (!p.is_zero()) return p;
  }
}

// Finite oracle for module containment: the Q-span of {monomial * row}
// truncated at total degree <= deg, compared coordinatewise.  Returns true
// if every truncated element of span(sub) lies in span(sup).
bool module_span_contains(const std::vector<std::vector<Poly>>& sup,
                          const std::vector<std::vector<Poly>>& sub,
                          const RingPtr& ring, int deg);

}  // namespace logdiv::testutil

#endif
