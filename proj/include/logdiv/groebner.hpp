#ifndef LOGDIV_GROEBNER_HPP
#define LOGDIV_GROEBNER_HPP

#include <vector>

#include "logdiv/order.hpp"
#include "logdiv/poly.hpp"

namespace logdiv {

// Generating set of an ideal; is_groebner is set only by buchberger.
struct IdealBasis {
  std::vector<Poly> generators;
  MonomialOrder order = MonomialOrder::degrevlex();
  bool is_groebner = false;
};

// Reduced Groebner basis of the same ideal; canonical for the given order
// (monic generators, sorted by leading monomial).
IdealBasis buchberger(const IdealBasis& basis, const Deadline& deadline = {});

// Unique remainder of p modulo gb; zero iff p lies in the ideal.
Poly normal_form(const Poly& p, const IdealBasis& gb);

// Extended variant: also emits the cofactor rows A with
// gb[j] = sum_i A[j][i] * basis.generators[i].
struct ExtendedBasis {
  IdealBasis gb;
  std::vector<std::vector<Poly>> cofactors;
};
ExtendedBasis extended_buchberger(const IdealBasis& basis,
                                  const Deadline& deadline = {});

// Generators of (ideal of gens) intersected with the subring omitting the
// variables in `drop`, via a block-elimination basis.
std::vector<Poly> elimination_ideal(const std::vector<Poly>& gens,
                                    const std::vector<std::size_t>& drop,
                                    const Deadline& deadline = {});

// Finite generating set of { (c_0..c_m) : sum c_i gens_i = 0 }.
std::vector<std::vector<Poly>> syzygies(const std::vector<Poly>& gens,
                                        const Deadline& deadline = {});

// Krull dimension of the quotient ring, from the leading-term ideal.
// Returns -1 for the unit ideal.
int krull_dimension(const std::vector<Poly>& gens,
                    const Deadline& deadline = {});

bool ideal_equal(const std::vector<Poly>& a, const std::vector<Poly>& b,
                 const MonomialOrder& order, const Deadline& deadline = {});

// Polynomial gcd over the rationals, computed through the principal
// generator of (a) ∩ (b).  Result is normalized to leading coefficient 1
// (degrevlex); gcd(0, b) = b normalized.
Poly poly_gcd(const Poly& a, const Poly& b, const Deadline& deadline = {});

}  // namespace logdiv

#endif
