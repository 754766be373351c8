#ifndef LOGDIV_WEYL_HPP
#define LOGDIV_WEYL_HPP

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "logdiv/divisor.hpp"
#include "logdiv/order.hpp"
#include "logdiv/poly.hpp"

namespace logdiv {

// Monomial x^a d^b s^c of the Weyl algebra extended by a central s.
struct WeylKey {
  Exp x;  // exponents of the coordinates
  Exp d;  // exponents of the partials
  int s = 0;
  auto operator<=>(const WeylKey&) const = default;
};

// Element of D_n[s], stored normally ordered (all x left of all partials).
class WeylOp {
 public:
  WeylOp() = default;
  explicit WeylOp(RingPtr xring) : ring_(std::move(xring)) {}

  static WeylOp from_poly(const Poly& p);  // multiplication operator
  static WeylOp partial(RingPtr xring, std::size_t i, int power = 1);
  static WeylOp s_power(RingPtr xring, int power = 1);
  static WeylOp monomial(RingPtr xring, WeylKey key, const Rat& c);
  static WeylOp constant(RingPtr xring, const Rat& c);

  const RingPtr& xring() const { return ring_; }
  const std::map<WeylKey, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // max over terms of |d-exponent| + s-exponent (the T-filtration level).
  int total_order() const;
  // max over terms of |x| + |d| + s.
  int total_degree() const;

  WeylOp operator-() const;
  WeylOp operator+(const WeylOp& o) const;
  WeylOp operator-(const WeylOp& o) const;
  WeylOp operator*(const Rat& c) const;
  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  bool operator==(const WeylOp& o) const;
  bool operator!=(const WeylOp& o) const { return !(*this == o); }

  void add_term(const WeylKey& k, const Rat& c);

  // Top T-order part as a commutative polynomial in Q[x, s, xi]
  // (the symbol ring of the divisor module, partials mapped to xi).
  Poly total_symbol(const RingPtr& symring) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::map<WeylKey, Rat> terms_;
};

// Normally ordered product; associative, s central.
WeylOp weyl_mul(const WeylOp& p, const WeylOp& q);

// (numerator / f^pole) * f^s, numerator in Q[x, s].
struct FsElement {
  Poly numerator;
  int pole = 0;
};

// Ring Q[x_1..x_n, s] that FsElement numerators live in.
RingPtr fs_ring(const RingPtr& xring);

// f^s itself.
FsElement fs_one(const Poly& f);

// Apply p to e; result canonical (numerator prime to f when pole > 0).
FsElement act_on_fs(const WeylOp& p, const FsElement& e, const Poly& f);

bool fs_equal(const FsElement& a, const FsElement& b, const Poly& f);

// Operators zeta_i = sum_j a_ij d_j - alpha_i s from a Saito basis.
std::vector<WeylOp> theta_operators(const DivisorInput& d,
                                    const SaitoBasis& basis);

// Left Groebner basis data.  Monomials are compared by encoding
// (x, d, s) as an exponent tuple of length 2n+1 under `order`.
struct WeylBasis {
  std::vector<WeylOp> gb;
  // gb[j] = sum_i weyl_mul(cofactors[j][i], gens[i])
  std::vector<std::vector<WeylOp>> cofactors;
  bool capped = false;  // some S-pair exceeded the degree cap
};

Exp weyl_encode(const WeylKey& k);

WeylBasis weyl_groebner(const std::vector<WeylOp>& gens,
                        const MonomialOrder& order, int degree_cap = 12,
                        const Deadline& deadline = {});

// Monic univariate in s, ascending coefficients.
struct BFunction {
  std::vector<Rat> coeffs;
  std::vector<std::pair<Rat, int>> rational_roots;  // root, multiplicity
  std::vector<long> integer_roots;
  bool exact = false;  // exact b-function vs a multiple of it
  WeylOp certificate;  // P with B(s) f^s = P applied to f^{s+1}
};

Poly bfunction_poly(const BFunction& b, const RingPtr& sring);

// Monic generator of Q[s] intersected with the left ideal
// (f, zeta_1..zeta_n); exact when the divisor is of linear jacobian type.
// Throws Inconclusive when no generator is found under the degree cap.
BFunction bfunction_via_theta(const DivisorInput& d, const SaitoBasis& basis,
                              int degree_cap = 12,
                              const Deadline& deadline = {});

// act_on_fs(p, f^{s+1}) == b(s) f^s, exactly.
bool verify_functional_equation(const Poly& f, const BFunction& b,
                                const WeylOp& p);

// k0 = -(smallest integer root of b); none when b has no integer root <= -1.
std::optional<long> lct_threshold(const BFunction& b);

}  // namespace logdiv

#endif
