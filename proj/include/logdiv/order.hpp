#ifndef LOGDIV_ORDER_HPP
#define LOGDIV_ORDER_HPP

#include <memory>
#include <string>
#include <vector>

#include "logdiv/poly.hpp"

namespace logdiv {

// Global monomial order: total, multiplicative, with 1 strictly smallest.
class MonomialOrder {
 public:
  enum class Kind { Lex, DegRevLex, Weighted, Block };

  static MonomialOrder lex();
  static MonomialOrder degrevlex();
  // Strictly positive integer weights, one per variable; ties broken
  // degrevlex so the order is total.
  static MonomialOrder weighted(std::vector<int> weights);
  // Block elimination: monomials are compared on the block-1 variables
  // first (inner1), then on the rest (inner2).  Any monomial touching a
  // block-1 variable exceeds every monomial in block-2 variables only.
  static MonomialOrder block(std::vector<std::size_t> block1_vars,
                             MonomialOrder inner1, MonomialOrder inner2);

  Kind kind() const { return kind_; }

  // Returns <0, 0, >0 as a < b, a == b, a > b.
  int compare(const Exp& a, const Exp& b) const;
  bool less(const Exp& a, const Exp& b) const { return compare(a, b) < 0; }

  std::string describe() const;

 private:
  MonomialOrder() = default;

  Kind kind_ = Kind::DegRevLex;
  std::vector<int> weights_;
  std::vector<std::size_t> block1_;
  std::shared_ptr<const MonomialOrder> inner1_, inner2_;
};

// Leading term of p under the order; p must be nonzero.
std::pair<Exp, Rat> leading_term(const Poly& p, const MonomialOrder& ord);

}  // namespace logdiv

#endif
