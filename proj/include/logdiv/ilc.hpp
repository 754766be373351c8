#ifndef LOGDIV_ILC_HPP
#define LOGDIV_ILC_HPP

#include <vector>

#include "logdiv/divisor.hpp"
#include "logdiv/polymat.hpp"
#include "logdiv/weyl.hpp"

namespace logdiv {

// c[i][j][k] with [delta_i, delta_j] = sum_k c[i][j][k] delta_k.
struct StructureFunctions {
  std::vector<std::vector<std::vector<Poly>>> c;
};

// Logarithmic connection of rank r presented over a Saito basis:
// nabla_{delta_i} acts on coordinate columns as delta_i + A_i.
struct ILCData {
  int rank = 1;
  std::vector<PolyMatrix> matrices;  // one r x r matrix per basis row
  bool checked = false;              // integrability verified
};

// Coordinates of the brackets [delta_i, delta_j] in the basis, solved via
// the adjugate of the Saito matrix; throws when a coordinate fails to be
// polynomial (the rows were not a true Saito basis).
StructureFunctions structure_functions(const DivisorInput& d,
                                       const SaitoBasis& basis);

// The trivial rank-r connection (all matrices zero), in draft state.
ILCData trivial_ilc(const DivisorInput& d, const SaitoBasis& basis,
                    int rank = 1);

// delta_i(A_j) - delta_j(A_i) + [A_i, A_j] == sum_k c_ij^k A_k, entrywise;
// promotes the draft to checked on success.
bool check_integrability(const DivisorInput& d, const SaitoBasis& basis,
                         ILCData& e, const StructureFunctions& sf);

// E(mD): matrices A_i - m alpha_i Id (section basis f^{-m} tensor e_j).
ILCData twist(const DivisorInput& d, const SaitoBasis& basis, const ILCData& e,
              int m);

// E*: matrices -transpose(A_i).
ILCData dual(const DivisorInput& d, const ILCData& e);

// b_{E(kD)}(s) = b_E(s - k): substitute and re-extract roots.  The
// operator certificate does not transport; the result carries none.
BFunction b_twist(const BFunction& b, int k);

}  // namespace logdiv

#endif
