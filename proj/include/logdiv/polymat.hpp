#ifndef LOGDIV_POLYMAT_HPP
#define LOGDIV_POLYMAT_HPP

#include <vector>

#include "logdiv/poly.hpp"

namespace logdiv {

using PolyMatrix = std::vector<std::vector<Poly>>;

// Laplace-expansion determinant; fine at the small sizes used here (n <= 4).
Poly poly_det(const PolyMatrix& m, const RingPtr& ring);

// Adjugate: adj(M) * M = M * adj(M) = det(M) * Id.
PolyMatrix poly_adjugate(const PolyMatrix& m, const RingPtr& ring);

}  // namespace logdiv

#endif
