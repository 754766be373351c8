#include "logdiv/polymat.hpp"

namespace logdiv {

namespace {

PolyMatrix minor_of(const PolyMatrix& m, std::size_t row, std::size_t col) {
  PolyMatrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Poly> r;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Poly poly_det(const PolyMatrix& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(ring, 1);
  for (const auto& row : m)
    if (row.size() != n) throw Error("poly_det: matrix not square");
  if (n == 1) return m[0][0];
  Poly acc(ring);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    Poly cof = m[0][j] * poly_det(minor_of(m, 0, j), ring);
    if (j % 2) acc -= cof;
    else acc += cof;
  }
  return acc;
}

PolyMatrix poly_adjugate(const PolyMatrix& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  PolyMatrix adj(n, std::vector<Poly>(n, Poly(ring)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly c = poly_det(minor_of(m, j, i), ring);  // transposed cofactor
      if ((i + j) % 2) c = -c;
      adj[i][j] = c;
    }
  return adj;
}

}  // namespace logdiv
