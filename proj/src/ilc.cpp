#include "logdiv/ilc.hpp"

namespace logdiv {

namespace {

// delta(p) for delta = sum_m a_m d/dx_m.
Poly apply_derivation(const LogDerivation& delta, const Poly& p) {
  Poly out(p.ring());
  for (std::size_t m = 0; m < delta.a.size(); ++m)
    out += delta.a[m] * p.derivative(m);
  return out;
}

PolyMatrix apply_derivation(const LogDerivation& delta, const PolyMatrix& A,
                            const RingPtr& ring) {
  PolyMatrix out(A.size(), std::vector<Poly>(A.size(), Poly(ring)));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j)
      out[i][j] = apply_derivation(delta, A[i][j]);
  return out;
}

PolyMatrix mat_mul(const PolyMatrix& A, const PolyMatrix& B,
                   const RingPtr& ring) {
  const std::size_t r = A.size();
  PolyMatrix out(r, std::vector<Poly>(r, Poly(ring)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      if (A[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j) out[i][j] += A[i][k] * B[k][j];
    }
  return out;
}

}  // namespace

StructureFunctions structure_functions(const DivisorInput& d,
                                       const SaitoBasis& basis) {
  const std::size_t n = d.ring->size();
  PolyMatrix M;
  for (const auto& row : basis.rows) M.push_back(row.a);
  PolyMatrix adj = poly_adjugate(M, d.ring);
  const Poly uf = d.f * basis.unit;  // det(M)

  StructureFunctions sf;
  sf.c.assign(n, std::vector<std::vector<Poly>>(
                     n, std::vector<Poly>(n, Poly(d.ring))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // Bracket coefficients: b_l = delta_i(a_jl) - delta_j(a_il).
      std::vector<Poly> b(n);
      for (std::size_t l = 0; l < n; ++l)
        b[l] = apply_derivation(basis.rows[i], basis.rows[j].a[l]) -
               apply_derivation(basis.rows[j], basis.rows[i].a[l]);
      // Solve c M = b:  c = b adj(M) / det(M), entrywise exact.
      for (std::size_t k = 0; k < n; ++k) {
        Poly num(d.ring);
        for (std::size_t l = 0; l < n; ++l) num += b[l] * adj[l][k];
        auto q = num.exact_divide(uf);
        if (!q)
          throw Error("structure functions are not polynomial; the rows "
                      "are not a Saito basis");
        sf.c[i][j][k] = *q;
        sf.c[j][i][k] = -*q;
      }
      // Defining identity, re-checked against the basis.
      for (std::size_t l = 0; l < n; ++l) {
        Poly acc(d.ring);
        for (std::size_t k = 0; k < n; ++k)
          acc += sf.c[i][j][k] * basis.rows[k].a[l];
        if (acc != b[l])
          throw Error("internal: structure-function identity fails");
      }
    }
  return sf;
}

ILCData trivial_ilc(const DivisorInput& d, const SaitoBasis& basis, int rank) {
  if (rank < 1) throw Error("connection rank must be >= 1");
  ILCData e;
  e.rank = rank;
  e.matrices.assign(
      basis.rows.size(),
      PolyMatrix(rank, std::vector<Poly>(rank, Poly(d.ring))));
  return e;
}

bool check_integrability(const DivisorInput& d, const SaitoBasis& basis,
                         ILCData& e, const StructureFunctions& sf) {
  const std::size_t n = basis.rows.size();
  if (e.matrices.size() != n)
    throw Error("connection matrix count does not match the basis");
  for (const auto& A : e.matrices)
    if (A.size() != static_cast<std::size_t>(e.rank))
      throw Error("connection matrix size does not match the rank");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PolyMatrix lhs = apply_derivation(basis.rows[i], e.matrices[j], d.ring);
      PolyMatrix sub = apply_derivation(basis.rows[j], e.matrices[i], d.ring);
      PolyMatrix com = mat_mul(e.matrices[i], e.matrices[j], d.ring);
      PolyMatrix moc = mat_mul(e.matrices[j], e.matrices[i], d.ring);
      for (std::size_t r = 0; r < lhs.size(); ++r)
        for (std::size_t cidx = 0; cidx < lhs.size(); ++cidx) {
          Poly rhs(d.ring);
          for (std::size_t k = 0; k < n; ++k)
            rhs += sf.c[i][j][k] * e.matrices[k][r][cidx];
          if (lhs[r][cidx] - sub[r][cidx] + com[r][cidx] - moc[r][cidx] != rhs)
            return false;
        }
    }
  e.checked = true;
  return true;
}

ILCData twist(const DivisorInput& d, const SaitoBasis& basis, const ILCData& e,
              int m) {
  if (!e.checked) throw Error("twist requires a checked connection");
  ILCData out = e;
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    Poly shift = basis.rows[i].alpha * Rat(m);
    for (int r = 0; r < e.rank; ++r) out.matrices[i][r][r] -= shift;
  }
  return out;
}

ILCData dual(const DivisorInput& d, const ILCData& e) {
  if (!e.checked) throw Error("dual requires a checked connection");
  ILCData out = e;
  for (std::size_t i = 0; i < e.matrices.size(); ++i)
    for (int r = 0; r < e.rank; ++r)
      for (int c = 0; c < e.rank; ++c)
        out.matrices[i][r][c] = -e.matrices[i][c][r];
  return out;
}

BFunction b_twist(const BFunction& b, int k) {
  BFunction out;
  // Compose with s -> s - k by Horner over coefficient vectors.
  std::vector<Rat> acc;
  for (std::size_t i = b.coeffs.size(); i-- > 0;) {
    // acc = acc * (s - k) + coeffs[i]
    std::vector<Rat> next(acc.size() + 1, Rat(0));
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += acc[j];
      next[j] -= acc[j] * Rat(k);
    }
    if (next.empty()) next.assign(1, Rat(0));
    next[0] += b.coeffs[i];
    acc = std::move(next);
  }
  while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
  out.coeffs = std::move(acc);
  for (const auto& [r, mult] : b.rational_roots)
    out.rational_roots.emplace_back(r + Rat(k), mult);
  for (long r : b.integer_roots) out.integer_roots.push_back(r + k);
  out.exact = b.exact;
  return out;
}

}  // namespace logdiv
