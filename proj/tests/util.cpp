#include "util.hpp"

#include <map>

#include "logdiv/qmatrix.hpp"

namespace logdiv::testutil {

namespace {

void collect_exps(std::size_t nvars, int deg, Exp& cur, std::size_t i,
                  std::vector<Exp>& out) {
  if (i == nvars) {
    out.push_back(cur);
    return;
  }
  const int used = exp_total_degree(cur);
  for (int d = 0; used + d <= deg; ++d) {
    cur[i] = d;
    collect_exps(nvars, deg, cur, i + 1, out);
  }
  cur[i] = 0;
}

}  // namespace

bool module_span_contains(const std::vector<std::vector<Poly>>& sup,
                          const std::vector<std::vector<Poly>>& sub,
                          const RingPtr& ring, int deg) {
  if (sub.empty()) return true;
  const std::size_t ncomp = sub[0].size();
  const std::size_t n = ring->size();

  std::vector<Exp> exps;
  Exp cur(n, 0);
  collect_exps(n, deg, cur, 0, exps);
  std::map<Exp, std::size_t> index;
  for (std::size_t i = 0; i < exps.size(); ++i) index[exps[i]] = i;

  auto encode = [&](const std::vector<Poly>& row, QMatrix& m, std::size_t r) {
    for (std::size_t c = 0; c < ncomp; ++c)
      for (const auto& [e, k] : row[c].terms()) {
        auto it = index.find(e);
        if (it == index.end()) return false;  // exceeds truncation
        m.at(r, it->second * ncomp + c) = k;
      }
    return true;
  };

  // All monomial multiples of sup rows that stay inside the truncation.
  std::vector<std::vector<Poly>> gen;
  for (const auto& row : sup) {
    int rowdeg = 0;
    for (const auto& p : row) rowdeg = std::max(rowdeg, p.total_degree());
    for (const auto& e : exps) {
      if (exp_total_degree(e) + rowdeg > deg) continue;
      std::vector<Poly> mult;
      for (const auto& p : row)
        mult.push_back(p * Poly::monomial(ring, e, 1));
      gen.push_back(std::move(mult));
    }
  }

  QMatrix sup_m(gen.size(), exps.size() * ncomp);
  for (std::size_t r = 0; r < gen.size(); ++r)
    if (!encode(gen[r], sup_m, r)) return false;
  QMatrix sub_m(sub.size(), exps.size() * ncomp);
  for (std::size_t r = 0; r < sub.size(); ++r)
    if (!encode(sub[r], sub_m, r)) return false;

  return row_span_contains(sup_m, sub_m);
}

}  // namespace logdiv::testutil
