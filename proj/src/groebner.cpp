#include "logdiv/groebner.hpp"

#include <algorithm>
#include <list>
#include <set>

namespace logdiv {

namespace {

struct Tracked {
  Poly p;
  Exp lt_exp;
  Rat lt_coef;
  std::vector<Poly> rep;  // p = sum rep[i] * input[i]

  void refresh_lt(const MonomialOrder& ord) {
    auto [e, c] = leading_term(p, ord);
    lt_exp = e;
    lt_coef = c;
  }
};

void require_shared_ring(const std::vector<Poly>& gens) {
  for (std::size_t i = 1; i < gens.size(); ++i) {
    if (!gens[i].ring() || !gens[0].ring() || *gens[i].ring() != *gens[0].ring())
      throw Error("variable-context mismatch among generators");
  }
}

// Full normal form of p against `basis`; optionally records the quotient
// against each basis element so  p = sum quots[i]*basis[i].p + remainder.
Poly reduce_full(const Poly& p, const std::vector<Tracked>& basis,
                 const MonomialOrder& ord, const Deadline& deadline,
                 std::vector<Poly>* quots = nullptr) {
  Poly rem(p.ring());
  Poly work = p;
  while (!work.is_zero()) {
    deadline.check();
    auto [e, c] = leading_term(work, ord);
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].p.is_zero()) continue;
      if (!exp_divides(basis[i].lt_exp, e)) continue;
      Poly m = Poly::monomial(p.ring(), exp_sub(e, basis[i].lt_exp),
                              c / basis[i].lt_coef);
      work -= m * basis[i].p;
      if (quots) (*quots)[i] += m;
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(e, c);
      work.add_term(e, -c);
    }
  }
  return rem;
}

struct Pair {
  std::size_t i, j;
  Exp lcm;
};

std::vector<Tracked> buchberger_core(const std::vector<Poly>& gens,
                                     const MonomialOrder& ord,
                                     const Deadline& deadline,
                                     bool track) {
  require_shared_ring(gens);
  std::vector<Tracked> basis;
  const std::size_t m = gens.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (gens[i].is_zero()) continue;
    Tracked t;
    t.p = gens[i];
    t.refresh_lt(ord);
    if (track) {
      t.rep.assign(m, Poly(gens[i].ring()));
      t.rep[i] = Poly::constant(gens[i].ring(), 1);
    }
    basis.push_back(std::move(t));
  }
  if (basis.empty()) return basis;
  const RingPtr ring = basis[0].p.ring();

  std::set<std::pair<std::size_t, std::size_t>> pending;
  std::list<Pair> queue;
  auto push_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      queue.push_back({i, k, exp_lcm(basis[i].lt_exp, basis[k].lt_exp)});
      pending.insert({i, k});
    }
  };
  for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(k);

  while (!queue.empty()) {
    deadline.check();
    // Normal selection: smallest lcm first.
    auto best = queue.begin();
    for (auto it = std::next(queue.begin()); it != queue.end(); ++it)
      if (ord.less(it->lcm, best->lcm)) best = it;
    Pair pr = *best;
    queue.erase(best);
    pending.erase({pr.i, pr.j});

    // Product criterion.
    if (pr.lcm == exp_add(basis[pr.i].lt_exp, basis[pr.j].lt_exp)) continue;
    // Chain criterion: some k with lt_k | lcm and both companion pairs
    // already treated.
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!exp_divides(basis[k].lt_exp, pr.lcm)) continue;
      auto key1 = std::minmax(pr.i, k);
      auto key2 = std::minmax(pr.j, k);
      if (!pending.count({key1.first, key1.second}) &&
          !pending.count({key2.first, key2.second}))
        skip = true;
    }
    if (skip) continue;

    const Tracked& gi = basis[pr.i];
    const Tracked& gj = basis[pr.j];
    Poly mi = Poly::monomial(ring, exp_sub(pr.lcm, gi.lt_exp), Rat(1) / gi.lt_coef);
    Poly mj = Poly::monomial(ring, exp_sub(pr.lcm, gj.lt_exp), Rat(1) / gj.lt_coef);
    Poly sp = mi * gi.p - mj * gj.p;

    std::vector<Poly> quots;
    if (track) quots.assign(basis.size(), Poly(ring));
    Poly rem = reduce_full(sp, basis, ord, deadline, track ? &quots : nullptr);
    if (rem.is_zero()) continue;

    Tracked t;
    t.p = rem;
    t.refresh_lt(ord);
    if (track) {
      t.rep.assign(m, Poly(ring));
      for (std::size_t v = 0; v < m; ++v) {
        t.rep[v] = mi * gi.rep[v] - mj * gj.rep[v];
        for (std::size_t l = 0; l < basis.size(); ++l)
          if (!quots[l].is_zero()) t.rep[v] -= quots[l] * basis[l].rep[v];
      }
    }
    basis.push_back(std::move(t));
    push_pairs(basis.size() - 1);
  }

  // Minimize: drop elements whose leading term is divisible by another's.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      if (exp_divides(basis[j].lt_exp, basis[i].lt_exp) &&
          basis[j].lt_exp != basis[i].lt_exp)
        keep[i] = false;
      else if (basis[j].lt_exp == basis[i].lt_exp && j < i)
        keep[i] = false;
    }
  }
  std::vector<Tracked> mini;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) mini.push_back(std::move(basis[i]));

  // Interreduce to the unique reduced basis and make monic.
  for (std::size_t i = 0; i < mini.size(); ++i) {
    std::vector<Tracked> others;
    for (std::size_t j = 0; j < mini.size(); ++j)
      if (j != i) others.push_back(mini[j]);
    std::vector<Poly> quots;
    if (track) quots.assign(others.size(), Poly(ring));
    Poly rem = reduce_full(mini[i].p, others, ord, deadline, track ? &quots : nullptr);
    if (track) {
      std::size_t oi = 0;
      for (std::size_t j = 0; j < mini.size(); ++j) {
        if (j == i) continue;
        if (!quots[oi].is_zero())
          for (std::size_t v = 0; v < m; ++v)
            mini[i].rep[v] -= quots[oi] * mini[j].rep[v];
        ++oi;
      }
    }
    mini[i].p = rem;
    mini[i].refresh_lt(ord);
    Rat inv = Rat(1) / mini[i].lt_coef;
    mini[i].p = mini[i].p * inv;
    if (track)
      for (std::size_t v = 0; v < m; ++v) mini[i].rep[v] = mini[i].rep[v] * inv;
    mini[i].refresh_lt(ord);
  }

  std::sort(mini.begin(), mini.end(), [&](const Tracked& a, const Tracked& b) {
    return ord.less(a.lt_exp, b.lt_exp);
  });
  return mini;
}

std::vector<Tracked> as_tracked(const IdealBasis& gb, const MonomialOrder& ord) {
  std::vector<Tracked> basis;
  for (const auto& g : gb.generators) {
    if (g.is_zero()) continue;
    Tracked t;
    t.p = g;
    t.refresh_lt(ord);
    basis.push_back(std::move(t));
  }
  return basis;
}

}  // namespace

IdealBasis buchberger(const IdealBasis& basis, const Deadline& deadline) {
  for (const auto& g : basis.generators)
    if (g.is_zero()) throw Error("buchberger: zero generator");
  auto core = buchberger_core(basis.generators, basis.order, deadline, false);
  IdealBasis out;
  out.order = basis.order;
  out.is_groebner = true;
  for (auto& t : core) out.generators.push_back(std::move(t.p));
  return out;
}

ExtendedBasis extended_buchberger(const IdealBasis& basis,
                                  const Deadline& deadline) {
  auto core = buchberger_core(basis.generators, basis.order, deadline, true);
  ExtendedBasis out;
  out.gb.order = basis.order;
  out.gb.is_groebner = true;
  for (auto& t : core) {
    out.gb.generators.push_back(t.p);
    out.cofactors.push_back(std::move(t.rep));
  }
  return out;
}

Poly normal_form(const Poly& p, const IdealBasis& gb) {
  if (!gb.is_groebner) throw Error("normal_form requires a Groebner basis");
  auto basis = as_tracked(gb, gb.order);
  return reduce_full(p, basis, gb.order, Deadline{});
}

std::vector<Poly> elimination_ideal(const std::vector<Poly>& gens,
                                    const std::vector<std::size_t>& drop,
                                    const Deadline& deadline) {
  if (gens.empty()) return {};
  require_shared_ring(gens);
  const RingPtr ring = gens[0].ring();
  for (std::size_t v : drop)
    if (v >= ring->size()) throw Error("drop variable out of range");

  IdealBasis in;
  in.generators = gens;
  in.order = MonomialOrder::block(drop, MonomialOrder::degrevlex(),
                                  MonomialOrder::degrevlex());
  IdealBasis gb = buchberger(in, deadline);

  std::vector<Poly> out;
  for (const auto& g : gb.generators) {
    bool clean = true;
    for (const auto& [e, c] : g.terms())
      for (std::size_t v : drop)
        if (e[v] != 0) clean = false;
    if (clean) out.push_back(g);
  }
  return out;
}

std::vector<std::vector<Poly>> syzygies(const std::vector<Poly>& gens,
                                        const Deadline& deadline) {
  if (gens.empty()) return {};
  require_shared_ring(gens);
  for (const auto& g : gens)
    if (g.is_zero()) throw Error("syzygies: zero generator");
  const RingPtr ring = gens[0].ring();
  const std::size_t m = gens.size();
  MonomialOrder ord = MonomialOrder::degrevlex();

  ExtendedBasis ext = extended_buchberger({gens, ord, false}, deadline);
  const auto& G = ext.gb.generators;
  const auto& A = ext.cofactors;  // G[j] = sum_i A[j][i] gens[i]
  auto basis = as_tracked(ext.gb, ord);

  // gens[i] = sum_j B[i][j] G[j]
  std::vector<std::vector<Poly>> B(m);
  for (std::size_t i = 0; i < m; ++i) {
    B[i].assign(G.size(), Poly(ring));
    Poly rem = reduce_full(gens[i], basis, ord, deadline, &B[i]);
    if (!rem.is_zero()) throw Error("internal: generator does not reduce to zero");
  }

  std::vector<std::vector<Poly>> out;
  auto emit = [&](std::vector<Poly> row) {
    bool zero = true;
    for (const auto& p : row) zero = zero && p.is_zero();
    if (zero) return;
    Poly acc(ring);
    for (std::size_t i = 0; i < m; ++i) acc += row[i] * gens[i];
    if (!acc.is_zero()) throw Error("internal: syzygy fails to contract to zero");
    for (const auto& r : out)
      if (r == row) return;
    out.push_back(std::move(row));
  };

  // Schreyer-style syzygies of the Groebner basis, pushed down to the
  // original generators through A.
  for (std::size_t j = 0; j < G.size(); ++j) {
    for (std::size_t k = j + 1; k < G.size(); ++k) {
      deadline.check();
      Exp l = exp_lcm(basis[j].lt_exp, basis[k].lt_exp);
      Poly mj = Poly::monomial(ring, exp_sub(l, basis[j].lt_exp),
                               Rat(1) / basis[j].lt_coef);
      Poly mk = Poly::monomial(ring, exp_sub(l, basis[k].lt_exp),
                               Rat(1) / basis[k].lt_coef);
      Poly sp = mj * G[j] - mk * G[k];
      std::vector<Poly> q(G.size(), Poly(ring));
      Poly rem = reduce_full(sp, basis, ord, deadline, &q);
      if (!rem.is_zero()) throw Error("internal: S-polynomial of GB not reducing to zero");
      std::vector<Poly> sg(G.size(), Poly(ring));
      sg[j] += mj;
      sg[k] -= mk;
      for (std::size_t l2 = 0; l2 < G.size(); ++l2) sg[l2] -= q[l2];
      std::vector<Poly> row(m, Poly(ring));
      for (std::size_t l2 = 0; l2 < G.size(); ++l2)
        if (!sg[l2].is_zero())
          for (std::size_t i = 0; i < m; ++i) row[i] += sg[l2] * A[l2][i];
      emit(std::move(row));
    }
  }

  // Rows of (Id - B*A).
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Poly> row(m, Poly(ring));
    row[i] = Poly::constant(ring, 1);
    for (std::size_t j = 0; j < G.size(); ++j)
      if (!B[i][j].is_zero())
        for (std::size_t t = 0; t < m; ++t) row[t] -= B[i][j] * A[j][t];
    emit(std::move(row));
  }
  return out;
}

int krull_dimension(const std::vector<Poly>& gens, const Deadline& deadline) {
  if (gens.empty()) throw Error("krull_dimension: empty generator list needs a ring");
  require_shared_ring(gens);
  const std::size_t n = gens[0].ring()->size();

  std::vector<Poly> nonzero;
  for (const auto& g : gens)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return static_cast<int>(n);

  IdealBasis gb = buchberger({nonzero, MonomialOrder::degrevlex(), false}, deadline);
  std::vector<unsigned long> supports;
  for (const auto& g : gb.generators) {
    auto [e, c] = leading_term(g, gb.order);
    if (exp_total_degree(e) == 0) return -1;  // unit ideal
    unsigned long mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) mask |= 1ul << i;
    supports.push_back(mask);
  }

  // Largest variable subset S such that no leading monomial lives in S.
  int best = 0;
  for (unsigned long s = 0; s < (1ul << n); ++s) {
    int size = __builtin_popcountl(s);
    if (size <= best) continue;
    bool independent = true;
    for (unsigned long mask : supports)
      if ((mask & ~s) == 0) independent = false;
    if (independent) best = size;
  }
  return best;
}

bool ideal_equal(const std::vector<Poly>& a, const std::vector<Poly>& b,
                 const MonomialOrder& order, const Deadline& deadline) {
  IdealBasis ga = buchberger({a, order, false}, deadline);
  IdealBasis gb = buchberger({b, order, false}, deadline);
  return ga.generators == gb.generators;
}

Poly poly_gcd(const Poly& a, const Poly& b, const Deadline& deadline) {
  auto normalize = [](const Poly& p) {
    if (p.is_zero()) return p;
    auto [e, c] = leading_term(p, MonomialOrder::degrevlex());
    return p * (Rat(1) / c);
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  const RingPtr ring = a.ring();

  std::vector<std::string> names = ring->names();
  names.push_back("@t");
  RingPtr ext = make_ring(names);
  std::size_t t = ext->size() - 1;
  Poly A = a.lift_to(ext), B = b.lift_to(ext);
  Poly tv = Poly::variable(ext, t);
  Poly one = Poly::constant(ext, 1);
  auto inter = elimination_ideal({tv * A, (one - tv) * B}, {t}, deadline);
  if (inter.size() != 1)
    throw Error("internal: intersection of principal ideals not principal");
  Poly lcm = inter[0].restrict_to(ring).value();
  auto q = (a * b).exact_divide(lcm);
  if (!q) throw Error("internal: lcm does not divide product");
  return normalize(*q);
}

}  // namespace logdiv
