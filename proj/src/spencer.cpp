#include "logdiv/spencer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "logdiv/polymat.hpp"

namespace logdiv {

namespace {

// ---------- small helpers ----------

QMatrix transpose(const QMatrix& m) {
  QMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

bool is_zero_matrix(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

std::vector<Rat> to_rat(const std::vector<int>& w) {
  std::vector<Rat> out;
  for (int v : w) out.emplace_back(v);
  return out;
}

// Max weighted degree of p (0 for zero).
int max_wdeg(const Poly& p, const std::vector<int>& w) {
  int m = 0;
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * w[i];
    m = std::max(m, d);
  }
  return m;
}

// All a with sum a_i * w_i == target.
void enum_weighted(const std::vector<int>& w, int target, Exp& cur,
                   std::size_t i, std::vector<Exp>& out) {
  if (i == w.size()) {
    if (target == 0) out.push_back(cur);
    return;
  }
  for (int d = 0; d * w[i] <= target; ++d) {
    cur[i] = d;
    enum_weighted(w, target - d * w[i], cur, i + 1, out);
  }
  cur[i] = 0;
}

// All a with |a| <= cap.
void enum_bounded(std::size_t n, int cap, Exp& cur, std::size_t i,
                  std::vector<Exp>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (int d = 0; d <= cap; ++d) {
    cur[i] = d;
    enum_bounded(n, cap - d, cur, i + 1, out);
  }
  cur[i] = 0;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n,
                                                   std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  // Lexicographic index sets.
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (r - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Encoded basis-element key for index lookup.
using ElemKey = std::vector<int>;

ElemKey key_of(const SpencerBasisElement& e) {
  ElemKey k;
  k.insert(k.end(), e.a.begin(), e.a.end());
  k.insert(k.end(), e.b.begin(), e.b.end());
  k.push_back(e.c);
  for (auto i : e.I) k.push_back(static_cast<int>(i));
  k.push_back(static_cast<int>(e.u));
  return k;
}

// ---------- sections of E[f^{-1}, s] f^s ----------

struct EFs {
  std::vector<Poly> num;  // one numerator per E basis vector, in Q[x, s]
  int pole = 0;
};

struct AugContext {
  RingPtr F;        // Q[x, s]
  Poly flift;       // f in F
  Poly svar;        // s in F
  std::size_t n;    // number of x variables
  int rank;         // rank of E
  // partial_i(e_u) = sum_v G[i][v][u] / f * e_v
  std::vector<PolyMatrix> G;
};

AugContext make_aug_context(const SpencerSpec& spec) {
  AugContext ctx;
  ctx.n = spec.d.ring->size();
  ctx.rank = spec.e.rank;
  ctx.F = fs_ring(spec.d.ring);
  ctx.flift = spec.d.f.lift_to(ctx.F);
  ctx.svar = Poly::variable(ctx.F, ctx.n);

  PolyMatrix M;
  for (const auto& row : spec.basis.rows) M.push_back(row.a);
  PolyMatrix adj = poly_adjugate(M, spec.d.ring);
  const Rat inv_unit = Rat(1) / spec.basis.unit;
  for (std::size_t i = 0; i < ctx.n; ++i) {
    PolyMatrix Gi(ctx.rank, std::vector<Poly>(ctx.rank, Poly(ctx.F)));
    for (int v = 0; v < ctx.rank; ++v)
      for (int u = 0; u < ctx.rank; ++u) {
        Poly acc(spec.d.ring);
        for (std::size_t j = 0; j < ctx.n; ++j)
          acc += adj[i][j] * spec.e.matrices[j][v][u];
        Gi[v][u] = (acc * inv_unit).lift_to(ctx.F);
      }
    ctx.G.push_back(std::move(Gi));
  }
  return ctx;
}

EFs efs_canonical(EFs e, const AugContext& ctx) {
  for (;;) {
    if (e.pole == 0) break;
    std::vector<Poly> q(e.num.size());
    bool all = true;
    for (std::size_t v = 0; v < e.num.size(); ++v) {
      auto d = e.num[v].exact_divide(ctx.flift);
      if (!d) {
        all = false;
        break;
      }
      q[v] = *d;
    }
    if (!all) break;
    e.num = std::move(q);
    --e.pole;
  }
  bool zero = true;
  for (const auto& p : e.num) zero = zero && p.is_zero();
  if (zero) e.pole = 0;
  return e;
}

EFs efs_partial(const EFs& e, std::size_t i, const AugContext& ctx) {
  EFs out;
  out.pole = e.pole + 1;
  out.num.assign(ctx.rank, Poly(ctx.F));
  Poly sshift = ctx.svar - Poly::constant(ctx.F, Rat(e.pole));
  for (int w = 0; w < ctx.rank; ++w) {
    Poly acc = e.num[w].derivative(i) * ctx.flift +
               sshift * e.num[w] * ctx.flift.derivative(i);
    for (int v = 0; v < ctx.rank; ++v) acc += e.num[v] * ctx.G[i][w][v];
    out.num[w] = std::move(acc);
  }
  return out;
}

// Apply the operator monomial x^a d^b s^c (coefficient 1) to e_u f^s.
EFs efs_apply_monomial(const SpencerBasisElement& el, const AugContext& ctx) {
  EFs cur;
  cur.num.assign(ctx.rank, Poly(ctx.F));
  cur.num[el.u] = Poly::constant(ctx.F, 1);
  for (std::size_t i = 0; i < ctx.n; ++i)
    for (int rep = 0; rep < el.b[i]; ++rep) cur = efs_partial(cur, i, ctx);
  Exp xe(ctx.F->size(), 0);
  for (std::size_t i = 0; i < ctx.n; ++i) xe[i] = el.a[i];
  xe[ctx.n] = el.c;
  Poly mono = Poly::monomial(ctx.F, std::move(xe), 1);
  for (auto& p : cur.num) p *= mono;
  return efs_canonical(std::move(cur), ctx);
}

// Encode a list of EFs images as a coordinate matrix (columns = images).
QMatrix encode_efs(const std::vector<EFs>& images, const AugContext& ctx) {
  int maxpole = 0;
  for (const auto& e : images) maxpole = std::max(maxpole, e.pole);
  std::map<std::pair<int, Exp>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rat>>> cols;
  for (const auto& e : images) {
    std::vector<std::pair<std::size_t, Rat>> col;
    Poly scale = ctx.flift.pow(maxpole - e.pole);
    for (int v = 0; v < ctx.rank; ++v) {
      Poly p = e.num[v] * scale;
      for (const auto& [ex, c] : p.terms()) {
        auto key = std::make_pair(v, ex);
        auto it = rows.find(key);
        if (it == rows.end())
          it = rows.emplace(key, rows.size()).first;
        col.emplace_back(it->second, c);
      }
    }
    cols.push_back(std::move(col));
  }
  QMatrix m(rows.size(), images.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, c] : cols[j]) m.at(r, j) = c;
  return m;
}

// ---------- build context ----------

struct BuildContext {
  const SpencerSpec* spec = nullptr;
  std::size_t n = 0;
  std::vector<int> wx;            // per x variable
  std::vector<int> zw;            // per basis operator
  std::vector<int> ew;            // per E basis vector
  int h = 0;                      // filtered mode: weight increment bound
  StructureFunctions sf;
  std::vector<WeylOp> ops;        // zeta_i (or delta_i)
  // Action coefficient of op_i on e_u: C[i][v][u] as an operator in O[s].
  std::vector<std::vector<std::vector<WeylOp>>> C;
};

WeylOp delta_op(const DivisorInput& d, const LogDerivation& row) {
  const std::size_t n = d.ring->size();
  WeylOp out(d.ring);
  for (std::size_t j = 0; j < n; ++j)
    out += weyl_mul(WeylOp::from_poly(row.a[j]), WeylOp::partial(d.ring, j));
  return out;
}

BuildContext make_build_context(const SpencerSpec& spec) {
  BuildContext ctx;
  ctx.spec = &spec;
  ctx.n = spec.d.ring->size();
  if (spec.N < 1 || spec.W < 0) throw Error("spencer: bad truncation bounds");
  if (!spec.e.checked)
    throw Error("spencer: connection must pass check_integrability first");
  if (spec.e.matrices.size() != ctx.n)
    throw Error("spencer: connection does not match the basis");

  ctx.ew = spec.e_weights;
  if (ctx.ew.empty()) ctx.ew.assign(spec.e.rank, 0);
  if (ctx.ew.size() != static_cast<std::size_t>(spec.e.rank))
    throw Error("spencer: e_weights size mismatch");

  if (spec.mode == TruncationMode::WeightGraded) {
    auto w = is_quasi_homogeneous(spec.d);
    if (!w)
      throw Error("spencer: weight-graded mode needs a quasi-homogeneous "
                  "divisor");
    ctx.wx = *w;
  } else {
    ctx.wx.assign(ctx.n, 1);
  }

  // Operator weights.  In graded mode every row must be homogeneous.
  auto wq = to_rat(ctx.wx);
  for (std::size_t i = 0; i < ctx.n; ++i) {
    const auto& row = spec.basis.rows[i];
    int t = 0;
    if (spec.mode == TruncationMode::WeightGraded) {
      bool t_set = false;
      for (std::size_t j = 0; j < ctx.n; ++j) {
        if (row.a[j].is_zero()) continue;
        Rat deg;
        if (!row.a[j].is_weighted_homogeneous(wq, &deg))
          throw Error("spencer: basis row is not weight-homogeneous; use "
                      "homogeneous_saito_basis first");
        int tj = static_cast<int>(deg.get_num().get_si()) - ctx.wx[j];
        if (t_set && tj != t)
          throw Error("spencer: basis row is not weight-homogeneous; use "
                      "homogeneous_saito_basis first");
        t = tj;
        t_set = true;
      }
      Rat adeg;
      if (!row.alpha.is_weighted_homogeneous(wq, &adeg) ||
          (!row.alpha.is_zero() &&
           adeg != Rat(t)))
        throw Error("spencer: basis row alpha is not weight-homogeneous");
    } else {
      for (std::size_t j = 0; j < ctx.n; ++j)
        t = std::max(t, max_wdeg(row.a[j], ctx.wx) - ctx.wx[j]);
      t = std::max(t, max_wdeg(row.alpha, ctx.wx));
    }
    ctx.zw.push_back(t);
  }

  ctx.sf = structure_functions(spec.d, spec.basis);

  // Operators and E-action coefficients.
  for (std::size_t i = 0; i < ctx.n; ++i) {
    WeylOp op = delta_op(spec.d, spec.basis.rows[i]);
    if (spec.pair == SpencerPair::ThetaFs)
      op -= weyl_mul(WeylOp::from_poly(spec.basis.rows[i].alpha),
                     WeylOp::s_power(spec.d.ring));
    ctx.ops.push_back(std::move(op));

    std::vector<std::vector<WeylOp>> Ci(
        spec.e.rank, std::vector<WeylOp>(spec.e.rank, WeylOp(spec.d.ring)));
    for (int v = 0; v < spec.e.rank; ++v)
      for (int u = 0; u < spec.e.rank; ++u) {
        Ci[v][u] = WeylOp::from_poly(spec.e.matrices[i][v][u]);
        if (spec.pair == SpencerPair::DerLogS && v == u)
          Ci[v][u] += weyl_mul(WeylOp::from_poly(spec.basis.rows[i].alpha),
                               WeylOp::s_power(spec.d.ring));
      }
    ctx.C.push_back(std::move(Ci));
  }

  // Filtered-mode weight increment bound of the differential.
  if (spec.mode == TruncationMode::WeightFiltered) {
    int h = 0;
    for (std::size_t i = 0; i < ctx.n; ++i)
      for (std::size_t j = 0; j < ctx.n; ++j)
        for (std::size_t k = 0; k < ctx.n; ++k)
          if (!ctx.sf.c[i][j][k].is_zero())
            h = std::max(h, max_wdeg(ctx.sf.c[i][j][k], ctx.wx) + ctx.zw[k] -
                                ctx.zw[i] - ctx.zw[j]);
    for (std::size_t i = 0; i < ctx.n; ++i)
      for (int v = 0; v < spec.e.rank; ++v)
        for (int u = 0; u < spec.e.rank; ++u) {
          const Poly& a = spec.e.matrices[i][v][u];
          if (!a.is_zero())
            h = std::max(h, max_wdeg(a, ctx.wx) + ctx.ew[v] - ctx.ew[u] -
                                ctx.zw[i]);
        }
    if (spec.pair == SpencerPair::DerLogS)
      for (std::size_t i = 0; i < ctx.n; ++i)
        if (!spec.basis.rows[i].alpha.is_zero())
          h = std::max(h, max_wdeg(spec.basis.rows[i].alpha, ctx.wx) -
                              ctx.zw[i]);
    ctx.h = h;
  } else {
    // Graded mode: assert homogeneity of the remaining inputs.
    for (std::size_t i = 0; i < ctx.n; ++i)
      for (std::size_t j = 0; j < ctx.n; ++j)
        for (std::size_t k = 0; k < ctx.n; ++k) {
          const Poly& c = ctx.sf.c[i][j][k];
          Rat deg;
          if (!c.is_weighted_homogeneous(wq, &deg) ||
              (!c.is_zero() && deg != Rat(ctx.zw[i] + ctx.zw[j] - ctx.zw[k])))
            throw Error("spencer: structure functions are not homogeneous");
        }
    for (std::size_t i = 0; i < ctx.n; ++i)
      for (int v = 0; v < spec.e.rank; ++v)
        for (int u = 0; u < spec.e.rank; ++u) {
          const Poly& a = spec.e.matrices[i][v][u];
          Rat deg;
          if (!a.is_weighted_homogeneous(wq, &deg) ||
              (!a.is_zero() &&
               deg != Rat(ctx.zw[i] + ctx.ew[v] - ctx.ew[u])))
            throw Error("spencer: connection matrices are not homogeneous");
        }
  }
  return ctx;
}

// Weight of a basis element.
int elem_weight(const BuildContext& ctx, const SpencerBasisElement& e) {
  int w = 0;
  for (std::size_t i = 0; i < ctx.n; ++i)
    w += (e.a[i] - e.b[i]) * ctx.wx[i];
  for (auto i : e.I) w += ctx.zw[i];
  w += ctx.ew[e.u];
  return w;
}

// Enumerate bases[r] of one component.  Graded mode: exact weight
// `weight`.  Filtered mode: weight <= W - r*h.
std::vector<SpencerBasisElement> enumerate_basis(const BuildContext& ctx,
                                                 std::size_t r, int weight) {
  const SpencerSpec& spec = *ctx.spec;
  std::vector<SpencerBasisElement> out;
  const int order_cap = spec.N - static_cast<int>(r);
  if (order_cap < 0) return out;
  const bool graded = spec.mode == TruncationMode::WeightGraded;
  const int wcap = spec.W - static_cast<int>(r) * ctx.h;

  for (const auto& I : combinations(ctx.n, r)) {
    int tI = 0;
    for (auto i : I) tI += ctx.zw[i];
    for (std::size_t u = 0; u < static_cast<std::size_t>(spec.e.rank); ++u) {
      std::vector<Exp> bs;
      Exp curb(ctx.n, 0);
      enum_bounded(ctx.n, order_cap, curb, 0, bs);
      for (const auto& b : bs) {
        int border = exp_total_degree(b);
        for (int c = 0; c + border <= order_cap; ++c) {
          int bweight = 0;
          for (std::size_t i = 0; i < ctx.n; ++i) bweight += b[i] * ctx.wx[i];
          std::vector<Exp> as;
          Exp cura(ctx.n, 0);
          if (graded) {
            int target = weight + bweight - tI - ctx.ew[u];
            if (target < 0) continue;
            enum_weighted(ctx.wx, target, cura, 0, as);
          } else {
            int cap = wcap + bweight - tI - ctx.ew[u];
            if (cap < 0) continue;
            enum_bounded(ctx.n, cap, cura, 0, as);
          }
          for (auto& a : as)
            out.push_back(SpencerBasisElement{a, b, c, I, u});
        }
      }
    }
  }
  return out;
}

// Image of the differential on one source basis element, as a list of
// (I', u', operator) contributions.
std::map<std::pair<std::vector<std::size_t>, std::size_t>, WeylOp>
apply_differential(const BuildContext& ctx, const SpencerBasisElement& el) {
  const RingPtr& R = ctx.spec->d.ring;
  WeylOp P = WeylOp::monomial(R, WeylKey{el.a, el.b, el.c}, 1);
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, WeylOp> acc;
  auto add = [&](const std::vector<std::size_t>& I, std::size_t u,
                 const WeylOp& op) {
    if (op.is_zero()) return;
    auto key = std::make_pair(I, u);
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, op);
    else it->second += op;
  };

  const std::size_t r = el.I.size();
  for (std::size_t l = 0; l < r; ++l) {
    const std::size_t i = el.I[l];
    const Rat sign = (l % 2 == 0) ? Rat(1) : Rat(-1);
    std::vector<std::size_t> rest;
    for (std::size_t m = 0; m < r; ++m)
      if (m != l) rest.push_back(el.I[m]);
    // (P zeta_i) tensor rest tensor e_u
    add(rest, el.u, weyl_mul(P, ctx.ops[i]) * sign);
    // - P tensor rest tensor (zeta_i e_u)
    for (int v = 0; v < ctx.spec->e.rank; ++v)
      add(rest, v, weyl_mul(P, ctx.C[i][v][el.u]) * -sign);
  }
  for (std::size_t l = 0; l < r; ++l)
    for (std::size_t m = l + 1; m < r; ++m) {
      const std::size_t i = el.I[l], j = el.I[m];
      // 1-based positions give (-1)^{(l+1)+(m+1)} = (-1)^{l+m}.
      const Rat sign2 = ((l + m) % 2 == 0) ? Rat(1) : Rat(-1);
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < r; ++t)
        if (t != l && t != m) rest.push_back(el.I[t]);
      for (std::size_t k = 0; k < ctx.n; ++k) {
        const Poly& c = ctx.sf.c[i][j][k];
        if (c.is_zero()) continue;
        if (std::find(rest.begin(), rest.end(), k) != rest.end()) continue;
        std::vector<std::size_t> J = rest;
        J.push_back(k);
        std::sort(J.begin(), J.end());
        std::size_t pos = std::find(J.begin(), J.end(), k) - J.begin();
        const Rat signk = (pos % 2 == 0) ? Rat(1) : Rat(-1);
        add(J, el.u, weyl_mul(P, WeylOp::from_poly(c)) * (sign2 * signk));
      }
    }
  return acc;
}

SpencerComponent build_component(const BuildContext& ctx, int weight) {
  const SpencerSpec& spec = *ctx.spec;
  SpencerComponent comp;
  comp.weight = weight;
  comp.bases.resize(ctx.n + 1);
  for (std::size_t r = 0; r <= ctx.n; ++r)
    comp.bases[r] = enumerate_basis(ctx, r, weight);

  comp.eps.resize(ctx.n + 1);
  for (std::size_t r = 1; r <= ctx.n; ++r) {
    // Index map of the target.
    std::map<ElemKey, std::size_t> index;
    for (std::size_t i = 0; i < comp.bases[r - 1].size(); ++i)
      index[key_of(comp.bases[r - 1][i])] = i;

    QMatrix m(comp.bases[r - 1].size(), comp.bases[r].size());
    for (std::size_t col = 0; col < comp.bases[r].size(); ++col) {
      auto acc = apply_differential(ctx, comp.bases[r][col]);
      for (const auto& [iu, op] : acc)
        for (const auto& [wk, coef] : op.terms()) {
          SpencerBasisElement t;
          t.a = wk.x;
          t.b = wk.d;
          t.c = wk.s;
          t.I = iu.first;
          t.u = iu.second;
          auto it = index.find(key_of(t));
          if (it == index.end())
            throw Error("internal: differential image escapes the "
                        "truncation");
          m.at(it->second, col) += coef;
        }
    }
    comp.eps[r] = std::move(m);
  }

  // Composition zero.
  for (std::size_t r = 2; r <= ctx.n; ++r)
    if (!is_zero_matrix(comp.eps[r - 1] * comp.eps[r]))
      throw Error("internal: spencer differential does not square to zero");

  // Augmentation.
  AugContext aug = make_aug_context(spec);
  std::vector<EFs> images;
  for (const auto& el : comp.bases[0])
    images.push_back(efs_apply_monomial(el, aug));
  comp.aug = encode_efs(images, aug);
  if (!comp.bases[1].empty() && comp.aug.rows() > 0 &&
      !is_zero_matrix(comp.aug * comp.eps[1]))
    throw Error("internal: augmentation does not kill the differential");
  return comp;
}

std::vector<long> component_homology(const SpencerComponent& comp,
                                     std::size_t n) {
  std::vector<long> h(n + 1, 0);
  auto dim_ker = [](const QMatrix& m) {
    return static_cast<long>(m.cols()) - static_cast<long>(m.rank());
  };
  h[0] = dim_ker(comp.aug) -
         static_cast<long>(n >= 1 ? comp.eps[1].rank() : 0);
  for (std::size_t r = 1; r <= n; ++r) {
    long k = dim_ker(comp.eps[r]);
    long im = r + 1 <= n ? static_cast<long>(comp.eps[r + 1].rank()) : 0;
    h[r] = k - im;
  }
  return h;
}

HomologyTable homology_common(const TruncatedComplex& tc) {
  const std::size_t n = tc.spec.d.ring->size();
  HomologyTable table;
  table.exact_negative = true;
  table.exact_all = true;
  for (const auto& comp : tc.components) {
    auto h = component_homology(comp, n);
    for (std::size_t r = 1; r <= n; ++r)
      if (h[r] != 0) table.exact_negative = false;
    for (auto v : h)
      if (v != 0) table.exact_all = false;
    table.rows.emplace_back(comp.weight, std::move(h));
  }
  return table;
}

}  // namespace

SaitoBasis homogeneous_saito_basis(const DivisorInput& d,
                                   const SaitoBasis& hint,
                                   const std::vector<int>& wts) {
  const std::size_t n = d.ring->size();
  auto wq = to_rat(wts);

  // Weight-homogeneous components of a derivation are derivations again.
  std::vector<LogDerivation> candidates;
  auto push_components = [&](const LogDerivation& row) {
    std::map<int, LogDerivation> byw;
    auto slot = [&](int t) -> LogDerivation& {
      auto it = byw.find(t);
      if (it == byw.end()) {
        LogDerivation der;
        der.a.assign(n, Poly(d.ring));
        der.alpha = Poly(d.ring);
        it = byw.emplace(t, std::move(der)).first;
      }
      return it->second;
    };
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [e, c] : row.a[j].terms()) {
        int deg = 0;
        for (std::size_t i = 0; i < n; ++i) deg += e[i] * wts[i];
        slot(deg - wts[j]).a[j].add_term(e, c);
      }
    for (const auto& [e, c] : row.alpha.terms()) {
      int deg = 0;
      for (std::size_t i = 0; i < n; ++i) deg += e[i] * wts[i];
      slot(deg).alpha.add_term(e, c);
    }
    for (auto& [t, der] : byw) {
      // Re-verify the defining relation for the component.
      Poly lhs(d.ring);
      for (std::size_t j = 0; j < n; ++j) lhs += der.a[j] * d.f.derivative(j);
      if (lhs != der.alpha * d.f)
        throw Error("internal: weight component is not a log derivation");
      bool dup = false;
      for (const auto& o : candidates)
        if (o.a == der.a && o.alpha == der.alpha) dup = true;
      if (!dup) candidates.push_back(der);
    }
  };
  for (const auto& row : hint.rows) push_components(row);
  for (const auto& row : log_derivations(d)) push_components(row);

  for (const auto& I : combinations(candidates.size(), n)) {
    std::vector<LogDerivation> rows;
    for (auto i : I) rows.push_back(candidates[i]);
    PolyMatrix M;
    for (const auto& r : rows) M.push_back(r.a);
    Poly det = poly_det(M, d.ring);
    if (det.is_zero()) continue;
    auto q = det.exact_divide(d.f);
    if (!q || !q->is_constant() || q->constant_term() == 0) continue;
    return SaitoBasis{std::move(rows), q->constant_term()};
  }
  throw Inconclusive("no weight-homogeneous Saito basis found");
}

TruncatedComplex build_spencer(const SpencerSpec& spec) {
  BuildContext ctx = make_build_context(spec);
  TruncatedComplex tc;
  tc.spec = spec;
  tc.weights = ctx.wx;
  tc.zeta_weights = ctx.zw;
  tc.graded = spec.mode == TruncationMode::WeightGraded;
  if (tc.graded) {
    for (int w = -spec.W; w <= spec.W; ++w)
      tc.components.push_back(build_component(ctx, w));
  } else {
    tc.components.push_back(build_component(ctx, spec.W));
  }
  return tc;
}

HomologyTable check_exactness(const TruncatedComplex& tc) {
  if (!tc.graded)
    throw Error("check_exactness: filtered truncations cannot certify; "
                "use homology_evidence");
  return homology_common(tc);
}

HomologyTable homology_evidence(const TruncatedComplex& tc) {
  return homology_common(tc);
}

bool graded_koszul_check(const DivisorInput& d, const SaitoBasis& basis) {
  auto gens = theta_generators(d, basis);
  const int total = static_cast<int>(2 * d.ring->size() + 1);
  return krull_dimension(gens) ==
         total - static_cast<int>(d.ring->size());
}

SpecializationReport specialize_and_check(const TruncatedComplex& tc, int k) {
  const SpencerSpec& spec = tc.spec;
  BuildContext ctx = make_build_context(spec);
  AugContext aug = make_aug_context(spec);
  const std::size_t n = ctx.n;

  SpecializationReport rep;
  rep.k = k;
  rep.all_equal = true;
  rep.all_segment_exact = true;

  for (const auto& comp : tc.components) {
    // s-free degree-0 basis of the same component: force c = 0 but allow
    // the full order budget on the partials.
    std::vector<SpencerBasisElement> sfree;
    for (const auto& el : enumerate_basis(ctx, 0, comp.weight))
      if (el.c == 0) sfree.push_back(el);
    std::map<ElemKey, std::size_t> sindex;
    for (std::size_t i = 0; i < sfree.size(); ++i)
      sindex[key_of(sfree[i])] = i;

    // Phi^0 as a matrix: rows sfree, columns comp.bases[0].
    QMatrix P0(sfree.size(), comp.bases[0].size());
    for (std::size_t j = 0; j < comp.bases[0].size(); ++j) {
      SpencerBasisElement el = comp.bases[0][j];
      Rat coef(1);
      for (int t = 0; t < el.c; ++t) coef *= Rat(-k);
      el.c = 0;
      auto it = sindex.find(key_of(el));
      if (it == sindex.end())
        throw Error("internal: specialization misses a basis element");
      P0.at(it->second, j) = coef;
    }

    // Specialized augmentation rho_k on the s-free basis.
    std::vector<EFs> images;
    for (const auto& el : sfree) {
      EFs e = efs_apply_monomial(el, aug);
      for (auto& p : e.num) p = p.substitute(n, Rat(-k));
      images.push_back(efs_canonical(std::move(e), aug));
    }
    QMatrix rho_k = encode_efs(images, aug);

    QMatrix ker_s = comp.aug.kernel();           // rows over bases[0]
    QMatrix mapped = ker_s * transpose(P0);      // rows over sfree
    QMatrix ker_k = rho_k.kernel();              // rows over sfree

    if (!row_span_contains(ker_k, mapped))
      throw Error("internal: specialized kernel containment fails");
    bool equal = row_span_contains(mapped, ker_k);
    rep.kernel_equality.emplace_back(comp.weight, equal);
    rep.all_equal = rep.all_equal && equal;

    // Specialized segment SP^{-1} -> SP^0 -> target.
    bool seg;
    if (n >= 1 && comp.eps[1].cols() > 0) {
      QMatrix im = transpose(P0 * comp.eps[1]);  // rows = image vectors
      if (!row_span_contains(ker_k, im))
        throw Error("internal: specialized image containment fails");
      seg = row_span_contains(im, ker_k);
    } else {
      seg = ker_k.rows() == 0 ||
            row_span_contains(QMatrix(0, rho_k.cols()), ker_k);
    }
    rep.segment_exact.emplace_back(comp.weight, seg);
    rep.all_segment_exact = rep.all_segment_exact && seg;
  }
  return rep;
}

std::string export_matrices(const TruncatedComplex& tc) {
  std::ostringstream os;
  const std::size_t n = tc.spec.d.ring->size();
  os << "spencer-truncation"
     << " mode=" << (tc.graded ? "weight-graded" : "weight-filtered")
     << " N=" << tc.spec.N << " W=" << tc.spec.W << "\n";
  os << "x-weights:";
  for (int w : tc.weights) os << " " << w;
  os << "\noperator-weights:";
  for (int w : tc.zeta_weights) os << " " << w;
  os << "\n";
  for (const auto& comp : tc.components) {
    os << "component weight=" << comp.weight << " dims:";
    for (std::size_t r = 0; r <= n; ++r) os << " " << comp.bases[r].size();
    os << "\n";
    auto dump = [&](const std::string& name, const QMatrix& m) {
      os << name << " " << m.rows() << " " << m.cols() << "\n";
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
          os << (j ? " " : "") << m.at(i, j).get_str();
        os << "\n";
      }
    };
    for (std::size_t r = 1; r <= n; ++r)
      dump("eps[-" + std::to_string(r) + "]", comp.eps[r]);
    dump("augmentation", comp.aug);
  }
  return os.str();
}

}  // namespace logdiv
