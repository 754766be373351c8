#include "logdiv/weyl.hpp"

#include <algorithm>
#include <list>
#include <sstream>

namespace logdiv {

namespace {

Rat binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rat(r);
}

Rat falling(int n, int k) {  // n (n-1) ... (n-k+1)
  mpz_class r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return Rat(r);
}

}  // namespace

WeylOp WeylOp::from_poly(const Poly& p) {
  WeylOp out(p.ring());
  const std::size_t n = p.ring()->size();
  for (const auto& [e, c] : p.terms())
    out.add_term(WeylKey{e, Exp(n, 0), 0}, c);
  return out;
}

WeylOp WeylOp::partial(RingPtr xring, std::size_t i, int power) {
  const std::size_t n = xring->size();
  WeylKey k{Exp(n, 0), Exp(n, 0), 0};
  k.d[i] = power;
  return monomial(std::move(xring), std::move(k), 1);
}

WeylOp WeylOp::s_power(RingPtr xring, int power) {
  const std::size_t n = xring->size();
  return monomial(std::move(xring), WeylKey{Exp(n, 0), Exp(n, 0), power}, 1);
}

WeylOp WeylOp::monomial(RingPtr xring, WeylKey key, const Rat& c) {
  WeylOp out(std::move(xring));
  out.add_term(key, c);
  return out;
}

WeylOp WeylOp::constant(RingPtr xring, const Rat& c) {
  const std::size_t n = xring->size();
  return monomial(std::move(xring), WeylKey{Exp(n, 0), Exp(n, 0), 0}, c);
}

int WeylOp::total_order() const {
  int m = -1;
  for (const auto& [k, c] : terms_)
    m = std::max(m, exp_total_degree(k.d) + k.s);
  return m;
}

int WeylOp::total_degree() const {
  int m = -1;
  for (const auto& [k, c] : terms_)
    m = std::max(m, exp_total_degree(k.x) + exp_total_degree(k.d) + k.s);
  return m;
}

WeylOp WeylOp::operator-() const {
  WeylOp out(ring_);
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

WeylOp WeylOp::operator+(const WeylOp& o) const {
  WeylOp out = *this;
  out += o;
  return out;
}

WeylOp WeylOp::operator-(const WeylOp& o) const {
  WeylOp out = *this;
  out -= o;
  return out;
}

WeylOp WeylOp::operator*(const Rat& c) const {
  WeylOp out(ring_);
  if (c == 0) return out;
  for (const auto& [k, v] : terms_) out.terms_[k] = v * c;
  return out;
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

bool WeylOp::operator==(const WeylOp& o) const { return terms_ == o.terms_; }

void WeylOp::add_term(const WeylKey& k, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly WeylOp::total_symbol(const RingPtr& symring) const {
  const std::size_t n = ring_->size();
  const int top = total_order();
  Poly out(symring);
  for (const auto& [k, c] : terms_) {
    if (exp_total_degree(k.d) + k.s != top) continue;
    Exp e(symring->size(), 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = k.x[i];
    e[n] = k.s;
    for (std::size_t i = 0; i < n; ++i) e[n + 1 + i] = k.d[i];
    out.add_term(e, c);
  }
  return out;
}

std::string WeylOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::vector<std::string> parts;
    if (a != 1) parts.push_back(a.get_str());
    auto var = [&](const std::string& nm, int e) {
      if (e == 0) return;
      parts.push_back(e == 1 ? nm : nm + "^" + std::to_string(e));
    };
    for (std::size_t i = 0; i < ring_->size(); ++i) var(ring_->name(i), k.x[i]);
    for (std::size_t i = 0; i < ring_->size(); ++i)
      var("d" + ring_->name(i), k.d[i]);
    var("s", k.s);
    if (parts.empty()) parts.push_back("1");
    for (std::size_t i = 0; i < parts.size(); ++i)
      os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

WeylOp weyl_mul(const WeylOp& p, const WeylOp& q) {
  if (!p.xring() || !q.xring() || *p.xring() != *q.xring())
    throw Error("weyl_mul: variable-context mismatch");
  const RingPtr& R = p.xring();
  const std::size_t n = R->size();
  WeylOp out(R);
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) {
      // (x^a1 d^a2 s^a3)(x^b1 d^b2 s^b3): commute d^a2 past x^b1:
      // d^m x^l = sum_k C(m,k) l!/(l-k)! x^{l-k} d^{m-k}, per variable.
      std::vector<std::pair<WeylKey, Rat>> acc{
          {WeylKey{a.x, Exp(n, 0), a.s + b.s}, ca * cb}};
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<WeylKey, Rat>> next;
        const int m = a.d[i], l = b.x[i];
        for (int k = 0; k <= std::min(m, l); ++k) {
          Rat c = binom(m, k) * falling(l, k);
          for (const auto& [key, kc] : acc) {
            WeylKey nk = key;
            nk.x[i] += l - k;
            nk.d[i] += m - k;
            next.emplace_back(std::move(nk), kc * c);
          }
        }
        acc = std::move(next);
      }
      for (auto& [key, kc] : acc) {
        for (std::size_t i = 0; i < n; ++i) key.d[i] += b.d[i];
        out.add_term(key, kc);
      }
    }
  return out;
}

RingPtr fs_ring(const RingPtr& xring) {
  std::vector<std::string> names = xring->names();
  names.push_back("s");
  return make_ring(std::move(names));
}

FsElement fs_one(const Poly& f) {
  return FsElement{Poly::constant(fs_ring(f.ring()), 1), 0};
}

namespace {

FsElement canonical(FsElement e, const Poly& flift) {
  while (e.pole > 0) {
    auto q = e.numerator.exact_divide(flift);
    if (!q) break;
    e.numerator = *q;
    --e.pole;
  }
  if (e.numerator.is_zero()) e.pole = 0;
  return e;
}

}  // namespace

FsElement act_on_fs(const WeylOp& p, const FsElement& e, const Poly& f) {
  const RingPtr F = e.numerator.ring();  // Q[x, s]
  const std::size_t n = p.xring()->size();
  if (F->size() != n + 1)
    throw Error("act_on_fs: numerator ring mismatch");
  const Poly flift = f.lift_to(F);
  const Poly svar = Poly::variable(F, n);

  FsElement out{Poly(F), 0};
  for (const auto& [k, c] : p.terms()) {
    FsElement cur = e;
    // Partials act first (rightmost factors).
    for (std::size_t i = 0; i < n; ++i)
      for (int rep = 0; rep < k.d[i]; ++rep) {
        Poly num = cur.numerator.derivative(i) * flift +
                   (svar - Poly::constant(F, Rat(cur.pole))) * cur.numerator *
                       flift.derivative(i);
        cur = FsElement{std::move(num), cur.pole + 1};
      }
    // Then multiplication by x^a s^c and the coefficient.
    Exp xe(F->size(), 0);
    for (std::size_t i = 0; i < n; ++i) xe[i] = k.x[i];
    xe[n] = k.s;
    cur.numerator *= Poly::monomial(F, std::move(xe), c);
    // Add over a common pole order.
    int pole = std::max(out.pole, cur.pole);
    out.numerator *= flift.pow(pole - out.pole);
    out.numerator += cur.numerator * flift.pow(pole - cur.pole);
    out.pole = pole;
  }
  return canonical(std::move(out), flift);
}

bool fs_equal(const FsElement& a, const FsElement& b, const Poly& f) {
  const Poly flift = f.lift_to(a.numerator.ring());
  return a.numerator * flift.pow(b.pole) == b.numerator * flift.pow(a.pole);
}

std::vector<WeylOp> theta_operators(const DivisorInput& d,
                                    const SaitoBasis& basis) {
  const std::size_t n = d.ring->size();
  std::vector<WeylOp> out;
  for (const auto& row : basis.rows) {
    WeylOp z(d.ring);
    for (std::size_t j = 0; j < n; ++j)
      z += weyl_mul(WeylOp::from_poly(row.a[j]), WeylOp::partial(d.ring, j));
    z -= weyl_mul(WeylOp::from_poly(row.alpha), WeylOp::s_power(d.ring));
    out.push_back(std::move(z));
  }
  return out;
}

Exp weyl_encode(const WeylKey& k) {
  Exp e = k.x;
  e.insert(e.end(), k.d.begin(), k.d.end());
  e.push_back(k.s);
  return e;
}

namespace {

WeylKey weyl_decode(const Exp& e, std::size_t n) {
  WeylKey k;
  k.x.assign(e.begin(), e.begin() + n);
  k.d.assign(e.begin() + n, e.begin() + 2 * n);
  k.s = e[2 * n];
  return k;
}

struct WTracked {
  WeylOp p;
  Exp lt;
  Rat ltc;
  std::vector<WeylOp> rep;

  void refresh_lt(const MonomialOrder& ord) {
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
      Exp e = weyl_encode(k);
      if (first || ord.less(lt, e)) {
        lt = std::move(e);
        ltc = c;
      }
      first = false;
    }
  }
};

// Full left normal form; optionally records quotients so
// p = sum quots[i] * basis[i].p + remainder (left multiplication).
WeylOp weyl_reduce(const WeylOp& p, const std::vector<WTracked>& basis,
                   const MonomialOrder& ord, std::size_t n,
                   const Deadline& deadline,
                   std::vector<WeylOp>* quots = nullptr) {
  const RingPtr R = p.xring();
  WeylOp rem(R);
  WeylOp work = p;
  while (!work.is_zero()) {
    deadline.check();
    WTracked probe;
    probe.p = work;
    probe.refresh_lt(ord);
    const Exp& e = probe.lt;
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].p.is_zero() || !exp_divides(basis[i].lt, e)) continue;
      WeylOp m = WeylOp::monomial(R, weyl_decode(exp_sub(e, basis[i].lt), n),
                                  probe.ltc / basis[i].ltc);
      work -= weyl_mul(m, basis[i].p);
      if (quots) (*quots)[i] += m;
      reduced = true;
      break;
    }
    if (!reduced) {
      WeylKey k = weyl_decode(e, n);
      rem.add_term(k, probe.ltc);
      work.add_term(k, -probe.ltc);
    }
  }
  return rem;
}

}  // namespace

WeylBasis weyl_groebner(const std::vector<WeylOp>& gens,
                        const MonomialOrder& order, int degree_cap,
                        const Deadline& deadline) {
  if (gens.empty()) throw Error("weyl_groebner: no generators");
  const RingPtr R = gens[0].xring();
  for (const auto& g : gens)
    if (!g.xring() || *g.xring() != *R)
      throw Error("weyl_groebner: variable-context mismatch");
  const std::size_t n = R->size();

  // Global order check: 1 strictly smallest.
  Exp one(2 * n + 1, 0);
  for (std::size_t i = 0; i < 2 * n + 1; ++i) {
    Exp v(2 * n + 1, 0);
    v[i] = 1;
    if (!order.less(one, v))
      throw Error("weyl_groebner: order is not global");
  }

  WeylBasis result;
  std::vector<WTracked> basis;
  const std::size_t m = gens.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (gens[i].is_zero()) continue;
    WTracked t;
    t.p = gens[i];
    t.refresh_lt(order);
    t.rep.assign(m, WeylOp(R));
    t.rep[i] = WeylOp::constant(R, 1);
    basis.push_back(std::move(t));
  }
  if (basis.empty()) throw Error("weyl_groebner: all generators are zero");

  std::list<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    deadline.check();
    // Normal selection: smallest lcm first.
    auto best = pairs.begin();
    Exp best_lcm = exp_lcm(basis[best->first].lt, basis[best->second].lt);
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      Exp l = exp_lcm(basis[it->first].lt, basis[it->second].lt);
      if (order.less(l, best_lcm)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    auto [i, j] = *best;
    pairs.erase(best);
    if (exp_total_degree(best_lcm) > degree_cap) {
      result.capped = true;
      continue;
    }

    WeylOp mi = WeylOp::monomial(R, weyl_decode(exp_sub(best_lcm, basis[i].lt), n),
                                 Rat(1) / basis[i].ltc);
    WeylOp mj = WeylOp::monomial(R, weyl_decode(exp_sub(best_lcm, basis[j].lt), n),
                                 Rat(1) / basis[j].ltc);
    WeylOp sp = weyl_mul(mi, basis[i].p) - weyl_mul(mj, basis[j].p);
    std::vector<WeylOp> quots(basis.size(), WeylOp(R));
    WeylOp rem = weyl_reduce(sp, basis, order, n, deadline, &quots);
    if (rem.is_zero()) continue;

    WTracked t;
    t.p = std::move(rem);
    t.refresh_lt(order);
    t.rep.assign(m, WeylOp(R));
    for (std::size_t k = 0; k < m; ++k) {
      t.rep[k] = weyl_mul(mi, basis[i].rep[k]) - weyl_mul(mj, basis[j].rep[k]);
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (!quots[b].is_zero())
          t.rep[k] -= weyl_mul(quots[b], basis[b].rep[k]);
    }
    basis.push_back(std::move(t));
    for (std::size_t b = 0; b + 1 < basis.size(); ++b)
      pairs.emplace_back(b, basis.size() - 1);
  }

  // Minimize: drop elements whose leading monomial another's divides.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !keep[i] || !keep[j]) continue;
      if (exp_divides(basis[j].lt, basis[i].lt) &&
          (basis[j].lt != basis[i].lt || j < i))
        keep[i] = false;
    }
  std::vector<WTracked> kept;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) kept.push_back(std::move(basis[i]));

  // Interreduce tails.
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<WTracked> others;
    std::vector<std::size_t> omap;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) {
        others.push_back(kept[j]);
        omap.push_back(j);
      }
    std::vector<WeylOp> quots(others.size(), WeylOp(R));
    WeylOp rem = weyl_reduce(kept[i].p, others, order, n, deadline, &quots);
    kept[i].p = std::move(rem);
    kept[i].refresh_lt(order);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t b = 0; b < others.size(); ++b)
        if (!quots[b].is_zero())
          kept[i].rep[k] -= weyl_mul(quots[b], kept[omap[b]].rep[k]);
  }

  // Monic, sorted by leading monomial, representation re-checked.
  std::sort(kept.begin(), kept.end(), [&](const WTracked& a, const WTracked& b) {
    return order.less(a.lt, b.lt);
  });
  for (auto& t : kept) {
    Rat inv = Rat(1) / t.ltc;
    t.p = t.p * inv;
    t.ltc = 1;
    for (auto& r : t.rep) r = r * inv;
    WeylOp acc(R);
    for (std::size_t k = 0; k < m; ++k) acc += weyl_mul(t.rep[k], gens[k]);
    if (acc != t.p)
      throw Error("internal: left-combination transcript does not contract");
    result.gb.push_back(t.p);
    result.cofactors.push_back(t.rep);
  }
  return result;
}

Poly bfunction_poly(const BFunction& b, const RingPtr& sring) {
  if (sring->size() != 1) throw Error("bfunction_poly: need a univariate ring");
  Poly out(sring);
  for (std::size_t i = 0; i < b.coeffs.size(); ++i)
    out.add_term(Exp{static_cast<int>(i)}, b.coeffs[i]);
  return out;
}

namespace {

// Exact rational roots of a univariate rational polynomial (ascending
// coefficients), with multiplicities; the deflated remainder is dropped.
std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat> c) {
  std::vector<std::pair<Rat, int>> out;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.size() <= 1) return out;

  auto eval = [&](const Rat& r) {
    Rat acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + c[i];
    return acc;
  };
  auto deflate = [&](const Rat& r) {
    // Synthetic division by (s - r); remainder must be zero.
    std::vector<Rat> q(c.size() - 1);
    Rat carry = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = c[i] + carry * r;
    }
    if (carry != 0) throw Error("internal: root deflation failed");
    c = std::move(q);
  };

  // Root zero first.
  int zero_mult = 0;
  while (c.size() > 1 && c[0] == 0) {
    deflate(Rat(0));
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rat(0), zero_mult);
  if (c.size() <= 1) {
    std::sort(out.begin(), out.end());
    return out;
  }
  // Clear denominators.
  mpz_class lcm = 1;
  for (const auto& v : c) {
    mpz_class g, den = v.get_den();
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  Rat a0q = c.front() * Rat(lcm);
  Rat anq = c.back() * Rat(lcm);
  a0q.canonicalize();
  anq.canonicalize();
  mpz_class a0 = a0q.get_num();
  mpz_class an = anq.get_num();
  auto divisors = [](mpz_class v) {
    if (v < 0) v = -v;
    std::vector<mpz_class> ds;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        if (d * d != v) ds.push_back(v / d);
      }
    return ds;
  };
  for (const auto& p : divisors(a0))
    for (const auto& q : divisors(an))
      for (int sign : {1, -1}) {
        Rat r(sign * p, q);
        r.canonicalize();
        int mult = 0;
        while (c.size() > 1 && eval(r) == 0) {
          deflate(r);
          ++mult;
        }
        if (mult) out.emplace_back(r, mult);
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BFunction bfunction_via_theta(const DivisorInput& d, const SaitoBasis& basis,
                              int degree_cap, const Deadline& deadline) {
  const std::size_t n = d.ring->size();
  if (n > 3) throw Error("bfunction_via_theta: guarded to n <= 3");

  std::vector<WeylOp> gens{WeylOp::from_poly(d.f)};
  for (auto& z : theta_operators(d, basis)) gens.push_back(std::move(z));

  // Eliminate the x- and d-blocks, keep s last.
  std::vector<std::size_t> block1(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) block1[i] = i;
  MonomialOrder ord = MonomialOrder::block(block1, MonomialOrder::degrevlex(),
                                           MonomialOrder::degrevlex());
  WeylBasis wb = weyl_groebner(gens, ord, degree_cap, deadline);

  // Under this order a pure-s leading monomial forces a pure-s element,
  // and the reduced basis contains at most one such.
  int found = -1;
  for (std::size_t j = 0; j < wb.gb.size(); ++j) {
    bool pure = true;
    for (const auto& [k, c] : wb.gb[j].terms())
      if (exp_total_degree(k.x) + exp_total_degree(k.d) != 0) pure = false;
    if (pure) {
      found = static_cast<int>(j);
      break;
    }
  }
  if (found < 0)
    throw Inconclusive("no nonzero intersection with Q[s] found below the "
                       "degree cap " + std::to_string(degree_cap));

  BFunction b;
  int deg = 0;
  for (const auto& [k, c] : wb.gb[found].terms()) deg = std::max(deg, k.s);
  b.coeffs.assign(deg + 1, Rat(0));
  for (const auto& [k, c] : wb.gb[found].terms()) b.coeffs[k.s] = c;
  b.certificate = wb.cofactors[found][0];  // cofactor of f
  b.rational_roots = rational_roots(b.coeffs);
  for (const auto& [r, mult] : b.rational_roots)
    if (r.get_den() == 1) b.integer_roots.push_back(r.get_num().get_si());
  b.exact = !wb.capped && is_linear_jacobian_type(d, basis);

  if (!verify_functional_equation(d.f, b, b.certificate))
    throw Error("internal: certificate fails the functional equation");
  return b;
}

bool verify_functional_equation(const Poly& f, const BFunction& b,
                                const WeylOp& p) {
  const RingPtr F = fs_ring(f.ring());
  const std::size_t n = f.ring()->size();
  // f^{s+1} = f * f^s.
  FsElement fs1{f.lift_to(F), 0};
  FsElement lhs = act_on_fs(p, fs1, f);
  Poly bs(F);
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
    Exp e(F->size(), 0);
    e[n] = static_cast<int>(i);
    bs.add_term(e, b.coeffs[i]);
  }
  return fs_equal(lhs, FsElement{bs, 0}, f);
}

std::optional<long> lct_threshold(const BFunction& b) {
  std::optional<long> k0;
  for (long r : b.integer_roots) {
    if (r > -1) continue;
    if (!k0 || -r > *k0) k0 = -r;
  }
  return k0;
}

}  // namespace logdiv
