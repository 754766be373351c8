#include "logdiv/divisor.hpp"

#include <algorithm>
#include <random>

#include "logdiv/polymat.hpp"

namespace logdiv {

namespace {

// Phase-1 simplex: exact-rational feasibility of  A u = b, u >= 0.
// Returns a feasible u or nullopt.
std::optional<std::vector<Rat>> feasible_nonneg(
    std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
  const std::size_t m = A.size();
  if (m == 0) return std::vector<Rat>{};
  const std::size_t n = A[0].size();
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      for (auto& v : A[i]) v = -v;
      b[i] = -b[i];
    }

  // Columns: n structural + m artificial; basis starts on the artificials.
  const std::size_t total = n + m;
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(total + 1, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][total] = b[i];
    basis[i] = n + i;
  }

  // Minimize the sum of artificials.  Reduced cost of column j is
  // c_j - sum over rows of c_basis * T[i][j], with c = indicator(artificial).
  auto reduced_cost = [&](std::size_t j) {
    Rat r = j >= n ? Rat(1) : Rat(0);
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= n) r -= T[i][j];
    return r;
  };

  for (;;) {
    // Bland's rule: lowest-index column with negative reduced cost.
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j)
      if (reduced_cost(j) < 0) {
        enter = j;
        break;
      }
    if (enter == total) break;
    // Ratio test, ties by lowest basis index.
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][total] / T[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;  // unbounded phase-1: cannot happen
    Rat piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (std::size_t j = 0; j <= total; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }

  Rat objective(0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) objective += T[i][total];
  if (objective != 0) return std::nullopt;

  std::vector<Rat> u(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) u[basis[i]] = T[i][total];
  return u;
}

PolyMatrix coefficient_matrix(const std::vector<LogDerivation>& rows) {
  PolyMatrix m;
  for (const auto& d : rows) m.push_back(d.a);
  return m;
}

// det(rows) == unit * f with unit a nonzero rational?
std::optional<Rat> saito_certificate(const DivisorInput& d,
                                     const std::vector<LogDerivation>& rows) {
  Poly det = poly_det(coefficient_matrix(rows), d.ring);
  if (det.is_zero()) return std::nullopt;
  auto q = det.exact_divide(d.f);
  if (!q || !q->is_constant()) return std::nullopt;
  Rat u = q->constant_term();
  if (u == 0) return std::nullopt;
  return u;
}

void check_derivation(const DivisorInput& d, const LogDerivation& der) {
  Poly lhs(d.ring);
  for (std::size_t i = 0; i < der.a.size(); ++i)
    lhs += der.a[i] * d.f.derivative(i);
  if (lhs != der.alpha * d.f)
    throw Error("internal: derivation fails delta(f) = alpha*f");
}

}  // namespace

DivisorInput DivisorInput::make(Poly f) {
  if (!f.ring()) throw Error("divisor equation has no variable context");
  if (f.is_zero() || f.is_constant())
    throw Error("divisor equation must be nonconstant");
  Exp origin(f.ring()->size(), 0);
  if (f.coeff(origin) != 0)
    throw Error("divisor equation must vanish at the origin");

  // gcd(f, all partials) is the product of repeated factors over Q.
  Poly g = f;
  for (std::size_t i = 0; i < f.ring()->size(); ++i)
    g = poly_gcd(g, f.derivative(i));
  if (!g.is_constant())
    throw Error("divisor equation is not squarefree; repeated factor: " +
                g.to_string());

  return DivisorInput{f.ring(), std::move(f)};
}

std::vector<Poly> jacobian_ideal(const DivisorInput& d) {
  std::vector<Poly> out{d.f};
  for (std::size_t i = 0; i < d.ring->size(); ++i)
    out.push_back(d.f.derivative(i));
  return out;
}

std::vector<LogDerivation> log_derivations(const DivisorInput& d) {
  auto syz = syzygies(jacobian_ideal(d));
  std::vector<LogDerivation> out;
  for (const auto& row : syz) {
    LogDerivation der;
    der.alpha = -row[0];
    der.a.assign(row.begin() + 1, row.end());
    check_derivation(d, der);
    out.push_back(std::move(der));
  }
  return out;
}

std::optional<SaitoBasis> saito_basis(const DivisorInput& d,
                                      const std::vector<LogDerivation>& ders,
                                      int max_attempts) {
  const std::size_t n = d.ring->size();
  if (ders.size() < n) return std::nullopt;

  // All size-n subsets first.
  std::vector<std::size_t> pick(n);
  std::vector<bool> mask(ders.size(), false);
  std::fill(mask.begin(), mask.begin() + n, true);
  std::vector<std::vector<std::size_t>> subsets;
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < ders.size(); ++i)
      if (mask[i]) s.push_back(i);
    subsets.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  for (const auto& s : subsets) {
    std::vector<LogDerivation> rows;
    for (std::size_t i : s) rows.push_back(ders[i]);
    if (auto u = saito_certificate(d, rows))
      return SaitoBasis{std::move(rows), *u};
  }

  // Seeded random small-integer combinations of the generators.
  std::mt19937 rng(0x5a170);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<LogDerivation> rows;
    for (std::size_t r = 0; r < n; ++r) {
      LogDerivation der;
      der.a.assign(n, Poly(d.ring));
      der.alpha = Poly(d.ring);
      for (const auto& g : ders) {
        Rat c(coef(rng));
        if (c == 0) continue;
        for (std::size_t i = 0; i < n; ++i) der.a[i] += g.a[i] * c;
        der.alpha += g.alpha * c;
      }
      rows.push_back(std::move(der));
    }
    if (auto u = saito_certificate(d, rows)) {
      for (const auto& r : rows) check_derivation(d, r);
      return SaitoBasis{std::move(rows), *u};
    }
  }
  return std::nullopt;
}

bool is_euler_homogeneous(const DivisorInput& d) {
  std::vector<Poly> grad;
  for (std::size_t i = 0; i < d.ring->size(); ++i)
    grad.push_back(d.f.derivative(i));
  auto gb = buchberger({grad, MonomialOrder::degrevlex(), false});
  return normal_form(d.f, gb).is_zero();
}

std::optional<std::vector<int>> is_quasi_homogeneous(const DivisorInput& d) {
  const std::size_t n = d.ring->size();
  std::vector<Exp> exps;
  for (const auto& [e, c] : d.f.terms()) exps.push_back(e);

  // Weights w with a.w constant over the support, w_i >= 1 (any strictly
  // positive rational solution rescales to this).  Substitute w = 1 + u.
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (std::size_t k = 1; k < exps.size(); ++k) {
    std::vector<Rat> row(n);
    Rat rhs(0);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = Rat(exps[k][i] - exps[0][i]);
      rhs -= row[i];
    }
    A.push_back(std::move(row));
    b.push_back(rhs);
  }
  auto u = feasible_nonneg(A, b);
  if (!u) return std::nullopt;
  u->resize(n, Rat(0));  // no-constraint case returns an empty vector

  std::vector<Rat> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = Rat(1) + (*u)[i];

  // Scale to coprime positive integers.
  mpz_class den_lcm = 1;
  for (const auto& v : w) {
    mpz_class g, den = v.get_den();
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
    den_lcm = den_lcm / g * den;
  }
  std::vector<mpz_class> wi;
  mpz_class common = 0;
  for (const auto& v : w) {
    Rat s = v * Rat(den_lcm);
    s.canonicalize();
    wi.push_back(s.get_num());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), common.get_mpz_t(), wi.back().get_mpz_t());
    common = g;
  }
  std::vector<int> out;
  std::vector<Rat> wq;
  for (auto& v : wi) {
    v /= common;
    if (!v.fits_sint_p()) throw Error("quasi-homogeneous weights overflow");
    out.push_back(static_cast<int>(v.get_si()));
    wq.emplace_back(v);
  }
  if (!d.f.is_weighted_homogeneous(wq))
    throw Error("internal: weight candidate fails homogeneity");
  return out;
}

RingPtr symbol_ring(const DivisorInput& d) {
  std::vector<std::string> names = d.ring->names();
  names.push_back("s");
  for (std::size_t i = 0; i < d.ring->size(); ++i)
    names.push_back("xi" + std::to_string(i + 1));
  for (const auto& v : d.ring->names())
    if (v == "s" || (v.size() > 2 && v.compare(0, 2, "xi") == 0))
      throw Error("variable name collides with symbol variables: " + v);
  return make_ring(std::move(names));
}

std::vector<Poly> theta_generators(const DivisorInput& d,
                                   const SaitoBasis& basis) {
  const std::size_t n = d.ring->size();
  RingPtr S = symbol_ring(d);
  std::vector<Poly> out;
  for (const auto& row : basis.rows) {
    Poly g(S);
    for (std::size_t j = 0; j < n; ++j)
      g += row.a[j].lift_to(S) * Poly::variable(S, n + 1 + j);
    g -= row.alpha.lift_to(S) * Poly::variable(S, n);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Poly> rees_kernel(const DivisorInput& d) {
  const std::size_t n = d.ring->size();
  RingPtr S = symbol_ring(d);

  std::vector<std::string> names{"t"};
  for (const auto& v : S->names()) names.push_back(v);
  RingPtr T = make_ring(std::move(names));

  Poly t = Poly::variable(T, 0);
  std::vector<Poly> gens;
  gens.push_back(Poly::variable(T, 1 + n) - d.f.lift_to(T) * t);
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back(Poly::variable(T, 1 + n + 1 + i) -
                   d.f.derivative(i).lift_to(T) * t);

  auto elim = elimination_ideal(gens, {0});
  std::vector<Poly> out;
  for (const auto& g : elim) {
    auto r = g.restrict_to(S);
    if (!r) throw Error("internal: elimination output mentions t");
    // Each generator must be homogeneous in the (s, xi) variables.
    int deg = -1;
    for (const auto& [e, c] : r->terms()) {
      int sd = 0;
      for (std::size_t i = n; i < S->size(); ++i) sd += e[i];
      if (deg < 0) deg = sd;
      else if (deg != sd)
        throw Error("internal: kernel generator not (s,xi)-homogeneous");
    }
    out.push_back(std::move(*r));
  }
  return out;
}

bool is_linear_jacobian_type(const DivisorInput& d, const SaitoBasis& basis) {
  return ideal_equal(theta_generators(d, basis), rees_kernel(d),
                     MonomialOrder::degrevlex());
}

bool is_koszul_free(const DivisorInput& d, const SaitoBasis& basis) {
  const std::size_t n = d.ring->size();
  std::vector<std::string> names = d.ring->names();
  for (std::size_t i = 0; i < n; ++i)
    names.push_back("xi" + std::to_string(i + 1));
  RingPtr X = make_ring(std::move(names));

  std::vector<Poly> symbols;
  for (const auto& row : basis.rows) {
    Poly g(X);
    for (std::size_t j = 0; j < n; ++j)
      g += row.a[j].lift_to(X) * Poly::variable(X, n + j);
    symbols.push_back(std::move(g));
  }
  return krull_dimension(symbols) == static_cast<int>(n);
}

ClassificationReport classify(const DivisorInput& d) {
  ClassificationReport rep;
  auto note = [&](const std::string& flag, const std::string& how) {
    rep.provenance.emplace_back(flag, how);
  };

  rep.euler_homogeneous = is_euler_homogeneous(d);
  note("euler_homogeneous", "computed");
  rep.quasi_homogeneous = is_quasi_homogeneous(d);
  note("quasi_homogeneous", "computed");
  rep.global_test_caveat = !rep.quasi_homogeneous.has_value();

  auto ders = log_derivations(d);
  auto basis = saito_basis(d, ders);
  rep.free = basis.has_value();
  note("free", basis ? "computed: determinant certificate"
                     : "not recognized as free at origin");
  if (!basis) return rep;

  rep.linear_jacobian_type = is_linear_jacobian_type(d, *basis);
  note("linear_jacobian_type", "computed");
  rep.koszul_free = is_koszul_free(d, *basis);
  note("koszul_free", "computed");
  if (*rep.linear_jacobian_type) {
    rep.differential_linear_type = true;
    note("differential_linear_type", "implied: linear jacobian type");
  } else {
    note("differential_linear_type", "unknown: direct test out of scope");
  }

  // Implication closure; any violation is a hard internal error.
  if (rep.quasi_homogeneous && rep.free && !*rep.linear_jacobian_type)
    throw Error("implication violated: quasi-homogeneous free divisor "
                "must be of linear jacobian type");
  if (*rep.linear_jacobian_type && !*rep.koszul_free)
    throw Error("implication violated: linear jacobian type must be "
                "Koszul free");
  if (*rep.linear_jacobian_type && !rep.euler_homogeneous)
    throw Error("implication violated: linear jacobian type must be "
                "Euler homogeneous");
  return rep;
}

}  // namespace logdiv
