#include "logdiv/poly.hpp"

#include <algorithm>
#include <sstream>

namespace logdiv {

int exp_total_degree(const Exp& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool exp_divides(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exp exp_add(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exp exp_sub(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exp exp_lcm(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Ring::Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j])
        throw Error("duplicate variable name: " + vars_[i]);
}

std::optional<std::size_t> Ring::index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> vars) {
  return std::make_shared<const Ring>(std::move(vars));
}

Poly Poly::constant(RingPtr ring, const Rat& c) {
  Poly p(std::move(ring));
  if (c != 0) p.terms_[Exp(p.nvars(), 0)] = c;
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t idx, int power) {
  Poly p(std::move(ring));
  if (idx >= p.nvars()) throw Error("variable index out of range");
  Exp e(p.nvars(), 0);
  e[idx] = power;
  p.terms_[e] = 1;
  return p;
}

Poly Poly::monomial(RingPtr ring, Exp e, const Rat& c) {
  Poly p(std::move(ring));
  if (e.size() != p.nvars()) throw Error("exponent tuple length mismatch");
  if (c != 0) p.terms_[std::move(e)] = c;
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && exp_total_degree(terms_.begin()->first) == 0;
}

Rat Poly::constant_term() const { return coeff(Exp(nvars(), 0)); }

Rat Poly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, exp_total_degree(e));
  return d;
}

int Poly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Poly::require_same_ring(const Poly& o) const {
  if (ring_ == o.ring_) return;
  if (ring_ && o.ring_ && *ring_ == *o.ring_) return;
  throw Error("variable-context mismatch between polynomials");
}

void Poly::add_term(const Exp& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(ring_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(o);
  Poly r(ring_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(exp_add(e1, e2), c1 * c2);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r(ring_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  require_same_ring(o);
  return terms_ == o.terms_;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw Error("negative power");
  Poly r = Poly::constant(ring_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exp e2 = e;
    e2[var] -= 1;
    r.add_term(e2, c * e[var]);
  }
  return r;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  require_same_ring(value);
  Poly r(ring_);
  for (const auto& [e, c] : terms_) {
    Exp e2 = e;
    int k = e2[var];
    e2[var] = 0;
    r += Poly::monomial(ring_, e2, c) * value.pow(k);
  }
  return r;
}

Poly Poly::substitute(std::size_t var, const Rat& value) const {
  return substitute(var, Poly::constant(ring_, value));
}

std::optional<Poly> Poly::exact_divide(const Poly& d) const {
  require_same_ring(d);
  if (d.is_zero()) return std::nullopt;
  // Division with a single divisor under the lexicographic term order on the
  // stored map: when d | p, the leading term of p is always divisible by the
  // leading term of d.
  Poly rem = *this;
  Poly quot(ring_);
  const auto& dl = *d.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rl = *rem.terms_.rbegin();
    if (!exp_divides(dl.first, rl.first)) return std::nullopt;
    Exp q = exp_sub(rl.first, dl.first);
    Rat c = rl.second / dl.second;
    Poly m = Poly::monomial(ring_, q, c);
    quot += m;
    rem -= m * d;
  }
  return quot;
}

Poly Poly::lift_to(const RingPtr& target) const {
  std::vector<std::size_t> map(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto idx = target->index(ring_->name(i));
    if (!idx) throw Error("variable " + ring_->name(i) + " missing in target ring");
    map[i] = *idx;
  }
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Exp e2(target->size(), 0);
    for (std::size_t i = 0; i < nvars(); ++i) e2[map[i]] = e[i];
    r.add_term(e2, c);
  }
  return r;
}

std::optional<Poly> Poly::restrict_to(const RingPtr& target) const {
  std::vector<std::optional<std::size_t>> map(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) map[i] = target->index(ring_->name(i));
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Exp e2(target->size(), 0);
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) return std::nullopt;
      e2[*map[i]] = e[i];
    }
    r.add_term(e2, c);
  }
  return r;
}

bool Poly::is_weighted_homogeneous(const std::vector<Rat>& weights,
                                   Rat* degree_out) const {
  bool first = true;
  Rat deg = 0;
  for (const auto& [e, c] : terms_) {
    Rat d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += weights[i] * e[i];
    if (first) {
      deg = d;
      first = false;
    } else if (d != deg) {
      return false;
    }
  }
  if (degree_out) *degree_out = deg;
  return true;
}

Poly Poly::weighted_component(const std::vector<Rat>& weights,
                              const Rat& d) const {
  Poly r(ring_);
  for (const auto& [e, c] : terms_) {
    Rat w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += weights[i] * e[i];
    if (w == d) r.add_term(e, c);
  }
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Print highest (lex) terms first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_vars = exp_total_degree(e) > 0;
    if (!has_vars || a != 1) {
      out << a.get_str();
      if (has_vars) out << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << ring_->name(i);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

}  // namespace logdiv
