#ifndef LOGDIV_POLY_HPP
#define LOGDIV_POLY_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logdiv/common.hpp"

namespace logdiv {

// Exact rational scalar.  No floating point is used anywhere in the core.
using Rat = mpq_class;

// Exponent tuple; one entry per ring variable, all non-negative.
using Exp = std::vector<int>;

int exp_total_degree(const Exp& e);
bool exp_divides(const Exp& a, const Exp& b);  // a | b componentwise
Exp exp_add(const Exp& a, const Exp& b);
Exp exp_sub(const Exp& a, const Exp& b);  // requires b | a
Exp exp_lcm(const Exp& a, const Exp& b);

// Ordered list of variable names; shared immutably between polynomials.
class Ring {
 public:
  explicit Ring(std::vector<std::string> vars);

  std::size_t size() const { return vars_.size(); }
  const std::string& name(std::size_t i) const { return vars_[i]; }
  const std::vector<std::string>& names() const { return vars_; }
  std::optional<std::size_t> index(const std::string& name) const;

  bool operator==(const Ring& o) const { return vars_ == o.vars_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

 private:
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> vars);

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no stored coefficient is zero; exponent tuples are unique.
class Poly {
 public:
  Poly() = default;  // zero polynomial without ring context; assign before use
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Rat& c);
  static Poly variable(RingPtr ring, std::size_t idx, int power = 1);
  static Poly monomial(RingPtr ring, Exp e, const Rat& c);

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
  const std::map<Exp, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (coefficient of the zero exponent tuple).
  Rat constant_term() const;
  Rat coeff(const Exp& e) const;

  int total_degree() const;  // -1 for zero
  // Degree in a single variable.
  int degree_in(std::size_t var) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly operator*(const Rat& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int k) const;
  Poly derivative(std::size_t var) const;

  // Substitute variable `var` by `value` (same ring).
  Poly substitute(std::size_t var, const Poly& value) const;
  Poly substitute(std::size_t var, const Rat& value) const;

  // Exact quotient this / d, or nullopt when d does not divide this.
  std::optional<Poly> exact_divide(const Poly& d) const;

  // Re-express in `target`: every variable of this ring must exist in
  // target (looked up by name).
  Poly lift_to(const RingPtr& target) const;
  // Project onto a subring; fails if a term uses a variable that is
  // missing from `target`.
  std::optional<Poly> restrict_to(const RingPtr& target) const;

  // True if every monomial has the same weighted degree w.r.t. `weights`
  // (indexed per ring variable).  Zero counts as homogeneous.
  bool is_weighted_homogeneous(const std::vector<Rat>& weights,
                               Rat* degree_out = nullptr) const;
  // Sum of terms of weighted degree exactly `d`.
  Poly weighted_component(const std::vector<Rat>& weights, const Rat& d) const;

  void add_term(const Exp& e, const Rat& c);  // accumulate, dropping zeros

  std::string to_string() const;

 private:
  void require_same_ring(const Poly& o) const;

  RingPtr ring_;
  std::map<Exp, Rat> terms_;
};

inline Poly operator*(const Rat& c, const Poly& p) { return p * c; }

}  // namespace logdiv

#endif
