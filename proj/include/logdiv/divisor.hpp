#ifndef LOGDIV_DIVISOR_HPP
#define LOGDIV_DIVISOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "logdiv/groebner.hpp"
#include "logdiv/poly.hpp"

namespace logdiv {

// A reduced hypersurface equation {f = 0} through the origin.
struct DivisorInput {
  RingPtr ring;  // the x-variables
  Poly f;

  // Validates: f nonzero and nonconstant, f(0) = 0, f squarefree.  The
  // squarefreeness error names the repeated factor.
  static DivisorInput make(Poly f);
};

// A vector field delta = sum a_i d/dx_i with delta(f) = alpha * f.
struct LogDerivation {
  std::vector<Poly> a;
  Poly alpha;
};

// n derivations whose coefficient matrix has determinant = unit * f.
struct SaitoBasis {
  std::vector<LogDerivation> rows;
  Rat unit;
};

struct ClassificationReport {
  bool free = false;
  bool euler_homogeneous = false;
  std::optional<std::vector<int>> quasi_homogeneous;  // weights, or none
  // Meaningful only when free:
  std::optional<bool> koszul_free;
  std::optional<bool> linear_jacobian_type;
  // Direct computation is out of scope; set to true (implied) exactly when
  // linear_jacobian_type holds.
  std::optional<bool> differential_linear_type;
  // Per-flag provenance ("computed", "implied: ...", "unknown", ...).
  std::vector<std::pair<std::string, std::string>> provenance;
  // Set for non-quasi-homogeneous inputs: the polynomial-ring tests are
  // global, not germ-local, in that case.
  bool global_test_caveat = false;
};

// (f, df/dx_1, ..., df/dx_n), in this order.
std::vector<Poly> jacobian_ideal(const DivisorInput& d);

// Generators of Der(log f) from the syzygies of the jacobian tuple; every
// returned derivation satisfies sum a_i df/dx_i = alpha * f exactly.
std::vector<LogDerivation> log_derivations(const DivisorInput& d);

// Searches size-n subsets of `ders`, then seeded random small-integer row
// combinations (bounded attempts), for a determinant certificate.  Absence
// means "not recognized as free", not a proof of non-freeness.
std::optional<SaitoBasis> saito_basis(const DivisorInput& d,
                                      const std::vector<LogDerivation>& ders,
                                      int max_attempts = 200);

// f in (df/dx_1, ..., df/dx_n)?
bool is_euler_homogeneous(const DivisorInput& d);

// Strictly positive weights making f weighted-homogeneous, normalized to
// coprime positive integers; none when no such weights exist.
std::optional<std::vector<int>> is_quasi_homogeneous(const DivisorInput& d);

// Ring Q[x_1..x_n, s, xi_1..xi_n] used for symbols of operators in s and
// the d/dx_i.  Fails if the input ring already uses one of those names.
RingPtr symbol_ring(const DivisorInput& d);

// Degree-one symbols sum_j a_ij xi_j - alpha_i s in symbol_ring(d).
std::vector<Poly> theta_generators(const DivisorInput& d,
                                   const SaitoBasis& basis);

// Kernel of Q[x][s, xi] -> Q[x][t], s -> f t, xi_i -> (df/dx_i) t, as an
// elimination ideal; generators live in symbol_ring(d) and are
// (s, xi)-homogeneous.
std::vector<Poly> rees_kernel(const DivisorInput& d);

bool is_linear_jacobian_type(const DivisorInput& d, const SaitoBasis& basis);

// The n order-filtration symbols sum_j a_ij xi_j cut out a set of Krull
// codimension n in Q[x, xi].
bool is_koszul_free(const DivisorInput& d, const SaitoBasis& basis);

ClassificationReport classify(const DivisorInput& d);

}  // namespace logdiv

#endif
