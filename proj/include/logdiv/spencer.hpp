#ifndef LOGDIV_SPENCER_HPP
#define LOGDIV_SPENCER_HPP

#include <string>
#include <vector>

#include "logdiv/ilc.hpp"
#include "logdiv/qmatrix.hpp"
#include "logdiv/weyl.hpp"

namespace logdiv {

// Which Lie algebra of operators generates the complex.
enum class SpencerPair {
  ThetaFs,  // zeta_i = delta_i - alpha_i s inside F^1 D[s]
  DerLogS   // delta_i themselves, over Q[s]
};

enum class TruncationMode {
  WeightGraded,   // requires quasi-homogeneous f; conclusions exact per
                  // weight component
  WeightFiltered  // weights all 1, nominal-weight caps; evidence only
};

struct SpencerSpec {
  DivisorInput d;
  SaitoBasis basis;  // weight-homogeneous rows in graded mode
  ILCData e;         // checked connection
  std::vector<int> e_weights;  // weight of each E basis vector
  SpencerPair pair = SpencerPair::ThetaFs;
  TruncationMode mode = TruncationMode::WeightGraded;
  int W = 4;  // graded: |weight| <= W components; filtered: top nominal cap
  int N = 4;  // total-order bound at homological degree 0
};

// x^a d^b s^c (tensor) zeta_{I} (tensor) e_u.
struct SpencerBasisElement {
  Exp a, b;
  int c = 0;
  std::vector<std::size_t> I;  // strictly increasing
  std::size_t u = 0;
};

// One finite-dimensional truncated piece of the whole complex.
struct SpencerComponent {
  int weight = 0;  // exact weight (graded mode); top cap (filtered mode)
  // bases[r] spans the piece of SP^{-r}, r = 0..n.
  std::vector<std::vector<SpencerBasisElement>> bases;
  // eps[r]: matrix of the differential SP^{-r} -> SP^{-r+1}, columns
  // indexed by bases[r], rows by bases[r-1]; eps[0] is unused.
  std::vector<QMatrix> eps;
  // Augmentation rho on bases[0]; rows index the coordinates of the
  // image vectors inside E[f^{-1}, s] f^s.
  QMatrix aug;
};

struct TruncatedComplex {
  SpencerSpec spec;
  std::vector<int> weights;       // x-variable weights used
  std::vector<int> zeta_weights;  // weight of each basis operator
  std::vector<SpencerComponent> components;
  bool graded = false;
};

// Homology dimensions per component and homological degree 0..n (index r
// holds the dimension at degree -r; degree 0 is taken against rho).
struct HomologyTable {
  std::vector<std::pair<int, std::vector<long>>> rows;
  bool exact_negative = false;  // all degrees < 0 vanish
  bool exact_all = false;
};

// Per-component specialization s = -k comparisons.
struct SpecializationReport {
  int k = 0;
  // (component weight, Phi^0(ker rho_s) == ker rho_k)
  std::vector<std::pair<int, bool>> kernel_equality;
  // (component weight, image of the specialized eps^{-1} == ker rho_k)
  std::vector<std::pair<int, bool>> segment_exact;
  bool all_equal = false;
  bool all_segment_exact = false;
};

// Replace the rows by weight-homogeneous log derivations (components of
// the given rows and of the syzygy generators) forming a Saito basis.
// Throws Inconclusive when no homogeneous basis is found.
SaitoBasis homogeneous_saito_basis(const DivisorInput& d,
                                   const SaitoBasis& hint,
                                   const std::vector<int>& wts);

// Builds every truncated component and asserts eps(r-1) eps(r) = 0 and
// rho eps(1) = 0 exactly before returning.
TruncatedComplex build_spencer(const SpencerSpec& spec);

// Exact per-weight-component homology (graded mode only; filtered
// truncations cannot certify and are refused).
HomologyTable check_exactness(const TruncatedComplex& tc);

// Same table without any exactness claim; works in both modes.
HomologyTable homology_evidence(const TruncatedComplex& tc);

// sigma_T(zeta_i) cut out codimension n in Q[x, s, xi]: the graded model
// of the complex is then exact in negative degrees.
bool graded_koszul_check(const DivisorInput& d, const SaitoBasis& basis);

SpecializationReport specialize_and_check(const TruncatedComplex& tc, int k);

// Plain-text export: per component and degree a header (weights,
// dimensions) followed by row-major rational entries.
std::string export_matrices(const TruncatedComplex& tc);

}  // namespace logdiv

#endif
