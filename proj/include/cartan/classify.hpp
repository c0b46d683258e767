#pragma once

// Classification of isometries: unitary / self-adjoint / normal /
// non-unitary normal. Each structural criterion is paired with a
// brute-force operator check; a decisive disagreement between the two is
// an error, never a silent preference.

#include <map>
#include <string>
#include <vector>

#include "cartan/spectral.hpp"

namespace cartan {

struct Classification {
  bool is_member = false;
  bool is_unitary = false;
  bool is_normal = false;
  bool is_self_adjoint = false;
  bool is_non_unitary_normal = false;
  std::map<std::string, double> residuals;
};

// True iff the off-diagonal block vanishes: ||T12|| <= eq_tol.
// Cross-checked against ||T*T - I||; a decisive split throws
// InternalInconsistency.
bool is_unitary_isometry(const GIsometry& t, const Tolerances& tol = {});

struct NormalityCheck {
  bool normal = false;
  double brute_residual = 0.0;    // ||TT* - T*T||
  double commutator_ub = 0.0;     // ||U Bpos - Bpos U||
  double commutator_uc = 0.0;     // ||U Cpos - Cpos V||
  double commutator_ve = 0.0;     // ||V Epos - Epos V||
};

// Conjunction of the brute-force commutator test (eq_tol) and the
// factored commutation criteria (10 * eq_tol).
NormalityCheck is_normal(const GIsometry& t, const Tolerances& tol = {});
NormalityCheck is_normal(const GIsometry& t, const FactoredIsometry& f,
                         const Tolerances& tol = {});

struct StructureCheck {
  bool non_unitary_normal = false;
  double subspace_u = 0.0;   // max_i ||(I - P_Mi) U P_Mi||
  double subspace_v = 0.0;   // max_i ||(I - P_Ki) V P_Ki||
  double block_match = 0.0;  // max_i ||[U|M_i] - [V|K_i]||
};

// The structural criterion: U and V preserve each M_i / K_i and their
// coordinate matrices agree block by block. Requires k >= 1; with no
// hyperbolic blocks the answer is false and no cross-check applies.
StructureCheck is_non_unitary_normal(const GIsometry& t, const Tolerances& tol = {});
StructureCheck is_non_unitary_normal(const GIsometry& t, const FactoredIsometry& f,
                                 const SpectralDecomposition& s,
                                 const Tolerances& tol = {});

// Brute force ||T - T*|| <= eq_tol, cross-checked against the
// self-adjointness of the factored U and V. Callers guarantee normality.
bool is_self_adjoint(const GIsometry& t, const Tolerances& tol = {});
bool is_self_adjoint(const GIsometry& t, const FactoredIsometry& f,
                     const Tolerances& tol = {});

// Full report over a verified element.
Classification classify(const GIsometry& t, const Tolerances& tol = {});

// One 2k_i x 2k_i diagonal block of a non-unitary normal isometry in the
// basis beta_i' U beta_i, together with the common coordinate unitary R_i.
struct IsometryBlock {
  double a = 0.0;
  double delta = 0.0;
  Eigen::Index k_i = 0;
  Mat basis_K;
  Mat basis_M;
  Mat ti;                   // coordinates of T on M_i (+) K_i
  Mat r;                    // [V restricted to K_i] in basis_K coordinates
  double pattern_residual = 0.0;  // || ti - (a R, R; delta^2 R, a R) ||
};

struct BlockView {
  std::vector<IsometryBlock> blocks;
  Mat t_prime;         // U compressed to (ran C)-perp
  Mat t_double_prime;  // V compressed to K'-perp
  Mat basis_ranC_perp;
  Mat basis_Kperp;
};

// Splits a non-unitary normal isometry into its diagonal blocks plus the
// two unitary tails. StructureResidual when a block deviates from the
// (a R, R; delta^2 R, a R) pattern by more than 100 * eq_tol.
BlockView block_decompose(const GIsometry& t, const Tolerances& tol = {});

struct SBlockEigen {
  double plus = 0.0;              // a + delta
  double minus = 0.0;             // a - delta
  Eigen::Index multiplicity = 0;  // k_i for each eigenvalue
  Mat plus_vectors;               // 2k_i x k_i, the +1/delta pattern
  Mat minus_vectors;              // 2k_i x k_i, the -1/delta pattern
};

// Analytic eigenpairs of the model block (a I, I; delta^2 I, a I),
// validated against a general numerical eigendecomposition of the
// explicit matrix. InconsistentPair unless a^2 = 1 + delta^2.
SBlockEigen s_block_eigen(double a, double delta, Eigen::Index k_i,
                          const Tolerances& tol = {});

struct LabeledEigenvalue {
  Complex value;
  std::string label;  // "block <i> [+]", "block <i> [-]", "T'", "T''"
  int block = -1;     // -1 for the unitary tails
  int index = -1;
  int sign = 0;       // +1, -1, or 0
  Vec eigenvector;    // length m+n
};

// The analytic spectrum lambda_{ij} (a_i +- delta_i) of the blocks plus
// the unitary tail eigenvalues, each with its eigenvector. The multiset
// is validated against the numerical spectrum of the full matrix
// (SpectrumMismatch beyond 10 * eq_tol).
std::vector<LabeledEigenvalue> spectrum_normal(const GIsometry& t,
                                               const Tolerances& tol = {});

// Bottleneck distance between two eigenvalue multisets: greedily pairs
// closest values and returns the largest matched distance. Infinity on a
// size mismatch.
double eigenvalue_multiset_distance(std::vector<Complex> a,
                                    std::vector<Complex> b);

}  // namespace cartan
