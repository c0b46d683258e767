#pragma once

// Canonical spectral data of the positive parts of a factored isometry:
// eigenvalues a_i > 1 of Epos with eigenspaces K_i, the image spaces
// M_i = C(K_i) with the common column norm delta_i, and k = dim(ran C).

#include <vector>

#include "cartan/pseudo_unitary.hpp"

namespace cartan {

// One eigenvalue block of Epos with a > 1.
//   basis_K: k_i orthonormal columns of length n spanning K_i
//   basis_M: k_i orthogonal columns of length m, each of norm delta,
//            the xi-vectors C e_j (stored unnormalized)
struct SpectralBlock {
  double a = 0.0;
  double delta = 0.0;  // sqrt(a^2 - 1)
  Eigen::Index k_i = 0;
  Mat basis_K;
  Mat basis_M;
};

struct SpectralDecomposition {
  std::vector<SpectralBlock> blocks;  // sorted by a descending
  Eigen::Index k = 0;                 // sum k_i = dim(ran C)
  Mat basis_Kperp;                    // n x (n - k), orthonormal
  Eigen::Index ran_c_perp_dim = 0;    // m - k
};

// Eigendecomposition of Epos with eigenvalues clustered; groups with
// a <= 1 + unit_tol form K'-perp, the rest become blocks sorted by a
// descending. A unitary input yields no blocks and k = 0.
SpectralDecomposition decompose(const FactoredIsometry& f,
                                const Tolerances& tol = {});

// Residuals of the defining identities, all expected <= 10 * eq_tol:
// E e = a e, C e = xi, C* xi = delta^2 e, B xi = a xi, E = I and C = 0 on
// K'-perp, B = I on (ran C)-perp, and a^2 = 1 + delta^2 per block.
struct DecompositionReport {
  double e_on_K = 0.0;
  double c_on_K = 0.0;
  double cstar_on_M = 0.0;
  double b_on_M = 0.0;
  double e_on_Kperp = 0.0;
  double c_on_Kperp = 0.0;
  double b_on_ranCperp = 0.0;
  double hyperbolic_identity = 0.0;  // max |a^2 - 1 - delta^2|
  double max_residual() const;
};

DecompositionReport verify_decomposition(const FactoredIsometry& f,
                                         const SpectralDecomposition& s);

// k = dim(ran C); equals the number of singular values of A that map to
// an eigenvalue a > 1 + unit_tol of Epos.
Eigen::Index rank_of_C(const FactoredIsometry& f, const Tolerances& tol = {});

// Orthonormal basis of the orthogonal complement of ran C in H, i.e. of
// the span of all basis_M columns. Needed by the classifiers.
Mat ran_c_perp_basis(const SpectralDecomposition& s, Eigen::Index m);

// Orthogonal projector onto ran C.
Mat ran_c_projector(const SpectralDecomposition& s, Eigen::Index m);

}  // namespace cartan
