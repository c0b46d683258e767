#pragma once

// Dense complex linear algebra kernel: adjoints, operator norms, Hermitian
// eigendecomposition, positive square roots, eigenvalue clustering and the
// seeded random generators used everywhere else in the library.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cartan/error.hpp"

namespace cartan {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Numeric thresholds shared across the library.
//   eq_tol          entrywise / operator-norm equality threshold
//   cluster_rel_tol relative eigenvalue grouping threshold
//   unit_tol        threshold deciding a_i = 1 (the K'-perp split)
struct Tolerances {
  double eq_tol = 1e-9;
  double cluster_rel_tol = 1e-8;
  double unit_tol = 1e-8;
};

inline Mat adjoint(const Mat& m) { return m.adjoint(); }

// Largest singular value, computed as the square root of the largest
// eigenvalue of M*M.
double operator_norm(const Mat& m);

struct HermitianEig {
  RealVec values;  // ascending
  Mat vectors;     // unitary, column j pairs with values[j]
};

// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when the
// input is not Hermitian within tol.eq_tol.
HermitianEig hermitian_eig(const Mat& hm, const Tolerances& tol = {});

// Positive square root of a Hermitian PSD matrix. Eigenvalues in
// [-eq_tol, 0] clamp to zero; anything below -eq_tol is NotPositive.
Mat positive_sqrt(const Mat& p, const Tolerances& tol = {});

// Inverse positive square root; eigenvalues <= eq_tol are Singular.
Mat positive_inv_sqrt(const Mat& p, const Tolerances& tol = {});

// Greedy left-to-right grouping of an ascending value list. A value joins
// the current group when |v - leader| <= rel_tol * max(1, |leader|) where
// the leader is the group's first element.
std::vector<std::vector<Eigen::Index>> cluster_eigenvalues(
    const RealVec& values, double cluster_rel_tol);

struct UnitaryEig {
  Vec values;   // unimodular, sorted by phase in [0, 2*pi)
  Mat vectors;  // orthonormal eigenvector columns
};

// Eigendecomposition of a unitary matrix through its Schur form, which
// keeps the eigenvectors orthonormal inside degenerate eigenspaces.
// Throws DegenerateBlockGauge when the Schur form is not numerically
// diagonal or an eigenvalue leaves the unit circle.
UnitaryEig unitary_eig(const Mat& u, const Tolerances& tol = {});

// Deterministic stream of complex Gaussians on top of mt19937_64. The
// Box-Muller transform is hand-rolled so that the stream does not depend
// on the standard library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();     // (0, 1)
  Complex cgaussian();  // standard complex Gaussian via Box-Muller
  Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 gen_;
};

// QR orthonormalization of an i.i.d. complex Gaussian matrix with the
// diagonal phase fixed nonnegative real, so the result is determined by
// the seed alone.
Mat random_unitary(std::uint64_t seed, Eigen::Index n);
Mat random_unitary(Rng& rng, Eigen::Index n);

// Gaussian matrix rescaled to the requested operator norm in (0, 1).
Mat random_contraction(std::uint64_t seed, Eigen::Index m, Eigen::Index n,
                       double target_norm);
Mat random_contraction(Rng& rng, Eigen::Index m, Eigen::Index n,
                       double target_norm);

inline Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }

bool all_finite(const Mat& m);

}  // namespace cartan
