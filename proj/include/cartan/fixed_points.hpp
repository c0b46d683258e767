#pragma once

// Fixed points of isometries through eigenvectors: enumeration of the 2^k
// generic fixed points of a non-unitary normal isometry, an independent
// detector that works from the raw eigendecomposition, and the extra
// fixed points arising from common unitary-tail eigenvalues.

#include <cstdint>
#include <vector>

#include "cartan/classify.hpp"

namespace cartan {

// || psi(T)(F) - F || for F in the closed ball; F is fixed when the
// residual is <= 10 * eq_tol.
double verify_fixed(const GIsometry& t, const Mat& f,
                    const Tolerances& tol = {});

// Checks that every column z_r of the basis lifts to an eigenvector
// (F z_r; z_r) of T; when all do, F must be a fixed point and that
// implication is asserted. NotABasis when the columns do not span.
bool fixed_from_eigenvectors(const GIsometry& t, const Mat& z_basis,
                             const Mat& f, const Tolerances& tol = {});

// One generic fixed point F_theta: F z_{ij} = eps_{ij} C(z_{ij}) / delta_i
// on the paired directions, zero on the complement.
struct GenericFixedPoint {
  Mat f;                             // m x n, operator norm 1
  std::vector<int> theta;            // +-1 per paired direction
  Mat z_basis;                       // n x n: k paired columns, then n - k
  std::vector<Complex> eigenvalues;  // lambda_{ij}(a_i + eps_{ij} delta_i)
  double norm = 0.0;
  double residual = 0.0;             // verify_fixed residual
};

// All 2^k generic fixed points of a non-unitary normal isometry, in
// binary lexicographic sign order (all +1 first). Throws
// DegenerateBlockGauge when a block eigenbasis cannot be made orthonormal
// and KTooLarge when the enumeration would not fit in memory.
std::vector<GenericFixedPoint> enumerate_generic(const GIsometry& t,
                                                 const Tolerances& tol = {});

enum class DetectionConclusion { NonUnitaryNormal, NotNormal, Unitary };

const char* to_string(DetectionConclusion c);

struct PairEvidence {
  Complex mu_plus;            // the paired eigenvalue of larger modulus
  Complex mu_minus;           // its partner inside the unit circle
  Eigen::Index directions{};  // dimension of the paired z-space
};

struct DetectionReport {
  std::uint64_t count = 0;  // 2^q when a complete family assembles, else 0
  Eigen::Index k = 0;       // dim(ran C), from the off-diagonal block
  Eigen::Index q = 0;       // paired directions found
  DetectionConclusion conclusion = DetectionConclusion::NotNormal;
  std::vector<PairEvidence> details;
};

// Counts generic fixed-point families directly from the numerical
// eigendecomposition of T: eigenvalue pairs (mu, mu') with mu != +-mu'
// sharing K-directions z with (+y, z) and (-y, z) eigenvectors. The
// element is non-unitary normal exactly when q = k >= 1 and the paired
// directions complete to an orthonormal basis.
DetectionReport detect_generic(const GIsometry& t, const Tolerances& tol = {});

struct ExtraFixedPoint {
  Complex mu;  // the common tail eigenvalue
  Mat f;
  double residual = 0.0;
};

// Fixed points from common eigenvalues of U on (ran C)-perp and V on
// K'-perp: the all-plus generic point on K', eigenvector-to-eigenvector
// on the matched tails, zero elsewhere. Empty when the tail spectra are
// disjoint.
std::vector<ExtraFixedPoint> common_eigen_fixed_points(
    const GIsometry& t, const Tolerances& tol = {});

}  // namespace cartan
