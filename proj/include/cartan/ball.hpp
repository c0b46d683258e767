#pragma once

// The open unit ball of m x n complex matrices: Mobius transformations,
// the Caratheodory distance, the indefinite Hermitian form S on H (+) K
// and the causal classification of vectors.

#include "cartan/linalg.hpp"

namespace cartan {

// A matrix in the open ball (strict) or its closure (non-strict).
class Contraction {
 public:
  // strict: ||A|| < 1 - eq_tol; non-strict: ||A|| <= 1 + eq_tol.
  Contraction(Mat matrix, bool strict, const Tolerances& tol = {});

  static Contraction zero(Eigen::Index m, Eigen::Index n);

  const Mat& matrix() const { return matrix_; }
  bool strict() const { return strict_; }
  Eigen::Index rows() const { return matrix_.rows(); }
  Eigen::Index cols() const { return matrix_.cols(); }

 private:
  Mat matrix_;
  bool strict_;
};

// The Mobius transformation with center B,
//   T_B(A) = (I - BB*)^{-1/2} (A + B) (I + B*A)^{-1} (I - B*B)^{1/2}.
// The defect factors are computed once at construction.
class MobiusMap {
 public:
  explicit MobiusMap(Contraction center, const Tolerances& tol = {});

  const Contraction& center() const { return center_; }
  const Mat& left_defect_inv_sqrt() const { return left_inv_sqrt_; }
  const Mat& right_defect_sqrt() const { return right_sqrt_; }

  MobiusMap inverse(const Tolerances& tol = {}) const;  // T_B^{-1} = T_{-B}

 private:
  Contraction center_;
  Mat left_inv_sqrt_;   // (I - BB*)^{-1/2}
  Mat right_sqrt_;      // (I - B*B)^{1/2}
};

// T_B(A). Throws SingularFactor when I + B*A is numerically singular
// (cannot happen for a strict center and A in the closed ball).
Contraction mobius_apply(const MobiusMap& map, const Contraction& a,
                         const Tolerances& tol = {});

// C_D(A1, A2) = atanh ||T_{-A2}(A1)||, both arguments strict.
double caratheodory_distance(const Contraction& a1, const Contraction& a2,
                             const Tolerances& tol = {});

// || T (I - T*T)^{1/2} - (I - TT*)^{1/2} T || for a contraction T; the
// two defect orderings agree, so this is numerical noise only.
double intertwine_residual(const Mat& t, const Tolerances& tol = {});

// An element (h, k) of H (+) K.
struct SpaceVector {
  Vec h;
  Vec k;
};

// S((h1,k1),(h2,k2)) = <h1,h2> - <k1,k2>, inner products linear in the
// first slot and conjugate-linear in the second.
Complex hermitian_form(const SpaceVector& v, const SpaceVector& w);

enum class CausalClass { SpaceLike, LightLike, TimeLike };

const char* to_string(CausalClass c);

// Sign of S(v, v): above eq_tol space-like, below -eq_tol time-like,
// light-like in between. The zero vector is rejected.
CausalClass classify_vector(const SpaceVector& v, const Tolerances& tol = {});

}  // namespace cartan
