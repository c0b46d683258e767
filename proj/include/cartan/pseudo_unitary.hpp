#pragma once

// The group G of invertible operators on H (+) K preserving the indefinite
// form S: construction from (A, U, V), membership verification, inversion,
// factorization back into (A, U, V), and the action on the matrix ball.

#include <array>

#include "cartan/ball.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

// Residual norms of the six defining relations
//   B*B - D*D = I,  E*E - C*C = I,  C*B - E*D = 0,
//   BB* - CC* = I,  EE* - DD* = I,  DB* - EC* = 0
// for the block decomposition B = T11, C = T12, D = T21, E = T22.
struct RelationsReport {
  std::array<double, 6> residuals{};
  double max_residual() const;
  bool member(double eq_tol) const { return max_residual() <= eq_tol; }
};

RelationsReport verify_relations(const Mat& t, Eigen::Index m, Eigen::Index n);

// A verified element of G with dim H = m, dim K = n, m != n.
class GIsometry {
 public:
  // Verifies the six relations (NotAMember on failure) and that the
  // diagonal blocks are invertible.
  GIsometry(Mat matrix, Eigen::Index m, Eigen::Index n,
            const Tolerances& tol = {});

  Eigen::Index m() const { return m_; }
  Eigen::Index n() const { return n_; }
  const Mat& matrix() const { return matrix_; }
  const RelationsReport& relations() const { return relations_; }

  Mat t11() const { return matrix_.topLeftCorner(m_, m_); }      // B
  Mat t12() const { return matrix_.topRightCorner(m_, n_); }     // C
  Mat t21() const { return matrix_.bottomLeftCorner(n_, m_); }   // D
  Mat t22() const { return matrix_.bottomRightCorner(n_, n_); }  // E

 private:
  Mat matrix_;
  Eigen::Index m_;
  Eigen::Index n_;
  RelationsReport relations_;
};

// The (A, U, V) factorization of an element: positive parts
//   Bpos = (I - AA*)^{-1/2},  Cpos = Bpos A,  Epos = (I - A*A)^{-1/2}
// and the unitary pair (U, V). A global phase is absorbed jointly into
// (U, V); it is never separated out.
struct FactoredIsometry {
  Contraction a;
  Mat u;
  Mat v;
  Mat bpos;
  Mat cpos;
  Mat epos;
};

// Builds the element with blocks (Bpos U, Cpos V; Cpos* U, Epos V).
// Requires m != n, A strict and U, V unitary within eq_tol.
GIsometry from_factors(const Contraction& a, const Mat& u, const Mat& v,
                       const Tolerances& tol = {});

// Block-adjoint inverse (B*, -D*; -C*, E*).
GIsometry inverse(const GIsometry& t, const Tolerances& tol = {});

// Recovers (A, U, V) with A = T12 T22^{-1}; the roundtrip through
// from_factors must reproduce T within 100 * eq_tol.
FactoredIsometry factorize(const GIsometry& t, const Tolerances& tol = {});

// The action psi(T)(A) = (T11 A + T12)(T21 A + T22)^{-1}. Valid on the
// closed ball: the denominator is invertible there for every member.
Contraction act(const GIsometry& t, const Contraction& a,
                const Tolerances& tol = {});

// Group law; the product is re-verified.
GIsometry compose(const GIsometry& t1, const GIsometry& t2,
                  const Tolerances& tol = {});

// True iff T = cI with |c| = 1 within eq_tol (the center of G).
bool is_center(const GIsometry& t, const Tolerances& tol = {});

// S(Tv, Tw) with T acting on H (+) K; used by the invariance tests.
SpaceVector apply_to_vector(const GIsometry& t, const SpaceVector& v);

}  // namespace cartan
