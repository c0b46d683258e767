#pragma once

// Seeded generators for the element classes the CLI and the test suites
// exercise: generic members, unitaries, non-unitary normal elements built
// block by block, self-adjoint variants and deliberately broken
// near-normal elements.

#include <optional>
#include <vector>

#include "cartan/pseudo_unitary.hpp"

namespace cartan {

struct NormalOptions {
  std::vector<Eigen::Index> block_sizes = {1};  // k_i's, sum = k
  std::vector<double> sigmas;    // singular value per block; auto if empty
  std::uint64_t seed = 0;
  double sigma_max = 0.6;
  bool involutions = false;      // Hermitian block unitaries -> self-adjoint
  std::vector<Mat> r_blocks;     // explicit R_i (defaults to random)
  std::optional<Mat> u_perp;     // explicit U on (ran C)-perp
  std::optional<Mat> v_perp;     // explicit V on K'-perp
};

// Builds a non-unitary normal element: A with the prescribed singular
// value blocks, V block-diagonal over the K_i with blocks R_i, the same
// blocks copied into U over the M_i, and independent unitary tails.
GIsometry make_normal(Eigen::Index m, Eigen::Index n,
                      const NormalOptions& opts = {},
                      const Tolerances& tol = {});

// from_factors of a random contraction and two random unitaries.
GIsometry make_random(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                      double target_norm = 0.6, const Tolerances& tol = {});

// Block-diagonal unitary element (A = 0).
GIsometry make_unitary(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                       const Tolerances& tol = {});

// Self-adjoint non-unitary normal element: the normal construction with
// every unitary ingredient an involution.
GIsometry make_selfadjoint(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                           Eigen::Index rank = 1, double sigma_max = 0.6,
                           const Tolerances& tol = {});

enum class NonNormalKind {
  Scramble,    // U replaced by an unrelated unitary
  BlockPhase,  // one V block out of phase with its U copy
};

// A definitively non-normal element that shares its singular value
// structure with make_normal output; the construction is retried on the
// (measure-zero) seeds that land too close to normal.
GIsometry make_nonnormal(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                         Eigen::Index rank = 1, double sigma_max = 0.6,
                         NonNormalKind kind = NonNormalKind::Scramble,
                         const Tolerances& tol = {});

}  // namespace cartan
