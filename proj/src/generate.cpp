#include "cartan/generate.hpp"

#include <cmath>
#include <numeric>

namespace cartan {

namespace {

Mat random_involution(Rng& rng, Eigen::Index n) {
  if (n == 0) return Mat(0, 0);
  Mat q = random_unitary(rng, n);
  Vec signs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    signs[i] = rng.uniform() < 0.5 ? Complex(1, 0) : Complex(-1, 0);
  }
  return q * signs.asDiagonal() * q.adjoint();
}

Mat block_diagonal(const std::vector<Mat>& blocks, Eigen::Index size) {
  Mat out = Mat::Zero(size, size);
  Eigen::Index at = 0;
  for (const Mat& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

struct NormalParts {
  Mat a;
  Mat u;
  Mat v;
  Mat w_m;  // left singular basis of A
  Mat w_n;  // right singular basis of A
};

NormalParts build_normal_parts(Eigen::Index m, Eigen::Index n,
                               const NormalOptions& opts) {
  if (m == n) {
    throw Error(ErrorCode::SquareDims, "H and K must have different dimensions");
  }
  Eigen::Index k = std::accumulate(opts.block_sizes.begin(),
                                   opts.block_sizes.end(), Eigen::Index{0});
  if (k < 1 || k > std::min(m, n)) {
    throw Error(ErrorCode::DimensionMismatch,
                "block sizes must sum to a rank in [1, min(m, n)]");
  }
  std::size_t blocks = opts.block_sizes.size();
  if (!opts.sigmas.empty() && opts.sigmas.size() != blocks) {
    throw Error(ErrorCode::DimensionMismatch, "one sigma per block expected");
  }
  if (!opts.r_blocks.empty() && opts.r_blocks.size() != blocks) {
    throw Error(ErrorCode::DimensionMismatch, "one R per block expected");
  }

  // Distinct singular values per block, evenly spread below sigma_max, so
  // the spectral blocks never get close enough to cluster together.
  std::vector<double> sigmas = opts.sigmas;
  if (sigmas.empty()) {
    for (std::size_t i = 0; i < blocks; ++i) {
      double step = blocks > 1
                        ? 0.6 * static_cast<double>(i) /
                              static_cast<double>(blocks - 1)
                        : 0.0;
      sigmas.push_back(opts.sigma_max * (1.0 - step));
    }
  }
  for (double s : sigmas) {
    if (!(s > 0.0 && s < 1.0)) {
      throw Error(ErrorCode::NotStrictContraction,
                  "singular values must lie in (0, 1)");
    }
  }

  Rng rng(opts.seed);
  Mat w_m = random_unitary(rng, m);
  Mat w_n = random_unitary(rng, n);

  Mat sigma = Mat::Zero(m, n);
  {
    Eigen::Index at = 0;
    for (std::size_t i = 0; i < blocks; ++i) {
      for (Eigen::Index j = 0; j < opts.block_sizes[i]; ++j) {
        sigma(at, at) = sigmas[i];
        ++at;
      }
    }
  }

  std::vector<Mat> v_blocks;
  for (std::size_t i = 0; i < blocks; ++i) {
    Mat r;
    if (!opts.r_blocks.empty()) {
      r = opts.r_blocks[i];
      if (r.rows() != opts.block_sizes[i] || r.cols() != opts.block_sizes[i]) {
        throw Error(ErrorCode::DimensionMismatch, "R block has wrong shape");
      }
    } else if (opts.involutions) {
      r = random_involution(rng, opts.block_sizes[i]);
    } else {
      r = random_unitary(rng, opts.block_sizes[i]);
    }
    v_blocks.push_back(std::move(r));
  }
  std::vector<Mat> u_blocks = v_blocks;  // U copies the V blocks over the M_i, so UC = CV holds by construction

  Mat u_tail = opts.u_perp ? *opts.u_perp
               : opts.involutions ? random_involution(rng, m - k)
                                  : random_unitary(rng, m - k);
  Mat v_tail = opts.v_perp ? *opts.v_perp
               : opts.involutions ? random_involution(rng, n - k)
                                  : random_unitary(rng, n - k);
  if (u_tail.rows() != m - k || v_tail.rows() != n - k) {
    throw Error(ErrorCode::DimensionMismatch, "tail unitary has wrong shape");
  }
  u_blocks.push_back(std::move(u_tail));
  v_blocks.push_back(std::move(v_tail));

  NormalParts parts;
  parts.a = w_m * sigma * w_n.adjoint();
  parts.u = w_m * block_diagonal(u_blocks, m) * w_m.adjoint();
  parts.v = w_n * block_diagonal(v_blocks, n) * w_n.adjoint();
  parts.w_m = std::move(w_m);
  parts.w_n = std::move(w_n);
  return parts;
}

}  // namespace

GIsometry make_normal(Eigen::Index m, Eigen::Index n,
                      const NormalOptions& opts, const Tolerances& tol) {
  NormalParts parts = build_normal_parts(m, n, opts);
  return from_factors(Contraction(parts.a, true, tol), parts.u, parts.v, tol);
}

GIsometry make_random(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                      double target_norm, const Tolerances& tol) {
  Rng rng(seed);
  Mat a = random_contraction(rng, m, n, target_norm);
  Mat u = random_unitary(rng, m);
  Mat v = random_unitary(rng, n);
  return from_factors(Contraction(std::move(a), true, tol), u, v, tol);
}

GIsometry make_unitary(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                       const Tolerances& tol) {
  Rng rng(seed);
  Mat u = random_unitary(rng, m);
  Mat v = random_unitary(rng, n);
  return from_factors(Contraction::zero(m, n), u, v, tol);
}

GIsometry make_selfadjoint(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                           Eigen::Index rank, double sigma_max,
                           const Tolerances& tol) {
  NormalOptions opts;
  opts.block_sizes.assign(static_cast<std::size_t>(rank), 1);
  opts.seed = seed;
  opts.sigma_max = sigma_max;
  opts.involutions = true;
  return make_normal(m, n, opts, tol);
}

GIsometry make_nonnormal(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                         Eigen::Index rank, double sigma_max,
                         NonNormalKind kind, const Tolerances& tol) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    NormalOptions opts;
    opts.block_sizes.assign(static_cast<std::size_t>(rank), 1);
    opts.seed = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt);
    opts.sigma_max = sigma_max;
    NormalParts parts = build_normal_parts(m, n, opts);

    Rng rng(~opts.seed);
    if (kind == NonNormalKind::Scramble) {
      parts.u = parts.u * random_unitary(rng, m);
    } else {
      // Keep every subspace invariant but put the first V block out of
      // phase with its U copy, violating the coordinate-match condition
      // while U(M_i) = M_i and V(K_i) = K_i still hold.
      double phi = 3.14159265358979323846 * (0.25 + 0.5 * rng.uniform());
      Vec scale = Vec::Ones(n);
      scale[0] = std::polar(1.0, phi);
      parts.v = parts.v * parts.w_n * scale.asDiagonal() * parts.w_n.adjoint();
    }

    GIsometry t = from_factors(Contraction(parts.a, true, tol), parts.u,
                               parts.v, tol);
    const Mat& mat = t.matrix();
    double commutator =
        operator_norm(mat * mat.adjoint() - mat.adjoint() * mat);
    if (commutator > 1e-3) return t;
  }
  throw Error(ErrorCode::InternalInconsistency,
              "could not build a definitively non-normal element");
}

}  // namespace cartan
