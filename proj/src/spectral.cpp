#include "cartan/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace cartan {

SpectralDecomposition decompose(const FactoredIsometry& f,
                                const Tolerances& tol) {
  HermitianEig eig = hermitian_eig(f.epos, tol);
  auto groups = cluster_eigenvalues(eig.values, tol.cluster_rel_tol);

  SpectralDecomposition out;
  Eigen::Index n = f.epos.rows();
  Eigen::Index m = f.bpos.rows();
  std::vector<Eigen::Index> kperp_columns;

  for (const auto& group : groups) {
    double a = 0.0;
    for (Eigen::Index idx : group) a += eig.values[idx];
    a /= static_cast<double>(group.size());

    if (a <= 1.0 + tol.unit_tol) {
      kperp_columns.insert(kperp_columns.end(), group.begin(), group.end());
      continue;
    }
    SpectralBlock block;
    block.a = a;
    block.delta = std::sqrt(a * a - 1.0);
    block.k_i = static_cast<Eigen::Index>(group.size());
    block.basis_K.resize(n, block.k_i);
    for (Eigen::Index j = 0; j < block.k_i; ++j) {
      block.basis_K.col(j) = eig.vectors.col(group[j]);
    }
    block.basis_M = f.cpos * block.basis_K;
    out.blocks.push_back(std::move(block));
  }

  // Eigenvalues arrive ascending, so reversing sorts blocks by a descending.
  std::reverse(out.blocks.begin(), out.blocks.end());

  out.basis_Kperp.resize(n, static_cast<Eigen::Index>(kperp_columns.size()));
  for (std::size_t j = 0; j < kperp_columns.size(); ++j) {
    out.basis_Kperp.col(static_cast<Eigen::Index>(j)) =
        eig.vectors.col(kperp_columns[j]);
  }
  for (const auto& block : out.blocks) out.k += block.k_i;
  out.ran_c_perp_dim = m - out.k;
  return out;
}

double DecompositionReport::max_residual() const {
  return std::max({e_on_K, c_on_K, cstar_on_M, b_on_M, e_on_Kperp, c_on_Kperp,
                   b_on_ranCperp, hyperbolic_identity});
}

DecompositionReport verify_decomposition(const FactoredIsometry& f,
                                         const SpectralDecomposition& s) {
  DecompositionReport report;
  Eigen::Index m = f.bpos.rows();
  for (const auto& block : s.blocks) {
    double d2 = block.delta * block.delta;
    report.e_on_K = std::max(
        report.e_on_K,
        operator_norm(f.epos * block.basis_K - block.a * block.basis_K));
    report.c_on_K = std::max(
        report.c_on_K, operator_norm(f.cpos * block.basis_K - block.basis_M));
    report.cstar_on_M = std::max(
        report.cstar_on_M,
        operator_norm(f.cpos.adjoint() * block.basis_M - d2 * block.basis_K));
    report.b_on_M = std::max(
        report.b_on_M,
        operator_norm(f.bpos * block.basis_M - block.a * block.basis_M));
    report.hyperbolic_identity =
        std::max(report.hyperbolic_identity,
                 std::abs(block.a * block.a - 1.0 - d2));
  }
  if (s.basis_Kperp.cols() > 0) {
    report.e_on_Kperp =
        operator_norm(f.epos * s.basis_Kperp - s.basis_Kperp);
    report.c_on_Kperp = operator_norm(f.cpos * s.basis_Kperp);
  }
  Mat complement = identity(m) - ran_c_projector(s, m);
  report.b_on_ranCperp = operator_norm((f.bpos - identity(m)) * complement);
  return report;
}

Eigen::Index rank_of_C(const FactoredIsometry& f, const Tolerances& tol) {
  return decompose(f, tol).k;
}

Mat ran_c_projector(const SpectralDecomposition& s, Eigen::Index m) {
  Mat p = Mat::Zero(m, m);
  for (const auto& block : s.blocks) {
    double d2 = block.delta * block.delta;
    p += block.basis_M * block.basis_M.adjoint() / d2;
  }
  return p;
}

Mat ran_c_perp_basis(const SpectralDecomposition& s, Eigen::Index m) {
  if (s.k == 0) return identity(m);
  Mat normalized(m, s.k);
  Eigen::Index col = 0;
  for (const auto& block : s.blocks) {
    for (Eigen::Index j = 0; j < block.k_i; ++j) {
      normalized.col(col++) = block.basis_M.col(j) / block.delta;
    }
  }
  Eigen::HouseholderQR<Mat> qr(normalized);
  Mat q = qr.householderQ();
  return q.rightCols(m - s.k);
}

}  // namespace cartan
