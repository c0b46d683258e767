#include "cartan/fixed_points.hpp"

#include <algorithm>
#include <cmath>

namespace cartan {

double verify_fixed(const GIsometry& t, const Mat& f, const Tolerances& tol) {
  Contraction point(f, /*strict=*/false, tol);
  return operator_norm(act(t, point, tol).matrix() - f);
}

bool fixed_from_eigenvectors(const GIsometry& t, const Mat& z_basis,
                             const Mat& f, const Tolerances& tol) {
  Eigen::Index n = t.n();
  if (z_basis.rows() != n || z_basis.cols() != n) {
    throw Error(ErrorCode::NotABasis, "need n columns of length n");
  }
  Eigen::JacobiSVD<Mat> svd(z_basis);
  double smax = svd.singularValues().maxCoeff();
  if (svd.singularValues().minCoeff() <= 1e-12 * std::max(1.0, smax)) {
    throw Error(ErrorCode::NotABasis, "columns do not span");
  }

  for (Eigen::Index r = 0; r < n; ++r) {
    Vec v(t.m() + n);
    v.head(t.m()) = f * z_basis.col(r);
    v.tail(n) = z_basis.col(r);
    v /= v.norm();
    Vec image = t.matrix() * v;
    Complex lambda = v.dot(image);  // Rayleigh quotient, v is unit
    if ((image - lambda * v).norm() > 10.0 * tol.eq_tol) {
      return false;
    }
  }
  // Every lifted column is an eigenvector, so F must be fixed.
  double residual = verify_fixed(t, f, tol);
  if (residual > 10.0 * tol.eq_tol) {
    throw Error(ErrorCode::InternalInconsistency,
                "eigenvector columns passed but the fixed-point residual is " +
                    std::to_string(residual));
  }
  return true;
}

namespace {

// Paired direction data for one block: z columns, y = C z / delta columns
// and the R_i eigenvalues, flattened in block-then-index order.
struct PairedDirections {
  Mat z;                          // n x k
  Mat y;                          // m x k, unit columns
  std::vector<Complex> lambdas;   // k
  std::vector<double> a;          // per direction
  std::vector<double> delta;      // per direction
};

PairedDirections paired_directions(const FactoredIsometry& f,
                                   const SpectralDecomposition& s,
                                   const Tolerances& tol) {
  Eigen::Index n = f.epos.rows();
  Eigen::Index m = f.bpos.rows();
  PairedDirections out;
  out.z.resize(n, s.k);
  out.y.resize(m, s.k);
  Eigen::Index col = 0;
  for (const auto& block : s.blocks) {
    Mat r = block.basis_K.adjoint() * f.v * block.basis_K;
    UnitaryEig reig = unitary_eig(r, tol);
    for (Eigen::Index j = 0; j < block.k_i; ++j) {
      out.z.col(col) = block.basis_K * reig.vectors.col(j);
      out.y.col(col) = f.cpos * out.z.col(col) / block.delta;
      out.lambdas.push_back(reig.values[j]);
      out.a.push_back(block.a);
      out.delta.push_back(block.delta);
      ++col;
    }
  }
  return out;
}

}  // namespace

std::vector<GenericFixedPoint> enumerate_generic(const GIsometry& t,
                                                 const Tolerances& tol) {
  FactoredIsometry f = factorize(t, tol);
  SpectralDecomposition s = decompose(f, tol);
  Eigen::Index k = s.k;
  if (k > 30) {
    throw Error(ErrorCode::KTooLarge,
                "2^" + std::to_string(k) + " points will not fit in memory");
  }
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();

  PairedDirections dirs = paired_directions(f, s, tol);

  // Complement columns: an orthonormal eigenbasis of V on K'-perp.
  Mat z_basis(n, n);
  z_basis.leftCols(k) = dirs.z;
  if (n > k) {
    UnitaryEig veig =
        unitary_eig(s.basis_Kperp.adjoint() * f.v * s.basis_Kperp, tol);
    z_basis.rightCols(n - k) = s.basis_Kperp * veig.vectors;
  }

  std::vector<GenericFixedPoint> points;
  const std::uint64_t total = std::uint64_t{1} << k;
  points.reserve(total);
  for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
    GenericFixedPoint point;
    point.theta.resize(k);
    point.eigenvalues.resize(k);
    point.z_basis = z_basis;
    Mat fmat = Mat::Zero(m, n);
    for (Eigen::Index d = 0; d < k; ++d) {
      // Binary lexicographic order: bit 0 of the pattern is the last
      // direction, so the all-plus point comes first.
      bool flip = (pattern >> (k - 1 - d)) & 1u;
      int eps = flip ? -1 : +1;
      point.theta[d] = eps;
      fmat += static_cast<double>(eps) * dirs.y.col(d) *
              dirs.z.col(d).adjoint();
      point.eigenvalues[d] =
          dirs.lambdas[static_cast<std::size_t>(d)] *
          (dirs.a[static_cast<std::size_t>(d)] +
           eps * dirs.delta[static_cast<std::size_t>(d)]);
    }
    point.norm = operator_norm(fmat);
    point.residual = verify_fixed(t, fmat, tol);
    point.f = std::move(fmat);
    points.push_back(std::move(point));
  }
  return points;
}

const char* to_string(DetectionConclusion c) {
  switch (c) {
    case DetectionConclusion::NonUnitaryNormal: return "NonUnitaryNormal";
    case DetectionConclusion::NotNormal: return "NotNormal";
    case DetectionConclusion::Unitary: return "Unitary";
  }
  return "?";
}

namespace {

// Orthonormal column basis of the span of m, discarding directions with
// singular value below tol.
Mat column_space(const Mat& m, double tol) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

}  // namespace

DetectionReport detect_generic(const GIsometry& t, const Tolerances& tol) {
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();
  DetectionReport report;

  // dim(ran C) straight from the off-diagonal block: the singular values
  // of T12 are the delta_i's, so the unit_tol split on a = sqrt(1 + d^2)
  // translates to delta > sqrt((1 + unit_tol)^2 - 1).
  double delta_threshold =
      std::sqrt((1.0 + tol.unit_tol) * (1.0 + tol.unit_tol) - 1.0);
  Eigen::JacobiSVD<Mat> c_svd(t.t12());
  for (Eigen::Index i = 0; i < c_svd.singularValues().size(); ++i) {
    if (c_svd.singularValues()[i] > delta_threshold) ++report.k;
  }
  if (report.k == 0) {
    report.conclusion = DetectionConclusion::Unitary;
    report.q = 0;
    report.count = 1;
    return report;
  }

  // Raw eigendecomposition; this route never consults the factored form.
  Eigen::ComplexEigenSolver<Mat> solver(t.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::IllConditionedEigenbasis,
                "eigendecomposition failed to converge");
  }
  Vec values = solver.eigenvalues();
  Mat vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    vectors.col(i) /= vectors.col(i).norm();
    double residual =
        (t.matrix() * vectors.col(i) - values[i] * vectors.col(i)).norm();
    if (residual > 100.0 * tol.eq_tol * std::max(1.0, std::abs(values[i]))) {
      throw Error(ErrorCode::IllConditionedEigenbasis,
                  "eigenvector residual " + std::to_string(residual));
    }
  }

  // Merge eigenvalues within 100 * eq_tol into clusters.
  const double merge_tol = 100.0 * tol.eq_tol;
  std::vector<std::vector<Eigen::Index>> clusters;
  std::vector<Complex> cluster_value;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (std::abs(values[i] - cluster_value[c]) <= merge_tol) {
        clusters[c].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({i});
      cluster_value.push_back(values[i]);
    }
  }

  const double dir_tol = 1e-6;  // separates pairing signal from noise
  std::vector<Mat> cluster_basis;
  for (const auto& cluster : clusters) {
    Mat cols(m + n, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t j = 0; j < cluster.size(); ++j) {
      cols.col(static_cast<Eigen::Index>(j)) = vectors.col(cluster[j]);
    }
    cluster_basis.push_back(column_space(cols, dir_tol));
  }

  // Null directions: eigenvectors of the form (0, z).
  Mat z_null(n, 0);
  for (const auto& basis : cluster_basis) {
    Mat y_part = basis.topRows(m);
    Eigen::JacobiSVD<Mat> svd(y_part, Eigen::ComputeFullV);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      double sv = j < svd.singularValues().size()
                      ? svd.singularValues()[j]
                      : 0.0;
      if (sv <= dir_tol) {
        Vec alpha = svd.matrixV().col(j);
        Vec z = basis.bottomRows(n) * alpha;
        if (z.norm() > dir_tol) {
          z_null.conservativeResize(n, z_null.cols() + 1);
          z_null.col(z_null.cols() - 1) = z / z.norm();
        }
      }
    }
  }

  // Paired directions: clusters (s, t), mu_s != +-mu_t, sharing z with
  // a sign-flipped y component.
  std::vector<Mat> pair_spaces;
  for (std::size_t s = 0; s < clusters.size(); ++s) {
    for (std::size_t u = s + 1; u < clusters.size(); ++u) {
      if (std::abs(cluster_value[s] - cluster_value[u]) <= merge_tol) continue;
      if (std::abs(cluster_value[s] + cluster_value[u]) <= merge_tol) continue;
      const Mat& bs = cluster_basis[s];
      const Mat& bu = cluster_basis[u];
      if (bs.cols() == 0 || bu.cols() == 0) continue;
      Mat stacked(m + n, bs.cols() + bu.cols());
      stacked.topLeftCorner(m, bs.cols()) = bs.topRows(m);
      stacked.topRightCorner(m, bu.cols()) = bu.topRows(m);
      stacked.bottomLeftCorner(n, bs.cols()) = bs.bottomRows(n);
      stacked.bottomRightCorner(n, bu.cols()) = -bu.bottomRows(n);
      Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
      Mat z_found(n, 0);
      for (Eigen::Index j = 0; j < stacked.cols(); ++j) {
        double sv = j < svd.singularValues().size()
                        ? svd.singularValues()[j]
                        : 0.0;
        if (sv > dir_tol) continue;
        Vec coeff = svd.matrixV().col(j);
        Vec alpha = coeff.head(bs.cols());
        Vec y = bs.topRows(m) * alpha;
        Vec z = bs.bottomRows(n) * alpha;
        if (y.norm() <= dir_tol || z.norm() <= dir_tol) continue;
        z_found.conservativeResize(n, z_found.cols() + 1);
        z_found.col(z_found.cols() - 1) = z / z.norm();
      }
      Mat space = column_space(z_found, dir_tol);
      if (space.cols() > 0) {
        // Label the pair by modulus: the (a + delta) family lies outside
        // the unit circle, its partner inside.
        Complex outer = cluster_value[s];
        Complex inner = cluster_value[u];
        if (std::abs(outer) < std::abs(inner)) std::swap(outer, inner);
        report.details.push_back({outer, inner, space.cols()});
        pair_spaces.push_back(std::move(space));
      }
    }
  }

  // The paired z-spaces must be mutually orthogonal and, together with
  // the null directions, complete to a basis of C^n.
  bool orthogonal = true;
  Eigen::Index q = 0;
  Mat z_all(n, 0);
  for (std::size_t i = 0; i < pair_spaces.size(); ++i) {
    q += pair_spaces[i].cols();
    for (std::size_t j = i + 1; j < pair_spaces.size(); ++j) {
      if (operator_norm(pair_spaces[i].adjoint() * pair_spaces[j]) > dir_tol) {
        orthogonal = false;
      }
    }
    Mat widened(n, z_all.cols() + pair_spaces[i].cols());
    widened.leftCols(z_all.cols()) = z_all;
    widened.rightCols(pair_spaces[i].cols()) = pair_spaces[i];
    z_all = std::move(widened);
  }
  report.q = q;

  Mat span(n, z_all.cols() + z_null.cols());
  span.leftCols(z_all.cols()) = z_all;
  span.rightCols(z_null.cols()) = z_null;
  bool completable = orthogonal && column_space(span, dir_tol).cols() == n &&
                     column_space(z_all, dir_tol).cols() == q;

  if (q >= 63) {
    throw Error(ErrorCode::KTooLarge, "paired direction count overflows");
  }
  // Without a completable basis the paired directions do not assemble
  // into generic families at all.
  report.count = completable ? std::uint64_t{1} << q : 0;
  report.conclusion = (completable && q == report.k)
                          ? DetectionConclusion::NonUnitaryNormal
                          : DetectionConclusion::NotNormal;
  return report;
}

std::vector<ExtraFixedPoint> common_eigen_fixed_points(const GIsometry& t,
                                                       const Tolerances& tol) {
  FactoredIsometry f = factorize(t, tol);
  SpectralDecomposition s = decompose(f, tol);
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();
  std::vector<ExtraFixedPoint> out;
  if (m - s.k == 0 || n - s.k == 0) return out;

  Mat qperp = ran_c_perp_basis(s, m);
  UnitaryEig ueig = unitary_eig(qperp.adjoint() * f.u * qperp, tol);
  UnitaryEig veig =
      unitary_eig(s.basis_Kperp.adjoint() * f.v * s.basis_Kperp, tol);

  // The K' part is the all-plus generic point.
  PairedDirections dirs = paired_directions(f, s, tol);
  Mat base = Mat::Zero(m, n);
  for (Eigen::Index d = 0; d < s.k; ++d) {
    base += dirs.y.col(d) * dirs.z.col(d).adjoint();
  }

  // Group the tail eigenvalues, then match groups across U and V.
  auto groups = [&](const UnitaryEig& eig) {
    std::vector<std::pair<Complex, std::vector<Eigen::Index>>> out_groups;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      if (!out_groups.empty() &&
          std::abs(eig.values[i] - out_groups.back().first) <= tol.eq_tol) {
        out_groups.back().second.push_back(i);
      } else {
        out_groups.push_back({eig.values[i], {i}});
      }
    }
    // Phase sort wraps around: the first and last group may coincide.
    if (out_groups.size() > 1 &&
        std::abs(out_groups.front().first - out_groups.back().first) <=
            tol.eq_tol) {
      auto& first = out_groups.front();
      auto& last = out_groups.back();
      first.second.insert(first.second.end(), last.second.begin(),
                          last.second.end());
      out_groups.pop_back();
    }
    return out_groups;
  };

  auto u_groups = groups(ueig);
  auto v_groups = groups(veig);
  for (const auto& vg : v_groups) {
    for (const auto& ug : u_groups) {
      if (std::abs(vg.first - ug.first) > tol.eq_tol) continue;
      ExtraFixedPoint extra;
      extra.mu = vg.first;
      Mat fmat = base;
      std::size_t matched =
          std::min(vg.second.size(), ug.second.size());
      for (std::size_t idx = 0; idx < matched; ++idx) {
        Vec h = qperp * ueig.vectors.col(ug.second[idx]);
        Vec z = s.basis_Kperp * veig.vectors.col(vg.second[idx]);
        fmat += h * z.adjoint();
      }
      extra.residual = verify_fixed(t, fmat, tol);
      extra.f = std::move(fmat);
      out.push_back(std::move(extra));
      break;
    }
  }
  return out;
}

}  // namespace cartan
