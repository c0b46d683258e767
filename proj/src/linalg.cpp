#include "cartan/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cartan {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotStrictContraction: return "NotStrictContraction";
    case ErrorCode::SquareDims: return "SquareDims";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::StructureResidual: return "StructureResidual";
    case ErrorCode::InconsistentPair: return "InconsistentPair";
    case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorCode::DegenerateBlockGauge: return "DegenerateBlockGauge";
    case ErrorCode::IllConditionedEigenbasis: return "IllConditionedEigenbasis";
    case ErrorCode::NotABasis: return "NotABasis";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

bool all_finite(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  // sqrt of the top eigenvalue of M*M; the Gram matrix is Hermitian PSD.
  Mat gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Mat> solver(gram, Eigen::EigenvaluesOnly);
  double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

HermitianEig hermitian_eig(const Mat& hm, const Tolerances& tol) {
  if (hm.rows() != hm.cols()) {
    throw Error(ErrorCode::NotHermitian, "matrix is not square");
  }
  double dev = operator_norm(hm - hm.adjoint());
  if (dev > tol.eq_tol) {
    throw Error(ErrorCode::NotHermitian,
                "||M - M*|| = " + std::to_string(dev));
  }
  Mat sym = (hm + hm.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotHermitian, "eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

Mat rebuild_with(const HermitianEig& eig, const RealVec& mapped) {
  Vec diag = mapped.cast<Complex>();
  return eig.vectors * diag.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

Mat positive_sqrt(const Mat& p, const Tolerances& tol) {
  HermitianEig eig = hermitian_eig(p, tol);
  RealVec roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double v = eig.values[i];
    if (v < -tol.eq_tol) {
      throw Error(ErrorCode::NotPositive,
                  "eigenvalue " + std::to_string(v) + " below -eq_tol");
    }
    roots[i] = std::sqrt(std::max(0.0, v));
  }
  return rebuild_with(eig, roots);
}

Mat positive_inv_sqrt(const Mat& p, const Tolerances& tol) {
  HermitianEig eig = hermitian_eig(p, tol);
  RealVec roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double v = eig.values[i];
    if (v < -tol.eq_tol) {
      throw Error(ErrorCode::NotPositive,
                  "eigenvalue " + std::to_string(v) + " below -eq_tol");
    }
    if (v <= tol.eq_tol) {
      throw Error(ErrorCode::Singular,
                  "eigenvalue " + std::to_string(v) + " too small to invert");
    }
    roots[i] = 1.0 / std::sqrt(v);
  }
  return rebuild_with(eig, roots);
}

std::vector<std::vector<Eigen::Index>> cluster_eigenvalues(
    const RealVec& values, double cluster_rel_tol) {
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!groups.empty()) {
      double leader = values[groups.back().front()];
      if (std::abs(values[i] - leader) <=
          cluster_rel_tol * std::max(1.0, std::abs(leader))) {
        groups.back().push_back(i);
        continue;
      }
    }
    groups.push_back({i});
  }
  return groups;
}

UnitaryEig unitary_eig(const Mat& u, const Tolerances& tol) {
  Eigen::Index n = u.rows();
  if (n != u.cols()) {
    throw Error(ErrorCode::DegenerateBlockGauge, "matrix is not square");
  }
  if (n == 0) return {Vec(0), Mat(0, 0)};

  Eigen::ComplexSchur<Mat> schur(u);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateBlockGauge, "Schur iteration failed");
  }
  Mat t = schur.matrixT();
  double gauge_tol = 100.0 * tol.eq_tol * std::max(1.0, operator_norm(u));
  Mat strict_upper = t.triangularView<Eigen::StrictlyUpper>();
  if (operator_norm(strict_upper) > gauge_tol) {
    throw Error(ErrorCode::DegenerateBlockGauge,
                "Schur form of a unitary matrix is not diagonal");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(std::abs(t(i, i)) - 1.0) > gauge_tol) {
      throw Error(ErrorCode::DegenerateBlockGauge,
                  "eigenvalue is off the unit circle");
    }
  }

  // Sort by phase in [0, 2*pi); stable so degenerate values keep the
  // deterministic Schur order.
  const double two_pi = 2.0 * 3.14159265358979323846;
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  auto phase = [&](Eigen::Index i) {
    double p = std::arg(t(i, i));
    return p < 0.0 ? p + two_pi : p;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return phase(a) < phase(b);
                   });

  UnitaryEig out{Vec(n), Mat(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = t(order[i], order[i]);
    out.vectors.col(i) = schur.matrixU().col(order[i]);
  }
  return out;
}

double Rng::uniform() {
  // 53-bit mantissa in (0, 1); zero is rejected so log() below stays finite.
  for (;;) {
    double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

Complex Rng::cgaussian() {
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-std::log(u1));  // -2 log u over 2 for each component
  double phi = 2.0 * 3.14159265358979323846 * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

Mat Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  Mat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = cgaussian();
    }
  }
  return out;
}

Mat random_unitary(Rng& rng, Eigen::Index n) {
  Mat g = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: rotate each column so the R diagonal is nonnegative real.
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    Complex phase = (a > 0.0) ? d / a : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Mat random_unitary(std::uint64_t seed, Eigen::Index n) {
  Rng rng(seed);
  return random_unitary(rng, n);
}

Mat random_contraction(Rng& rng, Eigen::Index m, Eigen::Index n,
                       double target_norm) {
  if (!(target_norm > 0.0 && target_norm < 1.0)) {
    throw Error(ErrorCode::NotStrictContraction,
                "target norm must lie in (0, 1)");
  }
  Mat g = rng.gaussian_matrix(m, n);
  double s = operator_norm(g);
  return g * (target_norm / s);
}

Mat random_contraction(std::uint64_t seed, Eigen::Index m, Eigen::Index n,
                       double target_norm) {
  Rng rng(seed);
  return random_contraction(rng, m, n, target_norm);
}

}  // namespace cartan
