#include "cartan/pseudo_unitary.hpp"

#include <algorithm>
#include <cmath>

namespace cartan {

double RelationsReport::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

RelationsReport verify_relations(const Mat& t, Eigen::Index m,
                                 Eigen::Index n) {
  if (t.rows() != m + n || t.cols() != m + n) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is not (m+n) x (m+n)");
  }
  Mat b = t.topLeftCorner(m, m);
  Mat c = t.topRightCorner(m, n);
  Mat d = t.bottomLeftCorner(n, m);
  Mat e = t.bottomRightCorner(n, n);
  Mat im = identity(m);
  Mat in = identity(n);
  RelationsReport report;
  report.residuals[0] = operator_norm(b.adjoint() * b - d.adjoint() * d - im);
  report.residuals[1] = operator_norm(e.adjoint() * e - c.adjoint() * c - in);
  report.residuals[2] = operator_norm(c.adjoint() * b - e.adjoint() * d);
  report.residuals[3] = operator_norm(b * b.adjoint() - c * c.adjoint() - im);
  report.residuals[4] = operator_norm(e * e.adjoint() - d * d.adjoint() - in);
  report.residuals[5] = operator_norm(d * b.adjoint() - e * c.adjoint());
  return report;
}

namespace {

double smallest_singular_value(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

// Assembles (Bpos U, Cpos V; Cpos* U, Epos V) without any precondition
// checks; shared by from_factors and the factorize roundtrip.
Mat assemble_blocks(const Mat& a, const Mat& u, const Mat& v,
                    const Tolerances& tol) {
  Eigen::Index m = a.rows();
  Eigen::Index n = a.cols();
  Mat bpos = positive_inv_sqrt(identity(m) - a * a.adjoint(), tol);
  Mat epos = positive_inv_sqrt(identity(n) - a.adjoint() * a, tol);
  Mat cpos = bpos * a;
  Mat t(m + n, m + n);
  t.topLeftCorner(m, m) = bpos * u;
  t.topRightCorner(m, n) = cpos * v;
  t.bottomLeftCorner(n, m) = cpos.adjoint() * u;
  t.bottomRightCorner(n, n) = epos * v;
  return t;
}

double unitary_residual(const Mat& u) {
  return operator_norm(u.adjoint() * u - identity(u.cols()));
}

}  // namespace

GIsometry::GIsometry(Mat matrix, Eigen::Index m, Eigen::Index n,
                     const Tolerances& tol)
    : matrix_(std::move(matrix)), m_(m), n_(n) {
  if (m == n) {
    throw Error(ErrorCode::SquareDims, "H and K must have different dimensions");
  }
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::DimensionMismatch, "dimensions must be positive");
  }
  if (!all_finite(matrix_)) {
    throw Error(ErrorCode::NotAMember, "matrix has non-finite entries");
  }
  relations_ = verify_relations(matrix_, m_, n_);
  if (!relations_.member(tol.eq_tol)) {
    throw Error(ErrorCode::NotAMember,
                "relation residual " + std::to_string(relations_.max_residual()) +
                    " exceeds eq_tol");
  }
  // The relations force B B* >= I and E E* >= I, so this is a sanity check.
  if (smallest_singular_value(t11()) < 0.5 ||
      smallest_singular_value(t22()) < 0.5) {
    throw Error(ErrorCode::NotAMember, "diagonal block is not invertible");
  }
}

GIsometry from_factors(const Contraction& a, const Mat& u, const Mat& v,
                       const Tolerances& tol) {
  Eigen::Index m = a.rows();
  Eigen::Index n = a.cols();
  if (m == n) {
    throw Error(ErrorCode::SquareDims, "H and K must have different dimensions");
  }
  if (!a.strict()) {
    throw Error(ErrorCode::NotStrictContraction,
                "factored form requires a strict contraction");
  }
  if (u.rows() != m || u.cols() != m || v.rows() != n || v.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "unitary factor has wrong shape");
  }
  if (unitary_residual(u) > tol.eq_tol) {
    throw Error(ErrorCode::NotUnitary, "U is not unitary within eq_tol");
  }
  if (unitary_residual(v) > tol.eq_tol) {
    throw Error(ErrorCode::NotUnitary, "V is not unitary within eq_tol");
  }
  return GIsometry(assemble_blocks(a.matrix(), u, v, tol), m, n, tol);
}

GIsometry inverse(const GIsometry& t, const Tolerances& tol) {
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();
  Mat inv(m + n, m + n);
  inv.topLeftCorner(m, m) = t.t11().adjoint();
  inv.topRightCorner(m, n) = -t.t21().adjoint();
  inv.bottomLeftCorner(n, m) = -t.t12().adjoint();
  inv.bottomRightCorner(n, n) = t.t22().adjoint();
  return GIsometry(std::move(inv), m, n, tol);
}

FactoredIsometry factorize(const GIsometry& t, const Tolerances& tol) {
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();
  // A = T12 T22^{-1} = psi(T)(0); solve X T22 = T12 through the adjoint.
  Mat a = t.t22().adjoint().partialPivLu().solve(t.t12().adjoint()).adjoint();
  Contraction center(a, true, tol);

  Mat defect_h = identity(m) - a * a.adjoint();
  Mat defect_k = identity(n) - a.adjoint() * a;
  FactoredIsometry f{
      center,
      positive_sqrt(defect_h, tol) * t.t11(),   // U = Bpos^{-1} T11
      positive_sqrt(defect_k, tol) * t.t22(),   // V = Epos^{-1} T22
      positive_inv_sqrt(defect_h, tol),
      Mat(),
      positive_inv_sqrt(defect_k, tol),
  };
  f.cpos = f.bpos * a;

  double roundtrip = operator_norm(
      assemble_blocks(a, f.u, f.v, tol) - t.matrix());
  if (roundtrip > 100.0 * tol.eq_tol ||
      unitary_residual(f.u) > 10.0 * tol.eq_tol ||
      unitary_residual(f.v) > 10.0 * tol.eq_tol) {
    throw Error(ErrorCode::ReconstructionFailure,
                "factor roundtrip residual " + std::to_string(roundtrip));
  }
  return f;
}

Contraction act(const GIsometry& t, const Contraction& a,
                const Tolerances& tol) {
  if (a.rows() != t.m() || a.cols() != t.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "contraction shape does not match the isometry");
  }
  Mat denom = t.t21() * a.matrix() + t.t22();
  if (smallest_singular_value(denom) <=
      1e-12 * std::max(1.0, operator_norm(denom))) {
    throw Error(ErrorCode::SingularDenominator,
                "T21 A + T22 is numerically singular");
  }
  Mat numer = t.t11() * a.matrix() + t.t12();
  // (numer)(denom)^{-1}: solve through the adjoint system.
  Mat image = denom.adjoint().partialPivLu().solve(numer.adjoint()).adjoint();
  return Contraction(std::move(image), a.strict(), tol);
}

GIsometry compose(const GIsometry& t1, const GIsometry& t2,
                  const Tolerances& tol) {
  if (t1.m() != t2.m() || t1.n() != t2.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cannot compose isometries on different spaces");
  }
  return GIsometry(t1.matrix() * t2.matrix(), t1.m(), t1.n(), tol);
}

bool is_center(const GIsometry& t, const Tolerances& tol) {
  Complex c = t.matrix()(0, 0);
  if (std::abs(std::abs(c) - 1.0) > tol.eq_tol) return false;
  Mat scaled = c * Mat::Identity(t.matrix().rows(), t.matrix().cols());
  return operator_norm(t.matrix() - scaled) <= tol.eq_tol;
}

SpaceVector apply_to_vector(const GIsometry& t, const SpaceVector& v) {
  if (v.h.size() != t.m() || v.k.size() != t.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector does not live on this H (+) K");
  }
  Vec stacked(t.m() + t.n());
  stacked << v.h, v.k;
  Vec image = t.matrix() * stacked;
  return {image.head(t.m()), image.tail(t.n())};
}

}  // namespace cartan
