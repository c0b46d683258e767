#include "cartan/ball.hpp"

#include <cmath>

namespace cartan {

Contraction::Contraction(Mat matrix, bool strict, const Tolerances& tol)
    : matrix_(std::move(matrix)), strict_(strict) {
  if (!all_finite(matrix_)) {
    throw Error(ErrorCode::NotStrictContraction, "matrix has non-finite entries");
  }
  double norm = operator_norm(matrix_);
  if (strict_) {
    if (!(norm < 1.0 - tol.eq_tol)) {
      throw Error(ErrorCode::NotStrictContraction,
                  "operator norm " + std::to_string(norm) +
                      " not inside the open ball");
    }
  } else if (norm > 1.0 + tol.eq_tol) {
    throw Error(ErrorCode::NotStrictContraction,
                "operator norm " + std::to_string(norm) +
                    " outside the closed ball");
  }
}

Contraction Contraction::zero(Eigen::Index m, Eigen::Index n) {
  return Contraction(Mat::Zero(m, n), true);
}

MobiusMap::MobiusMap(Contraction center, const Tolerances& tol)
    : center_(std::move(center)) {
  if (!center_.strict()) {
    throw Error(ErrorCode::NotStrictContraction,
                "Mobius center must be a strict contraction");
  }
  const Mat& b = center_.matrix();
  Eigen::Index m = b.rows();
  Eigen::Index n = b.cols();
  left_inv_sqrt_ = positive_inv_sqrt(identity(m) - b * b.adjoint(), tol);
  right_sqrt_ = positive_sqrt(identity(n) - b.adjoint() * b, tol);
}

MobiusMap MobiusMap::inverse(const Tolerances& tol) const {
  return MobiusMap(Contraction(-center_.matrix(), true, tol), tol);
}

namespace {

double smallest_singular_value(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

Contraction mobius_apply(const MobiusMap& map, const Contraction& a,
                         const Tolerances& tol) {
  const Mat& b = map.center().matrix();
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "contraction does not match the map center");
  }
  Mat denom = identity(b.cols()) + b.adjoint() * a.matrix();
  if (smallest_singular_value(denom) <=
      1e-12 * std::max(1.0, operator_norm(denom))) {
    throw Error(ErrorCode::SingularFactor, "I + B*A is numerically singular");
  }
  Mat image = map.left_defect_inv_sqrt() * (a.matrix() + b) *
              denom.partialPivLu().solve(map.right_defect_sqrt());
  return Contraction(std::move(image), a.strict(), tol);
}

double caratheodory_distance(const Contraction& a1, const Contraction& a2,
                             const Tolerances& tol) {
  if (!a1.strict() || !a2.strict()) {
    throw Error(ErrorCode::NotStrictContraction,
                "distance requires strict contractions");
  }
  MobiusMap to_origin(Contraction(-a2.matrix(), true, tol), tol);
  double r = operator_norm(mobius_apply(to_origin, a1, tol).matrix());
  // Guard against rounding pushing the norm to 1.
  r = std::min(std::max(r, 0.0), 1.0 - 1e-15);
  return std::atanh(r);
}

double intertwine_residual(const Mat& t, const Tolerances& tol) {
  double norm = operator_norm(t);
  if (norm > 1.0 + tol.eq_tol) {
    throw Error(ErrorCode::NotStrictContraction,
                "intertwine residual is defined for contractions only");
  }
  Eigen::Index m = t.rows();
  Eigen::Index n = t.cols();
  Mat right = positive_sqrt(identity(n) - t.adjoint() * t, tol);
  Mat left = positive_sqrt(identity(m) - t * t.adjoint(), tol);
  return operator_norm(t * right - left * t);
}

Complex hermitian_form(const SpaceVector& v, const SpaceVector& w) {
  if (v.h.size() != w.h.size() || v.k.size() != w.k.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "space vectors live on different H (+) K");
  }
  // Eigen's dot is conjugate-linear in its first argument, so <x, y> with
  // the second slot conjugated is y.dot(x).
  return w.h.dot(v.h) - w.k.dot(v.k);
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::SpaceLike: return "SpaceLike";
    case CausalClass::LightLike: return "LightLike";
    case CausalClass::TimeLike: return "TimeLike";
  }
  return "?";
}

CausalClass classify_vector(const SpaceVector& v, const Tolerances& tol) {
  if (v.h.norm() == 0.0 && v.k.norm() == 0.0) {
    throw Error(ErrorCode::ZeroVector, "cannot classify the zero vector");
  }
  double s = hermitian_form(v, v).real();
  if (s > tol.eq_tol) return CausalClass::SpaceLike;
  if (s < -tol.eq_tol) return CausalClass::TimeLike;
  return CausalClass::LightLike;
}

}  // namespace cartan
