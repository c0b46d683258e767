#include "cartan/classify.hpp"

#include <cmath>
#include <limits>

namespace cartan {

namespace {

// A structural test and its brute-force oracle are provably equivalent,
// so one side passing while the other fails decisively (by two orders of
// magnitude past its own threshold) signals a fault. Marginal straddles
// of the thresholds are not conflicts; the conjunction decides those.
void check_agreement(const char* what, double r1, double tol1, double r2,
                     double tol2) {
  bool pass1 = r1 <= tol1;
  bool pass2 = r2 <= tol2;
  if (pass1 == pass2) return;
  bool decisive1 = r1 > 100.0 * tol1;
  bool decisive2 = r2 > 100.0 * tol2;
  if ((pass1 && decisive2) || (pass2 && decisive1)) {
    throw Error(ErrorCode::InternalInconsistency,
                std::string(what) + " criteria disagree: " +
                    std::to_string(r1) + " vs " + std::to_string(r2));
  }
}

}  // namespace

bool is_unitary_isometry(const GIsometry& t, const Tolerances& tol) {
  double block = operator_norm(t.t12());
  double brute = operator_norm(t.matrix().adjoint() * t.matrix() -
                               identity(t.m() + t.n()));
  check_agreement("unitarity", block, tol.eq_tol, brute, tol.eq_tol);
  return block <= tol.eq_tol;
}

NormalityCheck is_normal(const GIsometry& t, const Tolerances& tol) {
  return is_normal(t, factorize(t, tol), tol);
}

NormalityCheck is_normal(const GIsometry& t, const FactoredIsometry& f,
                         const Tolerances& tol) {
  NormalityCheck out;
  const Mat& m = t.matrix();
  out.brute_residual = operator_norm(m * m.adjoint() - m.adjoint() * m);
  out.commutator_ub = operator_norm(f.u * f.bpos - f.bpos * f.u);
  out.commutator_uc = operator_norm(f.u * f.cpos - f.cpos * f.v);
  out.commutator_ve = operator_norm(f.v * f.epos - f.epos * f.v);
  double structural = std::max(
      {out.commutator_ub, out.commutator_uc, out.commutator_ve});
  check_agreement("normality", out.brute_residual, tol.eq_tol, structural,
                  10.0 * tol.eq_tol);
  out.normal =
      out.brute_residual <= tol.eq_tol && structural <= 10.0 * tol.eq_tol;
  return out;
}

StructureCheck is_non_unitary_normal(const GIsometry& t, const Tolerances& tol) {
  FactoredIsometry f = factorize(t, tol);
  return is_non_unitary_normal(t, f, decompose(f, tol), tol);
}

StructureCheck is_non_unitary_normal(const GIsometry& t, const FactoredIsometry& f,
                                 const SpectralDecomposition& s,
                                 const Tolerances& tol) {
  StructureCheck out;
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();
  if (s.k == 0) {
    // No hyperbolic block: the element is unitary up to the unit_tol
    // scale and the structural criterion does not apply.
    out.non_unitary_normal = false;
    return out;
  }
  for (const auto& block : s.blocks) {
    double d2 = block.delta * block.delta;
    Mat p_m = block.basis_M * block.basis_M.adjoint() / d2;
    Mat p_k = block.basis_K * block.basis_K.adjoint();
    out.subspace_u = std::max(
        out.subspace_u, operator_norm((identity(m) - p_m) * f.u * p_m));
    out.subspace_v = std::max(
        out.subspace_v, operator_norm((identity(n) - p_k) * f.v * p_k));
    // Coordinates on the orthogonal-but-unnormalized xi basis use the
    // scaled dual <., xi_j> / delta^2.
    Mat r_u = block.basis_M.adjoint() * f.u * block.basis_M / d2;
    Mat r_v = block.basis_K.adjoint() * f.v * block.basis_K;
    out.block_match = std::max(out.block_match, operator_norm(r_u - r_v));
  }
  double structural =
      std::max({out.subspace_u, out.subspace_v, out.block_match});
  out.non_unitary_normal = structural <= 10.0 * tol.eq_tol;

  NormalityCheck normality = is_normal(t, f, tol);
  bool oracle = normality.normal && !is_unitary_isometry(t, tol);
  double oracle_residual =
      std::max({normality.brute_residual, normality.commutator_ub,
                normality.commutator_uc, normality.commutator_ve});
  check_agreement("non-unitary normality", structural, 10.0 * tol.eq_tol,
                  oracle_residual, 10.0 * tol.eq_tol);
  out.non_unitary_normal = out.non_unitary_normal && oracle;
  return out;
}

bool is_self_adjoint(const GIsometry& t, const Tolerances& tol) {
  return is_self_adjoint(t, factorize(t, tol), tol);
}

bool is_self_adjoint(const GIsometry& t, const FactoredIsometry& f,
                     const Tolerances& tol) {
  double brute = operator_norm(t.matrix() - t.matrix().adjoint());
  double factored = std::max(operator_norm(f.u - f.u.adjoint()),
                             operator_norm(f.v - f.v.adjoint()));
  check_agreement("self-adjointness", brute, tol.eq_tol, factored,
                  10.0 * tol.eq_tol);
  return brute <= tol.eq_tol && factored <= 10.0 * tol.eq_tol;
}

Classification classify(const GIsometry& t, const Tolerances& tol) {
  Classification c;
  c.is_member = true;
  for (std::size_t i = 0; i < t.relations().residuals.size(); ++i) {
    c.residuals["relation_" + std::to_string(i + 1)] =
        t.relations().residuals[i];
  }

  c.is_unitary = is_unitary_isometry(t, tol);
  c.residuals["unitary_block"] = operator_norm(t.t12());

  FactoredIsometry f = factorize(t, tol);
  NormalityCheck normality = is_normal(t, f, tol);
  c.is_normal = normality.normal;
  c.residuals["normal_brute"] = normality.brute_residual;
  c.residuals["normal_commutator_ub"] = normality.commutator_ub;
  c.residuals["normal_commutator_uc"] = normality.commutator_uc;
  c.residuals["normal_commutator_ve"] = normality.commutator_ve;

  c.residuals["self_adjoint_brute"] =
      operator_norm(t.matrix() - t.matrix().adjoint());
  c.is_self_adjoint = c.is_normal && is_self_adjoint(t, f, tol);

  SpectralDecomposition s = decompose(f, tol);
  StructureCheck structure = is_non_unitary_normal(t, f, s, tol);
  c.is_non_unitary_normal = structure.non_unitary_normal && c.is_normal &&
                            !c.is_unitary;
  c.residuals["structure_subspace_u"] = structure.subspace_u;
  c.residuals["structure_subspace_v"] = structure.subspace_v;
  c.residuals["structure_block_match"] = structure.block_match;
  c.residuals["rank_of_c"] = static_cast<double>(s.k);
  return c;
}

BlockView block_decompose(const GIsometry& t, const Tolerances& tol) {
  FactoredIsometry f = factorize(t, tol);
  SpectralDecomposition s = decompose(f, tol);
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();

  BlockView view;
  view.basis_Kperp = s.basis_Kperp;
  view.basis_ranC_perp = ran_c_perp_basis(s, m);

  for (const auto& sb : s.blocks) {
    IsometryBlock block;
    block.a = sb.a;
    block.delta = sb.delta;
    block.k_i = sb.k_i;
    block.basis_K = sb.basis_K;
    block.basis_M = sb.basis_M;
    double d2 = sb.delta * sb.delta;

    // Embed beta_i' U beta_i into H (+) K, push through T, read the
    // coordinates back off with the scaled dual on the M side.
    Eigen::Index ki = sb.k_i;
    Mat embed = Mat::Zero(m + n, 2 * ki);
    embed.topLeftCorner(m, ki) = sb.basis_M;
    embed.bottomRightCorner(n, ki) = sb.basis_K;
    Mat dual = Mat::Zero(2 * ki, m + n);
    dual.topLeftCorner(ki, m) = sb.basis_M.adjoint() / d2;
    dual.bottomRightCorner(ki, n) = sb.basis_K.adjoint();
    block.ti = dual * t.matrix() * embed;

    block.r = sb.basis_K.adjoint() * f.v * sb.basis_K;
    Mat expected(2 * ki, 2 * ki);
    expected.topLeftCorner(ki, ki) = sb.a * block.r;
    expected.topRightCorner(ki, ki) = block.r;
    expected.bottomLeftCorner(ki, ki) = d2 * block.r;
    expected.bottomRightCorner(ki, ki) = sb.a * block.r;
    block.pattern_residual = operator_norm(block.ti - expected);
    if (block.pattern_residual > 100.0 * tol.eq_tol) {
      throw Error(ErrorCode::StructureResidual,
                  "block pattern residual " +
                      std::to_string(block.pattern_residual));
    }
    view.blocks.push_back(std::move(block));
  }

  view.t_prime = view.basis_ranC_perp.adjoint() * f.u * view.basis_ranC_perp;
  view.t_double_prime = s.basis_Kperp.adjoint() * f.v * s.basis_Kperp;
  return view;
}

SBlockEigen s_block_eigen(double a, double delta, Eigen::Index k_i,
                          const Tolerances& tol) {
  if (std::abs(a * a - 1.0 - delta * delta) > tol.eq_tol) {
    throw Error(ErrorCode::InconsistentPair,
                "a^2 = 1 + delta^2 fails: a = " + std::to_string(a) +
                    ", delta = " + std::to_string(delta));
  }
  if (k_i < 1) {
    throw Error(ErrorCode::InconsistentPair, "block size must be positive");
  }
  SBlockEigen out;
  out.plus = a + delta;
  out.minus = a - delta;
  out.multiplicity = k_i;
  out.plus_vectors = Mat::Zero(2 * k_i, k_i);
  out.minus_vectors = Mat::Zero(2 * k_i, k_i);
  for (Eigen::Index j = 0; j < k_i; ++j) {
    out.plus_vectors(j, j) = Complex(1.0 / delta, 0.0);
    out.plus_vectors(k_i + j, j) = Complex(1.0, 0.0);
    out.minus_vectors(j, j) = Complex(-1.0 / delta, 0.0);
    out.minus_vectors(k_i + j, j) = Complex(1.0, 0.0);
  }

  // Validate against a general eigendecomposition of the explicit block.
  Mat s = Mat::Zero(2 * k_i, 2 * k_i);
  s.topLeftCorner(k_i, k_i) = a * identity(k_i);
  s.topRightCorner(k_i, k_i) = identity(k_i);
  s.bottomLeftCorner(k_i, k_i) = delta * delta * identity(k_i);
  s.bottomRightCorner(k_i, k_i) = a * identity(k_i);
  Eigen::ComplexEigenSolver<Mat> solver(s, /*computeEigenvectors=*/false);
  std::vector<Complex> numerical(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + 2 * k_i);
  std::vector<Complex> analytic;
  for (Eigen::Index j = 0; j < k_i; ++j) {
    analytic.emplace_back(out.plus, 0.0);
    analytic.emplace_back(out.minus, 0.0);
  }
  double dist = eigenvalue_multiset_distance(analytic, numerical);
  if (dist > 10.0 * tol.eq_tol) {
    throw Error(ErrorCode::InternalInconsistency,
                "analytic block eigenvalues deviate from the numerical "
                "decomposition by " + std::to_string(dist));
  }
  return out;
}

std::vector<LabeledEigenvalue> spectrum_normal(const GIsometry& t,
                                               const Tolerances& tol) {
  FactoredIsometry f = factorize(t, tol);
  SpectralDecomposition s = decompose(f, tol);
  Eigen::Index m = t.m();
  Eigen::Index n = t.n();

  std::vector<LabeledEigenvalue> out;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const auto& block = s.blocks[i];
    Mat r = block.basis_K.adjoint() * f.v * block.basis_K;
    UnitaryEig reig = unitary_eig(r, tol);
    for (Eigen::Index j = 0; j < block.k_i; ++j) {
      Vec z = block.basis_K * reig.vectors.col(j);
      Vec y = f.cpos * z / block.delta;
      for (int sign : {+1, -1}) {
        LabeledEigenvalue entry;
        entry.value = reig.values[j] *
                      (block.a + sign * block.delta);
        entry.block = static_cast<int>(i);
        entry.index = static_cast<int>(j);
        entry.sign = sign;
        entry.label = "block " + std::to_string(i) +
                      (sign > 0 ? " [+]" : " [-]");
        Vec v(m + n);
        v.head(m) = static_cast<double>(sign) * y;
        v.tail(n) = z;
        entry.eigenvector = v / v.norm();
        out.push_back(std::move(entry));
      }
    }
  }

  Mat qperp = ran_c_perp_basis(s, m);
  UnitaryEig ueig = unitary_eig(qperp.adjoint() * f.u * qperp, tol);
  for (Eigen::Index j = 0; j < ueig.values.size(); ++j) {
    LabeledEigenvalue entry;
    entry.value = ueig.values[j];
    entry.label = "T'";
    Vec v = Vec::Zero(m + n);
    v.head(m) = qperp * ueig.vectors.col(j);
    entry.eigenvector = v;
    out.push_back(std::move(entry));
  }
  UnitaryEig veig =
      unitary_eig(s.basis_Kperp.adjoint() * f.v * s.basis_Kperp, tol);
  for (Eigen::Index j = 0; j < veig.values.size(); ++j) {
    LabeledEigenvalue entry;
    entry.value = veig.values[j];
    entry.label = "T''";
    Vec v = Vec::Zero(m + n);
    v.tail(n) = s.basis_Kperp * veig.vectors.col(j);
    entry.eigenvector = v;
    out.push_back(std::move(entry));
  }

  // The analytic multiset must reproduce the numerical spectrum.
  Eigen::ComplexEigenSolver<Mat> solver(t.matrix(),
                                        /*computeEigenvectors=*/false);
  std::vector<Complex> numerical(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + m + n);
  std::vector<Complex> analytic;
  analytic.reserve(out.size());
  for (const auto& entry : out) analytic.push_back(entry.value);
  double dist = eigenvalue_multiset_distance(analytic, numerical);
  if (dist > 10.0 * tol.eq_tol) {
    throw Error(ErrorCode::SpectrumMismatch,
                "analytic spectrum deviates from the numerical one by " +
                    std::to_string(dist));
  }
  return out;
}

double eigenvalue_multiset_distance(std::vector<Complex> a,
                                    std::vector<Complex> b) {
  if (a.size() != b.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  // Greedy bottleneck matching: repeatedly take the globally closest pair.
  while (!a.empty()) {
    std::size_t best_i = 0, best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          best_i = i;
          best_j = j;
        }
      }
    }
    worst = std::max(worst, best);
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(best_i));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best_j));
  }
  return worst;
}

}  // namespace cartan
