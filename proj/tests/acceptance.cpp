// Acceptance suite: ten numbered criteria, each printed as a single
// pass/fail line with its worst observed residual. The process exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cartan/fixed_points.hpp"
#include "cartan/generate.hpp"

using namespace cartan;

namespace {

struct Criterion {
  int number;
  std::string description;
  std::function<double()> worst_residual;  // must stay <= bound
  double bound;
};

double diff(const Mat& a, const Mat& b) { return operator_norm(a - b); }

struct Dims {
  Eigen::Index m;
  Eigen::Index n;
};

const std::vector<Dims> kMembershipDims = {{2, 1}, {3, 2}, {5, 3}, {8, 5}};

// 1. Six-relation residuals over 200 seeded factored elements.
double criterion_membership() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const Dims& d : kMembershipDims) {
      Rng rng(seed * 31 + static_cast<std::uint64_t>(d.m));
      double norm = 0.3 + 0.6 * rng.uniform();
      GIsometry t = make_random(d.m, d.n, seed * 17 + static_cast<std::uint64_t>(d.n), norm);
      worst = std::max(worst, t.relations().max_residual());
    }
  }
  return worst;
}

// 2. Homomorphism of the action on 100 random triples.
double criterion_homomorphism() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dims d = kMembershipDims[seed % kMembershipDims.size()];
    GIsometry t1 = make_random(d.m, d.n, 3 * seed + 1, 0.7);
    GIsometry t2 = make_random(d.m, d.n, 3 * seed + 2, 0.55);
    Rng rng(3 * seed);
    Contraction a(random_contraction(rng, d.m, d.n, 0.8), true);
    Mat lhs = act(compose(t1, t2), a).matrix();
    Mat rhs = act(t1, act(t2, a)).matrix();
    worst = std::max(worst, diff(lhs, rhs));
  }
  return worst;
}

// 3. Caratheodory invariance on 100 random (h, A1, A2).
double criterion_invariance() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dims d = kMembershipDims[seed % kMembershipDims.size()];
    GIsometry h = make_random(d.m, d.n, 7 * seed, 0.65);
    Rng rng(7 * seed + 3);
    Contraction a1(random_contraction(rng, d.m, d.n, 0.75), true);
    Contraction a2(random_contraction(rng, d.m, d.n, 0.5), true);
    double before = caratheodory_distance(a1, a2);
    double after = caratheodory_distance(act(h, a1), act(h, a2));
    worst = std::max(worst, std::abs(before - after));
  }
  return worst;
}

struct MixedInstance {
  GIsometry t;
  bool built_normal;
};

std::vector<MixedInstance> mixed_suite() {
  // 100 constructed-normal + 100 perturbed instances, k <= 4, m+n <= 16.
  static const std::vector<Dims> dims = {{3, 2}, {2, 3}, {5, 4}, {6, 5},
                                         {4, 3}, {8, 5}};
  std::vector<MixedInstance> out;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dims d = dims[seed % dims.size()];
    Eigen::Index max_rank = std::min({Eigen::Index{4}, d.m, d.n});
    Eigen::Index rank = 1 + static_cast<Eigen::Index>(seed) % max_rank;

    NormalOptions opts;
    if (rank >= 2 && seed % 5 == 0) {
      // Mix in a degenerate block now and then.
      opts.block_sizes.assign(static_cast<std::size_t>(rank - 1), 1);
      opts.block_sizes[0] = 2;
    } else {
      opts.block_sizes.assign(static_cast<std::size_t>(rank), 1);
    }
    opts.seed = seed;
    out.push_back({make_normal(d.m, d.n, opts), true});

    NonNormalKind kind =
        seed % 2 == 0 ? NonNormalKind::Scramble : NonNormalKind::BlockPhase;
    out.push_back({make_nonnormal(d.m, d.n, seed, rank, 0.6, kind), false});
  }
  return out;
}

// 4. Brute-force and commutator normality verdicts agree on 200 instances.
double criterion_normality_crosscheck() {
  double disagreements = 0.0;
  for (const MixedInstance& inst : mixed_suite()) {
    NormalityCheck check = is_normal(inst.t);
    Tolerances tol;
    bool brute = check.brute_residual <= tol.eq_tol;
    bool structural = std::max({check.commutator_ub, check.commutator_uc,
                                check.commutator_ve}) <= 10.0 * tol.eq_tol;
    if (brute != structural) disagreements += 1.0;
    if (check.normal != inst.built_normal) disagreements += 1.0;
  }
  return disagreements;
}

// 5. Spectral identities on every decomposition in the suite. The
// hyperbolic identity must hold within 1e-9 and the restriction residuals
// within 1e-8; the tighter bound is scaled by ten so one number covers both.
double criterion_spectral_identities() {
  double worst = 0.0;
  for (const MixedInstance& inst : mixed_suite()) {
    FactoredIsometry f = factorize(inst.t);
    SpectralDecomposition s = decompose(f);
    for (const auto& block : s.blocks) {
      double identity_residual =
          std::abs(block.a * block.a - 1.0 - block.delta * block.delta);
      worst = std::max(worst, 10.0 * identity_residual);
    }
    worst = std::max(worst, verify_decomposition(f, s).max_residual());
  }
  return worst;
}

// 6. Analytic {a +- delta} against numerical eigendecomposition, 50 draws.
double criterion_block_eigen() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed + 101);
    double delta = 0.2 + 2.0 * rng.uniform();
    double a = std::sqrt(1.0 + delta * delta);
    Eigen::Index k_i = 1 + static_cast<Eigen::Index>(seed % 4);
    SBlockEigen eig = s_block_eigen(a, delta, k_i);

    Mat s = Mat::Zero(2 * k_i, 2 * k_i);
    s.topLeftCorner(k_i, k_i) = a * identity(k_i);
    s.topRightCorner(k_i, k_i) = identity(k_i);
    s.bottomLeftCorner(k_i, k_i) = delta * delta * identity(k_i);
    s.bottomRightCorner(k_i, k_i) = a * identity(k_i);
    Eigen::ComplexEigenSolver<Mat> solver(s, false);
    std::vector<Complex> numerical(solver.eigenvalues().data(),
                                   solver.eigenvalues().data() + 2 * k_i);
    std::vector<Complex> analytic;
    for (Eigen::Index j = 0; j < k_i; ++j) {
      analytic.emplace_back(eig.plus, 0.0);
      analytic.emplace_back(eig.minus, 0.0);
    }
    worst = std::max(worst, eigenvalue_multiset_distance(analytic, numerical));
  }
  return worst;
}

// 7. Exactly 2^k generic fixed points, all on the boundary.
double criterion_generic_count() {
  double worst = 0.0;
  for (Eigen::Index k = 1; k <= 4; ++k) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Dims d = k <= 2 ? Dims{3, 2} : Dims{6, 5};
      if (static_cast<Eigen::Index>(seed) % 2 == 1) std::swap(d.m, d.n);
      if (k > std::min(d.m, d.n)) continue;
      NormalOptions opts;
      opts.block_sizes.assign(static_cast<std::size_t>(k), 1);
      opts.seed = seed;
      GIsometry t = make_normal(d.m, d.n, opts);
      auto points = enumerate_generic(t);
      if (points.size() != (std::size_t{1} << k)) return 1.0;
      for (const auto& p : points) {
        worst = std::max(worst, std::abs(p.norm - 1.0));
        worst = std::max(worst, p.residual);
      }
      for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
          if (diff(points[i].f, points[j].f) <= 1e-9) return 1.0;
        }
      }
    }
  }

  // The worked example must produce exactly the two boundary columns.
  Mat a = Mat::Zero(2, 1);
  a(0, 0) = 0.6;
  GIsometry worked =
      from_factors(Contraction(a, true), identity(2), identity(1));
  auto points = enumerate_generic(worked);
  if (points.size() != 2) return 1.0;
  Mat e1 = Mat::Zero(2, 1);
  e1(0, 0) = 1.0;
  worst = std::max(worst, diff(points[0].f, e1));
  worst = std::max(worst, diff(points[1].f, -e1));
  return worst;
}

// 8. Fixed-point detection: zero misclassifications over the mixed suite.
double criterion_detection() {
  double misclassified = 0.0;
  for (const MixedInstance& inst : mixed_suite()) {
    DetectionReport report = detect_generic(inst.t);
    bool detected_normal =
        report.conclusion == DetectionConclusion::NonUnitaryNormal;
    if (detected_normal != inst.built_normal) misclassified += 1.0;
  }
  return misclassified;
}

// 9. The analytic spectrum matches the numerical one, 50 instances.
double criterion_spectrum() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Dims d = seed % 2 == 0 ? Dims{4, 3} : Dims{5, 3};
    NormalOptions opts;
    opts.block_sizes.assign(1 + seed % 3, 1);
    opts.seed = seed + 7;
    GIsometry t = make_normal(d.m, d.n, opts);
    auto spectrum = spectrum_normal(t);
    std::vector<Complex> analytic;
    for (const auto& entry : spectrum) analytic.push_back(entry.value);
    Eigen::ComplexEigenSolver<Mat> solver(t.matrix(), false);
    std::vector<Complex> numerical(
        solver.eigenvalues().data(),
        solver.eigenvalues().data() + t.m() + t.n());
    worst = std::max(worst, eigenvalue_multiset_distance(analytic, numerical));
  }
  return worst;
}

// 10. Boundary lemma: C*A + E stays invertible on the closed ball.
double criterion_boundary_lemma() {
  double worst_margin = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Dims d = kMembershipDims[seed % kMembershipDims.size()];
    GIsometry t = make_random(d.m, d.n, seed + 400, 0.75);
    Rng rng(seed);
    for (int draw = 0; draw < 100; ++draw) {
      Mat g = rng.gaussian_matrix(d.m, d.n);
      double scale = draw % 2 == 0 ? 1.0 : rng.uniform();
      Mat a = g * (scale / operator_norm(g));
      Eigen::JacobiSVD<Mat> svd(t.t21() * a + t.t22());
      worst_margin = std::min(worst_margin, svd.singularValues().minCoeff());
    }
  }
  // Report as a residual: the criterion wants margin > 1e-6.
  return worst_margin > 1e-6 ? 0.0 : 1.0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "group membership residuals on 200 factored elements",
       criterion_membership, 1e-9},
      {2, "action homomorphism on 100 random triples", criterion_homomorphism,
       1e-7},
      {3, "Caratheodory invariance on 100 random triples",
       criterion_invariance, 1e-7},
      {4, "normality cross-check disagreements on 200 mixed instances",
       criterion_normality_crosscheck, 0.0},
      {5, "spectral identities across all sampled decompositions",
       criterion_spectral_identities, 1e-8},
      {6, "analytic block eigenvalues on 50 random (a, delta, k)",
       criterion_block_eigen, 1e-9},
      {7, "2^k generic fixed points on the boundary, k in 1..4",
       criterion_generic_count, 1e-8},
      {8, "detection misclassifications on 200 mixed instances",
       criterion_detection, 0.0},
      {9, "analytic vs numerical spectrum on 50 normal instances",
       criterion_spectrum, 1e-7},
      {10, "boundary denominator margin over closed-ball samples",
       criterion_boundary_lemma, 0.0},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool threw = false;
    std::string message;
    try {
      worst = criterion.worst_residual();
    } catch (const std::exception& e) {
      threw = true;
      message = e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool pass = !threw && worst <= criterion.bound;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s (worst %.3e, bound %.3e, %.1fs)%s%s\n",
                pass ? "PASS" : "FAIL", criterion.number,
                criterion.description.c_str(), worst, criterion.bound, seconds,
                threw ? " exception: " : "", message.c_str());
  }
  if (failures > 0) {
    std::printf("%d criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
