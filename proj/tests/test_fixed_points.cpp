#include "doctest.h"

#include <cmath>
#include <set>

#include "cartan/fixed_points.hpp"
#include "cartan/generate.hpp"

using namespace cartan;

namespace {

double diff(const Mat& a, const Mat& b) { return operator_norm(a - b); }

GIsometry worked_example() {
  Mat a = Mat::Zero(2, 1);
  a(0, 0) = 0.6;
  return from_factors(Contraction(a, true), identity(2), identity(1));
}

Mat column(double top, double bottom) {
  Mat f = Mat::Zero(2, 1);
  f(0, 0) = top;
  f(1, 0) = bottom;
  return f;
}

}  // namespace

TEST_CASE("every point is fixed under the identity") {
  GIsometry id(identity(3), 2, 1);
  CHECK(verify_fixed(id, column(0.3, -0.2)) < 1e-12);
  CHECK(verify_fixed(id, column(1.0, 0.0)) < 1e-12);
}

TEST_CASE("the worked example fixes both boundary columns") {
  GIsometry t = worked_example();
  CHECK(verify_fixed(t, column(1.0, 0.0)) < 1e-12);
  CHECK(verify_fixed(t, column(-1.0, 0.0)) < 1e-12);
  CHECK(verify_fixed(t, column(0.5, 0.0)) > 1e-3);  // interior is moved
}

TEST_CASE("eigenvector columns certify fixed points") {
  GIsometry t = worked_example();
  Mat z = identity(1);
  CHECK(fixed_from_eigenvectors(t, z, column(1.0, 0.0)));
  CHECK(fixed_from_eigenvectors(t, z, column(-1.0, 0.0)));
  CHECK_FALSE(fixed_from_eigenvectors(t, z, column(0.5, 0.0)));
}

TEST_CASE("zero is a fixed point of every unitary element") {
  GIsometry t = make_unitary(3, 2, 21);
  FactoredIsometry f = factorize(t);
  UnitaryEig veig = unitary_eig(f.v);
  CHECK(fixed_from_eigenvectors(t, veig.vectors, Mat::Zero(3, 2)));
}

TEST_CASE("a dependent column set is not a basis") {
  GIsometry t = make_unitary(3, 2, 2);
  Mat z(2, 2);
  z.col(0) = Vec::Ones(2);
  z.col(1) = Vec::Ones(2);
  CHECK_THROWS_WITH_AS(fixed_from_eigenvectors(t, z, Mat::Zero(3, 2)),
                       doctest::Contains("NotABasis"), Error);
}

TEST_CASE("the worked example has exactly the two generic points") {
  auto points = enumerate_generic(worked_example());
  REQUIRE(points.size() == 2);

  CHECK(points[0].theta == std::vector<int>{1});
  CHECK(points[1].theta == std::vector<int>{-1});
  CHECK(diff(points[0].f, column(1.0, 0.0)) < 1e-9);
  CHECK(diff(points[1].f, column(-1.0, 0.0)) < 1e-9);
  CHECK(std::abs(points[0].eigenvalues[0] - Complex(2.0, 0.0)) < 1e-9);
  CHECK(std::abs(points[1].eigenvalues[0] - Complex(0.5, 0.0)) < 1e-9);
  for (const auto& p : points) {
    CHECK(std::abs(p.norm - 1.0) < 1e-9);
    CHECK(p.residual < 1e-9);
  }
}

TEST_CASE("k = 2 gives four generic points with the sign-flip structure") {
  NormalOptions opts;
  opts.block_sizes = {1, 1};
  opts.seed = 3;
  GIsometry t = make_normal(3, 2, opts);
  auto points = enumerate_generic(t);
  REQUIRE(points.size() == 4);

  std::set<std::vector<int>> patterns;
  for (const auto& p : points) patterns.insert(p.theta);
  CHECK(patterns.size() == 4);
  CHECK(points[0].theta == std::vector<int>{1, 1});
  CHECK(points[3].theta == std::vector<int>{-1, -1});

  for (const auto& p : points) {
    CHECK(std::abs(p.norm - 1.0) <= 1e-8);
    CHECK(p.residual <= 1e-8);
    // Every column of the distinguished basis lifts to an eigenvector.
    CHECK(fixed_from_eigenvectors(t, p.z_basis, p.f));
  }
  // Pairwise distinct as operators.
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      CHECK(diff(points[i].f, points[j].f) > 1e-6);
    }
  }
  // Flipping one sign changes F only on that direction's span.
  const Mat& z = points[0].z_basis;
  Mat delta01 = points[0].f - points[1].f;  // differ in the last sign
  CHECK((delta01 * z.col(0)).norm() < 1e-9);
  CHECK((delta01 * z.col(1)).norm() > 1e-3);
}

TEST_CASE("generic points vanish on the complement columns") {
  NormalOptions opts;
  opts.block_sizes = {1};
  opts.seed = 29;
  GIsometry t = make_normal(4, 3, opts);  // k = 1, so two complement columns
  for (const auto& p : enumerate_generic(t)) {
    CHECK((p.f * p.z_basis.col(1)).norm() < 1e-10);
    CHECK((p.f * p.z_basis.col(2)).norm() < 1e-10);
  }
}

TEST_CASE("degenerate blocks enumerate cleanly") {
  NormalOptions opts;
  opts.block_sizes = {2};
  opts.seed = 5;
  opts.r_blocks = {identity(2)};  // forces a repeated R eigenvalue
  GIsometry t = make_normal(4, 3, opts);
  auto points = enumerate_generic(t);
  REQUIRE(points.size() == 4);
  for (const auto& p : points) {
    CHECK(std::abs(p.norm - 1.0) <= 1e-8);
    CHECK(p.residual <= 1e-8);
  }
}

TEST_CASE("tagged eigenvalues pair the lifted columns with T") {
  NormalOptions opts;
  opts.block_sizes = {1, 1};
  opts.seed = 11;
  GIsometry t = make_normal(4, 3, opts);
  auto points = enumerate_generic(t);
  for (const auto& p : points) {
    for (Eigen::Index d = 0; d < 2; ++d) {
      Vec v(t.m() + t.n());
      v.head(t.m()) = p.f * p.z_basis.col(d);
      v.tail(t.n()) = p.z_basis.col(d);
      v /= v.norm();
      CHECK((t.matrix() * v - p.eigenvalues[static_cast<std::size_t>(d)] * v)
                .norm() < 1e-8);
    }
  }
}

TEST_CASE("detection on the worked example") {
  DetectionReport report = detect_generic(worked_example());
  CHECK(report.k == 1);
  CHECK(report.q == 1);
  CHECK(report.count == 2);
  CHECK(report.conclusion == DetectionConclusion::NonUnitaryNormal);
  REQUIRE(report.details.size() == 1);
  CHECK(report.details[0].directions == 1);
  CHECK(std::abs(report.details[0].mu_plus - Complex(2.0, 0.0)) < 1e-7);
  CHECK(std::abs(report.details[0].mu_minus - Complex(0.5, 0.0)) < 1e-7);
}

TEST_CASE("detection flags the broken constructions") {
  GIsometry scramble = make_nonnormal(3, 2, 7, 2, 0.6, NonNormalKind::Scramble);
  CHECK(detect_generic(scramble).conclusion == DetectionConclusion::NotNormal);

  GIsometry phase = make_nonnormal(3, 2, 8, 2, 0.6, NonNormalKind::BlockPhase);
  CHECK(detect_generic(phase).conclusion == DetectionConclusion::NotNormal);

  Mat a = Mat::Zero(2, 1);
  a(0, 0) = 0.6;
  GIsometry flip = from_factors(Contraction(a, true), identity(2),
                                -identity(1));
  CHECK(detect_generic(flip).conclusion == DetectionConclusion::NotNormal);
}

TEST_CASE("detection calls unitaries unitary") {
  DetectionReport report = detect_generic(make_unitary(3, 2, 9));
  CHECK(report.k == 0);
  CHECK(report.count == 1);
  CHECK(report.conclusion == DetectionConclusion::Unitary);
}

TEST_CASE("detection agrees with the classifier on a mixed batch") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    GIsometry normal = [&] {
      NormalOptions opts;
      opts.block_sizes.assign(1 + seed % 3, 1);
      opts.seed = seed;
      return make_normal(4, 3, opts);
    }();
    CHECK(detect_generic(normal).conclusion ==
          DetectionConclusion::NonUnitaryNormal);

    NonNormalKind kind = seed % 2 == 0 ? NonNormalKind::Scramble
                                       : NonNormalKind::BlockPhase;
    GIsometry broken = make_nonnormal(4, 3, seed, 1 + seed % 3, 0.6, kind);
    CHECK(detect_generic(broken).conclusion == DetectionConclusion::NotNormal);
  }
}

TEST_CASE("detection handles degenerate eigenvalues by merging eigenspaces") {
  NormalOptions opts;
  opts.block_sizes = {2};
  opts.seed = 13;
  opts.r_blocks = {identity(2)};  // lambda = 1 twice within the block
  GIsometry t = make_normal(4, 3, opts);
  DetectionReport report = detect_generic(t);
  CHECK(report.k == 2);
  CHECK(report.q == 2);
  CHECK(report.conclusion == DetectionConclusion::NonUnitaryNormal);
}

TEST_CASE("no K'-perp means no extra fixed points") {
  CHECK(common_eigen_fixed_points(worked_example()).empty());
}

TEST_CASE("a common tail eigenvalue yields an extra fixed point") {
  NormalOptions opts;
  opts.block_sizes = {1};
  opts.seed = 19;
  opts.u_perp = identity(2);  // U fixes (ran C)-perp pointwise
  opts.v_perp = identity(1);  // V fixes K'-perp: common eigenvalue 1
  GIsometry t = make_normal(3, 2, opts);
  auto extras = common_eigen_fixed_points(t);
  REQUIRE(extras.size() == 1);
  CHECK(std::abs(extras[0].mu - Complex(1.0, 0.0)) < 1e-9);
  CHECK(extras[0].residual < 1e-8);
  // The extra point differs from every generic point.
  for (const auto& p : enumerate_generic(t)) {
    CHECK(diff(extras[0].f, p.f) > 1e-3);
  }
}

TEST_CASE("disjoint tail spectra yield no extra fixed points") {
  NormalOptions opts;
  opts.block_sizes = {1};
  opts.seed = 23;
  Vec u_phases(2);
  u_phases << std::polar(1.0, 0.4), std::polar(1.0, 1.1);
  opts.u_perp = Mat(u_phases.asDiagonal());
  Vec v_phases(1);
  v_phases << std::polar(1.0, 2.2);
  opts.v_perp = Mat(v_phases.asDiagonal());
  GIsometry t = make_normal(3, 2, opts);
  CHECK(common_eigen_fixed_points(t).empty());
}
