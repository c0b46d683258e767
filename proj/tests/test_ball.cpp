#include "doctest.h"

#include <cmath>

#include "cartan/ball.hpp"
#include "cartan/generate.hpp"
#include "cartan/pseudo_unitary.hpp"

using namespace cartan;

namespace {

double diff(const Mat& a, const Mat& b) { return operator_norm(a - b); }

Vec unit(Eigen::Index n, Eigen::Index i) {
  Vec v = Vec::Zero(n);
  v[i] = Complex(1, 0);
  return v;
}

}  // namespace

TEST_CASE("Mobius map sends the origin to its center") {
  Mat b = random_contraction(2, 3, 2, 0.5);
  MobiusMap map{Contraction(b, true)};
  Contraction image = mobius_apply(map, Contraction::zero(3, 2));
  CHECK(diff(image.matrix(), b) < 1e-12);
}

TEST_CASE("Mobius map with center zero is the identity") {
  Mat a = random_contraction(5, 2, 3, 0.8);
  MobiusMap map{Contraction::zero(2, 3)};
  CHECK(diff(mobius_apply(map, Contraction(a, true)).matrix(), a) < 1e-12);
}

TEST_CASE("Mobius map with the negated center kills its center") {
  Mat b = random_contraction(9, 3, 2, 0.7);
  MobiusMap map{Contraction(-b, true)};
  CHECK(operator_norm(mobius_apply(map, Contraction(b, true)).matrix())
        < 1e-12);
}

TEST_CASE("Mobius inverse round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Mat b = random_contraction(rng, 3, 2, 0.6);
    Mat a = random_contraction(rng, 3, 2, 0.8);
    MobiusMap map{Contraction(b, true)};
    MobiusMap inv = map.inverse();
    Contraction round =
        mobius_apply(inv, mobius_apply(map, Contraction(a, true)));
    CHECK(diff(round.matrix(), a) < 1e-8);
    CHECK(diff(inv.inverse().center().matrix(), b) == 0.0);
  }
}

TEST_CASE("Mobius maps preserve the open ball") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    Mat b = random_contraction(rng, 2, 3, 0.85);
    Mat a = random_contraction(rng, 2, 3, 0.9);
    Contraction image =
        mobius_apply(MobiusMap{Contraction(b, true)}, Contraction(a, true));
    CHECK(operator_norm(image.matrix()) < 1.0);
  }
}

TEST_CASE("Mobius apply agrees with the group action (linear representation route)") {
  Tolerances tol;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Mat b = random_contraction(rng, 3, 2, 0.6);
    Mat a = random_contraction(rng, 3, 2, 0.75);
    GIsometry t = from_factors(Contraction(b, true), identity(3), identity(2));
    Mat via_group = act(t, Contraction(a, true)).matrix();
    Mat via_mobius =
        mobius_apply(MobiusMap{Contraction(b, true)}, Contraction(a, true))
            .matrix();
    CHECK(diff(via_group, via_mobius) <= 10 * tol.eq_tol);
  }
}

TEST_CASE("Caratheodory distance basics") {
  Mat a = random_contraction(4, 2, 2 + 1, 0.5);  // 2x3
  Contraction c(a, true);
  CHECK(caratheodory_distance(c, c) == doctest::Approx(0.0).epsilon(1e-12));

  Mat column = Mat::Zero(2, 1);
  column(0, 0) = 0.6;
  double d = caratheodory_distance(Contraction::zero(2, 1),
                                   Contraction(column, true));
  CHECK(d == doctest::Approx(std::atanh(0.6)).epsilon(1e-12));
}

TEST_CASE("Caratheodory distance is symmetric") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Contraction a1(random_contraction(rng, 3, 2, 0.7), true);
    Contraction a2(random_contraction(rng, 3, 2, 0.5), true);
    CHECK(std::abs(caratheodory_distance(a1, a2) -
                   caratheodory_distance(a2, a1)) < 1e-8);
  }
}

TEST_CASE("Caratheodory distance is invariant under the automorphisms") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GIsometry h = make_random(3, 2, seed, 0.7);
    Rng rng(seed + 1000);
    Contraction a1(random_contraction(rng, 3, 2, 0.8), true);
    Contraction a2(random_contraction(rng, 3, 2, 0.6), true);
    double before = caratheodory_distance(a1, a2);
    double after = caratheodory_distance(act(h, a1), act(h, a2));
    CHECK(std::abs(before - after) < 1e-7);
  }
}

TEST_CASE("defect intertwining residual vanishes for contractions") {
  Tolerances tol;
  CHECK(intertwine_residual(Mat::Zero(2, 3)) == 0.0);
  CHECK(intertwine_residual(random_unitary(3, 3)) <= 10 * tol.eq_tol);
  Mat t = random_contraction(8, 3, 2, 0.9);
  CHECK(intertwine_residual(t) < 1e-8);
  CHECK_THROWS_AS(intertwine_residual(2.0 * identity(2)), Error);
}

TEST_CASE("Hermitian form signs") {
  SpaceVector vh{unit(2, 0), Vec::Zero(2)};
  CHECK(hermitian_form(vh, vh).real() == doctest::Approx(1.0));

  SpaceVector vk{Vec::Zero(2), unit(2, 0)};
  CHECK(hermitian_form(vk, vk).real() == doctest::Approx(-1.0));

  SpaceVector light{unit(2, 0), unit(2, 0)};
  CHECK(std::abs(hermitian_form(light, light)) == doctest::Approx(0.0));

  SpaceVector wrong{unit(3, 0), unit(2, 0)};
  CHECK_THROWS_AS((void)hermitian_form(vh, wrong), Error);
}

TEST_CASE("causal classification of vectors") {
  CHECK(classify_vector({unit(2, 0), unit(2, 0)}) == CausalClass::LightLike);
  CHECK(classify_vector({Vec::Zero(2), unit(2, 0)}) == CausalClass::TimeLike);
  CHECK(classify_vector({unit(2, 0), Vec::Zero(2)}) == CausalClass::SpaceLike);
  CHECK_THROWS_WITH_AS(classify_vector({Vec::Zero(2), Vec::Zero(2)}),
                       doctest::Contains("ZeroVector"), Error);
}

TEST_CASE("members leave the Hermitian form invariant") {
  Tolerances tol;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GIsometry t = make_random(3, 2, seed, 0.8);
    Rng rng(seed + 500);
    SpaceVector v{rng.gaussian_matrix(3, 1).col(0),
                  rng.gaussian_matrix(2, 1).col(0)};
    SpaceVector w{rng.gaussian_matrix(3, 1).col(0),
                  rng.gaussian_matrix(2, 1).col(0)};
    Complex before = hermitian_form(v, w);
    Complex after =
        hermitian_form(apply_to_vector(t, v), apply_to_vector(t, w));
    CHECK(std::abs(before - after) <= 10 * tol.eq_tol *
                                          std::max(1.0, std::abs(before)));
  }
}
