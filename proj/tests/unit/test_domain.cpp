#include <cmath>

#include "doctest.h"
#include "lempertkit/domain.hpp"

using namespace lempert;
using doctest::Approx;

namespace {
CVector vec2(cplx a, cplx b) {
  CVector v(2);
  v << a, b;
  return v;
}
Domain diag21() {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 1.0;
  return Domain::linear_ball(a, CVector::Zero(2));
}
}  // namespace

TEST_CASE("unit normals") {
  const Domain ball = Domain::ball(3);
  CHECK((ball.unit_normal(unit_vector(3, 0)) - unit_vector(3, 0)).norm() < 1e-15);
  CVector p = CVector::Zero(3);
  p[2] = kI;
  CHECK((ball.unit_normal(p) - p).norm() < 1e-15);
  CHECK((diag21().unit_normal(vec2(2.0, 0.0)) - unit_vector(2, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(ball.unit_normal(0.5 * unit_vector(3, 0)), Error);
}

TEST_CASE("strong linear convexity") {
  const Domain ball = Domain::ball(2);
  CHECK(ball.strong_linear_convexity_check(unit_vector(2, 0), 64).margin == Approx(1.0).epsilon(1e-12));
  const Domain pb = Domain::perturbed_ball(2, 0.1);
  Rng rng(5);
  for (int k = 0; k < 5; ++k) {
    const CVector p = pb.random_boundary_point(rng);
    CHECK(pb.strong_linear_convexity_check(p, 64).margin >= 0.9 - 1e-12);
  }
  // eps = 2: at p = e2 the complex tangent is spanned by e1, where Levi - |S| = 1 - eps
  const Domain bad = Domain::perturbed_ball(2, 2.0);
  CHECK(bad.strong_linear_convexity_check(unit_vector(2, 1), 64).margin == Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("distance to the boundary") {
  const Domain ball = Domain::ball(2);
  CHECK(ball.distance_to_boundary(CVector::Zero(2)) == Approx(1.0));
  CHECK(ball.distance_to_boundary(0.5 * unit_vector(2, 0)) == Approx(0.5));
  CHECK(diag21().distance_to_boundary(CVector::Zero(2)) == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("non-tangential regions") {
  const Domain ball = Domain::ball(2);
  const CVector p = unit_vector(2, 0);
  CHECK(ball.in_nontangential_region(p, 2.0, 0.9 * p));
  CHECK_FALSE(ball.in_nontangential_region(p, 2.0, vec2(0.0, 0.9)));
  for (double beta : {1.1, 2.0, 5.0}) CHECK(ball.in_nontangential_region(p, beta, (1.0 - 1e-6) * p));
}

TEST_CASE("boundary projection and ray exit") {
  const Domain pb = Domain::perturbed_ball(2, 0.1);
  const CVector q = pb.project_to_boundary(vec2(0.7, cplx(0.1, 0.6)));
  CHECK(std::abs(pb.r(q)) < 1e-12);
  CHECK(pb.on_boundary(q));
  const double t = pb.ray_exit(CVector::Zero(2), unit_vector(2, 0));
  CHECK(t == Approx(1.0 / std::sqrt(1.1)).epsilon(1e-12));
}

TEST_CASE("derivative oracles agree with finite differences") {
  const Domain pb = Domain::perturbed_ball(2, 0.1);
  const CVector z = vec2(cplx(0.3, -0.2), cplx(0.1, 0.4));
  const CVector g = pb.real_gradient(z);
  const double h = 1e-6;
  for (int j = 0; j < 2; ++j) {
    CVector e = CVector::Zero(2);
    e[j] = 1.0;
    const double dx = (pb.r(z + h * e) - pb.r(z - h * e)) / (2 * h);
    const double dy = (pb.r(z + h * kI * e) - pb.r(z - h * kI * e)) / (2 * h);
    CHECK(std::abs(g[j] - cplx(dx, dy)) < 1e-8);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Domain::ball(1), Error);
  CHECK_THROWS_AS(Domain::linear_ball(CMatrix::Zero(2, 2), CVector::Zero(2)), Error);
}
