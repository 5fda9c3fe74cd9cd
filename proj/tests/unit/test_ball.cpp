#include <cmath>

#include "doctest.h"
#include "lempertkit/ball.hpp"
#include "lempertkit/geodesics.hpp"

using namespace lempert;
using doctest::Approx;

namespace {
CVector vec2(cplx a, cplx b) {
  CVector v(2);
  v << a, b;
  return v;
}
const CVector e1 = unit_vector(2, 0);
const CVector e2 = unit_vector(2, 1);
}  // namespace

TEST_CASE("closed-form ball geodesics") {
  const GeodesicPair d = ball_geodesic(e1, e1);
  CHECK((d.phi(cplx(0.3, 0.2)) - cplx(0.3, 0.2) * e1).norm() < 1e-15);
  CHECK((d.dual(cplx(-0.5, 0.1)) - e1).norm() < 1e-15);

  const CVector v = (e1 + e2) / std::sqrt(2.0);
  const cplx z{0.2, -0.4};
  CHECK((ball_geodesic_eval(e1, v, z) - (e1 + (z - 1.0) * v / std::sqrt(2.0))).norm() < 1e-15);
  const GeodesicPair g = ball_geodesic(e1, v);
  for (const cplx w : unit_roots(16)) CHECK(g.dual(w).norm() == Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(preferred_defect(g.dual)) < 1e-14);
}

TEST_CASE("ball inversion") {
  BallInversion a = ball_invert(e1, CVector::Zero(2));
  CHECK((a.v - e1).norm() < 1e-15);
  CHECK(std::abs(a.zeta) < 1e-15);
  a = ball_invert(e1, -e1);
  CHECK((a.v - e1).norm() < 1e-15);
  CHECK(std::abs(a.zeta + 1.0) < 1e-15);
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const CVector v = normalize_direction(rng.unit_sphere(2), e1);
    if (std::real(hermitian_inner(v, e1)) < 0.05) continue;
    const cplx zeta = rng.in_disc(0.95);
    const BallInversion b = ball_invert(e1, ball_geodesic_eval(e1, v, zeta));
    CHECK((b.v - v).norm() < 1e-9);
    CHECK(std::abs(b.zeta - zeta) < 1e-9);
  }
}

TEST_CASE("ball kobayashi distance") {
  CHECK(ball_kobayashi(CVector::Zero(2), CVector::Zero(2)) == Approx(0.0));
  CHECK(ball_kobayashi(CVector::Zero(2), 0.5 * e1) == Approx(0.5493061).epsilon(1e-7));
  CMatrix u(2, 2);
  u << 0.6, cplx(0.0, 0.8), cplx(0.0, 0.8), 0.6;
  const CVector z = vec2(0.1, cplx(0.2, 0.3)), w = vec2(cplx(-0.4, 0.1), 0.2);
  CHECK(ball_kobayashi(u * z, u * w) == Approx(ball_kobayashi(z, w)).epsilon(1e-13));
}

TEST_CASE("ball horospheres") {
  const HorosphereShape s = ball_horosphere_shape(e1, 1.0);
  CHECK((s.center - 0.5 * e1).norm() < 1e-15);
  CHECK(s.disc_radius == Approx(0.5));
  CHECK(s.orthogonal_radius == Approx(std::sqrt(0.5)));
  CHECK(ball_horosphere_membership(e1, 1.5, CVector::Zero(2)));
  CHECK_FALSE(ball_horosphere_membership(e1, 0.9, CVector::Zero(2)));
  CHECK_FALSE(ball_horosphere_membership(e1, 10.0, e2));
}

TEST_CASE("ball poisson kernel") {
  CHECK(ball_poisson_kernel(CVector::Zero(2), e1) == Approx(-1.0));
  for (double t : {0.5, 0.9, 0.999}) {
    CHECK(ball_poisson_kernel(t * e1, e1) == Approx(-(1 + t) / (1 - t)).epsilon(1e-12));
  }
  CHECK(ball_poisson_kernel(0.999999 * e1, e1) * 1e-6 == Approx(-2.0).epsilon(1e-5));
  // horospheres are sub-level sets: P(z) < -1/R  <=>  member(R)
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const CVector z = rng.in_ball(2, 1.0);
    CHECK(ball_horosphere_membership(e1, 2.0, z) == (ball_poisson_kernel(z, e1) < -0.5));
  }
}

TEST_CASE("ball poisson hessian") {
  CHECK(std::abs(ball_poisson_hessian(CVector::Zero(2), e1, e1)) < 1e-15);
  CHECK(ball_poisson_hessian(CVector::Zero(2), e1, e2) == Approx(1.0));
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const CVector z = rng.in_ball(2, 0.9);
    CHECK(std::abs(ball_poisson_hessian_matrix(z, e1).determinant()) < 1e-10);
  }
}

TEST_CASE("ball busemann") {
  const CVector z0 = vec2(0.1, cplx(0.0, 0.2));
  CHECK(ball_busemann(z0, z0, e1) == Approx(0.0));
  for (double t : {0.2, 0.7}) {
    CHECK(ball_busemann(t * e1, CVector::Zero(2), e1) == Approx(-std::atanh(t)).epsilon(1e-13));
  }
  // limit of k(z, w) - k(z0, w) along w = s e1
  const CVector z = vec2(cplx(0.2, 0.1), -0.3);
  const double s = 1.0 - 1e-7;
  const double lim = ball_kobayashi(z, s * e1) - ball_kobayashi(z0, s * e1);
  CHECK(std::abs(lim - ball_busemann(z, z0, e1)) < 1e-6);
}
