#include <cmath>

#include "doctest.h"
#include "lempertkit/ball.hpp"
#include "lempertkit/ma.hpp"
#include "lempertkit/verify.hpp"

using namespace lempert;
using doctest::Approx;

namespace {
const CVector e1 = unit_vector(2, 0);
const CVector e2 = unit_vector(2, 1);
}  // namespace

TEST_CASE("pluricomplex poisson kernel on the ball") {
  const SphericalRep rep(Domain::ball(2), e1);
  CHECK(pluricomplex_poisson(rep, CVector::Zero(2)) == Approx(-1.0));
  // -> 0 approaching the boundary away from p
  double prev = -1.0;
  for (int k = 1; k <= 10; ++k) {
    const double v = pluricomplex_poisson(rep, (1.0 - std::pow(0.5, k)) * e2);
    CHECK(std::abs(v) < std::abs(prev) + 1e-15);
    prev = v;
  }
  CHECK(std::abs(prev) < 2e-3);
}

TEST_CASE("slice identity") {
  const SphericalRep ball(Domain::ball(2), e1);
  const SliceReport s = slice_check(ball, e1, 16, 64, 1e-12);
  CHECK(s.pass);
  CHECK(s.center_value == Approx(-1.0));
  const CVector v = CVector(e1 + e2).normalized();
  CHECK(slice_check(ball, v, 16, 64, 1e-12).center_value == Approx(-2.0).epsilon(1e-12));

  const Domain pb = Domain::perturbed_ball(2, 0.1);
  const SphericalRep rep(pb, verify::default_base_point(pb));
  Rng rng(5);
  const CVector w = verify::random_direction(rng, rep.nu(), 0.3);
  CHECK(slice_check(rep, w, 4, 16, 1e-6).pass);
}

TEST_CASE("finite-difference complex hessian") {
  const CVector z = CVector(0.2 * e1 + cplx(0.1, -0.3) * e2);
  const CMatrix id = complex_hessian_fd([](const CVector& q) { return q.squaredNorm(); }, z, 1e-2);
  CHECK((id - CMatrix::Identity(2, 2)).norm() < 1e-9);
  const CMatrix zero = complex_hessian_fd([](const CVector& q) { return std::real(q[0] * q[0]); }, z, 1e-2);
  CHECK(zero.norm() < 1e-9);
  auto p = [](const CVector& q) { return ball_poisson_kernel(q, e1); };
  const CVector z2 = 0.2 * e2;
  const CMatrix fd = complex_hessian_fd(p, z2, 1e-2, 3);
  CHECK((fd - ball_poisson_hessian_matrix(z2, e1)).norm() < 1e-5);
}

TEST_CASE("ma verify on the ball") {
  const SphericalRep rep(Domain::ball(2), e1);
  Rng rng(6);
  const auto pts = verify::sample_bulk_points(rep.domain(), e1, 20, rng);
  MAOptions opts;
  opts.tol_det = 1e-8;
  opts.tol_psd = 1e-10;
  const MAReport r = ma_verify(rep, pts, opts);
  CHECK(r.pass);
  CHECK(r.max_value < 0.0);
  CHECK(r.worst_det < 1e-8);
}

TEST_CASE("boundary asymptotics on the ball") {
  const SphericalRep rep(Domain::ball(2), e1);
  CHECK(boundary_asymptotics(rep, e1).limit == Approx(-2.0).epsilon(1e-6));
  const CVector v = CVector(0.5 * e1 + std::sqrt(0.75) * e2);
  CHECK(boundary_asymptotics(rep, v).limit == Approx(-4.0).epsilon(1e-6));
  CHECK_THROWS_AS(boundary_asymptotics(rep, e2), Error);
}

TEST_CASE("green function") {
  const Domain ball = Domain::ball(2);
  const CVector z = CVector(0.3 * e1 + cplx(0.0, 0.4) * e2);
  CHECK(green_function(ball, CVector::Zero(2), z) == Approx(std::log(z.norm())).epsilon(1e-12));
  const CVector w = CVector(-0.2 * e1 + 0.1 * e2);
  CHECK(green_function(ball, w, z) == Approx(green_function(ball, z, w)).epsilon(1e-8));
  CHECK(std::abs(green_function(ball, w, (1.0 - 1e-8) * e2)) < 1e-6);

  const SphericalRep rep(ball, e1);
  const GreenNormalReport g0 = green_normal_derivative_relation(rep, CVector::Zero(2));
  CHECK(g0.limit == Approx(1.0).epsilon(1e-6));
  CHECK(g0.error < 1e-4);
  const GreenNormalReport g1 = green_normal_derivative_relation(rep, 0.5 * e1);
  CHECK(g1.limit == Approx(3.0).epsilon(1e-6));
}
