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

double sup_error(const HardyMap& f, const std::function<CVector(cplx)>& g, int nodes = 256) {
  double err = 0.0;
  for (const cplx z : unit_roots(nodes)) err = std::max(err, (f(z) - g(z)).norm());
  return err;
}

Domain linear_domain() {
  CMatrix a(2, 2);
  a << 1.5, cplx(0.2, 0.1), cplx(-0.1, 0.3), 0.8;
  CVector b(2);
  b << cplx(0.1, 0.0), cplx(0.0, -0.2);
  return Domain::linear_ball(a, b);
}
}  // namespace

TEST_CASE("boundary problem on the ball matches the closed form") {
  const Domain ball = Domain::ball(2);
  const GeodesicPair g = solve_stationary(ball, BoundaryProblem{e1, e1});
  CHECK(sup_error(g.phi, [](cplx z) { return CVector(z * e1); }) < 1e-8);
  const CVector v = vec2(0.6, cplx(0.0, 0.8));
  const GeodesicPair h = solve_stationary(ball, BoundaryProblem{e1, v});
  CHECK(sup_error(h.phi, [&](cplx z) { return ball_geodesic_eval(e1, v, z); }) < 1e-8);
  CHECK(h.residuals.at("boundary") < 1e-10);
}

TEST_CASE("interior problems on the ball") {
  const Domain ball = Domain::ball(2);
  const GeodesicPair g = solve_stationary(ball, InteriorPointProblem{CVector::Zero(2), 0.5 * e1});
  CHECK(g.t == Approx(0.5).epsilon(1e-10));
  CHECK((g.phi(0.3) - 0.3 * e1).norm() < 1e-9);
}

TEST_CASE("dual map") {
  const Domain ball = Domain::ball(2);
  const HardyMap phi = ball_geodesic(e1, e1, 4, 16).phi;
  const std::vector<double> mu(16, 1.0);
  CHECK((dual_map(phi, mu, ball).dual(cplx(0.2, 0.3)) - e1).norm() < 1e-13);
  const CVector v = vec2(0.6, cplx(0.0, 0.8));
  const GeodesicPair eta = ball_geodesic(e1, v, 8, 32);
  std::vector<double> mu2(32, 1.0), mu3(32, 3.5);
  const HardyMap d2 = dual_map(eta.phi, mu2, ball).dual, d3 = dual_map(eta.phi, mu3, ball).dual;
  CHECK((d2.coeffs() - d3.coeffs()).norm() < 1e-12);
}

TEST_CASE("preferred normalization recovers the ball geodesic") {
  const Domain ball = Domain::ball(2);
  const CVector v = vec2(0.8, cplx(0.36, 0.48));
  const GeodesicPair eta = ball_geodesic(e1, v, 32, 128);
  double t0 = 1.0;
  preferred_normalize(eta, ball, &t0);
  CHECK(std::abs(t0) < 1e-8);

  const auto s = DiscAutomorphism::parabolic(0.3);
  // phi o sigma pairs with (phi* o sigma) / sigma'
  CMatrix samples(2, 128), dual_samples(2, 128);
  const auto nodes = unit_roots(128);
  for (int k = 0; k < 128; ++k) {
    samples.col(k) = ball_geodesic_eval(e1, v, s(nodes[k]));
    dual_samples.col(k) = eta.dual(s(nodes[k])) / s.derivative(nodes[k]);
  }
  GeodesicPair moved = eta;
  moved.phi = HardyMap::from_samples(samples, 32);
  moved.dual = HardyMap::from_samples(dual_samples, 32);
  const GeodesicPair back = preferred_normalize(moved, ball, &t0);
  CHECK(t0 == Approx(-0.3).epsilon(1e-6));
  CHECK(sup_error(back.phi, [&](cplx z) { return ball_geodesic_eval(e1, v, z); }) < 1e-8);
  CHECK(std::abs(preferred_defect(back.dual)) < 1e-8);
}

TEST_CASE("left inverse of the diameter disc") {
  const GeodesicPair d = ball_geodesic(e1, e1, 1, 8);
  const LeftInverse li(d);
  const CVector z = vec2(0.3, 0.4);
  CHECK(std::abs(li.eval(z) - 0.3) < 1e-13);
  CHECK((li.gradient(z) - e1).norm() < 1e-12);
  CHECK((li.retraction(z) - vec2(0.3, 0.0)).norm() < 1e-13);
}

TEST_CASE("left inverse of a slanted ball geodesic") {
  const CVector v = vec2(0.6, cplx(0.0, 0.8));
  const GeodesicPair eta = ball_geodesic(e1, v, 8, 64);
  const LeftInverse li(eta), fine(eta, 512);
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const cplx z0 = rng.in_disc(0.95);
    CHECK(std::abs(li.eval(eta.phi(z0)) - z0) < 1e-10);
  }
  const CVector z = vec2(0.2, cplx(0.1, -0.1));
  CHECK(std::abs(li.eval_trapezoid(z) - fine.eval_trapezoid(z)) < 1e-10);
  for (const cplx w : unit_roots(32)) CHECK((li.gradient(eta.phi(w)) - eta.dual(w)).norm() < 1e-9);
  // gradient against finite differences of the holomorphic rho
  for (int k = 0; k < 20; ++k) {
    const CVector q = rng.in_ball(2, 0.7);
    const CVector g = li.gradient(q);
    for (int j = 0; j < 2; ++j) {
      CVector e = CVector::Zero(2);
      e[j] = 1e-5;
      CHECK(std::abs((li.eval(q + e) - li.eval(q - e)) / 2e-5 - g[j]) < 1e-6);
    }
    const CVector r = li.retraction(q);
    CHECK((li.retraction(r) - r).norm() < 1e-12);
  }
}

TEST_CASE("certificates") {
  const Domain ball = Domain::ball(2);
  const CVector v = vec2(0.6, cplx(0.0, 0.8));
  const GeodesicPair eta = ball_geodesic(e1, v, 8, 64);
  const Certificate c = geodesic_certificate(eta, ball);
  CHECK(c.pass);
  CHECK(c.boundary_residual < 1e-12);
  CHECK(c.duality_residual < 1e-12);

  GeodesicPair noisy = eta;
  Rng rng(8);
  for (int k = 0; k <= noisy.phi.degree(); ++k) {
    for (int j = 0; j < 2; ++j) noisy.phi.coeffs()(j, k) += 1e-3 * rng.complex_normal();
  }
  CHECK_FALSE(geodesic_certificate(noisy, ball).pass);

  const Domain lin = linear_domain();
  const CVector p = lin.project_to_boundary(lin.anchor() + vec2(1.0, 0.3));
  const CVector nu = lin.unit_normal(p);
  const GeodesicPair lg = solve_stationary(lin, BoundaryProblem{p, nu});
  CHECK(geodesic_certificate(lg, lin).pass);
}

TEST_CASE("near-tangential directions are rejected") {
  const Domain ball = Domain::ball(2);
  const CVector v = (vec2(1e-5, 0.0) + e2).normalized();
  try {
    solve_stationary(ball, BoundaryProblem{e1, v});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NearTangential);
  }
}

TEST_CASE("kobayashi distance and metric") {
  const Domain ball = Domain::ball(2);
  CHECK(kobayashi_distance(ball, CVector::Zero(2), 0.5 * e1).value == Approx(0.5493061).epsilon(1e-7));
  CHECK(kobayashi_metric(ball, CVector::Zero(2), vec2(0.6, 0.8)).value == Approx(1.0).epsilon(1e-8));
  CHECK(kobayashi_metric(ball, 0.5 * e1, e1).value == Approx(4.0 / 3.0).epsilon(1e-8));
  const CVector v = vec2(0.3, cplx(0.1, 0.2));
  const double m1 = kobayashi_metric(ball, 0.2 * e2, v).value;
  const double m2 = kobayashi_metric(ball, 0.2 * e2, cplx(2.0, 1.0) * v).value;
  CHECK(m2 == Approx(std::abs(cplx(2.0, 1.0)) * m1).epsilon(1e-8));

  const Domain lin = linear_domain();
  const CVector z = lin.offset_b() + vec2(0.1, 0.05), w = lin.offset_b() + vec2(cplx(-0.3, 0.2), 0.1);
  const double kzw = kobayashi_distance(lin, z, w).value;
  CHECK(kzw == Approx(kobayashi_distance(lin, w, z).value).epsilon(1e-8));
  const auto ainv = lin.matrix_a().inverse();
  CHECK(std::abs(kzw - ball_kobayashi(ainv * (z - lin.offset_b()), ainv * (w - lin.offset_b()))) < 1e-8);
}
