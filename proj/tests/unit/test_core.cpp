#include <cmath>

#include "doctest.h"
#include "lempertkit/core.hpp"
#include "lempertkit/hardy.hpp"

using namespace lempert;
using doctest::Approx;

TEST_CASE("hermitian inner product") {
  CHECK(std::abs(hermitian_inner(unit_vector(2, 0), unit_vector(2, 0)) - 1.0) < 1e-15);
  CVector a(2), b(2);
  a << 1.0, kI;
  b << kI, 1.0;
  CHECK(std::abs(hermitian_inner(a, b)) < 1e-15);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const CVector z = rng.in_ball(3, 2.0), w = rng.in_ball(3, 2.0);
    CHECK(std::abs(hermitian_inner(z, w) - std::conj(hermitian_inner(w, z))) < 1e-14);
  }
}

TEST_CASE("poincare distance") {
  CHECK(poincare_distance(0.0, 0.0) == Approx(0.0));
  CHECK(poincare_distance(0.0, 0.5) == Approx(std::atanh(0.5)).epsilon(1e-14));
  CHECK(poincare_distance(0.0, 0.5) == Approx(0.5493061).epsilon(1e-7));
  const auto s = DiscAutomorphism::parabolic(0.7);
  const cplx a{0.2, -0.3}, b{-0.5, 0.1};
  CHECK(poincare_distance(s(a), s(b)) == Approx(poincare_distance(a, b)).epsilon(1e-12));
}

TEST_CASE("poisson kernel") {
  CHECK(poisson_kernel(0.0) == Approx(1.0));
  CHECK(poisson_kernel(0.5) == Approx(3.0));
  // bounded along the tangential approach zeta = i t
  for (double t : {0.9, 0.99, 0.999999}) CHECK(poisson_kernel(cplx(0.0, t)) <= 1.0 + 1e-12);
}

TEST_CASE("parabolic automorphism") {
  const auto id = DiscAutomorphism::parabolic(0.0);
  CHECK(std::abs(id(cplx(0.3, 0.4)) - cplx(0.3, 0.4)) < 1e-15);
  for (double t : {-2.0, 0.5, 3.0}) CHECK(std::abs(DiscAutomorphism::parabolic(t)(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(DiscAutomorphism::parabolic(1.0)(0.0) - cplx(0.5, 0.5)) < 1e-15);
  // group law sigma_s o sigma_t = sigma_{s+t}
  const auto st = compose_parabolic(DiscAutomorphism::parabolic(0.4), DiscAutomorphism::parabolic(-1.1));
  CHECK(st.parameter_t() == Approx(-0.7));
  CHECK(std::abs(DiscAutomorphism::parabolic(0.4).inverse()(DiscAutomorphism::parabolic(0.4)(0.2)) - 0.2) < 1e-14);
}

TEST_CASE("winding number") {
  const auto nodes = unit_roots(64);
  std::vector<cplx> id(nodes), sq(64), c(64, cplx(0.3, -0.2));
  for (int k = 0; k < 64; ++k) sq[k] = nodes[k] * nodes[k];
  CHECK(winding_number(id) == 1);
  CHECK(winding_number(c) == 0);
  CHECK(winding_number(sq) == 2);
}

TEST_CASE("angular limits") {
  auto cube = [](cplx z) { return z * z * z; };
  CHECK(std::abs(angular_limit(cube, 3).value - 6.0) < 1e-6);
  auto shoikhet_tail = [](cplx z) { return std::pow(1.0 - z, 3) / 10.0; };
  CHECK(std::abs(angular_limit(shoikhet_tail, 3).value + 0.6) < 1e-6);
  auto e = [](cplx z) { return std::exp(z); };
  CHECK(std::abs(angular_limit(e, 0).value - std::exp(1.0)) < 1e-8);
}

TEST_CASE("richardson extrapolation recovers a polynomial limit") {
  std::vector<double> h;
  std::vector<cplx> f;
  for (int k = 0; k < 6; ++k) {
    const double hk = std::pow(0.5, k);
    h.push_back(hk);
    f.push_back(2.0 + 3.0 * hk - hk * hk);
  }
  const LimitEstimate est = richardson_to_zero(h, f);
  CHECK(std::abs(est.value - 2.0) < 1e-12);
}

TEST_CASE("rng is reproducible") {
  Rng a(42), b(42);
  for (int k = 0; k < 10; ++k) CHECK(a.next() == b.next());
  Rng c(7);
  const CVector s = c.unit_sphere(3);
  CHECK(s.norm() == Approx(1.0));
  CHECK(c.in_ball(2, 0.5).norm() < 0.5);
}

TEST_CASE("hardy maps: fft round trip and negative modes") {
  CMatrix coeffs(2, 4);
  coeffs << 1.0, 0.5, 0.0, cplx(0.0, 0.25), 0.0, 1.0, cplx(0.1, 0.1), 0.0;
  const HardyMap h(coeffs);
  const CMatrix s = h.boundary_samples(16);
  const HardyMap back = HardyMap::from_samples(s, 3);
  CHECK((back.coeffs() - coeffs).norm() < 1e-14);
  CHECK(HardyMap::negative_mode_energy(s) < 1e-14);
  const CVector d = h.derivative(0.3);
  CHECK(std::abs(d[0] - (0.5 + 3.0 * cplx(0.0, 0.25) * 0.09)) < 1e-14);
}
