#include <cmath>

#include "doctest.h"
#include "lempertkit/ball.hpp"
#include "lempertkit/rep.hpp"
#include "lempertkit/verify.hpp"

using namespace lempert;
using doctest::Approx;

namespace {
const CVector e1 = unit_vector(2, 0);
}

TEST_CASE("spherical representation of the ball is the identity") {
  const Domain ball = Domain::ball(2);
  const SphericalRep rep(ball, e1);
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const CVector z = rng.in_ball(2, 0.95);
    CHECK((rep.map(z).w - z).norm() < 1e-8);
    CHECK((rep.inverse(z) - z).norm() < 1e-8);
  }
  CHECK((rep.map(e1).w - e1).norm() < 1e-15);
  CHECK(rep.map(e1).base_point);
  CHECK((rep.inverse(rep.nu()) - e1).norm() < 1e-15);
  // boundary to boundary
  CVector q(2);
  q << 0.0, cplx(0.6, 0.8);
  CHECK(rep.map(q).w.norm() == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spherical representation of a perturbed ball") {
  const Domain pb = Domain::perturbed_ball(2, 0.1);
  const SphericalRep rep(pb, verify::default_base_point(pb));
  Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    const CVector w = rng.in_ball(2, 0.8);
    const CVector z = rep.inverse(w);
    CHECK(pb.r(z) < 0.0);
    CHECK((rep.map(z).w - w).norm() < 1e-7);
  }
  CHECK((rep.inverse(rep.nu()) - rep.p()).norm() < 1e-12);
  CHECK(rep.map(rep.p()).base_point);
}

TEST_CASE("horospheres and busemann on the ball") {
  const Domain ball = Domain::ball(2);
  const SphericalRep rep(ball, e1);
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const CVector z = rng.in_ball(2, 0.95);
    const double radius = std::exp(rng.uniform(-2.0, 2.0));
    CHECK(horosphere_membership(rep, CVector::Zero(2), radius, z) == ball_horosphere_membership(e1, radius, z));
  }
  const CVector z0(CVector::Zero(2));
  CHECK(horosphere_membership(rep, z0, 1.5, z0));
  CHECK_FALSE(horosphere_membership(rep, z0, 0.8, z0));
  CVector near(2);
  near << 0.0, 0.999999;
  CHECK_FALSE(horosphere_membership(rep, z0, 5.0, near));

  const CVector a = 0.3 * e1 + 0.2 * unit_vector(2, 1), b = -0.1 * e1;
  CHECK(busemann(rep, a, a).value == Approx(0.0));
  CHECK(busemann(rep, a, b).value == Approx(ball_busemann(a, b, e1)).epsilon(1e-12));
  CHECK(busemann(rep, a, b).value == Approx(-busemann(rep, b, a).value).epsilon(1e-12));
  const BusemannResult lim = busemann(rep, a, b, true, 1e-6);
  CHECK(lim.agree);
}

TEST_CASE("non-tangential image bound") {
  const Domain ball = Domain::ball(2);
  const NontangentialBound nb = nontangential_image_bound(SphericalRep(ball, e1), 2.0, 200);
  CHECK(std::isfinite(nb.bound));
  CHECK(nb.bound <= 2.0 + 1e-9);
  CHECK(nb.samples > 0);
}
