#include <cmath>

#include "doctest.h"
#include "lempertkit/rigidity.hpp"

using namespace lempert;
using doctest::Approx;

TEST_CASE("chain transform of a parabolic map") {
  const double t = 0.7;
  const ChainBundle cb = chain_transform(SelfMap::parabolic(t));
  for (const cplx z : {cplx(0.2, 0.3), cplx(-0.5, 0.0), cplx(0.0, -0.8)}) {
    CHECK(std::abs(cb.phi(z) - kI * t / (1.0 + kI * t * (1.0 - z))) < 1e-13);
  }
  CHECK(cb.min_re_g >= -1e-12);
}

TEST_CASE("chain transform of the identity") {
  const ChainBundle cb = chain_transform(SelfMap::identity_map());
  CHECK(std::abs(cb.phi(cplx(0.3, 0.1))) < 1e-15);
  CHECK(std::abs(cb.psi(cplx(0.3, 0.1)) - 1.0) < 1e-15);
}

TEST_CASE("chain transform of the counterexample map") {
  const ChainBundle cb = chain_transform(SelfMap::shoikhet());
  CHECK(std::abs(cb.phi(-1.0 / 3.0) - 6.0 / 53.0) < 1e-15);
  const cplx z{0.4, -0.3};
  const cplx ph = cb.phi(z);
  CHECK(1.0 - std::norm(cb.psi(z)) == Approx(4.0 * ph.real() / std::norm(1.0 + ph)).epsilon(1e-12));
}

TEST_CASE("inverse chain") {
  const InverseChainResult id = inverse_chain([](cplx) { return cplx(1.0); });
  CHECK(std::abs(id.f(cplx(0.3, 0.2)) - cplx(0.3, 0.2)) < 1e-15);

  const InverseChainResult r = inverse_chain([](cplx z) { return z; });
  CHECK(r.chain_error < 1e-10);
  SelfMap f = r.f;
  CHECK(third_derivative_at_one(f).value == Approx(-3.0).epsilon(1e-6));

  for (double a : {-0.5, 0.0, 0.3}) {
    const InverseChainResult m = inverse_chain([a](cplx z) { return (z + a) / (1.0 + a * z); });
    CHECK(m.chain_error < 1e-10);
    CHECK(third_derivative_at_one(m.f).value == Approx(-3.0 * (1 - a) / (1 + a)).epsilon(1e-6));
  }
}

TEST_CASE("third derivative at the fixed point") {
  CHECK(std::abs(third_derivative_at_one(SelfMap::identity_map()).value) < 1e-12);
  CHECK(third_derivative_at_one(SelfMap::shoikhet()).value == Approx(-0.6).epsilon(1e-6));
}

TEST_CASE("inequalities for reference maps") {
  const BKReport id = verify_bk_inequalities(SelfMap::identity_map());
  CHECK(id.pass);
  CHECK(std::abs(id.margin_i) < 1e-15);
  CHECK(std::abs(id.margin_ii) < 1e-15);

  const BKReport sh = verify_bk_inequalities(SelfMap::shoikhet());
  CHECK(sh.pass);

  const BKReport par = verify_bk_inequalities(SelfMap::parabolic(1.0));
  CHECK(par.pass);
  CHECK_FALSE(par.checked_ii);
  CHECK(par.margin_i >= 0.0);
}

TEST_CASE("counterexample values") {
  const ShoikhetReport s = shoikhet_counterexample();
  CHECK(s.lhs == Approx(1024.0 / 25281.0).epsilon(1e-12));
  CHECK(std::abs(s.lhs - 0.0405044) < 1e-6);
  CHECK(s.rhs == Approx(64.0 / 1590.0).epsilon(1e-6));
  CHECK(s.rhs_correct == Approx(0.143116).epsilon(1e-5));
  CHECK(s.f3 == Approx(-0.6).epsilon(1e-6));
  CHECK(s.violated);
}

TEST_CASE("random family satisfies both inequalities") {
  Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    const SelfMap f = random_bk_map(rng);
    const BKReport r = verify_bk_inequalities(f, 32, 128);
    CHECK(r.pass);
    CHECK(r.f3.value <= 1e-10);
    REQUIRE(f.exact_f3.has_value());
    CHECK(std::abs(r.f3.value - *f.exact_f3) < 1e-5);
  }
}
