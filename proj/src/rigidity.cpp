#include "lempertkit/rigidity.hpp"

#include <cmath>
#include <limits>

namespace lempert {

SelfMap SelfMap::identity_map() {
  SelfMap s;
  s.f = [](cplx z) { return z; };
  s.label = "identity";
  s.identity = true;
  s.exact_f3 = 0.0;
  return s;
}

SelfMap SelfMap::from_hardy(const HardyMap& h, std::string label) {
  if (h.dim() != 1) fail(ErrorKind::InvalidInput, "self-map: HardyMap must have dimension 1");
  SelfMap s;
  s.f = [h](cplx z) { return h(z)[0]; };
  s.label = std::move(label);
  return s;
}

SelfMap SelfMap::parabolic(double t) {
  const DiscAutomorphism a = DiscAutomorphism::parabolic(t);
  SelfMap s;
  s.f = [a](cplx z) { return a(z); };
  s.label = "parabolic";
  // sigma_t - z = i t (z-1)^2 / (1 + i t (1 - z)): contact of order two only
  s.third_order_contact = t == 0.0;
  s.identity = t == 0.0;
  return s;
}

SelfMap SelfMap::shoikhet() {
  SelfMap s;
  s.f = [](cplx z) {
    const cplx q = (1.0 - z) * (1.0 - z);
    return (10.0 * z + q) / (10.0 + q);
  };
  s.label = "shoikhet";
  s.exact_f3 = -0.6;
  return s;
}

std::vector<cplx> disc_grid(int radii, int angles, double exclusion) {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(radii) * angles);
  for (int i = 0; i < radii; ++i) {
    const double r = (i + 0.5) / radii;
    for (int j = 0; j < angles; ++j) {
      const cplx z = std::polar(r, 2.0 * kPi * j / angles);
      if (std::abs(z - 1.0) >= exclusion) pts.push_back(z);
    }
  }
  return pts;
}

namespace {

cplx chain_phi(const ScalarMap& f, cplx z) { return (f(z) - z) / ((z - 1.0) * (z - 1.0)); }

}  // namespace

ChainBundle chain_transform(const SelfMap& f, int radii, int angles) {
  ChainBundle c;
  if (f.identity) {
    c.g = [](cplx) { return cplx{}; };
    c.phi = [](cplx) { return cplx{}; };
    c.psi = [](cplx) { return cplx{1.0, 0.0}; };
    c.max_abs_psi = 1.0;
    return c;
  }
  const ScalarMap fn = f.f;
  c.g = [fn](cplx z) {
    const cplx w = fn(z);
    return (1.0 + w) / (1.0 - w) - (1.0 + z) / (1.0 - z);
  };
  c.phi = [fn](cplx z) { return chain_phi(fn, z); };
  c.psi = [fn](cplx z) {
    const cplx p = chain_phi(fn, z);
    return (1.0 - p) / (1.0 + p);
  };
  c.min_re_g = std::numeric_limits<double>::infinity();
  for (const cplx z : disc_grid(radii, angles)) {
    const cplx w = fn(z);
    if (std::abs(1.0 - w) < 1e-14) fail(ErrorKind::InvalidInput, "chain_transform: f = 1 inside the disc");
    c.min_re_g = std::min(c.min_re_g, c.g(z).real());
    c.max_abs_psi = std::max(c.max_abs_psi, std::abs(c.psi(z)));
  }
  if (c.min_re_g < -1e-10 || c.max_abs_psi > 1.0 + 1e-10) {
    fail(ErrorKind::InvalidInput, "chain_transform: f is not a self-map with the assumed contact");
  }
  return c;
}

InverseChainResult inverse_chain(const ScalarMap& psi, int radii, int angles) {
  InverseChainResult out;
  const auto grid = disc_grid(radii, angles);
  for (const cplx z : grid) {
    if (std::abs(psi(z)) > 1.0 + 1e-12) fail(ErrorKind::InvalidInput, "inverse_chain: |psi| > 1");
  }
  out.f.f = [psi](cplx z) {
    const cplx s = psi(z);
    const cplx phi = (1.0 - s) / (1.0 + s);
    return z + phi * (z - 1.0) * (z - 1.0);
  };
  out.f.label = "inverse_chain";
  bool constant_one = true;
  for (const cplx z : grid) {
    out.max_abs_f = std::max(out.max_abs_f, std::abs(out.f(z)));
    const cplx phi = chain_phi(out.f.f, z);
    out.chain_error = std::max(out.chain_error, std::abs((1.0 - phi) / (1.0 + phi) - psi(z)));
    constant_one = constant_one && std::abs(psi(z) - 1.0) < 1e-15;
  }
  out.f.identity = constant_one;
  // Re phi >= 0 does not force |f| <= 1; psi(z) = z already gives a pole at -1.
  out.self_map = out.max_abs_f <= 1.0 + 1e-12;
  return out;
}

F3Estimate third_derivative_at_one(const SelfMap& f) {
  F3Estimate e;
  if (f.identity) {
    e.consistent = true;
    return e;
  }
  AngularLimitOptions opts;
  opts.k_min = 2;
  opts.k_max = 10;
  const LimitEstimate rad = angular_limit(f.f, 3, opts);
  const ScalarMap fn = f.f;
  const LimitEstimate q = angular_limit(
      [fn](cplx z) {
        const cplx phi = chain_phi(fn, z);
        // (psi - 1)/(z - 1) = -2 phi / ((1 + phi)(z - 1))
        return -2.0 * phi / ((1.0 + phi) * (z - 1.0));
      },
      0, opts);
  e.radial = rad.value.real();
  e.angular_psi = q.value.real();
  e.value = -3.0 * e.angular_psi;
  e.error = rad.error + 3.0 * q.error;
  const double tol = std::max(1e-5 * std::max(1.0, std::abs(e.value)), 10.0 * e.error);
  e.consistent = std::abs(e.radial - e.value) <= tol && std::abs(rad.value.imag()) <= tol &&
                 std::abs(q.value.imag()) <= tol;
  if (!e.consistent) {
    fail(ErrorKind::InvalidInput, "third_derivative_at_one: estimates disagree (hypothesis violated?)");
  }
  return e;
}

BKReport verify_bk_inequalities(const SelfMap& f, int radii, int angles, double tol_i,
                                double tol_ii) {
  BKReport r;
  // without third-order contact only inequality (i) applies
  r.checked_ii = f.third_order_contact;
  if (r.checked_ii) r.f3 = third_derivative_at_one(f);
  r.margin_i = std::numeric_limits<double>::infinity();
  r.margin_ii = std::numeric_limits<double>::infinity();
  for (const cplx z : disc_grid(radii, angles)) {
    const cplx w = f(z);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      fail(ErrorKind::InvalidInput, "verify_bk_inequalities: f not finite on the grid");
    }
    const double re_phi = std::real((w - z) / ((z - 1.0) * (z - 1.0)));
    const double lhs = std::norm(w - z);
    const double rhs = -r.f3.value / 3.0 * std::pow(std::abs(1.0 - z), 6) / (1.0 - std::norm(z)) * re_phi;
    if (re_phi < r.margin_i) {
      r.margin_i = re_phi;
      r.worst_i = z;
    }
    if (r.checked_ii && rhs - lhs < r.margin_ii) {
      r.margin_ii = rhs - lhs;
      r.worst_ii = z;
    }
    ++r.samples;
  }
  r.pass = r.margin_i >= -tol_i && (!r.checked_ii || (r.margin_ii >= -tol_ii && r.f3.value <= 1e-10));
  return r;
}

ShoikhetReport shoikhet_counterexample() {
  const SelfMap f = SelfMap::shoikhet();
  ShoikhetReport s;
  s.zeta = -1.0 / 3.0;
  s.f3 = third_derivative_at_one(f).value;
  const cplx z = s.zeta;
  const cplx d = f(z) - z;
  const double one_minus = 1.0 - std::norm(z);
  s.lhs = std::norm(d);
  s.rhs = -s.f3 / 6.0 * std::real(d * std::pow(1.0 - std::conj(z), 2)) / one_minus;
  s.phi = std::real(d / ((z - 1.0) * (z - 1.0)));
  s.rhs_correct = -s.f3 / 3.0 * std::pow(std::abs(1.0 - z), 6) / one_minus * s.phi;
  s.violated = s.lhs > s.rhs;
  return s;
}

SelfMap random_bk_map(Rng& rng) {
  const double b = rng.uniform(0.5, 2.0);
  const double c = rng.uniform(-1.0, 1.0);
  const int masses = 1 + static_cast<int>(rng.uniform() * 3.0);
  std::vector<cplx> a(masses);
  std::vector<double> w(masses);
  for (int k = 0; k < masses; ++k) {
    a[k] = std::polar(rng.uniform(1.05, 2.0), rng.uniform(0.3, 2.0 * kPi - 0.3));
    w[k] = rng.uniform(0.1, 1.0);
  }
  SelfMap s;
  s.f = [=](cplx z) {
    cplx g0{0.0, c};
    for (int k = 0; k < masses; ++k) g0 += w[k] * (a[k] + z) / (a[k] - z);
    // g = 1/(b H + G0) = (1 - z)/(b (1 + z) + (1 - z) G0)
    const cplx g = (1.0 - z) / (b * (1.0 + z) + (1.0 - z) * g0);
    return (2.0 * z + g * (1.0 - z)) / (2.0 + g * (1.0 - z));
  };
  s.label = "herglotz";
  s.exact_f3 = -3.0 / (2.0 * b);
  return s;
}

}  // namespace lempert
