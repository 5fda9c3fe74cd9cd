#include <cmath>
#include <limits>

#include "internal.hpp"

namespace lempert {

LeftInverse::LeftInverse(GeodesicPair pair, int grid) : pair_(std::move(pair)) {
  if (pair_.dual.dim() != pair_.phi.dim()) fail(ErrorKind::InvalidInput, "LeftInverse: missing dual");
  dual_prime_ = pair_.dual.derivative_map();
  grid_ = grid > 0 ? grid : std::max(256, pair_.grid());
  const int need = std::max(pair_.phi.degree(), pair_.dual.degree()) + 1;
  if (grid_ < need) grid_ = detail::next_pow2(2 * need);
  nodes_ = unit_roots(grid_);
  phi_s_ = pair_.phi.boundary_samples(grid_);
  dual_s_ = pair_.dual.boundary_samples(grid_);
  dual_prime_s_ = dual_prime_.boundary_samples(grid_);
}

std::vector<cplx> LeftInverse::contour_samples(const CVector& z) const {
  if (z.size() != pair_.dim()) fail(ErrorKind::InvalidInput, "left inverse: dimension mismatch");
  std::vector<cplx> b(grid_);
  for (int m = 0; m < grid_; ++m) b[m] = bilinear(z - phi_s_.col(m), dual_s_.col(m));
  return b;
}

int LeftInverse::winding(const CVector& z) const {
  const auto b = contour_samples(z);
  return winding_number(b, 1e-14);
}

cplx LeftInverse::eval_trapezoid(const CVector& z) const {
  const auto b = contour_samples(z);
  const CMatrix dphi = pair_.phi.derivative_map().boundary_samples(grid_);
  cplx acc{};
  for (int m = 0; m < grid_; ++m) {
    const cplx db = bilinear(z - phi_s_.col(m), dual_prime_s_.col(m)) - bilinear(dphi.col(m), dual_s_.col(m));
    acc += nodes_[m] * nodes_[m] * db / b[m];
  }
  return acc / static_cast<double>(grid_);
}

cplx LeftInverse::polish(const CVector& z, cplx zeta) const {
  for (int it = 0; it < 60; ++it) {
    const CVector phi = pair_.phi(zeta);
    const CVector dual = pair_.dual(zeta);
    const cplx b = bilinear(z - phi, dual);
    const cplx db = bilinear(z - phi, dual_prime_(zeta)) - bilinear(pair_.phi.derivative(zeta), dual);
    if (std::abs(db) < 1e-300) fail(ErrorKind::SolverFailure, "left inverse: flat contour function");
    const cplx step = b / db;
    zeta -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return zeta;
}

cplx LeftInverse::eval(const CVector& z) const {
  const auto b = contour_samples(z);
  double bmax = 0.0, bmin = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int m = 0; m < grid_; ++m) {
    bmax = std::max(bmax, std::abs(b[m]));
    if (std::abs(b[m]) < bmin) {
      bmin = std::abs(b[m]);
      arg = m;
    }
  }
  auto root_ok = [&](cplx zeta) {
    return std::abs(zeta) <= 1.0 + 1e-9 &&
           std::abs(bilinear(z - pair_.phi(zeta), pair_.dual(zeta))) <= 1e-12 * std::max(1.0, bmax);
  };
  cplx zeta{};
  bool ok = false;
  int w = 1;
  if (bmin > 1e-8 * bmax) {
    w = winding_number(b, 0.0);
    if (w == 1) {
      zeta = polish(z, eval_trapezoid(z));
      ok = root_ok(zeta);
    } else if (w != 0) {
      fail(ErrorKind::WindingMismatch, "left inverse: winding number " + std::to_string(w) + " (expected 1)");
    }
  }
  if (!ok) {
    // z on or next to phi(circle): the root sits on the contour and the sampled count is unreliable
    zeta = polish(z, nodes_[arg]);
    if (!root_ok(zeta) || std::abs(zeta) < 1.0 - 1e-3) {
      if (w != 1) {
        fail(ErrorKind::WindingMismatch, "left inverse: winding number " + std::to_string(w) + " (expected 1)");
      }
      fail(ErrorKind::SolverFailure, "left inverse: root left the closed disc");
    }
  }
  const double r = std::abs(zeta);
  if (r > 1.0) zeta /= r;
  return zeta;
}

CVector LeftInverse::gradient(const CVector& z) const {
  const cplx zeta = eval(z);
  const CVector phi = pair_.phi(zeta);
  const CVector dual = pair_.dual(zeta);
  // implicit differentiation of B(z, rho(z)) = 0
  const cplx db = bilinear(z - phi, dual_prime_(zeta)) - bilinear(pair_.phi.derivative(zeta), dual);
  if (std::abs(db) < 1e-6) fail(ErrorKind::SolverFailure, "left inverse gradient: denominator below 1e-6");
  return -dual / db;
}

CVector LeftInverse::retraction(const CVector& z) const { return pair_.phi(eval(z)); }

Certificate geodesic_certificate(const GeodesicPair& pair, const Domain& domain, std::uint64_t seed,
                                 double tol) {
  Certificate c;
  const LeftInverse li(pair);
  c.left_inverse_error = 0.0;
  try {
    for (int i = 0; i < 32; ++i) {
      const double rad = (i + 0.5) / 32.0;
      for (int j = 0; j < 32; ++j) {
        const cplx zeta = std::polar(rad, 2.0 * kPi * j / 32.0);
        c.left_inverse_error = std::max(c.left_inverse_error, std::abs(li.eval(pair.phi(zeta)) - zeta));
      }
    }
  } catch (const Error&) {
    c.left_inverse_error = std::numeric_limits<double>::infinity();
  }
  Rng rng(seed);
  c.winding_probes = 50;
  for (int k = 0; k < c.winding_probes; ++k) {
    const CVector z = domain.random_interior_point(rng, 0.95);
    int w = 0;
    try {
      w = li.winding(z);
    } catch (const Error&) {
      w = 0;
    }
    if (w != 1) ++c.winding_failures;
  }
  // residuals on a grid four times finer than the solver grid
  GeodesicPair fine = pair;
  fine.mu.assign(4 * std::max(pair.grid(), 4 * pair.phi.degree()), 0.0);
  compute_residuals(fine, domain);
  c.boundary_residual = fine.residuals["boundary"];
  c.duality_residual = fine.residuals["duality"];
  c.mu_min = fine.residuals["mu_min"];
  c.pass = c.left_inverse_error < tol && c.winding_failures == 0 && c.boundary_residual < tol &&
           c.duality_residual < tol && c.mu_min > 0.0;
  return c;
}

DistanceResult kobayashi_distance(const Domain& domain, const CVector& z, const CVector& w,
                                  const SolverConfig& config) {
  if ((z - w).norm() < 1e-14) {
    DistanceResult r;
    r.value = 0.0;
    r.certificate.pass = true;
    return r;
  }
  // The deeper point goes to the disc center: its slice coordinate is small, so the series decays fast.
  const bool swap = domain.distance_to_boundary(z) < domain.distance_to_boundary(w);
  const CVector& a = swap ? w : z;
  const CVector& b = swap ? z : w;
  DistanceResult r;
  r.pair = solve_stationary(domain, InteriorPointProblem{a, b}, config);
  r.certificate = geodesic_certificate(r.pair, domain);
  if (!r.certificate.pass) fail(ErrorKind::SolverFailure, "kobayashi_distance: certificate failed");
  r.value = std::atanh(r.pair.t);
  return r;
}

DistanceResult kobayashi_metric(const Domain& domain, const CVector& z, const CVector& v,
                                const SolverConfig& config) {
  DistanceResult r;
  r.pair = solve_stationary(domain, InteriorDirectionProblem{z, v}, config);
  r.certificate = geodesic_certificate(r.pair, domain);
  if (!r.certificate.pass) fail(ErrorKind::SolverFailure, "kobayashi_metric: certificate failed");
  r.value = v.norm() / r.pair.phi.derivative(0.0).norm();
  return r;
}

}  // namespace lempert
