#include "lempertkit/ma.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "lempertkit/ball.hpp"

namespace lempert {

double pluricomplex_poisson(const SphericalRep& rep, const CVector& z) { return rep.kernel(z); }

SliceReport slice_check(const SphericalRep& rep, const CVector& v_in, int radii, int angles,
                        double tol, double tol_harmonic) {
  if (radii < 1 || angles < 1) fail(ErrorKind::InvalidInput, "slice_check: empty grid");
  const CVector v = normalize_direction(v_in, rep.nu());
  const double a = std::real(hermitian_inner(v, rep.nu()));
  const auto geo = rep.geodesic(v);
  const GeodesicPair* hint = geo.get();
  auto u = [&](cplx zeta) { return rep.kernel(geo->phi(zeta), hint); };
  SliceReport s;
  for (int i = 0; i < radii; ++i) {
    const double r = (i + 0.5) / radii;
    for (int j = 0; j < angles; ++j) {
      const cplx zeta = std::polar(r, 2.0 * kPi * j / angles);
      const double expected = -poisson_kernel(zeta) / (a * a);
      s.max_error = std::max(s.max_error, std::abs(u(zeta) - expected) / std::max(1.0, std::abs(expected)));
      ++s.samples;
    }
  }
  s.center_value = u(0.0);
  // mean-value defect on small circles (trapezoid rule is spectrally accurate there)
  std::vector<cplx> centers{0.0};
  for (int k = 0; k < 4; ++k) centers.push_back(std::polar(0.4, kPi * k / 2.0));
  for (const cplx c : centers) {
    // pole of the disc kernel at 1: trapezoid error ~ (rho / (1 - |c|))^kNodes
    const double rho = 0.25 * (1.0 - std::abs(c));
    double mean = 0.0;
    constexpr int kNodes = 32;
    for (int k = 0; k < kNodes; ++k) mean += u(c + std::polar(rho, 2.0 * kPi * k / kNodes));
    mean /= kNodes;
    s.harmonicity = std::max(s.harmonicity, 4.0 * std::abs(mean - u(c)) / (rho * rho));
  }
  s.pass = s.max_error < tol && s.harmonicity < tol_harmonic;
  return s;
}

namespace {

Eigen::MatrixXd real_hessian_fd(const RealField& u, const CVector& z, double h) {
  const int n = static_cast<int>(z.size());
  const int m = 2 * n;
  auto dir = [&](int i) {
    CVector d = CVector::Zero(n);
    d[i / 2] = (i % 2 == 0) ? cplx{1.0, 0.0} : kI;
    return d;
  };
  const double u0 = u(z);
  Eigen::MatrixXd hs(m, m);
  for (int i = 0; i < m; ++i) {
    const CVector di = dir(i);
    hs(i, i) = (u(z + h * di) + u(z - h * di) - 2.0 * u0) / (h * h);
    for (int j = i + 1; j < m; ++j) {
      const CVector dj = dir(j);
      const double v = (u(z + h * (di + dj)) - u(z + h * (di - dj)) - u(z - h * (di - dj)) +
                        u(z - h * (di + dj))) /
                       (4.0 * h * h);
      hs(i, j) = v;
      hs(j, i) = v;
    }
  }
  return hs;
}

}  // namespace

CMatrix complex_hessian_fd(const RealField& u, const CVector& z, double h, int levels,
                           double* asymmetry) {
  if (!(h > 0.0)) fail(ErrorKind::InvalidInput, "complex_hessian_fd: step must be positive");
  if (levels < 1) fail(ErrorKind::InvalidInput, "complex_hessian_fd: levels must be >= 1");
  const int n = static_cast<int>(z.size());
  // Richardson table in h^2
  std::vector<Eigen::MatrixXd> t;
  for (int l = 0; l < levels; ++l) {
    t.push_back(real_hessian_fd(u, z, std::ldexp(h, -l)));
    double f = 4.0;
    for (int k = l - 1; k >= 0; --k, f *= 4.0) t[k] = (f * t[k + 1] - t[k]) / (f - 1.0);
  }
  const Eigen::MatrixXd& hs = t[0];
  CMatrix c(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double xx = hs(2 * j, 2 * k), yy = hs(2 * j + 1, 2 * k + 1);
      const double xy = hs(2 * j, 2 * k + 1), yx = hs(2 * j + 1, 2 * k);
      c(j, k) = 0.25 * cplx{xx + yy, xy - yx};
    }
  }
  const CMatrix herm = 0.5 * (c + c.adjoint());
  if (asymmetry) *asymmetry = (c - herm).norm();
  return herm;
}

MAReport ma_verify(const SphericalRep& rep, const std::vector<CVector>& points,
                   const MAOptions& opts) {
  MAReport r;
  r.max_value = -std::numeric_limits<double>::infinity();
  const RealField u = [&](const CVector& z) { return rep.kernel(z); };
  for (const CVector& z : points) {
    MASample s;
    s.z = z;
    const double clearance = rep.domain().distance_to_boundary(z);
    const bool closed_form = rep.domain().kind() == DomainKind::Ball;
    const double fraction = opts.step_fraction > 0.0 ? opts.step_fraction : (closed_form ? 0.1 : 0.02);
    const double h = fraction * clearance;
    if (!(clearance > 4.0 * h) || !(h > 0.0)) fail(ErrorKind::InvalidInput, "ma_verify: insufficient clearance");
    s.value = u(z);
    const int levels = opts.levels > 0 ? opts.levels : (closed_form ? 4 : 2);
    const CMatrix c = complex_hessian_fd(u, z, h, levels);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(c);
    const Eigen::VectorXd ev = es.eigenvalues();
    s.min_eig = ev[0];
    s.max_eig = ev[ev.size() - 1];
    s.det = ev.prod();
    // Levi form v^T C conj(v) vanishes at v = conj(eigenvector)
    const CVector null = es.eigenvectors().col(0).conjugate();
    const RepPoint rp = rep.map(z);
    CVector tangent;
    if (closed_form) {
      tangent = z - rep.p();
    } else {
      tangent = rep.geodesic(rp.v)->phi.derivative(rp.zeta);
    }
    const double cosang = std::abs(hermitian_inner(null, tangent)) / (null.norm() * tangent.norm());
    s.angle = std::acos(std::min(1.0, cosang));
    r.worst_det = std::max(r.worst_det, std::abs(s.det));
    r.worst_min_eig = r.samples.empty() ? s.min_eig : std::min(r.worst_min_eig, s.min_eig);
    r.worst_angle = std::max(r.worst_angle, s.angle);
    r.max_value = std::max(r.max_value, s.value);
    r.samples.push_back(std::move(s));
  }
  r.pass = !r.samples.empty() && r.worst_min_eig >= -opts.tol_psd && r.worst_det <= opts.tol_det &&
           r.worst_angle < opts.tol_angle && r.max_value < 0.0;
  return r;
}

AsymptoticsReport boundary_asymptotics(const SphericalRep& rep, const CVector& u, double beta,
                                       double tol) {
  const cplx un = hermitian_inner(u, rep.nu());
  if (!(un.real() > 0.0)) fail(ErrorKind::InvalidInput, "boundary_asymptotics: curve is not entering");
  AsymptoticsReport out;
  out.expected = -std::real(2.0 / un);
  std::vector<double> h;
  std::vector<cplx> vals;
  out.ratio_min = std::numeric_limits<double>::infinity();
  for (int k = 3; k <= 10; ++k) {
    const double s = std::ldexp(1.0, -k);
    const CVector z = rep.p() - s * u;
    if (!(rep.domain().r(z) < 0.0)) continue;
    if (!rep.domain().in_nontangential_region(rep.p(), beta, z)) {
      fail(ErrorKind::InvalidInput, "boundary_asymptotics: curve leaves the non-tangential region");
    }
    const double pz = rep.kernel(z);
    h.push_back(s);
    vals.emplace_back(pz * s);
    const double ratio = -pz * (z - rep.p()).norm();
    out.ratio_min = std::min(out.ratio_min, ratio);
    out.ratio_max = std::max(out.ratio_max, ratio);
  }
  if (h.size() < 3) fail(ErrorKind::InvalidInput, "boundary_asymptotics: too few interior samples");
  const LimitEstimate est = richardson_to_zero(h, vals);
  out.limit = est.value.real();
  out.error = est.error;
  out.relative = std::abs(out.limit - out.expected) / std::abs(out.expected);
  if (!std::isfinite(out.limit)) fail(ErrorKind::Divergent, "boundary_asymptotics: divergent extrapolation");
  out.pass = out.relative < tol && out.ratio_min > 0.0 && std::isfinite(out.ratio_max);
  return out;
}

double green_function(const Domain& domain, const CVector& w, const CVector& z,
                      const SolverConfig& config) {
  if ((z - w).norm() < 1e-14) fail(ErrorKind::InvalidInput, "green_function: z equals the pole");
  if (!(domain.r(z) < 0.0) || !(domain.r(w) < 0.0)) fail(ErrorKind::InvalidInput, "green_function: points must be interior");
  if (domain.kind() == DomainKind::Ball) {
    // |m_w(z)| = tanh k(z, w)
    const double cz = 1.0 - z.squaredNorm(), cw = 1.0 - w.squaredNorm();
    const double d = std::norm(1.0 - hermitian_inner(z, w));
    return 0.5 * std::log1p(-cz * cw / d);
  }
  const DistanceResult d = kobayashi_distance(domain, z, w, config);
  return std::log(d.pair.t);
}

GreenNormalReport green_normal_derivative_relation(const SphericalRep& rep, const CVector& z,
                                                   int steps, double tol) {
  if (steps < 3) fail(ErrorKind::InvalidInput, "green_normal_derivative_relation: need >= 3 steps");
  GreenNormalReport r;
  r.kernel = rep.kernel(z);
  for (int k = 0; k < steps; ++k) {
    const double h = std::ldexp(1.0, -(k + 4));
    const CVector w = rep.p() - h * rep.nu();
    r.steps.push_back(h);
    r.quotients.push_back(-green_function(rep.domain(), w, z) / h);
  }
  std::vector<cplx> q(r.quotients.begin(), r.quotients.end());
  const LimitEstimate est = richardson_to_zero(r.steps, q);
  r.limit = est.value.real();
  r.error = est.error;
  r.relative = std::abs(r.limit + r.kernel) / std::abs(r.kernel);
  r.pass = r.relative < tol && std::isfinite(r.limit);
  return r;
}

}  // namespace lempert
