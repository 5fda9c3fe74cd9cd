#include <cmath>

#include "internal.hpp"
#include "lempertkit/ball.hpp"

namespace lempert {

namespace detail {

int next_pow2(int x) {
  int p = 1;
  while (p < x) p *= 2;
  return p;
}

HardyMap fit_map(const MapFn& f, int dim, int degree, int grid) {
  const auto nodes = unit_roots(grid);
  CMatrix s(dim, grid);
  for (int m = 0; m < grid; ++m) s.col(m) = f(nodes[m]);
  return HardyMap::from_samples(s, degree);
}

double coefficient_tail(const HardyMap& h, int cut) {
  double t = 0.0;
  for (int k = cut + 1; k <= h.degree(); ++k) t = std::max(t, h.coeffs().col(k).cwiseAbs().maxCoeff());
  return t;
}

GeodesicPair compose_pair(const GeodesicPair& pair, const ScalarFn& sigma, const ScalarFn& dsigma,
                          int degree, int grid) {
  GeodesicPair out;
  const int n = pair.dim();
  out.phi = fit_map([&](cplx z) { return pair.phi(sigma(z)); }, n, degree, grid);
  if (pair.dual.dim() == n) {
    out.dual = fit_map([&](cplx z) -> CVector { return pair.dual(sigma(z)) / dsigma(z); }, n,
                       std::max(degree, grid / 2 - 1), grid);
  }
  out.mu.assign(grid, 0.0);
  out.t = pair.t;
  return out;
}

GeodesicPair compose_pair_adaptive(const GeodesicPair& pair, const ScalarFn& sigma,
                                   const ScalarFn& dsigma, int min_degree, int max_degree) {
  int degree = std::max(min_degree, 8);
  for (;;) {
    const int grid = 4 * degree;
    GeodesicPair out = compose_pair(pair, sigma, dsigma, degree, grid);
    const double scale = std::max(1.0, out.phi.coeffs().cwiseAbs().maxCoeff());
    const double tail = coefficient_tail(out.phi, degree - degree / 4);
    if (tail <= 1e-15 * scale || degree >= max_degree) return out;
    degree *= 2;
  }
}

std::vector<double> theta_derivative_weights(int m) {
  std::vector<double> w(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double th = 2.0 * kPi * i / m;
    double acc = 0.0;
    for (int k = 1; k < m / 2; ++k) acc += k * std::sin(k * th);
    w[i] = 2.0 * acc / m;
  }
  return w;
}

namespace {

constexpr int kClosedFormDegree = 512;

// Affine slice {c + R u xi : |xi| < 1} of the ball of radius rho through z in direction u.
struct Slice {
  CVector c;
  CVector u;
  double radius;
};

Slice slice_through(const CVector& z, const CVector& u_in, double rho) {
  Slice s;
  s.u = u_in / u_in.norm();
  s.c = z - hermitian_inner(z, s.u) * s.u;
  const double r2 = rho * rho - s.c.squaredNorm();
  if (!(r2 > 0.0)) fail(ErrorKind::InvalidInput, "ball slice: line misses the ball");
  s.radius = std::sqrt(r2);
  return s;
}

}  // namespace

GeodesicPair ball_direction_pair(const CVector& z, const CVector& v, double rho) {
  const Slice s = slice_through(z, v, rho);
  const cplx lam = hermitian_inner(z, s.u) / s.radius;
  if (!(std::abs(lam) < 1.0)) fail(ErrorKind::InvalidInput, "ball seed: point outside the ball");
  GeodesicPair g;
  g.phi = fit_map(
      [&](cplx x) -> CVector { return s.c + s.radius * ((x + lam) / (1.0 + std::conj(lam) * x)) * s.u; },
      static_cast<int>(z.size()), kClosedFormDegree, 4 * kClosedFormDegree);
  return g;
}

GeodesicPair ball_point_pair(const CVector& z, const CVector& w, double rho) {
  const CVector d = w - z;
  if (d.norm() < 1e-14) fail(ErrorKind::InvalidInput, "interior-point problem: z equals w");
  const Slice s = slice_through(z, d, rho);
  const cplx a = hermitian_inner(z, s.u) / s.radius;
  const cplx lw = hermitian_inner(w, s.u) / s.radius;
  if (!(std::abs(a) < 1.0) || !(std::abs(lw) < 1.0)) {
    fail(ErrorKind::InvalidInput, "ball seed: point outside the ball");
  }
  const cplx b = (lw - a) / (1.0 - std::conj(a) * lw);
  const double t = std::abs(b);
  const cplx e = b / t;
  GeodesicPair g;
  g.phi = fit_map(
      [&](cplx x) -> CVector {
        return s.c + s.radius * ((e * x + a) / (1.0 + std::conj(a) * e * x)) * s.u;
      },
      static_cast<int>(z.size()), kClosedFormDegree, 4 * kClosedFormDegree);
  g.t = t;
  return g;
}

}  // namespace detail

using detail::compose_pair_adaptive;

void SolverConfig::validate() const {
  if (degree < 1) fail(ErrorKind::InvalidInput, "config: degree must be >= 1");
  if (grid < 4 * degree) fail(ErrorKind::InvalidInput, "config: grid must be >= 4 * degree");
  if (!(tol_residual > 0.0)) fail(ErrorKind::InvalidInput, "config: tol_residual must be > 0");
  if (max_iter < 1) fail(ErrorKind::InvalidInput, "config: max_iter must be >= 1");
  if (!(damping >= 0.0)) fail(ErrorKind::InvalidInput, "config: damping must be >= 0");
  if (max_degree < degree) fail(ErrorKind::InvalidInput, "config: max_degree < degree");
}

DualResult dual_map(const HardyMap& phi, const std::vector<double>& mu, const Domain& domain,
                    double tol) {
  const int m = static_cast<int>(mu.size());
  if (m < 2 * phi.degree() + 2) fail(ErrorKind::InvalidInput, "dual_map: grid too small");
  for (double x : mu) {
    if (!(x > 0.0)) fail(ErrorKind::InvalidInput, "dual_map: mu must be positive");
  }
  const int n = phi.dim();
  const auto nodes = unit_roots(m);
  const CMatrix ps = phi.boundary_samples(m);
  CMatrix data(n, m);
  for (int i = 0; i < m; ++i) {
    const CVector nu = domain.normal_at(ps.col(i));
    data.col(i) = nodes[i] * mu[i] * nu.conjugate();
  }
  DualResult out;
  out.dual = HardyMap::from_samples(data, m / 2 - 1);
  const cplx pairing = bilinear(phi.derivative(0.0), out.dual(0.0));
  if (std::abs(pairing) < 1e-300) fail(ErrorKind::NotStationary, "dual_map: degenerate pairing");
  const cplx c = 1.0 / pairing;
  out.dual.coeffs() *= c;
  out.negative_energy = HardyMap::negative_mode_energy(data) * std::norm(c);
  if (std::sqrt(out.negative_energy) > tol) {
    fail(ErrorKind::NotStationary, "dual_map: boundary data has negative Fourier modes");
  }
  return out;
}

double preferred_defect(const HardyMap& dual) {
  const CVector f = dual(1.0);
  const CVector df = dual.derivative(1.0);
  const double nf = f.norm();
  if (!(nf > 0.0)) fail(ErrorKind::InvalidInput, "preferred_defect: dual vanishes at 1");
  cplx acc{};
  for (Eigen::Index j = 0; j < f.size(); ++j) acc += std::conj(f[j]) * kI * df[j];
  return std::real(acc) / nf;
}

void compute_residuals(GeodesicPair& pair, const Domain& domain) {
  const int m = pair.grid() > 0 ? pair.grid() : 4 * pair.phi.degree();
  const auto nodes = unit_roots(m);
  const CMatrix ps = pair.phi.boundary_samples(m);
  const CMatrix dps = pair.phi.derivative_map().boundary_samples(m);
  const int stride = (pair.dual.degree() + m) / m;
  const CMatrix ds = pair.dual.boundary_samples(m * stride);
  double boundary = 0.0, duality = 0.0, dual_bd = 0.0, mu_min = 1e300;
  pair.mu.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const CVector z = ps.col(i);
    boundary = std::max(boundary, std::abs(domain.r(z)));
    const CVector dual = ds.col(i * stride);
    duality = std::max(duality, std::abs(bilinear(dps.col(i), dual) - 1.0));
    const CVector nu = domain.normal_at(z);
    // phi* = zeta mu conj(nu): mu = Re(conj(zeta) <phi*, conj nu>_bilinear)
    const double mu = std::real(std::conj(nodes[i]) * bilinear(dual, nu));
    pair.mu[i] = mu;
    mu_min = std::min(mu_min, mu);
    dual_bd = std::max(dual_bd, (dual - nodes[i] * mu * nu.conjugate()).norm());
  }
  pair.residuals["boundary"] = boundary;
  pair.residuals["duality"] = duality;
  pair.residuals["dual_boundary"] = dual_bd;
  pair.residuals["mu_min"] = mu_min;
  pair.residuals["preferred"] = std::abs(preferred_defect(pair.dual));
}

GeodesicPair preferred_normalize(const GeodesicPair& pair, const Domain& domain, double* t0_out) {
  if (pair.dual.dim() != pair.dim()) fail(ErrorKind::InvalidInput, "preferred_normalize: missing dual");
  if (!domain.on_boundary(pair.phi(1.0), 1e-7)) {
    fail(ErrorKind::NotOnBoundary, "preferred_normalize: phi(1) is not on the boundary");
  }
  const int min_degree = std::max(pair.phi.degree(), 32);
  double t = 0.0;
  GeodesicPair cur = pair;
  double f = preferred_defect(pair.dual);
  // f(t) is affine in t with slope 2|phi*(1)|; Newton converges in one or two steps
  for (int it = 0; it < 20 && std::abs(f) >= 1e-11; ++it) {
    const double slope = 2.0 * cur.dual(1.0).norm();
    if (!(slope > 1e-14)) fail(ErrorKind::SolverFailure, "preferred_normalize: flat derivative");
    t -= f / slope;
    const DiscAutomorphism s = DiscAutomorphism::parabolic(t);
    cur = compose_pair_adaptive(
        pair, [&](cplx z) { return s(z); }, [&](cplx z) { return s.derivative(z); }, min_degree,
        512);
    f = preferred_defect(cur.dual);
  }
  if (std::abs(f) >= 1e-8) fail(ErrorKind::SolverFailure, "preferred_normalize: Newton did not converge");
  if (t0_out) *t0_out = t;
  if (t == 0.0) cur = pair;
  cur.residuals.clear();
  if (cur.grid() < 4 * cur.phi.degree()) cur.mu.assign(4 * cur.phi.degree(), 0.0);
  compute_residuals(cur, domain);
  return cur;
}

}  // namespace lempert
