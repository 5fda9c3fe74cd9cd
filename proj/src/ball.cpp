#include "lempertkit/ball.hpp"

#include <cmath>
#include <sstream>

namespace lempert {

namespace {

void require_ball_boundary(const CVector& p) {
  if (std::abs(p.squaredNorm() - 1.0) > 1e-9) {
    fail(ErrorKind::NotOnBoundary, "ball: p must lie on the unit sphere");
  }
}

void require_ball_interior(const CVector& z, const char* what) {
  if (!(z.squaredNorm() < 1.0)) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": point must lie in the open ball");
  }
}

}  // namespace

CVector normalize_direction(const CVector& v, const CVector& nu, double min_normal_component) {
  if (v.size() != nu.size()) fail(ErrorKind::InvalidInput, "direction: dimension mismatch");
  const double nv = v.norm();
  if (!(nv > 0.0) || !v.allFinite()) fail(ErrorKind::InvalidInput, "direction: v must be nonzero");
  CVector u = v / nv;
  const cplx c = hermitian_inner(u, nu);
  if (std::abs(c) < min_normal_component) {
    std::ostringstream os;
    os << "near-tangential direction: |<v,nu_p>| = " << std::abs(c) << " < "
       << min_normal_component;
    fail(ErrorKind::NearTangential, os.str());
  }
  // <e^{i a} u, nu> = e^{i a} c is real positive for e^{i a} = conj(c)/|c|
  return (std::conj(c) / std::abs(c)) * u;
}

CVector ball_geodesic_eval(const CVector& p, const CVector& v, cplx zeta) {
  return p + (zeta - 1.0) * hermitian_inner(v, p) * v;
}

GeodesicPair ball_geodesic(const CVector& p, const CVector& v_in, int degree, int grid) {
  require_ball_boundary(p);
  if (degree < 1 || grid < 2 * degree + 2) fail(ErrorKind::InvalidInput, "ball_geodesic: bad degree/grid");
  const CVector v = normalize_direction(v_in, p);
  const double a = std::real(hermitian_inner(v, p));
  GeodesicPair g;
  g.phi = HardyMap(static_cast<int>(p.size()), degree);
  g.phi.coeffs().col(0) = p - a * v;
  g.phi.coeffs().col(1) = a * v;
  // eta*(zeta) = (zeta conj(p) + (1 - zeta) a conj(v)) / a^2
  g.dual = HardyMap(static_cast<int>(p.size()), degree);
  g.dual.coeffs().col(0) = v.conjugate() / a;
  g.dual.coeffs().col(1) = (p.conjugate() - a * v.conjugate()) / (a * a);
  g.mu.assign(grid, 1.0 / (a * a));
  return g;
}

BallInversion ball_invert(const CVector& p, const CVector& w) {
  require_ball_boundary(p);
  if (w.size() != p.size()) fail(ErrorKind::InvalidInput, "ball_invert: dimension mismatch");
  if (w.squaredNorm() > 1.0 + 1e-9) fail(ErrorKind::InvalidInput, "ball_invert: w outside the closed ball");
  const CVector d = w - p;
  const double dn = d.norm();
  if (dn < 1e-14) fail(ErrorKind::InvalidInput, "ball_invert: w equals p");
  const cplx c = 1.0 - hermitian_inner(p, w);
  BallInversion out;
  out.v = -(c / std::abs(c)) * (d / dn);
  out.zeta = 1.0 - (dn * dn / std::norm(c)) * std::conj(c);
  return out;
}

double ball_kobayashi(const CVector& z, const CVector& w) {
  if (z.size() != w.size()) fail(ErrorKind::InvalidInput, "ball_kobayashi: dimension mismatch");
  require_ball_interior(z, "ball_kobayashi");
  require_ball_interior(w, "ball_kobayashi");
  // |phi_z(w)| for the involutive automorphism phi_z exchanging 0 and z
  const double z2 = z.squaredNorm();
  const cplx wz = hermitian_inner(w, z);
  CVector num;
  if (z2 == 0.0) {
    num = -w;
  } else {
    const CVector pw = (wz / z2) * z;
    const CVector qw = w - pw;
    num = z - pw - std::sqrt(1.0 - z2) * qw;
  }
  const double q = num.norm() / std::abs(1.0 - wz);
  return std::atanh(std::min(q, 1.0));
}

bool ball_horosphere_membership(const CVector& p, double radius, const CVector& z) {
  if (!(radius > 0.0)) fail(ErrorKind::InvalidInput, "horosphere: R must be > 0");
  const double denom = 1.0 - z.squaredNorm();
  if (denom <= 0.0) return false;
  return std::norm(1.0 - hermitian_inner(z, p)) / denom < radius;
}

HorosphereShape ball_horosphere_shape(const CVector& p, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::InvalidInput, "horosphere: R must be > 0");
  const double rr = radius / (1.0 + radius);
  return {p / (1.0 + radius), rr, std::sqrt(rr)};
}

double ball_poisson_kernel(const CVector& z, const CVector& p) {
  if (z.size() != p.size()) fail(ErrorKind::InvalidInput, "ball kernel: dimension mismatch");
  if ((z - p).norm() < 1e-14) fail(ErrorKind::InvalidInput, "ball kernel: z equals the pole p");
  if (z.squaredNorm() > 1.0 + 1e-12) fail(ErrorKind::InvalidInput, "ball kernel: z outside the ball");
  return -(1.0 - z.squaredNorm()) / std::norm(1.0 - hermitian_inner(z, p));
}

double ball_poisson_hessian(const CVector& z, const CVector& p, const CVector& v) {
  if ((z - p).norm() < 1e-14) fail(ErrorKind::InvalidInput, "ball kernel Hessian: z equals p");
  const cplx a = 1.0 - hermitian_inner(z, p);
  const CVector t = a * v + hermitian_inner(v, p) * (z - p);
  return t.squaredNorm() / std::norm(a * a);
}

CMatrix ball_poisson_hessian_matrix(const CVector& z, const CVector& p) {
  if ((z - p).norm() < 1e-14) fail(ErrorKind::InvalidInput, "ball kernel Hessian: z equals p");
  const int n = static_cast<int>(z.size());
  const cplx a = 1.0 - hermitian_inner(z, p);
  // Levi form is |T v|^2 / |a|^4 with T = a I + (z - p) p^H
  const CMatrix t = a * CMatrix::Identity(n, n) + (z - p) * p.adjoint();
  return (t.transpose() * t.conjugate()) / std::norm(a * a);
}

double ball_busemann(const CVector& z, const CVector& z0, const CVector& p) {
  require_ball_interior(z, "ball_busemann");
  require_ball_interior(z0, "ball_busemann");
  auto h = [&](const CVector& x) {
    return 0.5 * std::log(std::norm(1.0 - hermitian_inner(x, p)) / (1.0 - x.squaredNorm()));
  };
  return h(z) - h(z0);
}

}  // namespace lempert
