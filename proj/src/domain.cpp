#include "lempertkit/domain.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lempert {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Ball: return "ball";
    case DomainKind::LinearBall: return "linear-ball";
    case DomainKind::PerturbedBall: return "perturbed-ball";
    case DomainKind::Custom: return "custom";
  }
  return "unknown";
}

Domain Domain::ball(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "ball: dimension must be >= 2");
  Domain d;
  d.kind_ = DomainKind::Ball;
  d.n_ = n;
  d.anchor_ = CVector::Zero(n);
  d.bound_ = 1.0;
  return d;
}

Domain Domain::linear_ball(const CMatrix& a, const CVector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size() || a.rows() < 2) {
    fail(ErrorKind::InvalidInput, "linear-ball: A must be square (n >= 2) and match b");
  }
  if (!a.allFinite() || !b.allFinite()) fail(ErrorKind::InvalidInput, "linear-ball: non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-12 * s(0)) fail(ErrorKind::InvalidInput, "linear-ball: A is singular");
  Domain d;
  d.kind_ = DomainKind::LinearBall;
  d.n_ = static_cast<int>(a.rows());
  d.a_ = a;
  d.a_inv_ = a.inverse();
  d.b_ = b;
  d.anchor_ = b;
  d.bound_ = s(0);
  return d;
}

Domain Domain::perturbed_ball(int n, double eps) {
  if (n < 2 || !std::isfinite(eps)) fail(ErrorKind::InvalidInput, "perturbed-ball: bad parameters");
  Domain d;
  d.kind_ = DomainKind::PerturbedBall;
  d.n_ = n;
  d.eps_ = eps;
  d.anchor_ = CVector::Zero(n);
  // r >= (1 - |eps|)|z|^2 - 1
  d.bound_ = std::abs(eps) < 1.0 ? 1.0 / std::sqrt(1.0 - std::abs(eps))
                                 : std::numeric_limits<double>::infinity();
  return d;
}

Domain Domain::custom(int n, DomainCallbacks callbacks, const CVector& anchor,
                      double bounding_radius) {
  if (!callbacks.value || !callbacks.dr_dzbar || !callbacks.levi || !callbacks.symmetric) {
    fail(ErrorKind::InvalidInput, "custom domain: all four callbacks are required");
  }
  if (n < 2 || anchor.size() != n) fail(ErrorKind::InvalidInput, "custom domain: need n >= 2 and a matching anchor");
  Domain d;
  d.kind_ = DomainKind::Custom;
  d.n_ = n;
  d.anchor_ = anchor;
  d.bound_ = bounding_radius;
  d.callbacks_ = std::make_shared<const DomainCallbacks>(std::move(callbacks));
  if (!(d.r(anchor) < 0.0)) fail(ErrorKind::InvalidInput, "custom domain: anchor is not interior");
  return d;
}

double Domain::r(const CVector& z) const {
  switch (kind_) {
    case DomainKind::Ball: return z.squaredNorm() - 1.0;
    case DomainKind::LinearBall: return (a_inv_ * (z - b_)).squaredNorm() - 1.0;
    case DomainKind::PerturbedBall: return z.squaredNorm() - 1.0 + eps_ * std::real(z[0] * z[0]);
    case DomainKind::Custom: return callbacks_->value(z);
  }
  return 0.0;
}

CVector Domain::dr_dzbar(const CVector& z) const {
  switch (kind_) {
    case DomainKind::Ball: return z;
    case DomainKind::LinearBall: return a_inv_.adjoint() * (a_inv_ * (z - b_));
    case DomainKind::PerturbedBall: {
      CVector g = z;
      g[0] += eps_ * std::conj(z[0]);
      return g;
    }
    case DomainKind::Custom: return callbacks_->dr_dzbar(z);
  }
  return z;
}

CMatrix Domain::levi(const CVector& z) const {
  switch (kind_) {
    case DomainKind::Ball:
    case DomainKind::PerturbedBall: return CMatrix::Identity(n_, n_);
    case DomainKind::LinearBall: return a_inv_.transpose() * a_inv_.conjugate();
    case DomainKind::Custom: return callbacks_->levi(z);
  }
  return {};
}

CMatrix Domain::symmetric_hessian(const CVector& z) const {
  switch (kind_) {
    case DomainKind::Ball:
    case DomainKind::LinearBall: return CMatrix::Zero(n_, n_);
    case DomainKind::PerturbedBall: {
      CMatrix s = CMatrix::Zero(n_, n_);
      s(0, 0) = eps_;
      return s;
    }
    case DomainKind::Custom: return callbacks_->symmetric(z);
  }
  return {};
}

Eigen::MatrixXd Domain::real_hessian(const CVector& z) const {
  // d^2 r[d, e] = 2 Re(sum S_jk d_j e_k) + 2 Re(sum L_jk d_j conj(e_k))
  const CMatrix s = symmetric_hessian(z);
  const CMatrix l = levi(z);
  const int m = 2 * n_;
  Eigen::MatrixXd h(m, m);
  auto basis = [&](int a) {
    CVector e = CVector::Zero(n_);
    e[a / 2] = (a % 2 == 0) ? cplx{1.0, 0.0} : kI;
    return e;
  };
  for (int a = 0; a < m; ++a) {
    const CVector da = basis(a);
    for (int b = a; b < m; ++b) {
      const CVector eb = basis(b);
      const cplx sym = (da.transpose() * s * eb)(0, 0);
      const cplx herm = (da.transpose() * l * eb.conjugate())(0, 0);
      h(a, b) = h(b, a) = 2.0 * (std::real(sym) + std::real(herm));
    }
  }
  return h;
}

bool Domain::on_boundary(const CVector& z, double tol) const {
  return z.size() == n_ && std::abs(r(z)) < tol;
}

CVector Domain::normal_at(const CVector& z) const {
  const CVector g = dr_dzbar(z);
  const double nrm = g.norm();
  if (!(nrm > 1e-8)) fail(ErrorKind::InvalidInput, "normal: vanishing gradient");
  return g / nrm;
}

CVector Domain::unit_normal(const CVector& p) const {
  if (p.size() != n_) fail(ErrorKind::InvalidInput, "unit_normal: dimension mismatch");
  if (!on_boundary(p)) {
    std::ostringstream os;
    os << "unit_normal: point is not on the boundary (r = " << r(p) << ")";
    fail(ErrorKind::NotOnBoundary, os.str());
  }
  return normal_at(p);
}

double Domain::ray_exit(const CVector& origin, const CVector& dir) const {
  const double dn = dir.norm();
  if (!(dn > 0.0)) fail(ErrorKind::InvalidInput, "ray_exit: zero direction");
  if (!(r(origin) < 0.0)) fail(ErrorKind::InvalidInput, "ray_exit: origin is not interior");
  auto f = [&](double t) { return r(origin + t * dir); };
  double lo = 0.0;
  double hi = 1.0 / dn;
  int guard = 0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) fail(ErrorKind::InvalidInput, "ray_exit: domain appears unbounded");
  }
  // safeguarded Newton on [lo, hi]
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double ft = f(t);
    if (ft < 0.0) lo = t; else hi = t;
    const CVector x = origin + t * dir;
    const double slope = std::real(hermitian_inner(dir, real_gradient(x)));
    double next = (slope != 0.0) ? t - ft / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, t) || hi - lo <= 1e-16 * hi) return next;
    t = next;
  }
  return t;
}

CVector Domain::project_to_boundary(const CVector& z) const {
  CVector x = z;
  for (int it = 0; it < 100; ++it) {
    const double rv = r(x);
    if (std::abs(rv) < 1e-15) return x;
    const CVector g = real_gradient(x);
    const double g2 = g.squaredNorm();
    if (!(g2 > 0.0)) fail(ErrorKind::SolverFailure, "project_to_boundary: vanishing gradient");
    x -= (rv / g2) * g;
  }
  if (std::abs(r(x)) > 1e-12) fail(ErrorKind::SolverFailure, "project_to_boundary: no convergence");
  return x;
}

ConvexityReport Domain::strong_linear_convexity_check(const CVector& p, int num_directions,
                                                       std::uint64_t seed) const {
  const CVector nu = unit_normal(p);
  const CMatrix l = levi(p);
  const CMatrix s = symmetric_hessian(p);
  ConvexityReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  auto consider = [&](CVector v) {
    v -= hermitian_inner(v, nu) * nu;
    const double nv = v.norm();
    if (nv < 1e-10) return;
    v /= nv;
    const double leviv = std::real((v.transpose() * l * v.conjugate())(0, 0));
    const double symv = std::abs((v.transpose() * s * v)(0, 0));
    ++rep.samples;
    if (leviv - symv < rep.margin) {
      rep.margin = leviv - symv;
      rep.worst_direction = v;
    }
  };
  for (int j = 0; j < n_; ++j) consider(unit_vector(n_, j));
  Rng rng(seed);
  for (int k = 0; k < num_directions; ++k) consider(rng.unit_sphere(n_));
  if (rep.samples == 0) fail(ErrorKind::InvalidInput, "convexity check: empty tangent space");
  return rep;
}

namespace {

Eigen::VectorXd to_real(const CVector& z) {
  Eigen::VectorXd x(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    x[2 * j] = z[j].real();
    x[2 * j + 1] = z[j].imag();
  }
  return x;
}

CVector to_complex(const Eigen::VectorXd& x) {
  CVector z(x.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = {x[2 * j], x[2 * j + 1]};
  return z;
}

}  // namespace

double Domain::distance_to_boundary(const CVector& z) const {
  if (!(r(z) < 0.0)) fail(ErrorKind::InvalidInput, "distance_to_boundary: point is not interior");
  if (kind_ == DomainKind::Ball) return 1.0 - z.norm();
  // Best of a deterministic fan of rays, then Newton on the KKT system
  // x - z = lambda grad r(x), r(x) = 0.
  double best = std::numeric_limits<double>::infinity();
  CVector best_dir;
  auto shoot = [&](const CVector& d) {
    const double t = ray_exit(z, d);
    if (t < best) {
      best = t;
      best_dir = d;
    }
  };
  if (dr_dzbar(z).norm() > 1e-12) shoot(normal_at(z));  // the gradient vanishes at centers
  for (int j = 0; j < n_; ++j) {
    for (cplx ph : {cplx{1, 0}, cplx{-1, 0}, kI, -kI}) shoot(ph * unit_vector(n_, j));
  }
  Rng rng(0x5eedULL);
  for (int k = 0; k < 24 * n_; ++k) shoot(rng.unit_sphere(n_));
  const Eigen::VectorXd zr = to_real(z);
  Eigen::VectorXd x = to_real(z + best * best_dir);
  const int m = 2 * n_;
  double lambda = 0.0;
  {
    const Eigen::VectorXd g = to_real(real_gradient(to_complex(x)));
    lambda = (x - zr).dot(g) / g.squaredNorm();
  }
  for (int it = 0; it < 50; ++it) {
    const CVector xc = to_complex(x);
    const Eigen::VectorXd g = to_real(real_gradient(xc));
    const Eigen::MatrixXd h = real_hessian(xc);
    Eigen::VectorXd f(m + 1);
    f.head(m) = x - zr - lambda * g;
    f[m] = r(xc);
    if (f.norm() < 1e-14) break;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m + 1, m + 1);
    j.topLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m) - lambda * h;
    j.topRightCorner(m, 1) = -g;
    j.bottomLeftCorner(1, m) = g.transpose();
    const Eigen::VectorXd step = j.fullPivLu().solve(-f);
    x += step.head(m);
    lambda += step[m];
  }
  const CVector w = to_complex(x);
  if (std::abs(r(w)) > 1e-10) {
    fail(ErrorKind::SolverFailure, "distance_to_boundary: projection did not converge");
  }
  const double d = (w - z).norm();
  // the KKT point must not be worse than the best ray
  return std::min(d, best);
}

bool Domain::in_nontangential_region(const CVector& p, double beta, const CVector& z) const {
  if (!(beta > 1.0)) fail(ErrorKind::InvalidInput, "nontangential region: beta must be > 1");
  return (z - p).norm() < beta * distance_to_boundary(z);
}

CVector Domain::random_boundary_point(Rng& rng) const {
  const CVector d = rng.unit_sphere(n_);
  return project_to_boundary(anchor_ + ray_exit(anchor_, d) * d);
}

CVector Domain::random_interior_point(Rng& rng, double max_fraction) const {
  const CVector d = rng.unit_sphere(n_);
  const double s = max_fraction * std::pow(rng.uniform(), 1.0 / (2.0 * n_));
  return anchor_ + s * ray_exit(anchor_, d) * d;
}

}  // namespace lempert
