#include "lempertkit/rep.hpp"

#include <cmath>
#include <limits>

#include "lempertkit/ball.hpp"

namespace lempert {

GeodesicCache::Key GeodesicCache::key_of(const CVector& v) {
  Key k;
  k.reserve(2 * v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    k.push_back(std::llround(v[j].real() * 1e9));
    k.push_back(std::llround(v[j].imag() * 1e9));
  }
  return k;
}

std::shared_ptr<const GeodesicPair> GeodesicCache::find(const CVector& v) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = map_.find(key_of(v));
  return it == map_.end() ? nullptr : it->second;
}

std::shared_ptr<const GeodesicPair> GeodesicCache::insert(const CVector& v, GeodesicPair pair) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = map_.try_emplace(key_of(v), nullptr);
  if (inserted) it->second = std::make_shared<const GeodesicPair>(std::move(pair));
  return it->second;
}

std::size_t GeodesicCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

SphericalRep::SphericalRep(const Domain& domain, const CVector& p, const SolverConfig& config)
    : domain_(domain), config_(config) {
  if (p.size() != domain.dim()) fail(ErrorKind::InvalidInput, "spherical rep: dimension mismatch");
  if (!domain.on_boundary(p)) fail(ErrorKind::NotOnBoundary, "spherical rep: p is not on the boundary");
  p_ = p;
  nu_ = domain.unit_normal(p);
}

std::shared_ptr<const GeodesicPair> SphericalRep::geodesic(const CVector& v_in) const {
  const CVector v = normalize_direction(v_in, nu_, config_.min_normal_component);
  if (auto hit = cache_.find(v)) return hit;
  return cache_.insert(v, solve_stationary(domain_, BoundaryProblem{p_, v}, config_));
}

RepPoint SphericalRep::map(const CVector& z, const GeodesicPair* hint) const {
  if (z.size() != domain_.dim() || !z.allFinite()) fail(ErrorKind::InvalidInput, "spherical rep: bad point");
  if (domain_.r(z) > 1e-9) fail(ErrorKind::InvalidInput, "spherical rep: z is exterior");
  RepPoint out;
  out.z = z;
  if ((z - p_).norm() < 1e-6) {
    out.base_point = true;
    out.v = nu_;
    out.zeta = 1.0;
    out.w = nu_;
    return out;
  }
  std::optional<ThroughSolution> seed;
  if (hint) {
    seed.emplace();
    seed->pair = *hint;
    const CVector d1 = hint->phi.derivative(1.0);
    seed->v = d1 / d1.norm();
  } else {
    std::lock_guard<std::mutex> lock(seed_mu_);
    if (last_ && (last_->first - z).norm() < 0.25) seed = last_->second;
  }
  if (seed) {
    try {
      seed->zeta = LeftInverse(seed->pair).eval(z);
    } catch (const Error&) {
      // keep the previous parameter
    }
  }
  ThroughSolution sol;
  bool solved = false;
  if (seed) {
    // cheap attempt only: fixed degree, few iterations, cold start on failure
    SolverConfig warm = config_;
    warm.auto_degree = false;
    warm.degree = seed->pair.phi.degree();
    warm.max_degree = std::max(warm.max_degree, warm.degree);
    warm.grid = std::max(config_.grid * warm.degree / config_.degree, 4 * warm.degree);
    warm.max_iter = 8;
    try {
      sol = solve_through(domain_, ThroughProblem{p_, z}, warm, &*seed);
      solved = std::abs(sol.zeta) <= 1.0 + 1e-9;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SolverFailure) throw;
    }
  }
  if (!solved) sol = solve_through(domain_, ThroughProblem{p_, z}, config_);
  {
    std::lock_guard<std::mutex> lock(seed_mu_);
    last_.emplace(z, sol);
  }
  out.v = sol.v;
  out.zeta = std::abs(sol.zeta) > 1.0 ? sol.zeta / std::abs(sol.zeta) : sol.zeta;
  const cplx a = hermitian_inner(out.v, nu_);
  out.w = nu_ + (out.zeta - 1.0) * a * out.v;
  cache_.insert(out.v, sol.pair);
  return out;
}

CVector SphericalRep::inverse(const CVector& w) const {
  if (w.size() != domain_.dim() || !w.allFinite()) fail(ErrorKind::InvalidInput, "rep inverse: bad point");
  if (w.norm() > 1.0 + 1e-12) fail(ErrorKind::InvalidInput, "rep inverse: w outside the closed ball");
  if ((w - nu_).norm() < 1e-12) return p_;
  const BallInversion inv = ball_invert(nu_, w);
  return (*geodesic(inv.v)).phi(inv.zeta);
}

double SphericalRep::kernel(const CVector& z, const GeodesicPair* hint) const {
  if (domain_.kind() == DomainKind::Ball) {
    // Psi_p is the identity on the ball
    if ((z - p_).norm() < 1e-6) fail(ErrorKind::InvalidInput, "pluricomplex Poisson kernel: z equals p");
    if (domain_.r(z) > 1e-9) fail(ErrorKind::InvalidInput, "pluricomplex Poisson kernel: z is exterior");
    return ball_poisson_kernel(z, p_);
  }
  const RepPoint r = map(z, hint);
  if (r.base_point) fail(ErrorKind::InvalidInput, "pluricomplex Poisson kernel: z equals p");
  return ball_poisson_kernel(r.w, nu_);
}

bool horosphere_membership(const SphericalRep& rep, const CVector& z0, double radius,
                           const CVector& z) {
  if (!(radius > 0.0)) fail(ErrorKind::InvalidInput, "horosphere: R must be positive");
  if (!(rep.domain().r(z0) < 0.0)) fail(ErrorKind::InvalidInput, "horosphere: pole must be interior");
  const CVector w0 = rep.map(z0).w;
  const RepPoint rz = rep.map(z);
  if (rz.base_point) return false;
  return image_horosphere_membership(rep.nu(), w0, radius, rz.w);
}

bool image_horosphere_membership(const CVector& nu, const CVector& w0, double radius,
                                 const CVector& w) {
  if (!(radius > 0.0)) fail(ErrorKind::InvalidInput, "horosphere: R must be positive");
  if (w0.norm() < 1e-14) return ball_horosphere_membership(nu, radius, w);
  if (w.norm() >= 1.0) return false;
  return ball_busemann(w, w0, nu) < 0.5 * std::log(radius);
}

LimitEstimate busemann_reference(const SphericalRep& rep, const CVector& z,
                                 const SolverConfig& config) {
  if (!(rep.domain().r(z) < 0.0)) fail(ErrorKind::InvalidInput, "busemann: z must be interior");
  const auto normal = rep.geodesic(rep.nu());
  const bool ball = rep.domain().kind() == DomainKind::Ball;
  std::vector<double> h;
  std::vector<cplx> vals;
  for (int k = 3; k <= 9; ++k) {
    const double s = std::ldexp(1.0, -k);
    const double t = 1.0 - s;
    const CVector w = normal->phi(t);
    // the reference point gamma(0) sits on the same disc: k(gamma(0), gamma(t)) = atanh t
    const double d = ball ? ball_kobayashi(z, w) : kobayashi_distance(rep.domain(), z, w, config).value;
    h.push_back(s);
    vals.emplace_back(d - std::atanh(t));
  }
  LimitEstimate est = richardson_to_zero(h, vals);
  est.converged = std::isfinite(est.error) && est.error < 1e-3;
  if (!est.converged) fail(ErrorKind::Divergent, "busemann: distance differences do not settle");
  return est;
}

BusemannResult busemann(const SphericalRep& rep, const CVector& z, const CVector& z0,
                        bool check_limit, double tol) {
  BusemannResult r;
  if ((z - z0).norm() == 0.0) {
    r.agree = true;
    return r;
  }
  r.value = 0.5 * std::log(rep.kernel(z0) / rep.kernel(z));
  if (!check_limit) {
    r.limit = r.value;
    r.agree = true;
    return r;
  }
  const LimitEstimate a = busemann_reference(rep, z);
  const LimitEstimate b = busemann_reference(rep, z0);
  r.limit = a.value.real() - b.value.real();
  r.limit_error = a.error + b.error;
  r.agree = std::abs(r.value - r.limit) < tol;
  if (!r.agree) fail(ErrorKind::SolverFailure, "busemann: kernel and distance limits disagree");
  return r;
}

NontangentialBound nontangential_image_bound(const SphericalRep& rep, double beta, int samples,
                                             std::uint64_t seed, double min_depth) {
  if (!(beta > 1.0)) fail(ErrorKind::InvalidInput, "nontangential bound: beta must be > 1");
  if (samples < 1) fail(ErrorKind::InvalidInput, "nontangential bound: samples must be >= 1");
  const int n = rep.domain().dim();
  Rng rng(seed);
  NontangentialBound out;
  const int depths = std::max(1, static_cast<int>(std::ceil(-std::log2(min_depth))) - 1);
  const int per_depth = std::max(1, samples / depths);
  for (int k = 2; k < depths + 2; ++k) {
    const double delta = std::max(std::ldexp(1.0, -k), min_depth);
    for (int s = 0; s < per_depth; ++s) {
      CVector u = rng.unit_sphere(n);
      u -= hermitian_inner(u, rep.nu()) * rep.nu();
      if (u.norm() > 0.0) u /= u.norm();
      const double spread = rng.uniform(0.0, 0.5 * (beta - 1.0));
      const CVector z = rep.p() - delta * rep.nu() + delta * spread * u;
      if (!(rep.domain().r(z) < 0.0) || !rep.domain().in_nontangential_region(rep.p(), beta, z)) continue;
      const RepPoint r = rep.map(z);
      if (r.base_point) continue;
      const double q = (r.w - rep.nu()).norm() / (1.0 - r.w.norm());
      out.bound = std::max(out.bound, q);
      ++out.samples;
    }
    out.by_depth.push_back(out.bound);
  }
  return out;
}

}  // namespace lempert
