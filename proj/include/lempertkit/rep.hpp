#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "lempertkit/geodesics.hpp"

namespace lempert {

struct RepPoint {
  CVector z;
  CVector v;      // unit, <v, nu_p> > 0
  cplx zeta{};    // phi_v(zeta) = z
  CVector w;      // nu_p + (zeta - 1) <v, nu_p> v
  bool base_point = false;  // z within 1e-6 of p
};

/// Preferred geodesics keyed by (p, v rounded to 1e-9); insert-if-absent under a mutex.
class GeodesicCache {
 public:
  std::shared_ptr<const GeodesicPair> find(const CVector& v) const;
  std::shared_ptr<const GeodesicPair> insert(const CVector& v, GeodesicPair pair);
  std::size_t size() const;

 private:
  using Key = std::vector<long long>;
  static Key key_of(const CVector& v);
  mutable std::mutex mu_;
  std::map<Key, std::shared_ptr<const GeodesicPair>> map_;
};

/// Boundary spherical representation at a fixed boundary point p.
class SphericalRep {
 public:
  SphericalRep(const Domain& domain, const CVector& p, const SolverConfig& config = {});

  const Domain& domain() const { return domain_; }
  const CVector& p() const { return p_; }
  const CVector& nu() const { return nu_; }

  /// `hint`, when given, is a geodesic through p expected to pass near z (used as the seed).
  RepPoint map(const CVector& z, const GeodesicPair* hint = nullptr) const;
  CVector inverse(const CVector& w) const;
  /// Preferred geodesic with phi(1) = p in direction v (cached).
  std::shared_ptr<const GeodesicPair> geodesic(const CVector& v) const;

  /// P_Omega(z, p) = P_ball(Psi_p(z), nu_p).
  double kernel(const CVector& z, const GeodesicPair* hint = nullptr) const;

  const GeodesicCache& cache() const { return cache_; }

 private:
  Domain domain_;
  CVector p_, nu_;
  SolverConfig config_;
  mutable GeodesicCache cache_;
  // warm start for nearby Through solves
  mutable std::mutex seed_mu_;
  mutable std::optional<std::pair<CVector, ThroughSolution>> last_;
};

/// Membership of z in E(p, z0, R) through the image: Psi_p(z) lies in the ball horosphere
/// with pole Psi_p(z0) (pole-0 form when Psi_p(z0) = 0, Busemann form otherwise).
bool horosphere_membership(const SphericalRep& rep, const CVector& z0, double radius,
                           const CVector& z);
/// Same test on precomputed images w0 = Psi_p(z0), w = Psi_p(z).
bool image_horosphere_membership(const CVector& nu, const CVector& w0, double radius,
                                 const CVector& w);

/// lim_{t->1} k(z, gamma(t)) - atanh(t), gamma the preferred geodesic at p in the normal
/// direction; differences give the Busemann function B(z, z0) = L(z) - L(z0).
LimitEstimate busemann_reference(const SphericalRep& rep, const CVector& z,
                                 const SolverConfig& config = {});

struct BusemannResult {
  double value = 0.0;     // 1/2 log(P(z0,p)/P(z,p))
  double limit = 0.0;     // extrapolated lim k(z,w) - k(z0,w) along the normal geodesic
  double limit_error = 0.0;
  bool agree = false;     // |value - limit| < tol
};

/// Busemann function at p; with `check_limit` the distance-difference limit is also computed.
BusemannResult busemann(const SphericalRep& rep, const CVector& z, const CVector& z0,
                        bool check_limit = false, double tol = 1e-4);

struct NontangentialBound {
  double bound = 0.0;
  int samples = 0;
  std::vector<double> by_depth;  // running sup at each depth 2^{-k}
};

/// Empirical sup of |Psi_p(z) - nu_p|/(1 - |Psi_p(z)|) over samples of the non-tangential region.
NontangentialBound nontangential_image_bound(const SphericalRep& rep, double beta, int samples,
                                             std::uint64_t seed = 1, double min_depth = 1e-4);

}  // namespace lempert
