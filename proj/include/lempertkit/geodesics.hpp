#pragma once

#include <optional>
#include <variant>

#include "lempertkit/domain.hpp"
#include "lempertkit/geodesic_pair.hpp"

namespace lempert {

struct SolverConfig {
  int degree = 32;             // N, initial truncation degree
  int grid = 128;              // M >= 4N
  double tol_residual = 1e-11;
  int max_iter = 40;
  double damping = 1e-10;      // initial Levenberg-Marquardt parameter
  bool auto_degree = true;     // raise N (doubling) when the coefficient tail is too large
  int max_degree = 256;
  double min_normal_component = 1e-3;

  void validate() const;
};

struct BoundaryProblem {
  CVector p;
  CVector v;
};
struct InteriorPointProblem {
  CVector z;
  CVector w;
};
struct InteriorDirectionProblem {
  CVector z;
  CVector v;
};
using StationaryProblem =
    std::variant<BoundaryProblem, InteriorPointProblem, InteriorDirectionProblem>;

/// Geodesic through the boundary point p and the point z, normalized as a preferred geodesic
/// (phi(1) = p, phi'(1) = <v,nu_p> v, preferred condition), with phi(zeta) = z.
struct ThroughProblem {
  CVector p;
  CVector z;
};

struct ThroughSolution {
  GeodesicPair pair;
  CVector v;    // unit, <v, nu_p> > 0
  cplx zeta{};  // phi(zeta) = z
};

/// Solve for a stationary disc. `seed`, when given, replaces the built-in initial guess.
GeodesicPair solve_stationary(const Domain& domain, const StationaryProblem& problem,
                              const SolverConfig& config = {},
                              const GeodesicPair* seed = nullptr);

ThroughSolution solve_through(const Domain& domain, const ThroughProblem& problem,
                              const SolverConfig& config = {},
                              const ThroughSolution* seed = nullptr);

/// Initial guess used by solve_stationary (exposed for tests and diagnostics).
GeodesicPair initial_guess(const Domain& domain, const StationaryProblem& problem, int degree,
                           int grid);

struct DualResult {
  HardyMap dual;
  double negative_energy = 0.0;
};

/// Nonnegative-mode projection of zeta mu conj(nu o phi), normalized so <phi'(0), conj phi*(0)> = 1.
/// Throws NotStationary when the discarded energy exceeds tol.
DualResult dual_map(const HardyMap& phi, const std::vector<double>& mu, const Domain& domain,
                    double tol = 1e-8);

/// d|phi*(e^{i theta})|/d theta at theta = 0.
double preferred_defect(const HardyMap& dual);

/// phi o sigma_{t0} with the preferred condition satisfied; returns t0 through `t0_out`.
GeodesicPair preferred_normalize(const GeodesicPair& pair, const Domain& domain,
                                 double* t0_out = nullptr);

/// Recompute the named residuals of a pair on its grid.
void compute_residuals(GeodesicPair& pair, const Domain& domain);

/// Lempert left inverse of a geodesic.
class LeftInverse {
 public:
  explicit LeftInverse(GeodesicPair pair, int grid = 0);

  const GeodesicPair& pair() const { return pair_; }

  /// B(zeta) = sum_j (z - phi(zeta))_j phi*_j(zeta) on the contour grid.
  std::vector<cplx> contour_samples(const CVector& z) const;
  int winding(const CVector& z) const;

  cplx eval(const CVector& z) const;
  CVector gradient(const CVector& z) const;
  CVector retraction(const CVector& z) const;

  /// Plain trapezoid value of the contour formula (no Newton polish).
  cplx eval_trapezoid(const CVector& z) const;

 private:
  cplx polish(const CVector& z, cplx zeta) const;

  GeodesicPair pair_;
  HardyMap dual_prime_;
  int grid_;
  std::vector<cplx> nodes_;
  CMatrix phi_s_, dual_s_, dual_prime_s_;
};

struct Certificate {
  double left_inverse_error = 0.0;  // (a)
  int winding_failures = 0;         // (b)
  int winding_probes = 0;
  double boundary_residual = 0.0;   // (c)
  double duality_residual = 0.0;    // (d)
  double mu_min = 0.0;              // (e)
  bool pass = false;
};

Certificate geodesic_certificate(const GeodesicPair& pair, const Domain& domain,
                                 std::uint64_t seed = 1, double tol = 1e-7);

struct DistanceResult {
  double value = 0.0;
  Certificate certificate;
  GeodesicPair pair;
};

DistanceResult kobayashi_distance(const Domain& domain, const CVector& z, const CVector& w,
                                  const SolverConfig& config = {});
DistanceResult kobayashi_metric(const Domain& domain, const CVector& z, const CVector& v,
                                const SolverConfig& config = {});

}  // namespace lempert
