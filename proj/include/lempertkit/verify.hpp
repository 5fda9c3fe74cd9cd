#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lempertkit/json_io.hpp"

namespace lempert::verify {

using io::json;

/// One property check. `details` is deterministic given the seed; `seconds` is wall time and
/// is kept out of the JSON report.
struct CheckResult {
  std::string name;
  bool pass = false;
  json details = json::object();
  json failures = json::array();
  double seconds = 0.0;
};

json to_json(const CheckResult& c);

/// Generic boundary point used as p when none is given: exit point of the ray from the anchor
/// in direction (1, 0.3i, 0.2, ...).
CVector default_base_point(const Domain& domain);

/// Rejection sample of a unit v with Re <v, nu> >= min_normal after phase normalization.
CVector random_direction(Rng& rng, const CVector& nu, double min_normal = 0.1);

/// anchor + in_ball(0.8) samples inside the domain, at least 0.3 away from p.
std::vector<CVector> sample_bulk_points(const Domain& domain, const CVector& p, int count,
                                        Rng& rng);

using PairList = std::vector<std::pair<Domain, GeodesicPair>>;

CheckResult ball_identity(int n, int points, std::uint64_t seed);
/// Boundary-problem solves on the ball against the closed form; solved pairs go to `pairs`.
CheckResult ball_boundary_solver(int cases, std::uint64_t seed, PairList* pairs = nullptr,
                                 int jobs = 1);
/// Certified discs of z -> A z + b (cond A <= 5) against images of ball discs (Hausdorff).
CheckResult linear_ball_oracle(int cases, std::uint64_t seed, PairList* pairs = nullptr,
                               int jobs = 1);
/// Left-inverse certificate plus grad rho(phi) = phi* on the boundary grid.
CheckResult left_inverse_certificates(const PairList& pairs, std::uint64_t seed);
CheckResult near_tangential_rejection();

struct MATolerances {
  double det = 1e-6;
  double psd = 1e-4;
  double angle = 1e-2;
};
CheckResult ma_degeneracy(const Domain& domain, const CVector& p, int points, std::uint64_t seed,
                          const MATolerances& tol);
CheckResult slice_identity(const Domain& domain, const CVector& p, int directions,
                           std::uint64_t seed, double tol, int radii = 16, int angles = 64);
CheckResult boundary_asymptotic_lines(const Domain& domain, const CVector& p, int lines,
                                      std::uint64_t seed, double tol = 1e-3);
CheckResult green_relation(const Domain& domain, const CVector& p, int points, std::uint64_t seed,
                           double tol = 1e-3);
/// Busemann-based (distance limits) against image-based membership on n_pole x n_radius x n_point
/// probes; probes within `shell` of the horosphere boundary are skipped.
CheckResult horosphere_probes(const Domain& domain, const CVector& p, int n_pole, int n_radius,
                              int n_point, std::uint64_t seed, double shell = 1e-4);
CheckResult burns_krantz(int family, std::uint64_t seed, int jobs = 1);

/// Runs body(0..count-1) on up to `jobs` threads with a static partition.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<Domain> domain;   // rep / ma suites; ball of dimension 2 when absent
  std::optional<CVector> p;
  int jobs = 1;
};

/// Suites: rigidity, ma, rep, geodesics. Report {suite, seed, domain, checks, verdict}.
json run_suite(const std::string& name, const SuiteOptions& opts);
bool suite_passed(const json& report);
const std::vector<std::string>& suite_names();

}  // namespace lempert::verify
