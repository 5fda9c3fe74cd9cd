#pragma once

#include <string>

#include "json.hpp"
#include "lempertkit/ma.hpp"
#include "lempertkit/rigidity.hpp"

namespace lempert::io {

using nlohmann::json;

/// Complex numbers are [re, im]; vectors are arrays of those (plain reals are accepted on input).
json to_json(cplx z);
json to_json(const CVector& v);
cplx cplx_from_json(const json& j);
CVector vector_from_json(const json& j);
CMatrix matrix_from_json(const json& j);

/// {dim, degree, coeffs: [[[re, im], ...] per coordinate]}
json to_json(const HardyMap& h);
HardyMap hardy_from_json(const json& j);

/// {phi, dual, mu, residuals, t}
json to_json(const GeodesicPair& g);
GeodesicPair pair_from_json(const json& j);

/// {kind, n, params {A, b, eps}}; kind in ball, linear_ball, perturbed_ball.
json to_json(const Domain& d);
Domain domain_from_json(const json& j);

json to_json(const SolverConfig& c);
SolverConfig config_from_json(const json& j);

/// {type: boundary|interior_point|interior_direction|through, ...}
struct ProblemSpec {
  std::string type;
  StationaryProblem stationary;
  ThroughProblem through;
};
ProblemSpec problem_from_json(const json& j);

json to_json(const Certificate& c);
json to_json(const RepPoint& r);
json to_json(const BKReport& r);
json to_json(const F3Estimate& e);
json to_json(const ShoikhetReport& s);
json to_json(const SliceReport& s);
json to_json(const MAReport& r, bool with_samples = false);
json to_json(const AsymptoticsReport& r);
json to_json(const GreenNormalReport& r);
json to_json(const LimitEstimate& e);

/// Reads a JSON file; parse and open failures raise ErrorKind::Io.
json read_file(const std::string& path);
/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& contents);
/// Stable text form: 2-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace lempert::io
