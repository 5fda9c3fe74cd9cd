#include "lempertkit/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace lempert::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, "json: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) a.push_back(to_json(v[j]));
  return a;
}

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad("complex number must be a real or [re, im]");
}

CVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("vector must be a non-empty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = cplx_from_json(j[k]);
  return v;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = vector_from_json(j[0]).size();
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const CVector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) bad("ragged matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

json to_json(const HardyMap& h) {
  json coeffs = json::array();
  for (int j = 0; j < h.dim(); ++j) coeffs.push_back(to_json(CVector(h.coeffs().row(j).transpose())));
  return {{"dim", h.dim()}, {"degree", h.degree()}, {"coeffs", coeffs}};
}

HardyMap hardy_from_json(const json& j) {
  const int dim = integer(field(j, "dim"), "dim");
  const int degree = integer(field(j, "degree"), "degree");
  if (dim < 1 || degree < 0) bad("HardyMap dim must be >= 1 and degree >= 0");
  const CMatrix c = matrix_from_json(field(j, "coeffs"));
  if (c.rows() != dim || c.cols() != degree + 1) bad("HardyMap coeffs shape does not match dim/degree");
  return HardyMap(c);
}

json to_json(const GeodesicPair& g) {
  json res = json::object();
  for (const auto& [k, v] : g.residuals) res[k] = v;
  return {{"phi", to_json(g.phi)}, {"dual", to_json(g.dual)}, {"mu", g.mu}, {"residuals", res}, {"t", g.t}};
}

GeodesicPair pair_from_json(const json& j) {
  GeodesicPair g;
  g.phi = hardy_from_json(field(j, "phi"));
  g.dual = hardy_from_json(field(j, "dual"));
  if (g.phi.dim() != g.dual.dim()) bad("phi and dual dimensions differ");
  const json& mu = field(j, "mu");
  if (!mu.is_array() || mu.size() < 4) bad("mu must be an array of at least 4 reals");
  for (const auto& m : mu) g.mu.push_back(number(m, "mu entry"));
  if (j.contains("residuals")) {
    for (const auto& [k, v] : j.at("residuals").items()) g.residuals[k] = number(v, "residual");
  }
  if (j.contains("t")) g.t = number(j.at("t"), "t");
  return g;
}

json to_json(const Domain& d) {
  json params = json::object();
  switch (d.kind()) {
    case DomainKind::LinearBall: {
      json a = json::array();
      for (Eigen::Index r = 0; r < d.matrix_a().rows(); ++r) {
        a.push_back(to_json(CVector(d.matrix_a().row(r).transpose())));
      }
      params["A"] = a;
      params["b"] = to_json(d.offset_b());
      break;
    }
    case DomainKind::PerturbedBall:
      params["eps"] = d.eps();
      break;
    case DomainKind::Custom:
      fail(ErrorKind::InvalidInput, "json: custom domains are not serializable");
    default:
      break;
  }
  std::string kind = to_string(d.kind());
  std::replace(kind.begin(), kind.end(), '-', '_');
  return {{"kind", kind}, {"n", d.dim()}, {"params", params}};
}

Domain domain_from_json(const json& j) {
  if (!j.is_object()) bad("domain descriptor must be an object");
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("domain kind must be a string");
  const int n = integer(field(j, "n"), "n");
  if (n < 1) bad("domain dimension must be >= 1");
  const json params = j.value("params", json::object());
  std::string k = kind.get<std::string>();
  std::replace(k.begin(), k.end(), '-', '_');
  if (k == "ball") return Domain::ball(n);
  if (k == "perturbed_ball") return Domain::perturbed_ball(n, number(field(params, "eps"), "eps"));
  if (k == "linear_ball") {
    const CMatrix a = matrix_from_json(field(params, "A"));
    const CVector b = params.contains("b") ? vector_from_json(params.at("b")) : CVector(CVector::Zero(n));
    if (a.rows() != n || a.cols() != n || b.size() != n) bad("linear_ball A must be n x n and b length n");
    return Domain::linear_ball(a, b);
  }
  if (k == "custom") bad("custom domains must be registered programmatically");
  bad("unknown domain kind '" + k + "'");
}

json to_json(const SolverConfig& c) {
  return {{"degree", c.degree},
          {"grid", c.grid},
          {"tol_residual", c.tol_residual},
          {"max_iter", c.max_iter},
          {"damping", c.damping},
          {"auto_degree", c.auto_degree},
          {"max_degree", c.max_degree},
          {"min_normal_component", c.min_normal_component}};
}

SolverConfig config_from_json(const json& j) {
  if (!j.is_object()) bad("solver config must be an object");
  SolverConfig c;
  for (const auto& [k, v] : j.items()) {
    if (k == "degree") c.degree = integer(v, "degree");
    else if (k == "grid") c.grid = integer(v, "grid");
    else if (k == "tol_residual") c.tol_residual = number(v, "tol_residual");
    else if (k == "max_iter") c.max_iter = integer(v, "max_iter");
    else if (k == "damping") c.damping = number(v, "damping");
    else if (k == "auto_degree") {
      if (!v.is_boolean()) bad("auto_degree must be a boolean");
      c.auto_degree = v.get<bool>();
    } else if (k == "max_degree") c.max_degree = integer(v, "max_degree");
    else if (k == "min_normal_component") c.min_normal_component = number(v, "min_normal_component");
    else bad("unknown solver config key '" + k + "'");
  }
  c.validate();
  return c;
}

ProblemSpec problem_from_json(const json& j) {
  const json& type = field(j, "type");
  if (!type.is_string()) bad("problem type must be a string");
  ProblemSpec s;
  s.type = type.get<std::string>();
  if (s.type == "boundary") {
    s.stationary = BoundaryProblem{vector_from_json(field(j, "p")), vector_from_json(field(j, "v"))};
  } else if (s.type == "interior_point") {
    s.stationary = InteriorPointProblem{vector_from_json(field(j, "z")), vector_from_json(field(j, "w"))};
  } else if (s.type == "interior_direction") {
    s.stationary = InteriorDirectionProblem{vector_from_json(field(j, "z")), vector_from_json(field(j, "v"))};
  } else if (s.type == "through") {
    s.through = ThroughProblem{vector_from_json(field(j, "p")), vector_from_json(field(j, "z"))};
  } else {
    bad("unknown problem type '" + s.type + "'");
  }
  return s;
}

json to_json(const Certificate& c) {
  return {{"left_inverse_error", c.left_inverse_error},
          {"winding_failures", c.winding_failures},
          {"winding_probes", c.winding_probes},
          {"boundary_residual", c.boundary_residual},
          {"duality_residual", c.duality_residual},
          {"mu_min", c.mu_min},
          {"verdict", c.pass ? "PASS" : "FAIL"}};
}

json to_json(const RepPoint& r) {
  return {{"z", to_json(r.z)}, {"v", to_json(r.v)}, {"zeta", to_json(r.zeta)}, {"w", to_json(r.w)},
          {"base_point", r.base_point}};
}

json to_json(const F3Estimate& e) {
  return {{"value", e.value}, {"radial", e.radial}, {"angular_psi", e.angular_psi}, {"error", e.error},
          {"consistent", e.consistent}};
}

json to_json(const BKReport& r) {
  if (!r.checked_ii) {
    return {{"margins", {{"i", r.margin_i}, {"ii", nullptr}}},
            {"worst", {{"i", to_json(r.worst_i)}, {"ii", nullptr}}},
            {"samples", r.samples},
            {"f3_estimate", nullptr},
            {"checked", "i"},
            {"verdict", r.pass ? "PASS" : "FAIL"}};
  }
  return {{"margins", {{"i", r.margin_i}, {"ii", r.margin_ii}}},
          {"worst", {{"i", to_json(r.worst_i)}, {"ii", to_json(r.worst_ii)}}},
          {"samples", r.samples},
          {"f3_estimate", to_json(r.f3)},
          {"checked", "i,ii"},
          {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json to_json(const ShoikhetReport& s) {
  return {{"zeta", to_json(s.zeta)}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"rhs_correct", s.rhs_correct},
          {"re_phi", s.phi}, {"f3", s.f3}, {"violated", s.violated}};
}

json to_json(const SliceReport& s) {
  return {{"max_error", s.max_error}, {"harmonicity", s.harmonicity}, {"center_value", s.center_value},
          {"samples", s.samples}, {"verdict", s.pass ? "PASS" : "FAIL"}};
}

json to_json(const MAReport& r, bool with_samples) {
  json j = {{"count", r.samples.size()},
            {"worst_det", r.worst_det},
            {"worst_min_eig", r.worst_min_eig},
            {"worst_angle", r.worst_angle},
            {"max_value", r.max_value},
            {"verdict", r.pass ? "PASS" : "FAIL"}};
  if (with_samples) {
    json a = json::array();
    for (const MASample& s : r.samples) {
      a.push_back({{"z", to_json(s.z)}, {"value", s.value}, {"min_eig", s.min_eig}, {"max_eig", s.max_eig},
                   {"det", s.det}, {"angle", s.angle}});
    }
    j["samples"] = a;
  }
  return j;
}

json to_json(const AsymptoticsReport& r) {
  return {{"limit", r.limit}, {"expected", r.expected}, {"error", r.error}, {"relative", r.relative},
          {"ratio_min", r.ratio_min}, {"ratio_max", r.ratio_max}, {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json to_json(const GreenNormalReport& r) {
  return {{"steps", r.steps}, {"quotients", r.quotients}, {"limit", r.limit}, {"error", r.error},
          {"kernel", r.kernel}, {"relative", r.relative}, {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json to_json(const LimitEstimate& e) {
  return {{"value", to_json(e.value)}, {"error", e.error}, {"stolz_discrepancy", e.stolz_discrepancy},
          {"converged", e.converged}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Io, "cannot parse '" + path + "': " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot rename onto '" + path + "'");
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lempert::io
