// lempertkit command-line front end.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lempertkit/ball.hpp"
#include "lempertkit/verify.hpp"

namespace {

using lempert::CVector;
using lempert::Domain;
using lempert::Error;
using lempert::ErrorKind;
using lempert::io::json;
namespace io = lempert::io;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitFail = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotOnBoundary:
    case ErrorKind::Io:
      return kExitInput;
    default:
      return kExitSolver;
  }
}

struct Common {
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
  bool verbose = false;
};

int default_jobs() {
  if (const char* env = std::getenv("LEMPERTKIT_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring LEMPERTKIT_JOBS=" << env << "\n";
  }
  return 1;
}

CVector parse_point(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    lempert::fail(ErrorKind::InvalidInput, std::string("cannot parse ") + what + " as JSON: " + text);
  }
  return io::vector_from_json(j);
}

double parse_positive(const std::string& text, const char* what) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    lempert::fail(ErrorKind::InvalidInput, std::string(what) + " must be a number");
  }
  if (!(v > 0.0)) lempert::fail(ErrorKind::InvalidInput, std::string(what) + " must be positive");
  return v;
}

Domain load_domain(const std::string& path) { return io::domain_from_json(io::read_file(path)); }

lempert::SolverConfig load_config(const std::string& path) {
  return path.empty() ? lempert::SolverConfig{} : io::config_from_json(io::read_file(path));
}

void check_dim(const Domain& d, const CVector& v, const char* what) {
  if (v.size() != d.dim()) {
    lempert::fail(ErrorKind::InvalidInput, std::string(what) + " has the wrong dimension");
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_atomic(c.out, text);
  }
}

void emit_json(const Common& c, const json& j) { emit(c, io::dump(j)); }

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Seed for all random sampling")->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads (default: LEMPERTKIT_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "Output file (written atomically); stdout when omitted");
  app->add_flag("--verbose", c.verbose, "Progress on stderr");
}

}  // namespace

namespace {

struct Inputs {
  std::string domain, problem, config, pair;
  std::string p, z, w, v, z0, radius;
  bool check_limit = false;
  double tol = 1e-4;
};

CVector base_point(const Domain& d, const std::string& p) {
  if (!p.empty()) {
    const CVector v = parse_point(p, "--p");
    check_dim(d, v, "--p");
    return v;
  }
  return d.kind() == lempert::DomainKind::Ball ? CVector(lempert::unit_vector(d.dim(), 0))
                                                : lempert::verify::default_base_point(d);
}

CVector point_arg(const Domain& d, const std::string& text, const char* what) {
  if (text.empty()) lempert::fail(ErrorKind::InvalidInput, std::string(what) + " is required");
  const CVector v = parse_point(text, what);
  check_dim(d, v, what);
  return v;
}

int cmd_geodesic_solve(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const io::ProblemSpec spec = io::problem_from_json(io::read_file(in.problem));
  const lempert::SolverConfig cfg = load_config(in.config);
  json out;
  lempert::Certificate cert;
  if (spec.type == "through") {
    const lempert::ThroughSolution s = lempert::solve_through(d, spec.through, cfg);
    cert = lempert::geodesic_certificate(s.pair, d, c.seed);
    out = io::to_json(s.pair);
    out["v"] = io::to_json(s.v);
    out["zeta"] = io::to_json(s.zeta);
  } else {
    const lempert::GeodesicPair g = lempert::solve_stationary(d, spec.stationary, cfg);
    cert = lempert::geodesic_certificate(g, d, c.seed);
    out = io::to_json(g);
  }
  out["problem"] = spec.type;
  out["certificate"] = io::to_json(cert);
  emit_json(c, out);
  return cert.pass ? kExitOk : kExitFail;
}

int cmd_geodesic_certify(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const lempert::GeodesicPair g = io::pair_from_json(io::read_file(in.pair));
  if (g.dim() != d.dim()) lempert::fail(ErrorKind::InvalidInput, "pair and domain dimensions differ");
  const lempert::Certificate cert = lempert::geodesic_certificate(g, d, c.seed);
  emit_json(c, io::to_json(cert));
  return cert.pass ? kExitOk : kExitFail;
}

json distance_json(const lempert::DistanceResult& r) {
  return {{"value", r.value}, {"t", r.pair.t}, {"certificate", io::to_json(r.certificate)}};
}

int cmd_distance(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const CVector z = point_arg(d, in.z, "--z"), w = point_arg(d, in.w, "--w");
  emit_json(c, distance_json(lempert::kobayashi_distance(d, z, w, load_config(in.config))));
  return kExitOk;
}

int cmd_metric(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const CVector z = point_arg(d, in.z, "--z"), v = point_arg(d, in.v, "--v");
  const lempert::DistanceResult r = lempert::kobayashi_metric(d, z, v, load_config(in.config));
  emit_json(c, {{"value", r.value}, {"certificate", io::to_json(r.certificate)}});
  return kExitOk;
}

int cmd_rep_map(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const lempert::SphericalRep rep(d, base_point(d, in.p), load_config(in.config));
  json out = io::to_json(rep.map(point_arg(d, in.z, "--z")));
  out["p"] = io::to_json(rep.p());
  out["nu"] = io::to_json(rep.nu());
  emit_json(c, out);
  return kExitOk;
}

int cmd_rep_inverse(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const lempert::SphericalRep rep(d, base_point(d, in.p), load_config(in.config));
  const CVector w = point_arg(d, in.w, "--w");
  emit_json(c, {{"w", io::to_json(w)}, {"z", io::to_json(rep.inverse(w))}, {"p", io::to_json(rep.p())}});
  return kExitOk;
}

int cmd_horosphere(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const lempert::SphericalRep rep(d, base_point(d, in.p), load_config(in.config));
  const CVector z0 = point_arg(d, in.z0, "--z0"), z = point_arg(d, in.z, "--z");
  const double radius = parse_positive(in.radius, "--R");
  const bool member = lempert::horosphere_membership(rep, z0, radius, z);
  const lempert::BusemannResult b = lempert::busemann(rep, z, z0);
  emit_json(c, {{"member", member}, {"busemann", b.value}, {"level", 0.5 * std::log(radius)}});
  return kExitOk;
}

int cmd_busemann(const Common& c, const Inputs& in) {
  const Domain d = load_domain(in.domain);
  const lempert::SphericalRep rep(d, base_point(d, in.p), load_config(in.config));
  const CVector z0 = point_arg(d, in.z0, "--z0"), z = point_arg(d, in.z, "--z");
  const lempert::BusemannResult b = lempert::busemann(rep, z, z0, in.check_limit, in.tol);
  json out = {{"value", b.value}};
  if (in.check_limit) {
    out["limit"] = b.limit;
    out["limit_error"] = b.limit_error;
    out["agree"] = b.agree;
  }
  emit_json(c, out);
  return kExitOk;
}

}  // namespace

namespace {

struct MAInputs {
  int samples = 20;
  double tol_det = 1e-6, tol_psd = 1e-4, tol_angle = 1e-2;
};

int cmd_ma_verify(const Common& c, const Inputs& in, const MAInputs& m) {
  const Domain d = load_domain(in.domain);
  const lempert::SphericalRep rep(d, base_point(d, in.p), load_config(in.config));
  lempert::Rng rng(c.seed);
  const auto points = lempert::verify::sample_bulk_points(d, rep.p(), m.samples, rng);
  lempert::MAOptions opts;
  opts.tol_det = m.tol_det;
  opts.tol_psd = m.tol_psd;
  opts.tol_angle = m.tol_angle;
  const lempert::MAReport r = lempert::ma_verify(rep, points, opts);
  json out = {{"domain", io::to_json(d)},
              {"p", io::to_json(rep.p())},
              {"seed", c.seed},
              {"tolerances", {{"det", m.tol_det}, {"psd", m.tol_psd}, {"angle", m.tol_angle}}},
              {"report", io::to_json(r, true)},
              {"verdict", r.pass ? "PASS" : "FAIL"}};
  emit_json(c, out);
  if (!r.pass) std::cerr << "ma verify: FAIL (worst det " << r.worst_det << ")\n";
  return r.pass ? kExitOk : kExitFail;
}

struct FieldInputs {
  std::string grid;
  std::string axes = "re1,re2";
  std::string base;
  std::string kind = "poisson";
  std::string pole;
};

struct Axis {
  int coord = 0;
  bool imag = false;
};

Axis parse_axis(const std::string& s, int n) {
  Axis a;
  if (s.size() < 3 || (s.rfind("re", 0) != 0 && s.rfind("im", 0) != 0)) {
    lempert::fail(ErrorKind::InvalidInput, "axis must look like re1 or im2: " + s);
  }
  a.imag = s[0] == 'i';
  try {
    std::size_t used = 0;
    a.coord = std::stoi(s.substr(2), &used) - 1;
    if (used != s.size() - 2) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    lempert::fail(ErrorKind::InvalidInput, "bad axis: " + s);
  }
  if (a.coord < 0 || a.coord >= n) lempert::fail(ErrorKind::InvalidInput, "axis out of range: " + s);
  return a;
}

struct Grid {
  double x0, x1, y0, y1;
  int nx, ny;
};

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 6) lempert::fail(ErrorKind::InvalidInput, "--grid expects xmin,xmax,nx,ymin,ymax,ny");
  Grid g{};
  try {
    g.x0 = std::stod(parts[0]);
    g.x1 = std::stod(parts[1]);
    g.nx = std::stoi(parts[2]);
    g.y0 = std::stod(parts[3]);
    g.y1 = std::stod(parts[4]);
    g.ny = std::stoi(parts[5]);
  } catch (const std::exception&) {
    lempert::fail(ErrorKind::InvalidInput, "--grid: cannot parse " + text);
  }
  if (g.nx < 1 || g.ny < 1 || g.nx * static_cast<long>(g.ny) > 1000000) {
    lempert::fail(ErrorKind::InvalidInput, "--grid: counts must be in [1, 1e6] total");
  }
  return g;
}

double grid_coord(double a, double b, int count, int i) {
  return count == 1 ? a : a + (b - a) * i / (count - 1);
}

std::string fmt17(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_field(const Common& c, const Inputs& in, const FieldInputs& f) {
  const Domain d = load_domain(in.domain);
  const int n = d.dim();
  const Grid g = parse_grid(f.grid);
  const auto comma = f.axes.find(',');
  if (comma == std::string::npos) lempert::fail(ErrorKind::InvalidInput, "--axes expects two axes, e.g. re1,re2");
  const Axis ax = parse_axis(f.axes.substr(0, comma), n), ay = parse_axis(f.axes.substr(comma + 1), n);
  if (ax.coord == ay.coord && ax.imag == ay.imag) lempert::fail(ErrorKind::InvalidInput, "--axes must differ");
  const CVector base = f.base.empty() ? CVector(CVector::Zero(n)) : point_arg(d, f.base, "--base");
  if (f.kind != "poisson" && f.kind != "green") lempert::fail(ErrorKind::InvalidInput, "--kind must be poisson or green");
  const lempert::SolverConfig cfg = load_config(in.config);
  std::optional<lempert::SphericalRep> rep;
  CVector pole;
  if (f.kind == "poisson") {
    rep.emplace(d, base_point(d, in.p), cfg);
  } else {
    pole = point_arg(d, f.pole, "--pole");
    if (!(d.r(pole) < 0.0)) lempert::fail(ErrorKind::InvalidInput, "--pole must be interior");
  }
  const CVector singular = rep ? rep->p() : pole;

  std::vector<CVector> pts(static_cast<std::size_t>(g.nx) * g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      CVector z = base;
      const double x = grid_coord(g.x0, g.x1, g.nx, i), y = grid_coord(g.y0, g.y1, g.ny, j);
      z[ax.coord] += ax.imag ? lempert::cplx(0.0, x) : lempert::cplx(x, 0.0);
      z[ay.coord] += ay.imag ? lempert::cplx(0.0, y) : lempert::cplx(y, 0.0);
      pts[static_cast<std::size_t>(j) * g.nx + i] = z;
    }
  }
  std::vector<double> values(pts.size(), std::numeric_limits<double>::quiet_NaN());
  lempert::verify::parallel_for(static_cast<int>(pts.size()), c.jobs, [&](int k) {
    const CVector& z = pts[k];
    if (!(d.r(z) < 0.0) || (z - singular).norm() < 1e-9) return;  // sentinel cells
    values[k] = rep ? rep->kernel(z) : lempert::green_function(d, pole, z, cfg);
  });

  std::ostringstream os;
  os << "x,y";
  for (int k = 1; k <= n; ++k) os << ",re_z" << k << ",im_z" << k;
  os << ",value\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
      os << fmt17(grid_coord(g.x0, g.x1, g.nx, i)) << ',' << fmt17(grid_coord(g.y0, g.y1, g.ny, j));
      for (int q = 0; q < n; ++q) os << ',' << fmt17(pts[k][q].real()) << ',' << fmt17(pts[k][q].imag());
      os << ',' << fmt17(values[k]) << '\n';
    }
  }
  emit(c, os.str());
  return kExitOk;
}

lempert::SelfMap load_self_map(const std::string& path) {
  const json j = io::read_file(path);
  lempert::SelfMap f;
  if (j.is_object() && j.contains("builtin")) {
    const std::string name = j.at("builtin").get<std::string>();
    if (name == "identity") {
      f = lempert::SelfMap::identity_map();
    } else if (name == "shoikhet") {
      f = lempert::SelfMap::shoikhet();
    } else if (name == "parabolic") {
      f = lempert::SelfMap::parabolic(j.value("t", 1.0));
    } else {
      lempert::fail(ErrorKind::InvalidInput, "unknown builtin map: " + name);
    }
  } else {
    const lempert::HardyMap h = io::hardy_from_json(j);
    if (h.dim() != 1) lempert::fail(ErrorKind::InvalidInput, "self-map must have dim 1");
    f = lempert::SelfMap::from_hardy(h, j.value("label", std::string("hardy")));
  }
  if (j.is_object() && j.contains("third_order_contact")) {
    f.third_order_contact = j.at("third_order_contact").get<bool>();
  }
  return f;
}

int cmd_rigidity_verify(const Common& c, const std::string& map_path, const std::string& grid) {
  const lempert::SelfMap f = load_self_map(map_path);
  int radii = 64, angles = 256;
  if (!grid.empty() && std::sscanf(grid.c_str(), "%dx%d", &radii, &angles) != 2) {
    lempert::fail(ErrorKind::InvalidInput, "--grid expects RADIIxANGLES, e.g. 64x256");
  }
  if (radii < 2 || angles < 4) lempert::fail(ErrorKind::InvalidInput, "--grid too small");
  const lempert::BKReport r = lempert::verify_bk_inequalities(f, radii, angles);
  json out = io::to_json(r);
  out["map"] = f.label;
  emit_json(c, out);
  if (!r.pass) std::cerr << "rigidity verify: FAIL for " << f.label << "\n";
  return r.pass ? kExitOk : kExitFail;
}

int cmd_rigidity_shoikhet(const Common& c) {
  const lempert::ShoikhetReport s = lempert::shoikhet_counterexample();
  emit_json(c, io::to_json(s));
  return s.violated ? kExitOk : kExitFail;
}

}  // namespace

namespace {

int cmd_verify(const Common& c, const std::string& suite, const Inputs& in) {
  lempert::verify::SuiteOptions opts;
  opts.seed = c.seed;
  opts.jobs = c.jobs;
  if (!in.domain.empty()) opts.domain = load_domain(in.domain);
  if (!in.p.empty()) {
    if (!opts.domain) lempert::fail(ErrorKind::InvalidInput, "--p needs --domain");
    opts.p = point_arg(*opts.domain, in.p, "--p");
  }
  const json report = lempert::verify::run_suite(suite, opts);
  emit_json(c, report);
  if (c.verbose) {
    for (const auto& check : report.at("checks")) {
      std::cerr << check.at("name").get<std::string>() << ": " << check.at("verdict").get<std::string>() << "\n";
    }
  }
  if (lempert::verify::suite_passed(report)) return kExitOk;
  for (const auto& check : report.at("checks")) {
    if (check.at("verdict") == "PASS") continue;
    std::cerr << "FAIL " << check.at("name").get<std::string>() << ": " << check.at("failures").dump() << "\n";
  }
  return kExitFail;
}

void add_domain(CLI::App* app, Inputs& in, bool required = true) {
  auto* opt = app->add_option("--domain", in.domain, "Domain descriptor JSON file");
  if (required) opt->required();
}

void add_rep_inputs(CLI::App* app, Inputs& in) {
  add_domain(app, in);
  app->add_option("--p", in.p, "Boundary base point as JSON, e.g. [[1,0],[0,0]]");
  app->add_option("--config", in.config, "Solver config JSON file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lempertkit: Kobayashi extremal discs, spherical representations and pluricomplex kernels"};
  app.require_subcommand(1);
  Common common;
  common.jobs = default_jobs();
  Inputs in;
  MAInputs ma;
  FieldInputs field;
  std::string suite, map_path, bk_grid;
  std::function<int()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<int()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, common);
    sub->callback([&action, fn = std::move(fn)] { action = fn; });
    return sub;
  };

  auto* geo = app.add_subcommand("geodesic", "Solve or certify extremal discs");
  geo->require_subcommand(1);
  {
    auto* s = leaf(geo, "solve", "Solve a geodesic problem", [&] { return cmd_geodesic_solve(common, in); });
    add_domain(s, in);
    s->add_option("--problem", in.problem, "Problem JSON file")->required();
    s->add_option("--config", in.config, "Solver config JSON file");
    auto* k = leaf(geo, "certify", "Certify a stored GeodesicPair", [&] { return cmd_geodesic_certify(common, in); });
    add_domain(k, in);
    k->add_option("--pair", in.pair, "GeodesicPair JSON file")->required();
  }
  {
    auto* s = leaf(&app, "distance", "Kobayashi distance k(z, w)", [&] { return cmd_distance(common, in); });
    add_domain(s, in);
    s->add_option("--z", in.z, "Point as JSON")->required();
    s->add_option("--w", in.w, "Point as JSON")->required();
    s->add_option("--config", in.config, "Solver config JSON file");
    auto* m = leaf(&app, "metric", "Kobayashi-Royden metric at z in direction v", [&] { return cmd_metric(common, in); });
    add_domain(m, in);
    m->add_option("--z", in.z, "Point as JSON")->required();
    m->add_option("--v", in.v, "Direction as JSON")->required();
    m->add_option("--config", in.config, "Solver config JSON file");
  }
  auto add_horo = [&](CLI::App* parent) {
    auto* h = leaf(parent, "horosphere", "Horosphere membership", [&] { return cmd_horosphere(common, in); });
    add_rep_inputs(h, in);
    h->add_option("--z0", in.z0, "Pole as JSON")->required();
    h->add_option("--R", in.radius, "Radius R > 0")->required();
    h->add_option("--z", in.z, "Point as JSON")->required();
  };
  auto add_busemann = [&](CLI::App* parent) {
    auto* b = leaf(parent, "busemann", "Busemann function B(z, z0) at p", [&] { return cmd_busemann(common, in); });
    add_rep_inputs(b, in);
    b->add_option("--z0", in.z0, "Reference point as JSON")->required();
    b->add_option("--z", in.z, "Point as JSON")->required();
    b->add_flag("--check-limit", in.check_limit, "Also compute the distance-difference limit");
    b->add_option("--tol", in.tol, "Agreement tolerance for --check-limit")->capture_default_str();
  };
  {
    auto* rep = app.add_subcommand("rep", "Boundary spherical representation");
    rep->require_subcommand(1);
    auto* m = leaf(rep, "map", "Psi_p(z)", [&] { return cmd_rep_map(common, in); });
    add_rep_inputs(m, in);
    m->add_option("--z", in.z, "Point as JSON")->required();
    auto* i = leaf(rep, "inverse", "Psi_p^{-1}(w)", [&] { return cmd_rep_inverse(common, in); });
    add_rep_inputs(i, in);
    i->add_option("--w", in.w, "Ball point as JSON")->required();
    add_horo(rep);
    add_busemann(rep);
    add_horo(&app);
    add_busemann(&app);
  }
  auto add_field = [&](CLI::App* parent) {
    auto* f = leaf(parent, "field", "CSV dump of the kernel or Green function on a 2D slice",
                   [&] { return cmd_field(common, in, field); });
    add_domain(f, in);
    f->add_option("--p", in.p, "Boundary base point (poisson)");
    f->add_option("--config", in.config, "Solver config JSON file");
    f->add_option("--grid", field.grid, "xmin,xmax,nx,ymin,ymax,ny")->required();
    f->add_option("--axes", field.axes, "Slice axes, e.g. re1,re2 or re1,im1")->capture_default_str();
    f->add_option("--base", field.base, "Slice origin as JSON (default 0)");
    f->add_option("--kind", field.kind, "poisson or green")->capture_default_str();
    f->add_option("--pole", field.pole, "Pole for --kind green");
  };
  {
    auto* m = app.add_subcommand("ma", "Monge-Ampere checks of the pluricomplex Poisson kernel");
    m->require_subcommand(1);
    auto* v = leaf(m, "verify", "Hessian degeneracy at sampled points", [&] { return cmd_ma_verify(common, in, ma); });
    add_rep_inputs(v, in);
    v->add_option("--samples", ma.samples, "Number of sample points")->check(CLI::PositiveNumber)->capture_default_str();
    v->add_option("--tol-det", ma.tol_det, "Determinant tolerance")->capture_default_str();
    v->add_option("--tol-psd", ma.tol_psd, "Negative eigenvalue tolerance")->capture_default_str();
    v->add_option("--tol-angle", ma.tol_angle, "Null direction angle tolerance")->capture_default_str();
    add_field(m);
    add_field(&app);
  }
  {
    auto* r = app.add_subcommand("rigidity", "Boundary rigidity inequalities for disc self-maps");
    r->require_subcommand(1);
    auto* v = leaf(r, "verify", "Check both inequalities for one map", [&] { return cmd_rigidity_verify(common, map_path, bk_grid); });
    v->add_option("--f", map_path, "Self-map JSON (HardyMap or {\"builtin\": ...})")->required();
    v->add_option("--grid", bk_grid, "RADIIxANGLES (default 64x256)");
    leaf(r, "shoikhet", "Reproduce the counterexample at zeta = -1/3", [&] { return cmd_rigidity_shoikhet(common); });
  }
  {
    auto* v = leaf(&app, "verify", "Run a property suite", [&] { return cmd_verify(common, suite, in); });
    v->add_option("suite", suite, "rigidity | ma | rep | geodesics")
        ->required()
        ->check(CLI::IsMember(lempert::verify::suite_names()));
    add_domain(v, in, false);
    v->add_option("--p", in.p, "Boundary base point as JSON");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    return action ? action() : kExitInput;
  } catch (const Error& e) {
    std::cerr << "error (" << lempert::to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
