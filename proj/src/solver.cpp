#include <cmath>
#include <limits>
#include <sstream>

#include "internal.hpp"
#include "lempertkit/ball.hpp"

namespace lempert {

namespace {

using detail::coefficient_tail;

enum class Kind { Boundary, Point, Direction, Through };

// Normalized problem data shared by residual evaluation.
struct Spec {
  Kind kind = Kind::Boundary;
  CVector p, v, z, w, nu;
  double a = 0.0;  // <v, nu_p> for boundary data
};

struct Groups {
  double boundary = 0.0;
  double modes = 0.0;
  double side = 0.0;

  double worst() const { return std::max({boundary, modes, side}); }
};

int extra_count(Kind k) {
  switch (k) {
    case Kind::Boundary: return 0;
    case Kind::Point: return 1;
    case Kind::Direction: return 1;
    case Kind::Through: return 2;
  }
  return 0;
}

int side_count(Kind k, int n) {
  switch (k) {
    case Kind::Boundary: return 4 * n + 1;
    case Kind::Point: return 4 * n;
    case Kind::Direction: return 4 * n;
    case Kind::Through: return 4 * n + 2;
  }
  return 0;
}

class System {
 public:
  System(const Domain& domain, Spec spec, int degree, int grid)
      : domain_(domain), spec_(std::move(spec)), n_(domain.dim()), deg_(degree), m_(grid),
        nodes_(unit_roots(grid)), weights_(detail::theta_derivative_weights(grid)) {}

  int unknowns() const { return 2 * n_ * (deg_ + 1) + extra_count(spec_.kind); }
  int equations() const { return m_ + 2 * n_ * deg_ + side_count(spec_.kind, n_); }
  int degree() const { return deg_; }
  int grid() const { return m_; }

  Eigen::VectorXd pack(const CMatrix& coeffs, const std::vector<double>& extra) const {
    Eigen::VectorXd x(unknowns());
    int i = 0;
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k <= deg_; ++k) {
        x[i++] = coeffs(j, k).real();
        x[i++] = coeffs(j, k).imag();
      }
    }
    for (double e : extra) x[i++] = e;
    return x;
  }

  CMatrix coeffs_of(const Eigen::VectorXd& x) const {
    CMatrix c(n_, deg_ + 1);
    int i = 0;
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k <= deg_; ++k, i += 2) c(j, k) = {x[i], x[i + 1]};
    }
    return c;
  }

  void samples(const CMatrix& coeffs, CMatrix& ps, CMatrix& dps) const {
    const HardyMap h(coeffs);
    ps = h.boundary_samples(m_);
    dps = h.derivative_map().boundary_samples(m_);
  }

  // Per-evaluation data reused by the analytic Jacobian.
  struct Cache {
    CMatrix d;                 // dr/dz at the nodes
    CMatrix g;                 // d / s
    std::vector<cplx> s;       // <phi', d>_bilinear
    std::vector<double> absg;  // |g|
    double c = 1.0;            // mean |g|, normalizes the dual rows
    double pref = 0.0;         // preferred row before normalization
    CMatrix gmodes;            // fourier modes of g, one row per component
  };

  // Residual vector; returns false if it is not finite.
  bool residual(const Eigen::VectorXd& x, const CMatrix& coeffs, const CMatrix& ps,
                const CMatrix& dps, Eigen::VectorXd& f, Groups* groups, Cache* cache) const {
    f.resize(equations());
    Groups gr;
    Cache local;
    Cache& cc = cache ? *cache : local;
    cc.d.resize(n_, m_);
    cc.g.resize(n_, m_);
    cc.s.assign(m_, cplx{});
    cc.absg.assign(m_, 0.0);
    double csum = 0.0;
    for (int i = 0; i < m_; ++i) {
      const CVector z = ps.col(i);
      const double rv = domain_.r(z);
      f[i] = rv;
      gr.boundary = std::max(gr.boundary, std::abs(rv));
      cc.d.col(i) = domain_.dr_dzbar(z).conjugate();
      cc.s[i] = bilinear(dps.col(i), cc.d.col(i));
      cc.g.col(i) = cc.d.col(i) / cc.s[i];
      cc.absg[i] = cc.g.col(i).norm();
      csum += cc.absg[i];
    }
    cc.c = csum / m_;
    if (!(cc.c > 0.0) || !std::isfinite(cc.c)) return false;
    int row = m_;
    cc.gmodes.resize(n_, m_);
    std::vector<cplx> buf(m_);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < m_; ++i) buf[i] = cc.g(j, i);
      const auto modes = fourier_modes(buf);
      for (int i = 0; i < m_; ++i) cc.gmodes(j, i) = modes[i];
      for (int k = 1; k <= deg_; ++k) {
        const cplx c = modes[m_ - k] / cc.c;
        f[row++] = c.real();
        f[row++] = c.imag();
        gr.modes = std::max(gr.modes, std::abs(c));
      }
    }
    cc.pref = 0.0;
    for (int i = 0; i < m_; ++i) cc.pref += weights_[i] * cc.absg[i];
    const int side_begin = row;
    auto put = [&](const CVector& r) {
      for (Eigen::Index j = 0; j < r.size(); ++j) {
        f[row++] = r[j].real();
        f[row++] = r[j].imag();
      }
    };
    const int ex = 2 * n_ * (deg_ + 1);
    const HardyMap h(coeffs);
    switch (spec_.kind) {
      case Kind::Boundary:
        put(ps.col(0) - spec_.p);
        put(dps.col(0) - spec_.a * spec_.v);
        f[row++] = cc.pref / cc.c;
        break;
      case Kind::Point: {
        const double t = x[ex];
        put(coeffs.col(0) - spec_.z);
        put(h(t) - spec_.w);
        break;
      }
      case Kind::Direction:
        put(coeffs.col(0) - spec_.z);
        put(coeffs.col(1) - std::exp(x[ex]) * spec_.v);
        break;
      case Kind::Through: {
        const cplx zeta{x[ex], x[ex + 1]};
        put(ps.col(0) - spec_.p);
        const CVector d1 = dps.col(0);
        f[row++] = std::real(hermitian_inner(d1, spec_.nu)) - d1.squaredNorm();
        f[row++] = cc.pref / cc.c;
        put(h(zeta) - spec_.z);
        break;
      }
    }
    for (int i = side_begin; i < row; ++i) gr.side = std::max(gr.side, std::abs(f[i]));
    if (groups) *groups = gr;
    return f.allFinite();
  }

  bool admissible(const Eigen::VectorXd& x) const {
    const int ex = 2 * n_ * (deg_ + 1);
    if (spec_.kind == Kind::Point) return x[ex] > 0.0 && x[ex] < 1.0;
    if (spec_.kind == Kind::Through) return std::hypot(x[ex], x[ex + 1]) < 1.0 + 1e-9;
    return true;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, const CMatrix& coeffs, const CMatrix& ps,
                           const CMatrix& dps, const Cache& cc) const {
    const int nu = unknowns();
    const int ncoef = 2 * n_ * (deg_ + 1);
    const int side_begin = m_ + 2 * n_ * deg_;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(equations(), nu);
    const HardyMap h(coeffs);
    // A perturbation u = delta zeta^k of component j gives
    //   dg_q = A_qj u + B_qj conj(u) + C_qj u'
    // with node-wise A, B, C independent of k, so the modes of every column are index shifts
    // of a few transforms; same for the sums entering c and the preferred row.
    const int nn = n_ * n_;
    std::vector<std::vector<cplx>> ta(nn, std::vector<cplx>(m_)), tb = ta, tc = ta;
    std::vector<std::vector<cplx>> sa(n_, std::vector<cplx>(m_)), sb = sa, sc = sa, wa = sa, wb = sa, wc = sa;
    for (int i = 0; i < m_; ++i) {
      const CMatrix lev = domain_.levi(ps.col(i));
      const CMatrix sym = domain_.symmetric_hessian(ps.col(i));
      const cplx s = cc.s[i];
      for (int j = 0; j < n_; ++j) {
        cplx pj{}, qj{};
        for (int q = 0; q < n_; ++q) {
          pj += dps(q, i) * std::conj(lev(j, q));
          qj += dps(q, i) * sym(j, q);
        }
        cplx xa{}, xb{}, xc{};
        for (int q = 0; q < n_; ++q) {
          const cplx g = cc.g(q, i);
          const cplx av = (sym(j, q) - g * qj) / s;
          const cplx bv = (std::conj(lev(j, q)) - g * pj) / s;
          const cplx cv = -g * cc.d(j, i) / s;
          ta[q * n_ + j][i] = av;
          tb[q * n_ + j][i] = bv;
          tc[q * n_ + j][i] = cv;
          xa += std::conj(g) * av;
          xb += std::conj(g) * bv;
          xc += std::conj(g) * cv;
        }
        sa[j][i] = xa / cc.absg[i];
        sb[j][i] = xb / cc.absg[i];
        sc[j][i] = xc / cc.absg[i];
        wa[j][i] = weights_[i] * sa[j][i];
        wb[j][i] = weights_[i] * sb[j][i];
        wc[j][i] = weights_[i] * sc[j][i];
      }
    }
    for (auto* set : {&ta, &tb, &tc, &sa, &sb, &sc, &wa, &wb, &wc}) {
      for (auto& v : *set) v = fourier_modes(v);
    }
    const auto wrap = [this](long l) { return static_cast<int>(((l % m_) + m_) % m_); };
    const double mm = static_cast<double>(m_);
    for (int col = 0; col < ncoef; ++col) {
      const int j = col / (2 * (deg_ + 1));
      const int k = (col % (2 * (deg_ + 1))) / 2;
      const cplx delta = (col % 2) ? kI : cplx{1.0, 0.0};
      const cplx cdelta = std::conj(delta);
      const double kd = static_cast<double>(k);
      for (int i = 0; i < m_; ++i) {
        jac(i, col) = 2.0 * std::real(cc.d(j, i) * delta * nodes_[(static_cast<long>(i) * k) % m_]);
      }
      // (1/M) sum_i f_i zeta_i^k is mode -k of f
      const double dc = std::real(delta * sa[j][wrap(-k)] + cdelta * sb[j][wrap(k)] +
                                  delta * kd * sc[j][wrap(1 - k)]);
      const double dpref = mm * std::real(delta * wa[j][wrap(-k)] + cdelta * wb[j][wrap(k)] +
                                          delta * kd * wc[j][wrap(1 - k)]);
      int row = m_;
      for (int q = 0; q < n_; ++q) {
        const auto& a = ta[q * n_ + j];
        const auto& b = tb[q * n_ + j];
        const auto& c = tc[q * n_ + j];
        for (int kk = 1; kk <= deg_; ++kk) {
          const cplx mode = delta * a[wrap(-kk - k)] + cdelta * b[wrap(k - kk)] + delta * kd * c[wrap(1 - kk - k)];
          const cplx v = mode / cc.c - cc.gmodes(q, m_ - kk) * dc / (cc.c * cc.c);
          jac(row++, col) = v.real();
          jac(row++, col) = v.imag();
        }
      }
      const double dP = dpref / cc.c - cc.pref * dc / (cc.c * cc.c);
      // side rows: linear in the coefficients except the |phi'(1)|^2 term
      auto put = [&](int r0, const cplx& v) {
        jac(r0 + 2 * j, col) = v.real();
        jac(r0 + 2 * j + 1, col) = v.imag();
      };
      const int ex = ncoef;
      switch (spec_.kind) {
        case Kind::Boundary:
          put(side_begin, delta);
          put(side_begin + 2 * n_, delta * kd);
          jac(side_begin + 4 * n_, col) = dP;
          break;
        case Kind::Point:
          if (k == 0) put(side_begin, delta);
          put(side_begin + 2 * n_, delta * std::pow(x[ex], k));
          break;
        case Kind::Direction:
          if (k == 0) put(side_begin, delta);
          if (k == 1) put(side_begin + 2 * n_, delta);
          break;
        case Kind::Through: {
          put(side_begin, delta);
          const cplx d1 = delta * kd;
          jac(side_begin + 2 * n_, col) =
              std::real(d1 * std::conj(spec_.nu[j])) - 2.0 * std::real(d1 * std::conj(dps(j, 0)));
          jac(side_begin + 2 * n_ + 1, col) = dP;
          put(side_begin + 2 * n_ + 2, delta * std::pow(cplx{x[ex], x[ex + 1]}, k));
          break;
        }
      }
    }
    // extra unknowns enter only the side rows
    auto put_col = [&](int r0, int col, const CVector& v) {
      for (int q = 0; q < n_; ++q) {
        jac(r0 + 2 * q, col) = v[q].real();
        jac(r0 + 2 * q + 1, col) = v[q].imag();
      }
    };
    switch (spec_.kind) {
      case Kind::Boundary: break;
      case Kind::Point: put_col(side_begin + 2 * n_, ncoef, h.derivative(x[ncoef])); break;
      case Kind::Direction: put_col(side_begin + 2 * n_, ncoef, -std::exp(x[ncoef]) * spec_.v); break;
      case Kind::Through: {
        const CVector d = h.derivative(cplx{x[ncoef], x[ncoef + 1]});
        put_col(side_begin + 2 * n_ + 2, ncoef, d);
        put_col(side_begin + 2 * n_ + 2, ncoef + 1, kI * d);
        break;
      }
    }
    return jac;
  }

  const Spec& spec() const { return spec_; }
  const std::vector<cplx>& nodes() const { return nodes_; }

 private:
  const Domain& domain_;
  Spec spec_;
  int n_, deg_, m_;
  std::vector<cplx> nodes_;
  std::vector<double> weights_;
};

struct Outcome {
  bool converged = false;
  Groups groups;
  int iterations = 0;
  Eigen::VectorXd x;
  std::string reason;
};

Outcome levenberg_marquardt(const System& sys, Eigen::VectorXd x, const SolverConfig& cfg) {
  Outcome out;
  CMatrix coeffs = sys.coeffs_of(x);
  CMatrix ps, dps;
  sys.samples(coeffs, ps, dps);
  Eigen::VectorXd f;
  Groups gr;
  System::Cache cache;
  if (!sys.residual(x, coeffs, ps, dps, f, &gr, &cache)) {
    out.reason = "non-finite residual at the initial guess";
    out.x = x;
    return out;
  }
  double lambda = cfg.damping;
  const double polish_tol = cfg.tol_residual * 1e-2;
  double prev_norm = f.norm();
  for (int it = 0; it < cfg.max_iter; ++it) {
    out.iterations = it;
    if (gr.worst() < polish_tol) break;
    Eigen::MatrixXd jac = sys.jacobian(x, coeffs, ps, dps, cache);
    Eigen::VectorXd scale = jac.colwise().norm().transpose();
    for (Eigen::Index i = 0; i < scale.size(); ++i) scale[i] = std::max(scale[i], 1e-12);
    jac = jac * scale.cwiseInverse().asDiagonal();
    const int nc = static_cast<int>(jac.cols());
    // damped normal equations in scaled columns; QR only if Cholesky breaks down
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(nc, nc);
    normal.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose());
    const Eigen::VectorXd grad = jac.transpose() * f;
    bool accepted = false;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += lambda;
      Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(damped);
      Eigen::VectorXd step;
      if (llt.info() == Eigen::Success) {
        step = -llt.solve(grad);
      } else {
        const int nr = static_cast<int>(jac.rows());
        Eigen::MatrixXd aug(nr + nc, nc);
        aug.topRows(nr) = jac;
        aug.bottomRows(nc) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(nc, nc);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nr + nc);
        rhs.head(nr) = -f;
        step = aug.householderQr().solve(rhs);
      }
      step = step.cwiseQuotient(scale);
      double alpha = 1.0;
      const double f2 = f.squaredNorm();
      for (int ls = 0; ls < 10; ++ls, alpha *= 0.5) {
        Eigen::VectorXd xt = x + alpha * step;
        if (!sys.admissible(xt)) continue;
        CMatrix ct = sys.coeffs_of(xt);
        CMatrix pt, dpt;
        sys.samples(ct, pt, dpt);
        Eigen::VectorXd ft;
        Groups gt;
        System::Cache ctc;
        if (!sys.residual(xt, ct, pt, dpt, ft, &gt, &ctc)) continue;
        if (ft.squaredNorm() <= (1.0 - 1e-4 * alpha) * f2) {
          x = std::move(xt);
          coeffs = std::move(ct);
          ps = std::move(pt);
          dps = std::move(dpt);
          f = std::move(ft);
          gr = gt;
          cache = std::move(ctc);
          accepted = true;
          break;
        }
      }
      if (accepted) {
        lambda = std::max(lambda * 0.3, 1e-14);
      } else {
        lambda = std::max(lambda * 100.0, 1e-8);
      }
    }
    out.iterations = it + 1;
    if (!accepted) {
      out.reason = "no descent step found";
      break;
    }
    const double nrm = f.norm();
    // plateau below tolerance: further iterations only fight rounding
    if (gr.worst() < cfg.tol_residual && nrm > 0.5 * prev_norm) break;
    prev_norm = nrm;
  }
  out.groups = gr;
  out.x = x;
  out.converged = gr.worst() < cfg.tol_residual;
  if (!out.converged && out.reason.empty()) out.reason = "iteration limit reached";
  return out;
}

Spec make_spec(const Domain& domain, const StationaryProblem& problem, const SolverConfig& cfg) {
  const int n = domain.dim();
  Spec s;
  auto check_dim = [&](const CVector& x, const char* name) {
    if (x.size() != n || !x.allFinite()) {
      fail(ErrorKind::InvalidInput, std::string("problem: bad vector ") + name);
    }
  };
  if (const auto* b = std::get_if<BoundaryProblem>(&problem)) {
    check_dim(b->p, "p");
    check_dim(b->v, "v");
    s.kind = Kind::Boundary;
    s.p = b->p;
    s.nu = domain.unit_normal(b->p);
    s.v = normalize_direction(b->v, s.nu, cfg.min_normal_component);
    s.a = std::real(hermitian_inner(s.v, s.nu));
  } else if (const auto* q = std::get_if<InteriorPointProblem>(&problem)) {
    check_dim(q->z, "z");
    check_dim(q->w, "w");
    if (!(domain.r(q->z) < 0.0) || !(domain.r(q->w) < 0.0)) {
      fail(ErrorKind::InvalidInput, "interior-point problem: points must be interior");
    }
    if ((q->z - q->w).norm() < 1e-14) fail(ErrorKind::InvalidInput, "interior-point problem: z equals w");
    s.kind = Kind::Point;
    s.z = q->z;
    s.w = q->w;
  } else {
    const auto& d = std::get<InteriorDirectionProblem>(problem);
    check_dim(d.z, "z");
    check_dim(d.v, "v");
    if (!(domain.r(d.z) < 0.0)) fail(ErrorKind::InvalidInput, "direction problem: z must be interior");
    if (!(d.v.norm() > 0.0)) fail(ErrorKind::InvalidInput, "direction problem: v must be nonzero");
    s.kind = Kind::Direction;
    s.z = d.z;
    s.v = d.v / d.v.norm();
  }
  return s;
}

// Radius of a centered ball used for closed-form seeds of non-linear domains.
double seed_radius(const Domain& domain, std::initializer_list<const CVector*> pts) {
  double rho = 1.0;
  if (domain.kind() == DomainKind::Custom) rho = domain.bounding_radius();
  for (const CVector* p : pts) rho = std::max(rho, 1.001 * p->norm());
  return rho;
}

GeodesicPair seed_pair(const Domain& domain, const Spec& s) {
  const bool linear = domain.kind() == DomainKind::LinearBall;
  const CMatrix& a = domain.matrix_a();
  const CVector& b = domain.offset_b();
  auto push = [&](GeodesicPair g) {
    // phi -> A phi + b, phi* -> A^{-T} phi*
    g.phi.coeffs() = a * g.phi.coeffs();
    g.phi.coeffs().col(0) += b;
    if (g.dual.dim() == g.phi.dim()) g.dual.coeffs() = a.transpose().inverse() * g.dual.coeffs();
    return g;
  };
  auto pull = [&](const CVector& z) -> CVector { return a.inverse() * (z - b); };
  switch (s.kind) {
    case Kind::Boundary: {
      if (domain.kind() == DomainKind::Ball) return ball_geodesic(s.p, s.v);
      if (!linear) {
        GeodesicPair g;
        g.phi = HardyMap(domain.dim(), 1);
        g.phi.coeffs().col(0) = s.p - s.a * s.v;
        g.phi.coeffs().col(1) = s.a * s.v;
        return g;
      }
      // A o eta o h o sigma_t: hyperbolic h fixes |phi'(1)|, parabolic sigma_t the preferred gauge
      const CVector pp = pull(s.p);
      const CVector vv = a.inverse() * s.v;
      GeodesicPair base = push(ball_geodesic(pp / pp.norm(), vv));
      const double c = std::real(hermitian_inner(base.phi.derivative(1.0), s.nu));
      const double kappa = s.a * s.a / c;  // <phi'(1), nu> = a^2
      const double sh = (1.0 - kappa) / (1.0 + kappa);
      GeodesicPair scaled = detail::compose_pair_adaptive(
          base, [&](cplx z) { return hyperbolic_fixing_one(z, kappa); },
          [&](cplx z) { return (1.0 - sh * sh) / ((1.0 + sh * z) * (1.0 + sh * z)); }, 8, 512);
      const double defect = preferred_defect(scaled.dual);
      const double t0 = -defect / (2.0 * scaled.dual(1.0).norm());
      const DiscAutomorphism sig = DiscAutomorphism::parabolic(t0);
      return detail::compose_pair_adaptive(
          scaled, [&](cplx z) { return sig(z); }, [&](cplx z) { return sig.derivative(z); }, 8, 512);
    }
    case Kind::Point: {
      if (linear) {
        return push(detail::ball_point_pair(pull(s.z), pull(s.w), 1.0));
      }
      return detail::ball_point_pair(s.z, s.w, seed_radius(domain, {&s.z, &s.w}));
    }
    case Kind::Direction: {
      if (linear) return push(detail::ball_direction_pair(pull(s.z), a.inverse() * s.v, 1.0));
      return detail::ball_direction_pair(s.z, s.v, seed_radius(domain, {&s.z}));
    }
    case Kind::Through: break;
  }
  fail(ErrorKind::InvalidInput, "seed_pair: unsupported problem");
}

std::vector<double> seed_extras(const Spec& s, const GeodesicPair& g) {
  switch (s.kind) {
    case Kind::Boundary: return {};
    case Kind::Point: {
      double t = g.t;
      if (!(t > 0.0 && t < 1.0)) t = 0.5;
      return {t};
    }
    case Kind::Direction: {
      const double d = g.phi.derivative(0.0).norm();
      return {std::log(d > 0.0 ? d : 1.0)};
    }
    case Kind::Through: return {};
  }
  return {};
}

int choose_degree(const HardyMap& seed, const SolverConfig& cfg) {
  int degree = cfg.degree;
  const double scale = std::max(1.0, seed.coeffs().cwiseAbs().maxCoeff());
  while (degree < cfg.max_degree && coefficient_tail(seed, degree) > 1e-15 * scale) degree *= 2;
  return std::min(degree, cfg.max_degree);
}

GeodesicPair assemble(const Domain& domain, const System& sys, const Outcome& oc) {
  const int n = domain.dim();
  const int m = sys.grid();
  CMatrix coeffs = sys.coeffs_of(oc.x);
  CMatrix ps, dps;
  sys.samples(coeffs, ps, dps);
  Eigen::VectorXd f;
  System::Cache cache;
  Groups gr;
  sys.residual(oc.x, coeffs, ps, dps, f, &gr, &cache);
  const CMatrix& g = cache.g;
  GeodesicPair pair;
  pair.phi = HardyMap(coeffs);
  pair.dual = HardyMap::from_samples(g, m / 2 - 1);
  pair.mu.assign(m, 0.0);
  const int ex = 2 * n * (sys.degree() + 1);
  if (sys.spec().kind == Kind::Point) pair.t = oc.x[ex];
  compute_residuals(pair, domain);
  pair.residuals["negative_modes"] = gr.modes;
  pair.residuals["side"] = gr.side;
  pair.residuals["iterations"] = oc.iterations;
  pair.residuals["degree"] = sys.degree();
  return pair;
}

// Solve with degree escalation; throws SolverFailure when nothing converges.
std::pair<GeodesicPair, Eigen::VectorXd> run(const Domain& domain, const Spec& spec,
                                             const SolverConfig& cfg, const HardyMap& seed_phi,
                                             std::vector<double> extras) {
  int degree = cfg.auto_degree ? choose_degree(seed_phi, cfg) : cfg.degree;
  std::string last_reason;
  double last_residual = std::numeric_limits<double>::infinity();
  HardyMap start = seed_phi;
  for (;;) {
    const int grid = std::max(cfg.grid * degree / cfg.degree, 4 * degree);
    System sys(domain, spec, degree, grid);
    const Eigen::VectorXd x0 = sys.pack(start.resized(degree).coeffs(), extras);
    Outcome oc = levenberg_marquardt(sys, x0, cfg);
    if (oc.converged) return {assemble(domain, sys, oc), oc.x};
    last_reason = oc.reason;
    last_residual = oc.groups.worst();
    const HardyMap reached(sys.coeffs_of(oc.x));
    const double scale = std::max(1.0, reached.coeffs().cwiseAbs().maxCoeff());
    const bool tail_large = coefficient_tail(reached, degree - degree / 4) > 1e-3 * cfg.tol_residual * scale;
    if (!cfg.auto_degree || degree * 2 > cfg.max_degree || !tail_large) break;
    // continue from the reached iterate at the doubled degree
    start = reached;
    const int ex = 2 * domain.dim() * (degree + 1);
    for (std::size_t i = 0; i < extras.size(); ++i) extras[i] = oc.x[ex + static_cast<int>(i)];
    degree *= 2;
  }
  std::ostringstream os;
  os << "Gauss-Newton stagnation (" << last_reason << "), residual " << last_residual
     << " above tolerance";
  fail(ErrorKind::SolverFailure, os.str());
}

}  // namespace

GeodesicPair initial_guess(const Domain& domain, const StationaryProblem& problem, int degree,
                           int grid) {
  SolverConfig cfg;
  const Spec s = make_spec(domain, problem, cfg);
  GeodesicPair g = seed_pair(domain, s);
  g.phi = g.phi.resized(degree);
  if (g.dual.dim() == g.phi.dim()) g.dual = g.dual.resized(std::max(degree, grid / 2 - 1));
  g.mu.assign(grid, 0.0);
  return g;
}

GeodesicPair solve_stationary(const Domain& domain, const StationaryProblem& problem,
                              const SolverConfig& config, const GeodesicPair* seed) {
  config.validate();
  const Spec spec = make_spec(domain, problem, config);
  GeodesicPair start = seed ? *seed : seed_pair(domain, spec);
  if (start.phi.dim() != domain.dim()) fail(ErrorKind::InvalidInput, "seed: dimension mismatch");
  const std::vector<double> extras = seed_extras(spec, start);
  try {
    return run(domain, spec, config, start.phi, extras).first;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SolverFailure || domain.kind() != DomainKind::PerturbedBall ||
        seed != nullptr) {
      throw;
    }
  }
  // Continuation in eps from the ball; boundary data are projected onto each intermediate domain.
  const double eps = domain.eps();
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(eps) / 0.02)));
  GeodesicPair prev;
  bool have_prev = false;
  for (int k = 0; k <= steps; ++k) {
    const double e = eps * k / steps;
    const Domain dk = Domain::perturbed_ball(domain.dim(), e);
    StationaryProblem pk = problem;
    if (auto* b = std::get_if<BoundaryProblem>(&pk)) {
      b->p = dk.project_to_boundary(b->p);
    } else if (auto* q = std::get_if<InteriorPointProblem>(&pk)) {
      if (!(dk.r(q->z) < 0.0) || !(dk.r(q->w) < 0.0)) continue;
    } else if (auto* d = std::get_if<InteriorDirectionProblem>(&pk)) {
      if (!(dk.r(d->z) < 0.0)) continue;
    }
    const Spec sk = make_spec(dk, pk, config);
    GeodesicPair st = have_prev ? prev : seed_pair(dk, sk);
    std::vector<double> ex = seed_extras(sk, st);
    prev = run(dk, sk, config, st.phi, ex).first;
    have_prev = true;
  }
  if (!have_prev) fail(ErrorKind::SolverFailure, "continuation in eps did not start");
  return prev;
}

ThroughSolution solve_through(const Domain& domain, const ThroughProblem& problem,
                              const SolverConfig& config, const ThroughSolution* seed) {
  config.validate();
  const int n = domain.dim();
  if (problem.p.size() != n || problem.z.size() != n) {
    fail(ErrorKind::InvalidInput, "through problem: dimension mismatch");
  }
  Spec spec;
  spec.kind = Kind::Through;
  spec.p = problem.p;
  spec.z = problem.z;
  spec.nu = domain.unit_normal(problem.p);
  if (domain.r(problem.z) > 1e-9) fail(ErrorKind::InvalidInput, "through problem: z is exterior");
  if ((problem.z - problem.p).norm() < 1e-12) fail(ErrorKind::InvalidInput, "through problem: z equals p");

  ThroughSolution start;
  if (seed) {
    start = *seed;
  } else {
    // chord direction, exact for the ball
    const CVector v0 = normalize_direction(problem.p - problem.z, spec.nu, 1e-6);
    start.v = v0;
    start.pair = solve_stationary(domain, BoundaryProblem{problem.p, v0}, config);
    const LeftInverse li(start.pair);
    try {
      start.zeta = li.eval(problem.z);
    } catch (const Error&) {
      // z on or next to the boundary: nearest point of a polar grid
      double best = std::numeric_limits<double>::infinity();
      for (int i = 1; i <= 32; ++i) {
        for (int j = 0; j < 128; ++j) {
          const cplx zeta = std::polar(i / 32.0, 2.0 * kPi * j / 128.0);
          const double d = (start.pair.phi(zeta) - problem.z).norm();
          if (d < best) {
            best = d;
            start.zeta = zeta;
          }
        }
      }
      if (std::abs(start.zeta) >= 1.0) start.zeta *= 1.0 - 1e-12;
    }
  }
  const std::vector<double> extras{start.zeta.real(), start.zeta.imag()};
  auto [pair, x] = run(domain, spec, config, start.pair.phi, extras);
  ThroughSolution out;
  const int ex = 2 * n * (pair.phi.degree() + 1);
  out.zeta = {x[ex], x[ex + 1]};
  const CVector d1 = pair.phi.derivative(1.0);
  out.v = d1 / d1.norm();
  out.pair = std::move(pair);
  return out;
}

}  // namespace lempert
