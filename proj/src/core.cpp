#include "lempertkit/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lempert {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotOnBoundary: return "not-on-boundary";
    case ErrorKind::NearTangential: return "near-tangential";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::NotStationary: return "not-stationary";
    case ErrorKind::WindingMismatch: return "winding-mismatch";
    case ErrorKind::Divergent: return "divergent";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

cplx hermitian_inner(const CVector& z, const CVector& w) {
  if (z.size() != w.size()) {
    fail(ErrorKind::InvalidInput, "hermitian_inner: dimension mismatch");
  }
  cplx s{};
  for (Eigen::Index j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

cplx bilinear(const CVector& z, const CVector& w) {
  if (z.size() != w.size()) fail(ErrorKind::InvalidInput, "bilinear: dimension mismatch");
  cplx s{};
  for (Eigen::Index j = 0; j < z.size(); ++j) s += z[j] * w[j];
  return s;
}

CVector unit_vector(int n, int j) {
  CVector e = CVector::Zero(n);
  e[j] = 1.0;
  return e;
}

double poincare_distance(cplx a, cplx b) {
  if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0) {
    fail(ErrorKind::InvalidInput, "poincare_distance: arguments must lie in the open unit disc");
  }
  const double q = std::abs((a - b) / (1.0 - a * std::conj(b)));
  return std::atanh(q);
}

double poisson_kernel(cplx z) {
  const double m = std::abs(z);
  if (m >= 1.0) fail(ErrorKind::InvalidInput, "poisson_kernel: |z| must be < 1");
  return (1.0 - m * m) / std::norm(1.0 - z);
}

DiscAutomorphism DiscAutomorphism::parabolic(double t) {
  if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "parabolic automorphism: t not finite");
  return DiscAutomorphism(Kind::Parabolic, t, cplx{});
}

DiscAutomorphism DiscAutomorphism::normalized_mobius(cplx a) {
  if (std::abs(a) >= 1.0) fail(ErrorKind::InvalidInput, "normalized Mobius: |a| must be < 1");
  return DiscAutomorphism(Kind::NormalizedMobius, 0.0, a);
}

cplx DiscAutomorphism::operator()(cplx z) const {
  if (kind_ == Kind::Parabolic) {
    const cplx it = kI * t_;
    return ((1.0 - it) * z + it) / (-it * z + 1.0 + it);
  }
  const cplx c = (1.0 - std::conj(a_)) / (1.0 - a_);
  return c * (z - a_) / (1.0 - std::conj(a_) * z);
}

cplx DiscAutomorphism::derivative(cplx z) const {
  if (kind_ == Kind::Parabolic) {
    const cplx it = kI * t_;
    const cplx d = -it * z + 1.0 + it;
    return 1.0 / (d * d);  // determinant of the matrix is 1
  }
  const cplx c = (1.0 - std::conj(a_)) / (1.0 - a_);
  const cplx d = 1.0 - std::conj(a_) * z;
  return c * (1.0 - std::norm(a_)) / (d * d);
}

DiscAutomorphism DiscAutomorphism::inverse() const {
  if (kind_ == Kind::Parabolic) return parabolic(-t_);
  const cplx c = (1.0 - std::conj(a_)) / (1.0 - a_);
  return normalized_mobius(-a_ * c);
}

DiscAutomorphism compose_parabolic(const DiscAutomorphism& s, const DiscAutomorphism& t) {
  if (s.kind() != DiscAutomorphism::Kind::Parabolic ||
      t.kind() != DiscAutomorphism::Kind::Parabolic) {
    fail(ErrorKind::InvalidInput, "compose_parabolic: both maps must be parabolic");
  }
  return DiscAutomorphism::parabolic(s.parameter_t() + t.parameter_t());
}

cplx hyperbolic_fixing_one(cplx z, double scale) {
  if (!(scale > 0.0)) fail(ErrorKind::InvalidInput, "hyperbolic automorphism: scale must be > 0");
  const double s = (1.0 - scale) / (1.0 + scale);
  return (z + s) / (1.0 + s * z);
}

bool StolzRegion::contains(cplx z) const {
  return std::abs(z - 1.0) < aperture * (1.0 - std::abs(z));
}

int winding_number(std::span<const cplx> samples, double zero_tol) {
  if (samples.size() < 3) fail(ErrorKind::InvalidInput, "winding_number: need >= 3 samples");
  double total = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const cplx a = samples[k];
    const cplx b = samples[(k + 1) % samples.size()];
    if (std::abs(a) <= zero_tol) {
      fail(ErrorKind::WindingMismatch, "winding_number: loop passes through 0");
    }
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

LimitEstimate richardson_to_zero(std::span<const double> h, std::span<const cplx> f) {
  const std::size_t m = h.size();
  if (m != f.size() || m < 2) fail(ErrorKind::InvalidInput, "richardson_to_zero: bad samples");
  // table[j][i] extrapolates from points i..i+j
  std::vector<std::vector<cplx>> table(m);
  table[0].assign(f.begin(), f.end());
  LimitEstimate best;
  best.value = f[m - 1];
  best.error = std::abs(f[m - 1] - f[m - 2]);
  for (std::size_t j = 1; j < m; ++j) {
    table[j].resize(m - j);
    for (std::size_t i = 0; i + j < m; ++i) {
      const double hi = h[i];
      const double hj = h[i + j];
      table[j][i] = (hi * table[j - 1][i + 1] - hj * table[j - 1][i]) / (hi - hj);
      const double err = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                  std::abs(table[j][i] - table[j - 1][i + 1]));
      if (err < best.error) {
        best.error = err;
        best.value = table[j][i];
      }
    }
  }
  best.converged = std::isfinite(best.error);
  return best;
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& h, cplx z, int order, double radius,
                       int nodes) {
  if (order == 0) return h(z);
  cplx acc{};
  for (int k = 0; k < nodes; ++k) {
    const double th = 2.0 * kPi * k / nodes;
    const cplx e = std::polar(1.0, th);
    acc += h(z + radius * e) * std::polar(1.0, -order * th);
  }
  double fact = 1.0;
  for (int j = 2; j <= order; ++j) fact *= j;
  return acc * (fact / (nodes * std::pow(radius, order)));
}

namespace {

LimitEstimate limit_along(const std::function<cplx(cplx)>& h, int order, cplx direction,
                          const AngularLimitOptions& opts) {
  std::vector<double> hs;
  std::vector<cplx> vals;
  for (int k = opts.k_min; k <= opts.k_max; ++k) {
    const double s = std::ldexp(1.0, -k);
    const cplx z = 1.0 - s * direction;
    const double clearance = 1.0 - std::abs(z);
    hs.push_back(s);
    vals.push_back(cauchy_derivative(h, z, order, 0.5 * clearance));
  }
  return richardson_to_zero(hs, vals);
}

}  // namespace

LimitEstimate angular_limit(const std::function<cplx(cplx)>& h, int order,
                            const AngularLimitOptions& opts) {
  if (order < 0) fail(ErrorKind::InvalidInput, "angular_limit: negative order");
  if (!(opts.aperture > 1.0)) fail(ErrorKind::InvalidInput, "angular_limit: aperture must be > 1");
  LimitEstimate radial = limit_along(h, order, cplx{1.0, 0.0}, opts);
  if (opts.stolz_check) {
    const double alpha = 0.5 * std::acos(1.0 / opts.aperture);
    const LimitEstimate tilted = limit_along(h, order, std::polar(1.0, alpha), opts);
    radial.stolz_discrepancy = std::abs(radial.value - tilted.value);
    radial.error = std::max({radial.error, tilted.error, radial.stolz_discrepancy});
  }
  const double scale = std::max(1.0, std::abs(radial.value));
  radial.converged = std::isfinite(radial.error) && radial.error <= opts.divergence_tol * scale;
  if (!radial.converged) {
    std::ostringstream os;
    os << "angular_limit: no convergence (error estimate " << radial.error << ")";
    fail(ErrorKind::Divergent, os.str());
  }
  return radial;
}

Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

cplx Rng::complex_normal() { return {normal(), normal()}; }

CVector Rng::unit_sphere(int n) {
  CVector v(n);
  for (int j = 0; j < n; ++j) v[j] = complex_normal();
  return v / v.norm();
}

CVector Rng::in_ball(int n, double radius) {
  const double r = radius * std::pow(uniform(), 1.0 / (2.0 * n));
  return r * unit_sphere(n);
}

cplx Rng::in_disc(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, 2.0 * kPi * uniform());
}

}  // namespace lempert
