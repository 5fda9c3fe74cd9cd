#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lempertkit/error.hpp"

namespace lempert {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Standard Hermitian product <z, w> = sum_j z_j conj(w_j).
cplx hermitian_inner(const CVector& z, const CVector& w);

/// Bilinear pairing sum_j z_j w_j, i.e. <z, conj(w)>.
cplx bilinear(const CVector& z, const CVector& w);

CVector unit_vector(int n, int j);

/// Poincare (Kobayashi) distance of the unit disc.
double poincare_distance(cplx a, cplx b);

/// Classical Poisson kernel of the disc with pole at 1: (1-|z|^2)/|1-z|^2.
double poisson_kernel(cplx z);

/// Holomorphic automorphisms of the disc fixing the boundary point 1.
///
/// Parabolic:  s_t(z) = ((1 - i t) z + i t) / (-i t z + 1 + i t), with s_t(1) = 1, s_t'(1) = 1.
/// Normalized Mobius: m_a(z) = (1 - conj a)/(1 - a) * (z - a)/(1 - conj(a) z), with m_a(1) = 1.
class DiscAutomorphism {
 public:
  enum class Kind { Parabolic, NormalizedMobius };

  static DiscAutomorphism parabolic(double t);
  static DiscAutomorphism normalized_mobius(cplx a);

  Kind kind() const { return kind_; }
  double parameter_t() const { return t_; }
  cplx parameter_a() const { return a_; }

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  DiscAutomorphism inverse() const;

 private:
  DiscAutomorphism(Kind kind, double t, cplx a) : kind_(kind), t_(t), a_(a) {}

  Kind kind_;
  double t_ = 0.0;
  cplx a_{};
};

/// Composition sigma_s o sigma_t = sigma_{s+t} holds for the parabolic family.
DiscAutomorphism compose_parabolic(const DiscAutomorphism& s, const DiscAutomorphism& t);

/// Hyperbolic automorphism fixing +1 and -1 with angular derivative `scale` at 1.
cplx hyperbolic_fixing_one(cplx z, double scale);

struct StolzRegion {
  double aperture;  // > 1

  bool contains(cplx z) const;
};

/// Winding number of a closed loop given by samples (the last sample connects to the first).
/// Throws WindingMismatch if a sample is within `zero_tol` of 0.
int winding_number(std::span<const cplx> samples, double zero_tol = 1e-14);

/// Result of an extrapolated limit.
struct LimitEstimate {
  cplx value{};
  double error = 0.0;             // self-reported error estimate
  double stolz_discrepancy = 0.0; // |radial - tilted-path| when computed
  bool converged = false;
};

/// Polynomial (Neville) extrapolation of samples (h_k, f_k) to h = 0; the tableau entry with the
/// smallest successive-difference estimate wins.
LimitEstimate richardson_to_zero(std::span<const double> h, std::span<const cplx> f);

struct AngularLimitOptions {
  double aperture = 2.0;
  int k_min = 3;
  int k_max = 12;
  bool stolz_check = true;
  double divergence_tol = 1e-3;  // relative; above this the limit is declared divergent
};

/// Non-tangential limit at 1 of the d-th derivative of h, estimated along radii r_k = 1 - 2^{-k}.
/// Derivatives of a closed-form evaluator are computed by Cauchy integrals on circles of radius
/// (1 - |z|)/2. Throws Divergent if the extrapolation does not settle.
LimitEstimate angular_limit(const std::function<cplx(cplx)>& h, int order,
                            const AngularLimitOptions& opts = {});

/// d-th derivative of h at z from a trapezoid Cauchy integral on |w - z| = radius.
cplx cauchy_derivative(const std::function<cplx(cplx)>& h, cplx z, int order, double radius,
                       int nodes = 64);

/// Deterministic 64-bit generator with explicit uniform/normal helpers so sampled reports are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  cplx complex_normal();
  CVector unit_sphere(int n);             // uniform on the unit sphere of C^n
  CVector in_ball(int n, double radius);  // uniform in the ball of C^n
  cplx in_disc(double radius);

 private:
  std::uint64_t state_;
};

}  // namespace lempert
