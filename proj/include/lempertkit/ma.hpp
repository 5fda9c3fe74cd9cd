#pragma once

#include <functional>
#include <vector>

#include "lempertkit/rep.hpp"

namespace lempert {

using RealField = std::function<double(const CVector&)>;

/// P_Omega(z, p) through the spherical representation (closed form on the ball).
double pluricomplex_poisson(const SphericalRep& rep, const CVector& z);

struct SliceReport {
  double max_error = 0.0;     // |P o phi_v + P_disc / <v,nu_p>^2|, relative to max(1, |rhs|)
  double harmonicity = 0.0;   // 4 |circle mean - center| / rho^2 at sample centers
  double center_value = 0.0;  // P(phi_v(0))
  int samples = 0;
  bool pass = false;
};

SliceReport slice_check(const SphericalRep& rep, const CVector& v, int radii = 16,
                        int angles = 64, double tol = 1e-6, double tol_harmonic = 1e-5);

/// C(j,k) = d^2 u / dz_j dzbar_k by central differences on the real 2n-dimensional stencil,
/// Richardson-extrapolated over the steps h, h/2, ..., h/2^{levels-1}. Returns the Hermitian
/// part; `asymmetry` receives the norm of the anti-Hermitian part.
CMatrix complex_hessian_fd(const RealField& u, const CVector& z, double h, int levels = 2,
                           double* asymmetry = nullptr);

struct MASample {
  CVector z;
  double value = 0.0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double det = 0.0;
  double angle = 0.0;  // between the null direction and the geodesic tangent (complex lines)
};

struct MAOptions {
  double tol_psd = 1e-4;
  double tol_det = 1e-6;
  double tol_angle = 1e-2;
  // h = step_fraction * distance to the boundary. Zero values pick 0.1 and 4 levels for the
  // closed-form ball kernel, 0.02 and 2 levels for solver-backed kernels.
  double step_fraction = 0.0;
  int levels = 0;
};

struct MAReport {
  std::vector<MASample> samples;
  double worst_det = 0.0;
  double worst_min_eig = 0.0;
  double worst_angle = 0.0;
  double max_value = 0.0;
  bool pass = false;
};

MAReport ma_verify(const SphericalRep& rep, const std::vector<CVector>& points,
                   const MAOptions& opts = {});

struct AsymptoticsReport {
  double limit = 0.0;       // extrapolated lim P(gamma(t)) (1 - t)
  double expected = 0.0;    // -Re 2/<gamma'(1), nu_p>
  double error = 0.0;       // extrapolation error estimate
  double relative = 0.0;    // |limit - expected| / |expected|
  double ratio_min = 0.0;   // inf of -P |z - p| along the samples
  double ratio_max = 0.0;
  bool pass = false;
};

/// Line gamma(t) = p + (t - 1) u, u non-tangential (Re <u, nu_p> > 0).
AsymptoticsReport boundary_asymptotics(const SphericalRep& rep, const CVector& u,
                                       double beta = 4.0, double tol = 1e-3);

/// g(z, w) = log tanh k(z, w).
double green_function(const Domain& domain, const CVector& w, const CVector& z,
                      const SolverConfig& config = {});

struct GreenNormalReport {
  std::vector<double> steps;
  std::vector<double> quotients;  // -g(z, p - h nu_p)/h
  double limit = 0.0;
  double error = 0.0;
  double kernel = 0.0;            // P(z, p)
  double relative = 0.0;          // |limit + kernel| / |kernel|
  bool pass = false;
};

GreenNormalReport green_normal_derivative_relation(const SphericalRep& rep, const CVector& z,
                                                   int steps = 6, double tol = 1e-3);

}  // namespace lempert
