#pragma once

#include "lempertkit/geodesic_pair.hpp"

namespace lempert {

/// Normalize v to unit length and rotate its phase so that <v, nu> is real positive.
/// Throws NearTangential when |<v, nu>| < min_normal_component.
CVector normalize_direction(const CVector& v, const CVector& nu,
                            double min_normal_component = 1e-3);

/// eta_v(zeta) = nu + (zeta - 1) <v, nu> v, with nu = p for the ball.
CVector ball_geodesic_eval(const CVector& p, const CVector& v, cplx zeta);

/// Closed-form preferred geodesic and dual of the ball, stored with the given degree and grid.
GeodesicPair ball_geodesic(const CVector& p, const CVector& v, int degree = 1, int grid = 8);

struct BallInversion {
  CVector v;
  cplx zeta;
};

/// Data (v, zeta) with eta_v(zeta) = w; w in the closed ball, w != p.
BallInversion ball_invert(const CVector& p, const CVector& w);

double ball_kobayashi(const CVector& z, const CVector& w);

/// Pole-0 horosphere of the ball: |1 - <z,p>|^2 / (1 - |z|^2) < R.
bool ball_horosphere_membership(const CVector& p, double radius, const CVector& z);

struct HorosphereShape {
  CVector center;
  double disc_radius;
  double orthogonal_radius;
};
HorosphereShape ball_horosphere_shape(const CVector& p, double radius);

/// -(1 - |z|^2) / |1 - <z,p>|^2.
double ball_poisson_kernel(const CVector& z, const CVector& p);

/// Levi form of the ball kernel at z applied to v.
double ball_poisson_hessian(const CVector& z, const CVector& p, const CVector& v);

/// Matrix C with C(j,k) = d^2 P / dz_j dzbar_k for the ball kernel.
CMatrix ball_poisson_hessian_matrix(const CVector& z, const CVector& p);

/// 1/2 log(|1-<z,p>|^2/(1-|z|^2)) minus the same at z0.
double ball_busemann(const CVector& z, const CVector& z0, const CVector& p);

}  // namespace lempert
