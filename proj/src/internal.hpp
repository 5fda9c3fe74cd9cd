#pragma once

#include <functional>

#include "lempertkit/geodesics.hpp"

namespace lempert::detail {

using MapFn = std::function<CVector(cplx)>;
using ScalarFn = std::function<cplx(cplx)>;

/// Fit a closed-form holomorphic map with `degree` modes from `grid` boundary samples.
HardyMap fit_map(const MapFn& f, int dim, int degree, int grid);

/// Largest coefficient modulus with index > cut.
double coefficient_tail(const HardyMap& h, int cut);

/// Pair for phi o sigma with dual (phi* o sigma)/sigma', fitted at the given degree and grid.
GeodesicPair compose_pair(const GeodesicPair& pair, const ScalarFn& sigma,
                          const ScalarFn& dsigma, int degree, int grid);

/// compose_pair with the degree raised until the tail of the fitted map is negligible.
GeodesicPair compose_pair_adaptive(const GeodesicPair& pair, const ScalarFn& sigma,
                                   const ScalarFn& dsigma, int min_degree, int max_degree);

/// Preferred-condition derivative of |g| at theta = 0 from samples on the M-node grid.
std::vector<double> theta_derivative_weights(int m);

/// Ball geodesic through interior z with phi'(0) a positive multiple of v (radius rho ball
/// centered at the origin).
GeodesicPair ball_direction_pair(const CVector& z, const CVector& v, double rho);
/// Ball geodesic with phi(0) = z, phi(t) = w, t real positive.
GeodesicPair ball_point_pair(const CVector& z, const CVector& w, double rho);

int next_pow2(int x);

}  // namespace lempert::detail
