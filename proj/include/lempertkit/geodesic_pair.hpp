#pragma once

#include <map>
#include <string>
#include <vector>

#include "lempertkit/hardy.hpp"

namespace lempert {

/// A complex geodesic phi with its dual phi* and boundary weight mu sampled on the M-node grid.
/// The dual is normalized by sum_j phi_j'(zeta) phi*_j(zeta) = 1.
struct GeodesicPair {
  HardyMap phi;
  HardyMap dual;
  std::vector<double> mu;
  std::map<std::string, double> residuals;
  /// InteriorPoint problems: the real parameter with phi(t) = w. Zero otherwise.
  double t = 0.0;

  int dim() const { return phi.dim(); }
  int grid() const { return static_cast<int>(mu.size()); }
};

/// Boundary point p of a domain together with a unit direction v, <v, nu_p> > 0.
struct BoundaryDirection {
  CVector p;
  CVector v;
};

}  // namespace lempert
