#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lempertkit/core.hpp"

namespace lempert {

enum class DomainKind { Ball, LinearBall, PerturbedBall, Custom };

const char* to_string(DomainKind kind);

/// Evaluators for a user-supplied defining function r (negative inside).
struct DomainCallbacks {
  std::function<double(const CVector&)> value;
  std::function<CVector(const CVector&)> dr_dzbar;     // (dr/d zbar_j)_j
  std::function<CMatrix(const CVector&)> levi;         // (d^2 r / dz_j dzbar_k)_{jk}
  std::function<CMatrix(const CVector&)> symmetric;    // (d^2 r / dz_j dz_k)_{jk}
};

struct ConvexityReport {
  double margin = 0.0;      // min over sampled unit tangent v of Levi(v) - |S(v)|
  CVector worst_direction;
  int samples = 0;
};

/// Bounded domain {r < 0} in C^n given by a defining function with derivative oracles.
/// Immutable after construction; copies share the callback state.
class Domain {
 public:
  static Domain ball(int n);
  /// Image of the unit ball under z -> A z + b; r(z) = |A^{-1}(z - b)|^2 - 1.
  static Domain linear_ball(const CMatrix& a, const CVector& b);
  /// r(z) = |z|^2 - 1 + eps Re(z_1^2).
  static Domain perturbed_ball(int n, double eps);
  static Domain custom(int n, DomainCallbacks callbacks, const CVector& anchor,
                       double bounding_radius);

  int dim() const { return n_; }
  DomainKind kind() const { return kind_; }
  const CMatrix& matrix_a() const { return a_; }
  const CVector& offset_b() const { return b_; }
  double eps() const { return eps_; }
  /// Interior point used as origin for rays.
  const CVector& anchor() const { return anchor_; }
  /// Radius of a Euclidean ball about the anchor containing the domain (inf if unbounded).
  double bounding_radius() const { return bound_; }

  double r(const CVector& z) const;
  CVector dr_dzbar(const CVector& z) const;
  /// Real gradient as a complex vector: component j is dr/dx_j + i dr/dy_j.
  CVector real_gradient(const CVector& z) const { return 2.0 * dr_dzbar(z); }
  CMatrix levi(const CVector& z) const;
  CMatrix symmetric_hessian(const CVector& z) const;
  /// Real 2n x 2n Hessian in coordinates (x_1, y_1, ..., x_n, y_n).
  Eigen::MatrixXd real_hessian(const CVector& z) const;

  bool on_boundary(const CVector& z, double tol = 1e-9) const;
  /// Normalized real gradient, no boundary check.
  CVector normal_at(const CVector& z) const;
  /// Unit outward normal at a boundary point; throws NotOnBoundary otherwise.
  CVector unit_normal(const CVector& p) const;

  /// Smallest t > 0 with r(origin + t dir) = 0 (origin interior).
  double ray_exit(const CVector& origin, const CVector& dir) const;
  /// Newton projection along the gradient onto {r = 0}.
  CVector project_to_boundary(const CVector& z) const;

  ConvexityReport strong_linear_convexity_check(const CVector& p, int num_directions,
                                                std::uint64_t seed = 7) const;
  double distance_to_boundary(const CVector& z) const;
  bool in_nontangential_region(const CVector& p, double beta, const CVector& z) const;

  CVector random_boundary_point(Rng& rng) const;
  /// anchor + s * exit * d with d uniform on the sphere and s <= max_fraction.
  CVector random_interior_point(Rng& rng, double max_fraction = 0.9) const;

 private:
  Domain() = default;

  DomainKind kind_ = DomainKind::Ball;
  int n_ = 0;
  CMatrix a_;
  CMatrix a_inv_;
  CVector b_;
  double eps_ = 0.0;
  CVector anchor_;
  double bound_ = 1.0;
  std::shared_ptr<const DomainCallbacks> callbacks_;
};

}  // namespace lempert
