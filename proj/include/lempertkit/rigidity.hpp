#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lempertkit/core.hpp"
#include "lempertkit/hardy.hpp"

namespace lempert {

using ScalarMap = std::function<cplx(cplx)>;

/// Holomorphic self-map of the disc with a boundary fixed point at 1.
struct SelfMap {
  ScalarMap f;
  std::string label;
  bool third_order_contact = true;  // caller-asserted f(z) = z + O(|z-1|^3)
  bool identity = false;
  std::optional<double> exact_f3;   // known f'''(1), when available

  cplx operator()(cplx z) const { return f(z); }

  static SelfMap identity_map();
  static SelfMap from_hardy(const HardyMap& h, std::string label = "hardy");
  static SelfMap parabolic(double t);
  /// (10z + (1-z)^2) / (10 + (1-z)^2)
  static SelfMap shoikhet();
};

/// g = (1+f)/(1-f) - (1+z)/(1-z), phi = (f - z)/(z - 1)^2, psi = (1 - phi)/(1 + phi).
struct ChainBundle {
  ScalarMap g;
  ScalarMap phi;
  ScalarMap psi;
  double min_re_g = 0.0;    // over the check grid
  double max_abs_psi = 0.0;
};

/// Grid of `radii` x `angles` points r_i e^{i theta_j}, r_i = (i + 1/2)/radii, dropping points
/// with |z - 1| < exclusion.
std::vector<cplx> disc_grid(int radii, int angles, double exclusion = 1e-3);

ChainBundle chain_transform(const SelfMap& f, int radii = 16, int angles = 64);

struct InverseChainResult {
  SelfMap f;
  bool self_map = true;     // |f| <= 1 on the check grid
  double max_abs_f = 0.0;
  double chain_error = 0.0; // |chain_transform(f).psi - psi| on the grid
};

/// Reverse chain: phi = (1 - psi)/(1 + psi), f = z + phi (z - 1)^2.
InverseChainResult inverse_chain(const ScalarMap& psi, int radii = 16, int angles = 64);

struct F3Estimate {
  double value = 0.0;        // -3 psi'(1)
  double radial = 0.0;       // extrapolated radial limit of f'''
  double angular_psi = 0.0;  // psi'(1)
  double error = 0.0;
  bool consistent = false;
};

/// f'''(1) two ways; throws InvalidInput when the estimates disagree.
F3Estimate third_derivative_at_one(const SelfMap& f);

struct BKReport {
  double margin_i = 0.0;   // min Re phi
  double margin_ii = 0.0;  // min (rhs - lhs) of inequality (ii)
  cplx worst_i{};
  cplx worst_ii{};
  int samples = 0;
  F3Estimate f3;
  bool checked_ii = true;  // false when the map does not assert third-order contact
  bool pass = false;
};

BKReport verify_bk_inequalities(const SelfMap& f, int radii = 64, int angles = 256,
                                double tol_i = 1e-10, double tol_ii = 1e-8);

struct ShoikhetReport {
  cplx zeta{};
  double lhs = 0.0;         // |f - z|^2
  double rhs = 0.0;         // -(1/6) f'''(1) Re((f - z)(1 - conj z)^2) / (1 - |z|^2)
  double rhs_correct = 0.0; // right side of inequality (ii)
  double phi = 0.0;         // Re phi at zeta
  double f3 = 0.0;
  bool violated = false;
};

ShoikhetReport shoikhet_counterexample();

/// Test map from the reciprocal of a Herglotz function with a pole at 1:
/// g = 1/(b H + G0), H = (1+z)/(1-z), G0 = i c + sum w_k (a_k + z)/(a_k - z) with |a_k| > 1.
/// Then f'''(1) = -3/(2b).
SelfMap random_bk_map(Rng& rng);

}  // namespace lempert
