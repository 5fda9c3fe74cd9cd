#pragma once

#include <vector>

#include "lempertkit/core.hpp"

namespace lempert {

/// Holomorphic map of the disc into C^n stored as truncated power series.
/// coeffs(j, k) is the coefficient of zeta^k in coordinate j.
class HardyMap {
 public:
  HardyMap() = default;
  HardyMap(int dim, int degree);
  explicit HardyMap(CMatrix coeffs);

  static HardyMap constant(const CVector& c, int degree);

  int dim() const { return static_cast<int>(coeffs_.rows()); }
  int degree() const { return static_cast<int>(coeffs_.cols()) - 1; }
  const CMatrix& coeffs() const { return coeffs_; }
  CMatrix& coeffs() { return coeffs_; }

  CVector operator()(cplx z) const;
  /// order-th derivative by term-wise differentiation.
  CVector derivative(cplx z, int order = 1) const;
  HardyMap derivative_map() const;

  /// Values at the M nodes exp(2 pi i m / M); returns an n x M matrix.
  CMatrix boundary_samples(int m) const;

  /// Fit from n x M samples at the roots of unity, keeping modes 0..degree.
  static HardyMap from_samples(const CMatrix& samples, int degree);

  /// Energy (sum of squared moduli) of the negative Fourier modes of the samples.
  static double negative_mode_energy(const CMatrix& samples);

  HardyMap resized(int degree) const;

 private:
  CMatrix coeffs_;
};

/// Discrete Fourier helpers on the M roots of unity: modes[k] for k in [0, M) with
/// negative mode -k stored at M - k. samples[m] = sum_k modes[k] zeta_m^k.
std::vector<cplx> fourier_modes(const std::vector<cplx>& samples);
std::vector<cplx> fourier_synthesis(const std::vector<cplx>& modes);

std::vector<cplx> unit_roots(int m);

}  // namespace lempert
