#include "lempertkit/hardy.hpp"

#include <unsupported/Eigen/FFT>

namespace lempert {

std::vector<cplx> fourier_modes(const std::vector<cplx>& samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, samples);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<cplx> fourier_synthesis(const std::vector<cplx>& modes) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, modes);
  const double scale = static_cast<double>(modes.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<cplx> unit_roots(int m) {
  std::vector<cplx> z(m);
  for (int k = 0; k < m; ++k) z[k] = std::polar(1.0, 2.0 * kPi * k / m);
  return z;
}

HardyMap::HardyMap(int dim, int degree) {
  if (dim < 1 || degree < 0) fail(ErrorKind::InvalidInput, "HardyMap: bad dimension or degree");
  coeffs_ = CMatrix::Zero(dim, degree + 1);
}

HardyMap::HardyMap(CMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 1 || coeffs_.cols() < 1) {
    fail(ErrorKind::InvalidInput, "HardyMap: empty coefficient matrix");
  }
  if (!coeffs_.allFinite()) fail(ErrorKind::InvalidInput, "HardyMap: non-finite coefficient");
}

HardyMap HardyMap::constant(const CVector& c, int degree) {
  HardyMap h(static_cast<int>(c.size()), degree);
  h.coeffs_.col(0) = c;
  return h;
}

CVector HardyMap::operator()(cplx z) const {
  // Horner
  const int nc = static_cast<int>(coeffs_.cols());
  CVector acc = coeffs_.col(nc - 1);
  for (int k = nc - 2; k >= 0; --k) acc = acc * z + coeffs_.col(k);
  return acc;
}

CVector HardyMap::derivative(cplx z, int order) const {
  if (order < 0) fail(ErrorKind::InvalidInput, "HardyMap::derivative: negative order");
  const int nc = static_cast<int>(coeffs_.cols());
  CVector acc = CVector::Zero(dim());
  for (int k = nc - 1; k >= order; --k) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= (k - j);
    acc = acc * z + falling * coeffs_.col(k);
  }
  return acc;
}

HardyMap HardyMap::derivative_map() const {
  const int nc = static_cast<int>(coeffs_.cols());
  CMatrix d = CMatrix::Zero(dim(), std::max(nc - 1, 1));
  for (int k = 1; k < nc; ++k) d.col(k - 1) = static_cast<double>(k) * coeffs_.col(k);
  return HardyMap(d);
}

CMatrix HardyMap::boundary_samples(int m) const {
  const int nc = static_cast<int>(coeffs_.cols());
  if (m < nc) fail(ErrorKind::InvalidInput, "boundary_samples: grid smaller than degree + 1");
  CMatrix out(dim(), m);
  std::vector<cplx> modes(m);
  for (int j = 0; j < dim(); ++j) {
    std::fill(modes.begin(), modes.end(), cplx{});
    for (int k = 0; k < nc; ++k) modes[k] = coeffs_(j, k);
    const auto s = fourier_synthesis(modes);
    for (int i = 0; i < m; ++i) out(j, i) = s[i];
  }
  return out;
}

HardyMap HardyMap::from_samples(const CMatrix& samples, int degree) {
  const int m = static_cast<int>(samples.cols());
  if (m < degree + 1) fail(ErrorKind::InvalidInput, "from_samples: too few samples");
  HardyMap h(static_cast<int>(samples.rows()), degree);
  std::vector<cplx> row(m);
  for (int j = 0; j < samples.rows(); ++j) {
    for (int i = 0; i < m; ++i) row[i] = samples(j, i);
    const auto modes = fourier_modes(row);
    for (int k = 0; k <= degree; ++k) h.coeffs_(j, k) = modes[k];
  }
  return h;
}

double HardyMap::negative_mode_energy(const CMatrix& samples) {
  const int m = static_cast<int>(samples.cols());
  double e = 0.0;
  std::vector<cplx> row(m);
  for (int j = 0; j < samples.rows(); ++j) {
    for (int i = 0; i < m; ++i) row[i] = samples(j, i);
    const auto modes = fourier_modes(row);
    for (int k = 1; k < m / 2; ++k) e += std::norm(modes[m - k]);
  }
  return e;
}

HardyMap HardyMap::resized(int degree) const {
  HardyMap h(dim(), degree);
  const int keep = std::min(degree + 1, static_cast<int>(coeffs_.cols()));
  h.coeffs_.leftCols(keep) = coeffs_.leftCols(keep);
  return h;
}

}  // namespace lempert
