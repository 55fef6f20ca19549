#pragma once

// Gaussian channels acting on moments: gamma -> X^T gamma X + Y,
// m -> X^T m, subject to Y + iJ - i X^T J X >= 0.

#include <string>
#include <vector>

#include "gchan/gaussian_state.hpp"

namespace gchan {

enum class ChannelKind { Classical, Thermal, Lossy, Custom, Tensor };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

class GaussianChannel {
 public:
  Index modes() const { return x_.rows() / 2; }
  const Matrix& x() const { return x_; }
  const Matrix& y() const { return y_; }
  ChannelKind kind() const { return kind_; }

  /// Transmittivities and reservoir photon numbers (thermal and lossy only).
  const Vector& eta() const { return eta_; }
  const Vector& nbar() const { return nbar_; }

  /// Factors of a mixed tensor product, in mode order.
  const std::vector<GaussianChannel>& components() const { return components_; }

  /// Minimum eigenvalue of Y + iJ - i X^T J X.
  double cp_eigenvalue() const { return cp_eigenvalue_; }

 private:
  GaussianChannel() = default;

  Matrix x_;
  Matrix y_;
  ChannelKind kind_ = ChannelKind::Custom;
  Vector eta_;
  Vector nbar_;
  std::vector<GaussianChannel> components_;
  double cp_eigenvalue_ = 0.0;

  friend GaussianChannel make_channel(Matrix x, Matrix y, const Tolerances& tol);
  friend GaussianChannel thermal_noise(const Vector& eta, const Vector& nbar, const Tolerances& tol);
  friend GaussianChannel tensor(const std::vector<GaussianChannel>& channels, const Tolerances& tol);
};

/// Minimum eigenvalue of the Hermitian CP certificate Y + iJ - i X^T J X.
double cp_certificate(const Matrix& x, const Matrix& y);

/// Validates dimensions, symmetry of Y and complete positivity. A channel
/// with X = I is tagged classical; anything else is custom.
GaussianChannel make_channel(Matrix x, Matrix y, const Tolerances& tol = {});

/// gamma -> gamma + Y, Y >= 0.
GaussianChannel classical_noise(const Matrix& y, const Tolerances& tol = {});

GaussianChannel identity_channel(Index n);

/// Beamsplitter coupling to a thermal reservoir, per mode:
/// X = sqrt(eta) I_2, Y = (2 nbar + 1)(1 - eta) I_2.
GaussianChannel thermal_noise(const Vector& eta, const Vector& nbar, const Tolerances& tol = {});

/// thermal_noise with nbar = 0.
GaussianChannel lossy(const Vector& eta, const Tolerances& tol = {});

/// Direct sum on covariances. Uniform classical or thermal lists collapse
/// to a single channel of that kind; mixed lists keep their components.
GaussianChannel tensor(const std::vector<GaussianChannel>& channels, const Tolerances& tol = {});

/// Output state; the input's mode frequencies are kept.
GaussianState apply(const GaussianChannel& channel, const GaussianState& state);

/// Output covariance only.
Matrix apply_covariance(const GaussianChannel& channel, const Matrix& gamma);

/// Symplectic spectrum of the added noise Y of a classical channel, zeros
/// allowed (the eps -> 0 limit of Y + eps I).
Vector noise_spectrum(const GaussianChannel& channel);

/// Williamson transform of Y + eps I, used to build the optimal input of a
/// classical channel: gamma_p = S^{-1} S^{-T}.
SymplecticMatrix<> noise_williamson_transform(const GaussianChannel& channel, double eps = 1e-10);

}  // namespace gchan
