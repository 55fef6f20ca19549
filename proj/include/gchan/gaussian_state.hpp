#pragma once

// Gaussian states described by their first and second moments.
//
// Quadratures follow R = (w_1^{1/2} Q_1, w_1^{-1/2} P_1, ...), so the
// covariance matrix is dimensionless and the vacuum is the identity. Other
// references use unscaled quadratures; convert before comparing numbers.

#include "gchan/symplectic.hpp"

namespace gchan {

using Spectrum = SymplecticSpectrum<double>;

/// Covariance gamma, displacement m and per-mode frequencies omega.
/// Construction enforces symmetry, nu_j >= 1 - tol and omega > 0.
class GaussianState {
 public:
  GaussianState(Matrix gamma, Vector m, Vector omega, double tol = 1e-8);

  Index modes() const { return gamma_.rows() / 2; }
  const Matrix& covariance() const { return gamma_; }
  const Vector& displacement() const { return m_; }
  const Vector& omega() const { return omega_; }

  Spectrum spectrum() const { return symplectic_eigenvalues(gamma_); }

 private:
  Matrix gamma_;
  Vector m_;
  Vector omega_;
};

struct ModeEnergy {
  Vector per_mode;
  double total = 0.0;
};

struct PhysicalityReport {
  bool physical;
  double min_symplectic_eigenvalue;
  double min_eigenvalue_gamma_plus_iJ;  // cross-check: gamma + iJ >= 0
  explicit operator bool() const { return physical; }
};

GaussianState vacuum(const Vector& omega);
GaussianState thermal(const Vector& nbar, const Vector& omega);
GaussianState coherent(const Vector& omega, const Vector& m);

PhysicalityReport is_physical(const Matrix& gamma, double tol = 1e-8);
PhysicalityReport is_physical(const GaussianState& state, double tol = 1e-8);

/// det gamma = 1 and every nu_j = 1, both within tol.
bool is_pure(const GaussianState& state, double tol = 1e-8);

/// (w_k / 4) Tr gamma_[k] + (w_k / 2)(m_{2k-1}^2 + m_{2k}^2) per mode.
ModeEnergy mean_energy(const GaussianState& state);

/// (x + 1)^p - (x - 1)^p for x >= 1, p >= 1.
double f_p(double x, double p);

/// F_p(nu) = prod_j f_p(nu_j), and its logarithm.
double big_f_p(const Vector& nu, double p);
double log_big_f_p(const Vector& nu, double p);

/// Tr rho^p = prod_j 2^p / f_p(nu_j); p = 1 returns exactly 1.
double trace_p(const Vector& nu, double p);
double trace_p(const Spectrum& nu, double p);
double trace_p(const GaussianState& state, double p);

/// Entropy in nats of one mode with symplectic eigenvalue nu >= 1.
double mode_entropy(double nu);

/// Sum of mode entropies. Eigenvalues within `tol` below 1 are clamped to
/// 1 (and logged); anything further below is rejected.
double von_neumann_entropy(const Vector& nu, double tol = 1e-8);
double von_neumann_entropy(const Spectrum& nu, double tol = 1e-8);
double von_neumann_entropy(const GaussianState& state, double tol = 1e-8);

/// Clamps entries in [1 - tol, 1) up to 1; throws DomainError below that.
Vector clamp_physical(const Vector& nu, double tol = 1e-8);

}  // namespace gchan
