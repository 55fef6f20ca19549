#include "gchan/gaussian_state.hpp"

#include <cmath>
#include <sstream>

#include "gchan/log.hpp"

namespace gchan {

namespace {

void require_positive_omega(const Vector& omega, Index n) {
  if (omega.size() != n) {
    std::ostringstream os;
    os << "omega has " << omega.size() << " entries, expected " << n;
    throw DimensionError(os.str());
  }
  for (Index k = 0; k < n; ++k) {
    if (!(omega(k) > 0.0)) throw DomainError("mode frequencies must be positive");
  }
}

}  // namespace

GaussianState::GaussianState(Matrix gamma, Vector m, Vector omega, double tol)
    : gamma_(std::move(gamma)), m_(std::move(m)), omega_(std::move(omega)) {
  const Index n = detail::modes_of(gamma_.rows(), gamma_.cols(), "GaussianState");
  if (m_.size() != 2 * n) {
    std::ostringstream os;
    os << "displacement has " << m_.size() << " entries, expected " << 2 * n;
    throw DimensionError(os.str());
  }
  require_positive_omega(omega_, n);
  gamma_ = detail::symmetrized<double>(gamma_, Tolerances{}.symplectic, "GaussianState");
  const auto report = is_physical(gamma_, tol);
  if (!report) {
    std::ostringstream os;
    os << "covariance matrix is not physical (minimum symplectic eigenvalue "
       << report.min_symplectic_eigenvalue << ")";
    throw PredicateError(os.str(), report.min_symplectic_eigenvalue);
  }
}

GaussianState vacuum(const Vector& omega) {
  const Index n = omega.size();
  if (n < 1) throw DimensionError("vacuum: need at least one mode");
  return GaussianState(Matrix::Identity(2 * n, 2 * n), Vector::Zero(2 * n), omega);
}

GaussianState thermal(const Vector& nbar, const Vector& omega) {
  const Index n = nbar.size();
  if (n < 1) throw DimensionError("thermal: need at least one mode");
  Vector d(2 * n);
  for (Index k = 0; k < n; ++k) {
    if (!(nbar(k) >= 0.0)) throw DomainError("thermal: mean photon numbers must be >= 0");
    d(2 * k) = d(2 * k + 1) = 2.0 * nbar(k) + 1.0;
  }
  return GaussianState(d.asDiagonal(), Vector::Zero(2 * n), omega);
}

GaussianState coherent(const Vector& omega, const Vector& m) {
  const Index n = omega.size();
  if (n < 1) throw DimensionError("coherent: need at least one mode");
  return GaussianState(Matrix::Identity(2 * n, 2 * n), m, omega);
}

PhysicalityReport is_physical(const Matrix& gamma, double tol) {
  const auto nu = symplectic_eigenvalues(gamma);
  const Index n = gamma.rows() / 2;
  const ComplexMatrix h =
      gamma.cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * symplectic_form(n).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return {nu.min() >= 1.0 - tol, nu.min(), es.eigenvalues()(0)};
}

PhysicalityReport is_physical(const GaussianState& state, double tol) {
  return is_physical(state.covariance(), tol);
}

bool is_pure(const GaussianState& state, double tol) {
  const bool det_one = std::abs(state.covariance().determinant() - 1.0) <= tol;
  const auto nu = state.spectrum();
  bool all_one = true;
  for (Index j = 0; j < nu.size(); ++j) all_one = all_one && std::abs(nu[j] - 1.0) <= tol;
  return det_one && all_one;
}

ModeEnergy mean_energy(const GaussianState& state) {
  const Index n = state.modes();
  const Matrix& g = state.covariance();
  const Vector& m = state.displacement();
  ModeEnergy e{Vector(n), 0.0};
  for (Index k = 0; k < n; ++k) {
    const double w = state.omega()(k);
    const Index a = 2 * k;
    const Index b = 2 * k + 1;
    e.per_mode(k) = 0.25 * w * (g(a, a) + g(b, b)) + 0.5 * w * (m(a) * m(a) + m(b) * m(b));
  }
  e.total = e.per_mode.sum();
  return e;
}

double f_p(double x, double p) {
  if (!(x >= 1.0) || !(p >= 1.0)) {
    std::ostringstream os;
    os << "f_p: need x >= 1 and p >= 1 (x = " << x << ", p = " << p << ")";
    throw DomainError(os.str());
  }
  return std::pow(x + 1.0, p) - std::pow(x - 1.0, p);
}

double log_big_f_p(const Vector& nu, double p) {
  double acc = 0.0;
  for (Index j = 0; j < nu.size(); ++j) acc += std::log(f_p(nu(j), p));
  return acc;
}

double big_f_p(const Vector& nu, double p) {
  double acc = 1.0;
  for (Index j = 0; j < nu.size(); ++j) acc *= f_p(nu(j), p);
  return acc;
}

double trace_p(const Vector& nu, double p) {
  if (p == 1.0) return 1.0;
  if (!(p > 1.0)) throw DomainError("trace_p: p must be >= 1");
  const Vector v = clamp_physical(nu);
  double acc = 1.0;
  for (Index j = 0; j < v.size(); ++j) acc *= std::pow(2.0, p) / f_p(v(j), p);
  return acc;
}

double trace_p(const Spectrum& nu, double p) { return trace_p(nu.values(), p); }

double trace_p(const GaussianState& state, double p) { return trace_p(state.spectrum(), p); }

double mode_entropy(double nu) {
  if (!(nu >= 1.0)) throw DomainError("mode_entropy: symplectic eigenvalue below 1");
  const double plus = 0.5 * (nu + 1.0);
  const double minus = 0.5 * (nu - 1.0);
  const double tail = minus > 0.0 ? minus * std::log(minus) : 0.0;
  return plus * std::log(plus) - tail;
}

Vector clamp_physical(const Vector& nu, double tol) {
  Vector out = nu;
  for (Index j = 0; j < out.size(); ++j) {
    if (out(j) >= 1.0) continue;
    if (out(j) < 1.0 - tol) {
      std::ostringstream os;
      os << "symplectic eigenvalue " << out(j) << " is below 1 (unphysical)";
      throw DomainError(os.str());
    }
    log::debug("clamped symplectic eigenvalue by ", 1.0 - out(j));
    out(j) = 1.0;
  }
  return out;
}

double von_neumann_entropy(const Vector& nu, double tol) {
  const Vector v = clamp_physical(nu, tol);
  double s = 0.0;
  for (Index j = 0; j < v.size(); ++j) s += mode_entropy(v(j));
  return s;
}

double von_neumann_entropy(const Spectrum& nu, double tol) {
  return von_neumann_entropy(nu.values(), tol);
}

double von_neumann_entropy(const GaussianState& state, double tol) {
  return von_neumann_entropy(state.spectrum(), tol);
}

}  // namespace gchan
