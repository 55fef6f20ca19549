#include "gchan/channel.hpp"

#include <sstream>

namespace gchan {

namespace {

Matrix direct_sum(const std::vector<const Matrix*>& blocks) {
  Index dim = 0;
  for (const Matrix* b : blocks) dim += b->rows();
  Matrix out = Matrix::Zero(dim, dim);
  Index at = 0;
  for (const Matrix* b : blocks) {
    out.block(at, at, b->rows(), b->cols()) = *b;
    at += b->rows();
  }
  return out;
}

Vector concat(const std::vector<const Vector*>& parts) {
  Index len = 0;
  for (const Vector* p : parts) len += p->size();
  Vector out(len);
  Index at = 0;
  for (const Vector* p : parts) {
    out.segment(at, p->size()) = *p;
    at += p->size();
  }
  return out;
}

}  // namespace

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Classical: return "classical";
    case ChannelKind::Thermal: return "thermal";
    case ChannelKind::Lossy: return "lossy";
    case ChannelKind::Custom: return "custom";
    case ChannelKind::Tensor: return "tensor";
  }
  return "custom";
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "classical") return ChannelKind::Classical;
  if (name == "thermal") return ChannelKind::Thermal;
  if (name == "lossy") return ChannelKind::Lossy;
  if (name == "custom") return ChannelKind::Custom;
  if (name == "tensor") return ChannelKind::Tensor;
  throw DomainError("unknown channel kind '" + name + "'");
}

double cp_certificate(const Matrix& x, const Matrix& y) {
  const Index n = x.rows() / 2;
  const Matrix j = symplectic_form(n);
  const Matrix skew = j - x.transpose() * j * x;
  const ComplexMatrix h = y.cast<std::complex<double>>() +
                          std::complex<double>(0.0, 1.0) * skew.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

GaussianChannel make_channel(Matrix x, Matrix y, const Tolerances& tol) {
  const Index n = detail::modes_of(x.rows(), x.cols(), "make_channel (X)");
  if (y.rows() != x.rows() || y.cols() != x.cols()) {
    std::ostringstream os;
    os << "make_channel: Y is " << y.rows() << "x" << y.cols() << ", expected " << 2 * n << "x"
       << 2 * n;
    throw DimensionError(os.str());
  }
  y = detail::symmetrized<double>(y, tol.symplectic, "make_channel (Y)");

  GaussianChannel ch;
  ch.cp_eigenvalue_ = cp_certificate(x, y);
  if (ch.cp_eigenvalue_ < -tol.physical) {
    std::ostringstream os;
    os << "make_channel: complete positivity violated (minimum eigenvalue of Y + iJ - iX^T J X is "
       << ch.cp_eigenvalue_ << ")";
    throw PredicateError(os.str(), ch.cp_eigenvalue_);
  }
  ch.kind_ = x == Matrix::Identity(2 * n, 2 * n) ? ChannelKind::Classical : ChannelKind::Custom;
  ch.x_ = std::move(x);
  ch.y_ = std::move(y);
  return ch;
}

GaussianChannel classical_noise(const Matrix& y, const Tolerances& tol) {
  const Index n = detail::modes_of(y.rows(), y.cols(), "classical_noise");
  const Matrix sym = detail::symmetrized<double>(y, tol.symplectic, "classical_noise (Y)");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues()(0);
  if (lowest < -tol.physical) {
    std::ostringstream os;
    os << "classical_noise: Y is not positive semidefinite (minimum eigenvalue " << lowest << ")";
    throw PredicateError(os.str(), lowest);
  }
  return make_channel(Matrix::Identity(2 * n, 2 * n), sym, tol);
}

GaussianChannel identity_channel(Index n) {
  return classical_noise(Matrix::Zero(2 * n, 2 * n));
}

GaussianChannel thermal_noise(const Vector& eta, const Vector& nbar, const Tolerances& tol) {
  const Index n = eta.size();
  if (n < 1 || nbar.size() != n) {
    throw DimensionError("thermal_noise: eta and nbar must have the same positive length");
  }
  Vector xd(2 * n);
  Vector yd(2 * n);
  for (Index k = 0; k < n; ++k) {
    if (!(eta(k) >= 0.0 && eta(k) <= 1.0)) {
      throw DomainError("thermal_noise: transmittivity must lie in [0, 1]");
    }
    if (!(nbar(k) >= 0.0)) throw DomainError("thermal_noise: nbar must be >= 0");
    xd(2 * k) = xd(2 * k + 1) = std::sqrt(eta(k));
    yd(2 * k) = yd(2 * k + 1) = (2.0 * nbar(k) + 1.0) * (1.0 - eta(k));
  }
  GaussianChannel ch = make_channel(xd.asDiagonal(), yd.asDiagonal(), tol);
  ch.kind_ = nbar.isZero(0.0) ? ChannelKind::Lossy : ChannelKind::Thermal;
  ch.eta_ = eta;
  ch.nbar_ = nbar;
  return ch;
}

GaussianChannel lossy(const Vector& eta, const Tolerances& tol) {
  return thermal_noise(eta, Vector::Zero(eta.size()), tol);
}

GaussianChannel tensor(const std::vector<GaussianChannel>& channels, const Tolerances& tol) {
  if (channels.empty()) throw DomainError("tensor: empty channel list");
  if (channels.size() == 1) return channels.front();

  std::vector<const Matrix*> xs;
  std::vector<const Matrix*> ys;
  bool all_classical = true;
  bool all_thermal = true;
  bool all_lossy = true;
  bool any_custom = false;
  for (const auto& c : channels) {
    xs.push_back(&c.x());
    ys.push_back(&c.y());
    const ChannelKind k = c.kind();
    all_classical = all_classical && k == ChannelKind::Classical;
    all_thermal = all_thermal && (k == ChannelKind::Thermal || k == ChannelKind::Lossy);
    all_lossy = all_lossy && k == ChannelKind::Lossy;
    any_custom = any_custom || k == ChannelKind::Custom;
  }

  GaussianChannel out = make_channel(direct_sum(xs), direct_sum(ys), tol);
  if (all_thermal) {
    std::vector<const Vector*> etas;
    std::vector<const Vector*> nbars;
    for (const auto& c : channels) {
      etas.push_back(&c.eta());
      nbars.push_back(&c.nbar());
    }
    out.eta_ = concat(etas);
    out.nbar_ = concat(nbars);
    out.kind_ = all_lossy ? ChannelKind::Lossy : ChannelKind::Thermal;
    return out;
  }
  if (all_classical) return out;  // make_channel already tagged it classical

  out.kind_ = any_custom ? ChannelKind::Custom : ChannelKind::Tensor;
  for (const auto& c : channels) {
    if (c.kind() == ChannelKind::Tensor) {
      out.components_.insert(out.components_.end(), c.components().begin(), c.components().end());
    } else {
      out.components_.push_back(c);
    }
  }
  return out;
}

Matrix apply_covariance(const GaussianChannel& channel, const Matrix& gamma) {
  if (gamma.rows() != channel.x().rows() || gamma.cols() != channel.x().cols()) {
    std::ostringstream os;
    os << "apply: channel acts on " << channel.modes() << " modes, state has " << gamma.rows() / 2;
    throw DimensionError(os.str());
  }
  Matrix out = channel.x().transpose() * gamma * channel.x() + channel.y();
  return (out + out.transpose()) / 2.0;
}

GaussianState apply(const GaussianChannel& channel, const GaussianState& state) {
  Matrix gamma = apply_covariance(channel, state.covariance());
  Vector m = channel.x().transpose() * state.displacement();
  try {
    return GaussianState(std::move(gamma), std::move(m), state.omega());
  } catch (const PredicateError& e) {
    throw NumericalError(std::string("apply: channel produced an unphysical output: ") + e.what(),
                         e.value());
  }
}

Vector noise_spectrum(const GaussianChannel& channel) {
  return symplectic_eigenvalues_psd(channel.y());
}

SymplecticMatrix<> noise_williamson_transform(const GaussianChannel& channel, double eps) {
  const Index dim = channel.y().rows();
  return williamson(Matrix(channel.y() + eps * Matrix::Identity(dim, dim))).s;
}

}  // namespace gchan
