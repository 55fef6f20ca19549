#pragma once

// Dense linear algebra on the real symplectic group Sp(2n, R): the form J_n,
// membership tests, symplectic eigenvalues, Williamson and Euler
// decompositions, the K(n) ~ U(n) correspondence and seeded samplers.
//
// Phase-space ordering is (x_1, p_1, x_2, p_2, ...), so J_n is the direct
// sum of n copies of [[0, 1], [-1, 0]].

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gchan/errors.hpp"
#include "gchan/rng.hpp"

namespace gchan {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexMatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using ComplexMatrix = ComplexMatrixX<double>;
using Index = Eigen::Index;

struct Tolerances {
  double symplectic = 1e-10;     // group membership, unitarity, CP certificate
  double decomposition = 1e-8;   // Williamson / Euler reconstruction
  double physical = 1e-10;       // Y >= 0 and the CP eigenvalue bound
};

struct Interval {
  double lo;
  double hi;
};

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

/// Outcome of a membership predicate; the residual is reported either way.
template <typename Scalar>
struct Membership {
  bool holds;
  Scalar residual;
  explicit operator bool() const { return holds; }
};

namespace detail {

inline Index modes_of(Index rows, Index cols, const char* what) {
  if (rows != cols) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << rows << "x" << cols;
    throw DimensionError(os.str());
  }
  if (rows == 0 || rows % 2 != 0) {
    std::ostringstream os;
    os << what << ": dimension must be positive and even, got " << rows;
    throw DimensionError(os.str());
  }
  return rows / 2;
}

template <typename Scalar>
Scalar symmetry_scale(const MatrixX<Scalar>& a) {
  return std::max(Scalar(1), max_abs(a));
}

template <typename Scalar>
MatrixX<Scalar> symmetrized(const MatrixX<Scalar>& a, double tol, const char* what) {
  const Scalar asym = max_abs((a - a.transpose()).eval());
  if (asym > Scalar(tol) * symmetry_scale(a)) {
    std::ostringstream os;
    os << what << ": matrix is not symmetric (max |A - A^T| = " << asym << ")";
    throw PredicateError(os.str(), static_cast<double>(asym));
  }
  return (a + a.transpose()) / Scalar(2);
}

template <typename Scalar>
struct SymmetricEigen {
  VectorX<Scalar> values;   // ascending
  MatrixX<Scalar> vectors;  // columns

  MatrixX<Scalar> power(Scalar exponent) const {
    VectorX<Scalar> d = values.unaryExpr([exponent](Scalar x) {
      using std::pow;
      return pow(x, exponent);
    });
    return vectors * d.asDiagonal() * vectors.transpose();
  }
};

template <typename Scalar>
SymmetricEigen<Scalar> symmetric_eigen(const MatrixX<Scalar>& a) {
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(a);
  if (es.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge", 0.0);
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

// Symmetric positive-definite input, validated and eigendecomposed.
template <typename Scalar>
SymmetricEigen<Scalar> positive_definite_eigen(const MatrixX<Scalar>& a, double tol_sym,
                                               const char* what) {
  detail::modes_of(a.rows(), a.cols(), what);
  auto eig = symmetric_eigen<Scalar>(symmetrized<Scalar>(a, tol_sym, what));
  if (!(eig.values(0) > Scalar(0))) {
    std::ostringstream os;
    os << what << ": matrix is not positive definite (minimum eigenvalue "
       << eig.values(0) << ")";
    throw PredicateError(os.str(), static_cast<double>(eig.values(0)));
  }
  return eig;
}

template <typename Scalar>
MatrixX<Scalar> paired_diagonal(const VectorX<Scalar>& v) {
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(2 * v.size(), 2 * v.size());
  for (Index j = 0; j < v.size(); ++j) {
    d(2 * j, 2 * j) = v(j);
    d(2 * j + 1, 2 * j + 1) = v(j);
  }
  return d;
}

// Averages the equal-magnitude pairs of a sorted length-2n vector.
template <typename Scalar>
VectorX<Scalar> average_pairs(std::vector<Scalar> values) {
  std::sort(values.begin(), values.end());
  VectorX<Scalar> out(static_cast<Index>(values.size() / 2));
  for (Index j = 0; j < out.size(); ++j) {
    out(j) = (values[2 * j] + values[2 * j + 1]) / Scalar(2);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The symplectic form and membership predicates

/// J_n = J_1 (+) ... (+) J_1 with J_1 = [[0, 1], [-1, 0]].
template <typename Scalar = double>
MatrixX<Scalar> symplectic_form(Index n) {
  if (n < 1) throw DimensionError("symplectic_form: mode count must be at least 1");
  MatrixX<Scalar> j = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    j(2 * k, 2 * k + 1) = Scalar(1);
    j(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return j;
}

/// Residual ||M J M^T - J||_max; true iff it is within `tol`.
template <typename Derived>
Membership<typename Derived::Scalar> is_symplectic(const Eigen::MatrixBase<Derived>& m,
                                                   double tol = Tolerances{}.symplectic) {
  using Scalar = typename Derived::Scalar;
  const Index n = detail::modes_of(m.rows(), m.cols(), "is_symplectic");
  const MatrixX<Scalar> j = symplectic_form<Scalar>(n);
  const Scalar r = max_abs((m * j * m.transpose() - j).eval());
  return {r <= Scalar(tol), r};
}

template <typename Derived>
Membership<typename Derived::Scalar> is_orthogonal(const Eigen::MatrixBase<Derived>& m,
                                                   double tol = Tolerances{}.symplectic) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> id = MatrixX<Scalar>::Identity(m.rows(), m.cols());
  const Scalar r = max_abs((m * m.transpose() - id).eval());
  return {r <= Scalar(tol), r};
}

// ---------------------------------------------------------------------------
// Domain types

/// A 2n x 2n matrix validated against S J S^T = J at construction.
template <typename Scalar = double>
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(MatrixX<Scalar> m, const Tolerances& tol = {}) : m_(std::move(m)) {
    const auto check = is_symplectic(m_, tol.symplectic);
    if (!check) {
      std::ostringstream os;
      os << "matrix is not symplectic (residual " << check.residual << ")";
      throw PredicateError(os.str(), static_cast<double>(check.residual));
    }
    // det S = 1 is implied by membership; checked at the looser
    // decomposition tolerance because LU error grows with cond(S).
    const Scalar det = m_.determinant();
    using std::abs;
    if (abs(det - Scalar(1)) > Scalar(tol.decomposition) * std::max(Scalar(1), max_abs(m_))) {
      std::ostringstream os;
      os << "symplectic matrix has determinant " << det;
      throw PredicateError(os.str(), static_cast<double>(det - Scalar(1)));
    }
  }

  Index modes() const { return m_.rows() / 2; }
  const MatrixX<Scalar>& matrix() const { return m_; }

  /// S^{-1} = -J S^T J, exact for symplectic S.
  MatrixX<Scalar> inverse() const {
    const MatrixX<Scalar> j = symplectic_form<Scalar>(modes());
    return -j * m_.transpose() * j;
  }

 private:
  MatrixX<Scalar> m_;
};

/// First 2k rows of a symplectic matrix: S J_n S^T = J_k.
template <typename Scalar = double>
class TruncatedSymplectic {
 public:
  TruncatedSymplectic(MatrixX<Scalar> m, const Tolerances& tol = {}) : m_(std::move(m)) {
    if (m_.rows() % 2 != 0 || m_.cols() % 2 != 0 || m_.rows() > m_.cols() || m_.rows() == 0) {
      throw DimensionError("truncated symplectic must be 2k x 2n with 1 <= k <= n");
    }
    const Scalar r = residual();
    if (r > Scalar(tol.symplectic)) {
      std::ostringstream os;
      os << "rows do not satisfy S J_n S^T = J_k (residual " << r << ")";
      throw PredicateError(os.str(), static_cast<double>(r));
    }
  }

  Index output_modes() const { return m_.rows() / 2; }
  Index input_modes() const { return m_.cols() / 2; }
  const MatrixX<Scalar>& matrix() const { return m_; }

  Scalar residual() const {
    const MatrixX<Scalar> jn = symplectic_form<Scalar>(input_modes());
    const MatrixX<Scalar> jk = symplectic_form<Scalar>(output_modes());
    return max_abs((m_ * jn * m_.transpose() - jk).eval());
  }

 private:
  MatrixX<Scalar> m_;
};

/// Symplectic eigenvalues nu_1 <= ... <= nu_n, all positive.
template <typename Scalar = double>
class SymplecticSpectrum {
 public:
  explicit SymplecticSpectrum(VectorX<Scalar> values) : v_(std::move(values)) {
    if (v_.size() == 0) throw DimensionError("symplectic spectrum must be nonempty");
    for (Index j = 0; j < v_.size(); ++j) {
      if (!(v_(j) > Scalar(0))) throw DomainError("symplectic eigenvalues must be positive");
    }
    std::sort(v_.data(), v_.data() + v_.size());
  }

  Index size() const { return v_.size(); }
  Scalar operator[](Index j) const { return v_(j); }
  const VectorX<Scalar>& values() const { return v_; }
  Scalar min() const { return v_(0); }

  /// nu_1 + ... + nu_k of the ascending arrangement.
  Scalar sum_smallest(Index k) const { return v_.head(k).sum(); }

  /// diag(nu_1, nu_1, ..., nu_n, nu_n).
  MatrixX<Scalar> paired_diagonal() const { return detail::paired_diagonal<Scalar>(v_); }

 private:
  VectorX<Scalar> v_;
};

template <typename Scalar = double>
struct WilliamsonDecomposition {
  SymplecticMatrix<Scalar> s;  // s A s^T = diag(nu_1, nu_1, ...)
  SymplecticSpectrum<Scalar> spectrum;
};

/// S = t1 * diag(z_1, 1/z_1, ..., z_n, 1/z_n) * t2, t1 and t2 in K(n).
template <typename Scalar = double>
struct EulerDecomposition {
  MatrixX<Scalar> t1;
  MatrixX<Scalar> t2;
  VectorX<Scalar> z;  // descending, each >= 1

  MatrixX<Scalar> squeeze() const {
    VectorX<Scalar> d(2 * z.size());
    for (Index j = 0; j < z.size(); ++j) {
      d(2 * j) = z(j);
      d(2 * j + 1) = Scalar(1) / z(j);
    }
    return d.asDiagonal();
  }
  MatrixX<Scalar> recompose() const { return t1 * squeeze() * t2; }
};

/// n x n unitary validated at construction.
template <typename Scalar = double>
class ComplexUnitary {
 public:
  explicit ComplexUnitary(ComplexMatrixX<Scalar> u, const Tolerances& tol = {}) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() == 0) {
      throw DimensionError("unitary must be a nonempty square matrix");
    }
    const Scalar r = max_abs(
        (u_ * u_.adjoint() - ComplexMatrixX<Scalar>::Identity(u_.rows(), u_.cols())).eval());
    if (r > Scalar(tol.symplectic)) {
      std::ostringstream os;
      os << "matrix is not unitary (residual " << r << ")";
      throw PredicateError(os.str(), static_cast<double>(r));
    }
  }

  Index size() const { return u_.rows(); }
  const ComplexMatrixX<Scalar>& matrix() const { return u_; }

 private:
  ComplexMatrixX<Scalar> u_;
};

// ---------------------------------------------------------------------------
// Symplectic eigenvalues

/// nu_j from the singular values of A^{1/2} J A^{1/2}, each of which
/// appears twice. Rejects non-symmetric or non-positive-definite input.
template <typename Derived>
SymplecticSpectrum<typename Derived::Scalar> symplectic_eigenvalues(
    const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const auto eig = detail::positive_definite_eigen<Scalar>(a.eval(), tol.symplectic,
                                                           "symplectic_eigenvalues");
  const MatrixX<Scalar> root = eig.power(Scalar(0.5));
  const MatrixX<Scalar> k = root * symplectic_form<Scalar>(a.rows() / 2) * root;
  const VectorX<Scalar> sv = Eigen::JacobiSVD<MatrixX<Scalar>>(k).singularValues();
  return SymplecticSpectrum<Scalar>(
      detail::average_pairs<Scalar>(std::vector<Scalar>(sv.data(), sv.data() + sv.size())));
}

/// Cross-check path: |Im| of the eigenvalues of J A, which are +-i nu_j.
/// Uses a non-symmetric eigensolver, so it is independent of
/// symplectic_eigenvalues.
template <typename Derived>
VectorX<typename Derived::Scalar> symplectic_eigenvalues_from_ja(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Index n = detail::modes_of(a.rows(), a.cols(), "symplectic_eigenvalues_from_ja");
  const MatrixX<Scalar> ja = symplectic_form<Scalar>(n) * a;
  Eigen::EigenSolver<MatrixX<Scalar>> es(ja, false);
  std::vector<Scalar> mags;
  for (Index j = 0; j < es.eigenvalues().size(); ++j) {
    using std::abs;
    mags.push_back(abs(es.eigenvalues()(j).imag()));
  }
  return detail::average_pairs<Scalar>(std::move(mags));
}

/// Symplectic spectrum of a positive semidefinite matrix, zeros allowed.
/// Equals the eps -> 0 limit of the spectrum of A + eps I.
template <typename Derived>
VectorX<typename Derived::Scalar> symplectic_eigenvalues_psd(const Eigen::MatrixBase<Derived>& a,
                                                             const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const Index n = detail::modes_of(a.rows(), a.cols(), "symplectic_eigenvalues_psd");
  const MatrixX<Scalar> sym =
      detail::symmetrized<Scalar>(a.eval(), tol.symplectic, "symplectic_eigenvalues_psd");
  auto eig = detail::symmetric_eigen<Scalar>(sym);
  const Scalar floor = -Scalar(tol.physical) * detail::symmetry_scale<Scalar>(sym);
  if (eig.values(0) < floor) {
    std::ostringstream os;
    os << "symplectic_eigenvalues_psd: matrix is not positive semidefinite (minimum eigenvalue "
       << eig.values(0) << ")";
    throw PredicateError(os.str(), static_cast<double>(eig.values(0)));
  }
  eig.values = eig.values.cwiseMax(Scalar(0));
  const MatrixX<Scalar> root = eig.power(Scalar(0.5));
  const MatrixX<Scalar> k = root * symplectic_form<Scalar>(n) * root;
  const VectorX<Scalar> sv = Eigen::JacobiSVD<MatrixX<Scalar>>(k).singularValues();
  return detail::average_pairs<Scalar>(std::vector<Scalar>(sv.data(), sv.data() + sv.size()));
}

// ---------------------------------------------------------------------------
// Williamson normal form

/// Symplectic S with S A S^T = diag(nu_1, nu_1, ..., nu_n, nu_n), nu
/// ascending.
///
/// B = A^{-1/2} J A^{-1/2} is skew-symmetric with eigenvalues +-i/nu_j. Its
/// invariant 2-planes come from the symmetric eigenproblem of B^T B: for a
/// unit eigenvector v, (v, -Bv/|Bv|) spans one plane on which B acts as
/// (1/nu) J_1. Collecting the planes into an orthogonal O gives
/// O^T B O = (+) nu_j^{-1} J_1 and S = D^{1/2} O^T A^{-1/2}.
///
/// Within a degenerate eigenspace the next seed is the remaining
/// eigenvector with the largest component outside the planes already
/// chosen, which keeps the output deterministic.
template <typename Derived>
WilliamsonDecomposition<typename Derived::Scalar> williamson(const Eigen::MatrixBase<Derived>& a,
                                                             const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Mat = MatrixX<Scalar>;
  using Vec = VectorX<Scalar>;
  const auto eig = detail::positive_definite_eigen<Scalar>(a.eval(), tol.symplectic, "williamson");
  const Index n = a.rows() / 2;
  const Index dim = 2 * n;
  const Mat inv_root = eig.power(Scalar(-0.5));
  Mat b = inv_root * symplectic_form<Scalar>(n) * inv_root;
  b = ((b - b.transpose()) / Scalar(2)).eval();

  const auto bb = detail::symmetric_eigen<Scalar>((b.transpose() * b).eval());

  Mat planes(dim, 0);
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  std::vector<std::pair<Scalar, Index>> order;  // (nu_j, plane index)
  for (Index j = 0; j < n; ++j) {
    Index best = -1;
    Scalar best_norm = -1;
    Vec best_residual;
    for (Index i = dim - 1; i >= 0; --i) {  // descending |B| singular value
      if (used[static_cast<std::size_t>(i)]) continue;
      Vec r = bb.vectors.col(i);
      if (planes.cols() > 0) r -= planes * (planes.transpose() * r);
      const Scalar rn = r.norm();
      if (rn > best_norm) {
        best_norm = rn;
        best = i;
        best_residual = r;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    Vec v = best_residual / best_norm;
    if (planes.cols() > 0) {
      v -= planes * (planes.transpose() * v);
      v.normalize();
    }
    Vec w = -(b * v);
    if (planes.cols() > 0) w -= planes * (planes.transpose() * w);
    w -= v * v.dot(w);
    const Scalar sigma = w.norm();
    if (!(sigma > Scalar(0))) throw NumericalError("williamson: degenerate invariant plane", 0.0);
    w /= sigma;
    planes.conservativeResize(Eigen::NoChange, planes.cols() + 2);
    planes.col(planes.cols() - 2) = v;
    planes.col(planes.cols() - 1) = w;
    order.emplace_back(Scalar(1) / v.dot(b * w), j);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  Mat o(dim, dim);
  Vec nu(n);
  for (Index j = 0; j < n; ++j) {
    const Index src = order[static_cast<std::size_t>(j)].second;
    o.col(2 * j) = planes.col(2 * src);
    o.col(2 * j + 1) = planes.col(2 * src + 1);
    nu(j) = order[static_cast<std::size_t>(j)].first;
  }
  Vec root_d(dim);
  for (Index j = 0; j < n; ++j) {
    using std::sqrt;
    root_d(2 * j) = root_d(2 * j + 1) = sqrt(nu(j));
  }
  Mat s = root_d.asDiagonal() * o.transpose() * inv_root;

  const Scalar resid = max_abs((s * a * s.transpose() - detail::paired_diagonal<Scalar>(nu)).eval());
  if (resid > Scalar(tol.decomposition) * std::max(Scalar(1), nu(n - 1))) {
    std::ostringstream os;
    os << "williamson: reconstruction residual " << resid << " exceeds tolerance";
    throw NumericalError(os.str(), static_cast<double>(resid));
  }
  return {SymplecticMatrix<Scalar>(std::move(s), tol), SymplecticSpectrum<Scalar>(nu)};
}

// ---------------------------------------------------------------------------
// Euler (Bloch-Messiah) decomposition

/// S = T1 Z T2 from the polar factor P = (S^T S)^{1/2}.
///
/// P is symmetric, positive and symplectic, so if P v = z v then
/// P (J^T v) = z^{-1} J^T v. Rows (v_j, J^T v_j) over the eigenvectors with
/// z_j > 1 form an orthosymplectic T2 with T2 P T2^T = Z; the unsqueezed
/// eigenspace is J-invariant and is completed by symplectic Gram-Schmidt.
/// Then T1 = S T2^T Z^{-1}.
template <typename Scalar>
EulerDecomposition<Scalar> euler_decompose(const SymplecticMatrix<Scalar>& symp,
                                           const Tolerances& tol = {}) {
  using Mat = MatrixX<Scalar>;
  using Vec = VectorX<Scalar>;
  using std::sqrt;
  const Mat& s = symp.matrix();
  const Index n = symp.modes();
  const Index dim = 2 * n;
  const Mat jt = symplectic_form<Scalar>(n).transpose();

  Mat m = s.transpose() * s;
  m = ((m + m.transpose()) / Scalar(2)).eval();
  const auto eig = detail::symmetric_eigen<Scalar>(m);

  // Below this gap a mode is treated as unsqueezed: the two error sources
  // (eigenvector conditioning vs. ignoring z - 1) balance near sqrt(eps).
  const Scalar delta = sqrt(std::numeric_limits<Scalar>::epsilon() *
                            std::max(Scalar(1), eig.values(dim - 1)));
  Index squeezed = 0;
  while (squeezed < n && eig.values(dim - 1 - squeezed) > Scalar(1) + delta) ++squeezed;

  Mat t2(dim, dim);
  Vec z = Vec::Ones(n);
  Mat basis(dim, 0);
  auto append = [&](Index j, const Vec& v) {
    t2.row(2 * j) = v.transpose();
    t2.row(2 * j + 1) = (jt * v).transpose();
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 2);
    basis.col(basis.cols() - 2) = v;
    basis.col(basis.cols() - 1) = jt * v;
  };
  for (Index j = 0; j < squeezed; ++j) {
    const Index i = dim - 1 - j;
    z(j) = sqrt(eig.values(i));
    append(j, eig.vectors.col(i));
  }
  // Unsqueezed block: candidates are the middle eigenvectors.
  std::vector<Index> candidates;
  for (Index i = squeezed; i < dim - squeezed; ++i) candidates.push_back(i);
  for (Index j = squeezed; j < n; ++j) {
    Scalar best_norm = -1;
    Vec best;
    for (const Index i : candidates) {
      Vec r = eig.vectors.col(i);
      if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
      const Scalar rn = r.norm();
      if (rn > best_norm) {
        best_norm = rn;
        best = r;
      }
    }
    Vec v = best / best_norm;
    if (basis.cols() > 0) {
      v -= basis * (basis.transpose() * v);
      v.normalize();
    }
    append(j, v);
  }

  EulerDecomposition<Scalar> out{Mat(), std::move(t2), std::move(z)};
  Vec inv_z(dim);
  for (Index j = 0; j < n; ++j) {
    inv_z(2 * j) = Scalar(1) / out.z(j);
    inv_z(2 * j + 1) = out.z(j);
  }
  out.t1 = s * out.t2.transpose() * inv_z.asDiagonal();

  const Scalar resid = max_abs((out.recompose() - s).eval());
  if (resid > Scalar(tol.decomposition) * std::max(Scalar(1), max_abs(s))) {
    std::ostringstream os;
    os << "euler_decompose: recomposition residual " << resid << " exceeds tolerance";
    throw NumericalError(os.str(), static_cast<double>(resid));
  }
  return out;
}

// ---------------------------------------------------------------------------
// K(n) ~ U(n)

/// u = a + ib maps to the 2x2 block [[a, b], [-b, a]] at block (j, k).
template <typename Scalar>
SymplecticMatrix<Scalar> unitary_to_orthosymplectic(const ComplexUnitary<Scalar>& u,
                                                    const Tolerances& tol = {}) {
  const Index n = u.size();
  MatrixX<Scalar> t(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      const auto ujk = u.matrix()(j, k);
      t(2 * j, 2 * k) = t(2 * j + 1, 2 * k + 1) = ujk.real();
      t(2 * j, 2 * k + 1) = ujk.imag();
      t(2 * j + 1, 2 * k) = -ujk.imag();
    }
  }
  return SymplecticMatrix<Scalar>(std::move(t), tol);
}

/// Inverse of unitary_to_orthosymplectic. Rejects input outside K(n) with
/// the largest of the symplectic, orthogonality and block-structure
/// residuals.
template <typename Scalar>
ComplexUnitary<Scalar> orthosymplectic_to_unitary(const SymplecticMatrix<Scalar>& symp,
                                                  const Tolerances& tol = {}) {
  const MatrixX<Scalar>& t = symp.matrix();
  const Index n = symp.modes();
  Scalar structure = 0;
  ComplexMatrixX<Scalar> u(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      using std::abs;
      const Scalar re = (t(2 * j, 2 * k) + t(2 * j + 1, 2 * k + 1)) / Scalar(2);
      const Scalar im = (t(2 * j, 2 * k + 1) - t(2 * j + 1, 2 * k)) / Scalar(2);
      structure = std::max({structure, abs(t(2 * j, 2 * k) - t(2 * j + 1, 2 * k + 1)),
                            abs(t(2 * j, 2 * k + 1) + t(2 * j + 1, 2 * k))});
      u(j, k) = {re, im};
    }
  }
  const Scalar worst =
      std::max({structure, is_symplectic(t).residual, is_orthogonal(t).residual});
  if (worst > Scalar(tol.symplectic)) {
    std::ostringstream os;
    os << "matrix is not in K(n) (residual " << worst << ")";
    throw PredicateError(os.str(), static_cast<double>(worst));
  }
  return ComplexUnitary<Scalar>(std::move(u), tol);
}

// ---------------------------------------------------------------------------
// Samplers

/// Haar unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) folded back into Q.
template <typename Scalar = double>
ComplexUnitary<Scalar> random_unitary(Index n, CounterRng& rng) {
  if (n < 1) throw DimensionError("random_unitary: dimension must be at least 1");
  ComplexMatrixX<Scalar> g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      const Scalar re = static_cast<Scalar>(rng.normal());
      const Scalar im = static_cast<Scalar>(rng.normal());
      g(j, k) = {re, im};
    }
  }
  Eigen::HouseholderQR<ComplexMatrixX<Scalar>> qr(g);
  ComplexMatrixX<Scalar> q = qr.householderQ();
  const ComplexMatrixX<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    using std::abs;
    const auto d = r(k, k);
    const Scalar mag = abs(d);
    if (mag > Scalar(0)) q.col(k) *= d / mag;
  }
  return ComplexUnitary<Scalar>(std::move(q));
}

enum class SqueezeSampling { Uniform, LogUniform };

/// T(U1) diag(z_j, 1/z_j) T(U2) with Haar U1, U2 and z_j drawn from
/// [1, z_max].
template <typename Scalar = double>
SymplecticMatrix<Scalar> random_symplectic(Index n, double z_max, CounterRng& rng,
                                           SqueezeSampling sampling = SqueezeSampling::Uniform) {
  if (!(z_max >= 1.0)) throw DomainError("random_symplectic: z_max must be at least 1");
  const auto t1 = unitary_to_orthosymplectic(random_unitary<Scalar>(n, rng));
  const auto t2 = unitary_to_orthosymplectic(random_unitary<Scalar>(n, rng));
  VectorX<Scalar> d(2 * n);
  for (Index j = 0; j < n; ++j) {
    const double z = sampling == SqueezeSampling::Uniform
                         ? rng.uniform(1.0, z_max)
                         : std::exp(rng.uniform(0.0, std::log(z_max)));
    d(2 * j) = static_cast<Scalar>(z);
    d(2 * j + 1) = Scalar(1) / static_cast<Scalar>(z);
  }
  MatrixX<Scalar> s = t1.matrix() * d.asDiagonal() * t2.matrix();
  return SymplecticMatrix<Scalar>(std::move(s));
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> random_symplectic(Index n, double z_max, std::uint64_t seed,
                                           SqueezeSampling sampling = SqueezeSampling::Uniform) {
  CounterRng rng(seed);
  return random_symplectic<Scalar>(n, z_max, rng, sampling);
}

/// S^{-1} D S^{-T} with random symplectic S and nu_j uniform in `nu`.
/// Accepts any nu.lo > 0; physical covariances use random_covariance.
template <typename Scalar = double>
MatrixX<Scalar> random_positive_definite(Index n, Interval nu, CounterRng& rng,
                                         double z_max = 3.0) {
  if (!(nu.lo > 0.0) || !(nu.hi >= nu.lo)) {
    throw DomainError("random_positive_definite: need 0 < nu_min <= nu_max");
  }
  const auto s = random_symplectic<Scalar>(n, z_max, rng);
  VectorX<Scalar> v(n);
  for (Index j = 0; j < n; ++j) v(j) = static_cast<Scalar>(rng.uniform(nu.lo, nu.hi));
  const MatrixX<Scalar> inv = s.inverse();
  MatrixX<Scalar> a = inv * detail::paired_diagonal<Scalar>(v) * inv.transpose();
  return (a + a.transpose()) / Scalar(2);
}

template <typename Scalar = double>
MatrixX<Scalar> random_covariance(Index n, Interval nu, CounterRng& rng, double z_max = 3.0) {
  if (!(nu.lo >= 1.0)) {
    throw DomainError("random_covariance: nu_min must be at least 1 for a physical state");
  }
  return random_positive_definite<Scalar>(n, nu, rng, z_max);
}

template <typename Scalar = double>
MatrixX<Scalar> random_covariance(Index n, Interval nu, std::uint64_t seed, double z_max = 3.0) {
  CounterRng rng(seed);
  return random_covariance<Scalar>(n, nu, rng, z_max);
}

/// First 2k rows of S.
template <typename Scalar>
TruncatedSymplectic<Scalar> truncate_rows(const SymplecticMatrix<Scalar>& s, Index k,
                                          const Tolerances& tol = {}) {
  if (k < 1 || k > s.modes()) {
    std::ostringstream os;
    os << "truncate_rows: k = " << k << " outside [1, " << s.modes() << "]";
    throw DomainError(os.str());
  }
  return TruncatedSymplectic<Scalar>(s.matrix().topRows(2 * k), tol);
}

// Compiled once in the library for double.
#ifndef GCHAN_SYMPLECTIC_INSTANTIATE
extern template SymplecticSpectrum<double> symplectic_eigenvalues(const Eigen::MatrixBase<Matrix>&,
                                                                  const Tolerances&);
extern template Vector symplectic_eigenvalues_from_ja(const Eigen::MatrixBase<Matrix>&);
extern template Vector symplectic_eigenvalues_psd(const Eigen::MatrixBase<Matrix>&, const Tolerances&);
extern template WilliamsonDecomposition<double> williamson(const Eigen::MatrixBase<Matrix>&,
                                                           const Tolerances&);
extern template EulerDecomposition<double> euler_decompose(const SymplecticMatrix<double>&,
                                                           const Tolerances&);
extern template SymplecticMatrix<double> unitary_to_orthosymplectic(const ComplexUnitary<double>&,
                                                                    const Tolerances&);
extern template ComplexUnitary<double> orthosymplectic_to_unitary(const SymplecticMatrix<double>&,
                                                                  const Tolerances&);
extern template ComplexUnitary<double> random_unitary<double>(Index, CounterRng&);
extern template SymplecticMatrix<double> random_symplectic<double>(Index, double, CounterRng&,
                                                                   SqueezeSampling);
extern template Matrix random_positive_definite<double>(Index, Interval, CounterRng&, double);
extern template class SymplecticMatrix<double>;
extern template class TruncatedSymplectic<double>;
extern template class SymplecticSpectrum<double>;
extern template class ComplexUnitary<double>;
#endif

}  // namespace gchan
