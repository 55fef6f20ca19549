#define GCHAN_SYMPLECTIC_INSTANTIATE
#include "gchan/symplectic.hpp"

namespace gchan {

template SymplecticSpectrum<double> symplectic_eigenvalues(const Eigen::MatrixBase<Matrix>&,
                                                           const Tolerances&);
template Vector symplectic_eigenvalues_from_ja(const Eigen::MatrixBase<Matrix>&);
template Vector symplectic_eigenvalues_psd(const Eigen::MatrixBase<Matrix>&, const Tolerances&);
template WilliamsonDecomposition<double> williamson(const Eigen::MatrixBase<Matrix>&,
                                                    const Tolerances&);
template EulerDecomposition<double> euler_decompose(const SymplecticMatrix<double>&,
                                                    const Tolerances&);
template SymplecticMatrix<double> unitary_to_orthosymplectic(const ComplexUnitary<double>&,
                                                             const Tolerances&);
template ComplexUnitary<double> orthosymplectic_to_unitary(const SymplecticMatrix<double>&,
                                                           const Tolerances&);
template ComplexUnitary<double> random_unitary<double>(Index, CounterRng&);
template SymplecticMatrix<double> random_symplectic<double>(Index, double, CounterRng&,
                                                            SqueezeSampling);
template Matrix random_positive_definite<double>(Index, Interval, CounterRng&, double);
template class SymplecticMatrix<double>;
template class TruncatedSymplectic<double>;
template class SymplecticSpectrum<double>;
template class ComplexUnitary<double>;

}  // namespace gchan
