#include "gchan/symplectic.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gchan;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST(symplectic_form, single_mode) {
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(symplectic_form(1), expected);
}

TEST(symplectic_form, algebraic_identities) {
  for (Index n = 1; n <= 5; ++n) {
    const Matrix j = symplectic_form(n);
    EXPECT_EQ(j.transpose(), -j);
    EXPECT_EQ(j * j, -Matrix::Identity(2 * n, 2 * n));
    EXPECT_EQ(j * j.transpose(), Matrix::Identity(2 * n, 2 * n));
  }
  Matrix j2 = Matrix::Zero(4, 4);
  j2.block(0, 0, 2, 2) = symplectic_form(1);
  j2.block(2, 2, 2, 2) = symplectic_form(1);
  EXPECT_EQ(symplectic_form(2), j2);
}

TEST(symplectic_form, rejects_zero_modes) {
  EXPECT_THROW(symplectic_form(0), DimensionError);
}

TEST(is_symplectic, identity_and_form) {
  const auto id = is_symplectic(Matrix::Identity(4, 4));
  EXPECT_TRUE(id.holds);
  EXPECT_EQ(id.residual, 0.0);
  EXPECT_TRUE(is_symplectic(symplectic_form(3)).holds);
}

TEST(is_symplectic, scaled_identity_residual_is_three) {
  const auto r = is_symplectic(Matrix(2.0 * Matrix::Identity(2, 2)));
  EXPECT_FALSE(r.holds);
  EXPECT_DOUBLE_EQ(r.residual, 3.0);
}

TEST(is_symplectic, odd_dimension_rejected) {
  EXPECT_THROW(is_symplectic(Matrix::Identity(3, 3)), DimensionError);
}

TEST(symplectic_eigenvalues, examples) {
  const auto id = symplectic_eigenvalues(Matrix::Identity(6, 6));
  for (Index j = 0; j < 3; ++j) EXPECT_NEAR(id[j], 1.0, 1e-14);

  // J_1 diag(4, 1) = [[0, 1], [-4, 0]] has eigenvalues +-2i.
  EXPECT_NEAR(symplectic_eigenvalues(diag({4, 1}))[0], 2.0, 1e-14);

  const auto ab = symplectic_eigenvalues(diag({5, 5, 2, 2}));
  EXPECT_NEAR(ab[0], 2.0, 1e-14);
  EXPECT_NEAR(ab[1], 5.0, 1e-14);
}

TEST(symplectic_eigenvalues, rejects_bad_input) {
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.5;
  EXPECT_THROW(symplectic_eigenvalues(asym), PredicateError);
  try {
    symplectic_eigenvalues(diag({1, -2}));
    FAIL();
  } catch (const PredicateError& e) {
    EXPECT_DOUBLE_EQ(e.value(), -2.0);
  }
}

TEST(symplectic_eigenvalues, matches_ja_oracle) {
  CounterRng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 4;
    const Matrix a = random_covariance(n, {1.0, 6.0}, rng);
    const auto nu = symplectic_eigenvalues(a);
    const Vector oracle = symplectic_eigenvalues_from_ja(a);
    EXPECT_LE((nu.values() - oracle).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(symplectic_eigenvalues, psd_limit) {
  // diag(1, 0) has symplectic eigenvalue 0, the limit of sqrt(eps (1 + eps)).
  const Matrix y = diag({1, 0});
  EXPECT_NEAR(symplectic_eigenvalues_psd(y)(0), 0.0, 1e-12);
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    const Matrix reg = y + eps * Matrix::Identity(2, 2);
    EXPECT_NEAR(symplectic_eigenvalues(reg)[0], std::sqrt(eps * (1 + eps)), 1e-12);
  }
}

TEST(williamson, diagonal_input) {
  const Matrix a = diag({1.5, 1.5, 2.0, 2.0, 7.0, 7.0});
  const auto w = williamson(a);
  EXPECT_NEAR(w.spectrum[0], 1.5, 1e-14);
  EXPECT_NEAR(w.spectrum[2], 7.0, 1e-14);
  const Matrix s = w.s.matrix();
  EXPECT_LE(max_abs((s * a * s.transpose() - w.spectrum.paired_diagonal()).eval()), 1e-8);
}

TEST(williamson, single_mode_squeezed) {
  const Matrix a = diag({1, 4});
  const auto w = williamson(a);
  EXPECT_NEAR(w.spectrum[0], 2.0, 1e-14);
  const Matrix s = w.s.matrix();
  EXPECT_LE(max_abs((s * a * s.transpose() - diag({2, 2})).eval()), 1e-8);
  // diag(sqrt 2, 1/sqrt 2) is one valid answer; it satisfies the same check.
  const Matrix s0 = diag({std::sqrt(2.0), 1 / std::sqrt(2.0)});
  EXPECT_LE(max_abs((s0 * a * s0.transpose() - diag({2, 2})).eval()), 1e-14);
}

TEST(williamson, random_covariance_seed_42) {
  const Matrix a = random_covariance(3, {1.0, 5.0}, std::uint64_t{42});
  const auto w = williamson(a);
  const Matrix s = w.s.matrix();
  EXPECT_TRUE(is_symplectic(s).holds);
  EXPECT_LE(max_abs((s * a * s.transpose() - w.spectrum.paired_diagonal()).eval()), 1e-8);
}

TEST(williamson, degenerate_spectrum) {
  // Fully degenerate: a symplectic congruence of 3 I.
  const auto s = random_symplectic(4, 3.0, std::uint64_t{9});
  const Matrix a = 3.0 * s.matrix() * s.matrix().transpose();
  const auto w = williamson(a);
  for (Index j = 0; j < 4; ++j) EXPECT_NEAR(w.spectrum[j], 3.0, 1e-9);
  const Matrix sw = w.s.matrix();
  EXPECT_LE(max_abs((sw * a * sw.transpose() - w.spectrum.paired_diagonal()).eval()), 1e-8);
  EXPECT_TRUE(is_symplectic(Matrix::Identity(8, 8)).holds);
  EXPECT_TRUE(is_symplectic(sw, 1e-9).holds);
}

TEST(williamson, long_double_instantiation) {
  using LMat = MatrixX<long double>;
  CounterRng rng(5);
  const LMat a = random_covariance<long double>(2, {1.0, 3.0}, rng);
  const auto w = williamson(a);
  const LMat s = w.s.matrix();
  EXPECT_LE(static_cast<double>(max_abs((s * a * s.transpose() - w.spectrum.paired_diagonal()).eval())),
            1e-12);
}

TEST(euler_decompose, orthosymplectic_has_unit_squeezing) {
  CounterRng rng(77);
  const auto t = unitary_to_orthosymplectic(random_unitary(3, rng));
  const auto e = euler_decompose(t);
  for (Index j = 0; j < 3; ++j) EXPECT_NEAR(e.z(j), 1.0, 1e-12);
  EXPECT_LE(max_abs((e.recompose() - t.matrix()).eval()), 1e-8);
}

TEST(euler_decompose, diagonal_squeezer) {
  const SymplecticMatrix<> s(diag({3, 1.0 / 3}));
  const auto e = euler_decompose(s);
  EXPECT_NEAR(e.z(0), 3.0, 1e-12);
  EXPECT_LE(max_abs((e.recompose() - s.matrix()).eval()), 1e-8);
}

TEST(euler_decompose, random_seed_7) {
  const auto s = random_symplectic(2, 4.0, std::uint64_t{7});
  const auto e = euler_decompose(s);
  EXPECT_LE(max_abs((e.recompose() - s.matrix()).eval()), 1e-8);
  EXPECT_GE(e.z(0), e.z(1));
  EXPECT_GE(e.z(1), 1.0);
  for (const Matrix* t : {&e.t1, &e.t2}) {
    EXPECT_LE(is_symplectic(*t).residual, 1e-10);
    EXPECT_LE(is_orthogonal(*t).residual, 1e-10);
  }
}

TEST(euler_decompose, partially_squeezed) {
  CounterRng rng(3);
  const auto t1 = unitary_to_orthosymplectic(random_unitary(3, rng));
  const auto t2 = unitary_to_orthosymplectic(random_unitary(3, rng));
  const Matrix s = t1.matrix() * diag({2.5, 0.4, 1, 1, 1, 1}) * t2.matrix();
  const auto e = euler_decompose(SymplecticMatrix<>(s));
  EXPECT_NEAR(e.z(0), 2.5, 1e-10);
  EXPECT_NEAR(e.z(1), 1.0, 1e-10);
  EXPECT_LE(max_abs((e.recompose() - s).eval()), 1e-8);
  EXPECT_LE(is_orthogonal(e.t1).residual, 1e-10);
  EXPECT_LE(is_symplectic(e.t2).residual, 1e-10);
}

TEST(isomorphism, identity_and_i) {
  const ComplexUnitary<> id(ComplexMatrix::Identity(3, 3));
  EXPECT_EQ(unitary_to_orthosymplectic(id).matrix(), Matrix::Identity(6, 6));

  ComplexMatrix i1(1, 1);
  i1(0, 0) = {0.0, 1.0};
  const auto t = unitary_to_orthosymplectic(ComplexUnitary<>(i1));
  EXPECT_EQ(t.matrix(), symplectic_form(1));
  const auto back = orthosymplectic_to_unitary(t);
  EXPECT_EQ(back.matrix()(0, 0), std::complex<double>(0.0, 1.0));

  const auto u = orthosymplectic_to_unitary(SymplecticMatrix<>(Matrix::Identity(4, 4)));
  EXPECT_EQ(u.matrix(), ComplexMatrix::Identity(2, 2));
}

TEST(isomorphism, homomorphism_seed_11) {
  CounterRng rng(11);
  for (Index n = 1; n <= 4; ++n) {
    const auto u = random_unitary(n, rng);
    const auto v = random_unitary(n, rng);
    const Matrix lhs = unitary_to_orthosymplectic(u).matrix() * unitary_to_orthosymplectic(v).matrix();
    const Matrix rhs =
        unitary_to_orthosymplectic(ComplexUnitary<>(u.matrix() * v.matrix())).matrix();
    EXPECT_LE(max_abs((lhs - rhs).eval()), 1e-10);
  }
}

TEST(isomorphism, round_trip_seed_13) {
  CounterRng rng(13);
  const auto u = random_unitary(3, rng);
  const auto t = unitary_to_orthosymplectic(u);
  EXPECT_LE(is_orthogonal(t.matrix()).residual, 1e-10);
  const auto back = orthosymplectic_to_unitary(t);
  EXPECT_LE(max_abs((back.matrix() - u.matrix()).eval()), 1e-10);
}

TEST(isomorphism, rejects_non_orthogonal) {
  const SymplecticMatrix<> s(diag({2, 0.5}));
  try {
    orthosymplectic_to_unitary(s);
    FAIL();
  } catch (const PredicateError& e) {
    EXPECT_NEAR(e.value(), 3.0, 1e-12);  // |4 - 1| from S S^T - I
  }
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.3;
  EXPECT_THROW(ComplexUnitary<>{bad}, PredicateError);
}

TEST(random_symplectic, membership_and_determinism) {
  const auto a = random_symplectic(2, 4.0, std::uint64_t{1});
  EXPECT_LE(is_symplectic(a.matrix()).residual, 1e-10);
  EXPECT_NEAR(a.matrix().determinant(), 1.0, 1e-8);
  const auto b = random_symplectic(2, 4.0, std::uint64_t{1});
  EXPECT_EQ(a.matrix(), b.matrix());
  const auto c = random_symplectic(2, 4.0, std::uint64_t{2});
  EXPECT_NE(a.matrix(), c.matrix());
}

TEST(random_symplectic, unit_range_is_orthogonal) {
  const auto s = random_symplectic(3, 1.0, std::uint64_t{4});
  EXPECT_LE(is_orthogonal(s.matrix()).residual, 1e-10);
}

TEST(random_symplectic, rejects_z_below_one) {
  EXPECT_THROW(random_symplectic(2, 0.5, std::uint64_t{1}), DomainError);
}

TEST(random_covariance, pure_range_has_unit_determinant) {
  const Matrix g = random_covariance(3, {1.0, 1.0}, std::uint64_t{8});
  EXPECT_NEAR(g.determinant(), 1.0, 1e-8);
}

TEST(random_covariance, spectrum_in_range_seed_5) {
  const Matrix g = random_covariance(2, {1.0, 3.0}, std::uint64_t{5});
  const auto nu = symplectic_eigenvalues(g);
  EXPECT_GE(nu.min(), 1.0 - 1e-8);
  EXPECT_LE(nu[1], 3.0 + 1e-8);
  EXPECT_GT(g.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff(), 0.0);
}

TEST(random_covariance, spectrum_invariant_under_congruence) {
  CounterRng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 4;
    const Matrix g = random_covariance(n, {1.0, 4.0}, rng);
    const auto s = random_symplectic(n, 3.0, rng);
    const Matrix h = s.matrix() * g * s.matrix().transpose();
    EXPECT_LE((symplectic_eigenvalues(g).values() - symplectic_eigenvalues(h).values())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-8);
  }
}

TEST(random_covariance, rejects_unphysical_range) {
  EXPECT_THROW(random_covariance(2, {0.5, 2.0}, std::uint64_t{1}), DomainError);
}

TEST(truncate_rows, cases) {
  const auto s = random_symplectic(3, 4.0, std::uint64_t{3});
  EXPECT_EQ(truncate_rows(s, 3).matrix(), s.matrix());
  const auto t = truncate_rows(s, 2);
  EXPECT_EQ(t.matrix().rows(), 4);
  EXPECT_LE(t.residual(), 1e-10);

  const SymplecticMatrix<> id(Matrix::Identity(6, 6));
  const auto ti = truncate_rows(id, 1);
  EXPECT_EQ(ti.matrix(), Matrix::Identity(6, 6).topRows(2));
  EXPECT_EQ(ti.residual(), 0.0);

  EXPECT_THROW(truncate_rows(s, 0), DomainError);
  EXPECT_THROW(truncate_rows(s, 4), DomainError);
}
