#include "gchan/majorization.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gchan;

namespace {

Vector vec(std::initializer_list<double> d) {
  Vector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v;
}

Matrix diag(std::initializer_list<double> d) { return vec(d).asDiagonal(); }

}  // namespace

TEST(majorize, examples) {
  EXPECT_TRUE(majorize(vec({1, 5, 2}), vec({1, 5, 2})));
  EXPECT_TRUE(majorize(vec({2, 2}), vec({3, 1})));
  EXPECT_FALSE(majorize(vec({3, 1}), vec({2, 2})));
  EXPECT_FALSE(majorize(vec({1, 1}), vec({2, 1})));  // totals differ
  EXPECT_THROW(majorize(vec({1}), vec({1, 2})), DimensionError);
}

TEST(weak_supermajorize, examples) {
  EXPECT_TRUE(weak_supermajorize(vec({4, 1}), vec({4, 1})));
  EXPECT_TRUE(weak_supermajorize(vec({2, 2}), vec({1, 3})));
  EXPECT_FALSE(weak_supermajorize(vec({0.5, 10}), vec({1, 1})));
  const auto m = supermajorization_margin(vec({0.5, 10}), vec({1, 1}));
  EXPECT_DOUBLE_EQ(m.margin, -0.5);
  EXPECT_EQ(m.index, 1);
}

TEST(weak_submajorize, examples) {
  EXPECT_TRUE(weak_submajorize(vec({1, 1}), vec({2, 1})));
  EXPECT_FALSE(weak_submajorize(vec({3, 0}), vec({2, 2})));
}

TEST(majorize, equivalent_to_both_weak_relations) {
  CounterRng rng(90);
  for (int t = 0; t < 500; ++t) {
    const Index n = 1 + t % 5;
    Vector x(n), y(n);
    for (Index j = 0; j < n; ++j) {
      x(j) = std::round(rng.uniform(0.0, 4.0));
      y(j) = std::round(rng.uniform(0.0, 4.0));
    }
    if (t % 3 == 0) x *= y.sum() / std::max(1.0, x.sum());
    EXPECT_EQ(majorize(x, y), weak_submajorize(x, y) && weak_supermajorize(x, y));
  }
}

TEST(schur_diag_check, examples) {
  EXPECT_TRUE(schur_diag_check(diag({3, -1, 2})));
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_TRUE(schur_diag_check(swap));
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  EXPECT_THROW(schur_diag_check(bad), PredicateError);
}

TEST(schur_diag_check, random_real_symmetric_seed_17) {
  CounterRng rng(17);
  for (int t = 0; t < 1000; ++t) {
    const Index n = 1 + t % 8;
    EXPECT_TRUE(schur_diag_check(random_hermitian(n, rng, false)));
  }
}

TEST(random_majorization_pair, properties) {
  const auto same = random_majorization_pair(4, 1, 0);
  EXPECT_EQ(same.x, same.y);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto pair = random_majorization_pair(1 + s % 6, 31 + s);
    EXPECT_TRUE(majorize(pair.x, pair.y));
  }
}

TEST(t_transform, full_pinch_averages) {
  Vector x = vec({1, 5, 9});
  t_transform(x, 0, 2, 0.5);
  EXPECT_EQ(x, vec({5, 5, 5}));
}

TEST(theorem1_trial, fixed_examples) {
  // nu(2I) = 2 = nu(I) + nu(I): equality.
  const Vector lhs = symplectic_eigenvalues(Matrix(2.0 * Matrix::Identity(2, 2))).values();
  EXPECT_NEAR(supermajorization_margin(lhs, vec({2.0})).margin, 0.0, 1e-14);
  const Matrix a = diag({1, 4});
  const Matrix b = diag({4, 1});
  const Vector sum = symplectic_eigenvalues(Matrix(a + b)).values();
  const Vector parts = symplectic_eigenvalues(a).values() + symplectic_eigenvalues(b).values();
  EXPECT_NEAR(sum(0), 5.0, 1e-12);
  EXPECT_NEAR(parts(0), 4.0, 1e-12);
  EXPECT_NEAR(supermajorization_margin(sum, parts).margin, 1.0, 1e-12);
}

TEST(theorem1_trial, campaign_is_clean_and_thread_independent) {
  TrialOptions one;
  one.threads = 1;
  TrialOptions four;
  four.threads = 4;
  const auto a = theorem1_trial(4, {0.1, 10.0}, 500, 23, one);
  const auto b = theorem1_trial(4, {0.1, 10.0}, 500, 23, four);
  EXPECT_EQ(a.failures, 0);
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(a.worst_margin, b.worst_margin);
  EXPECT_THROW(theorem1_trial(4, {0.0, 1.0}, 10, 0), DomainError);
  EXPECT_THROW(theorem1_trial(4, {1.0, 2.0}, 0, 0), DomainError);
}

TEST(theorem1_trial, negation_hook_reports_counterexample) {
  TrialOptions neg;
  neg.negate = true;
  const auto r = theorem1_trial(2, {0.5, 2.0}, 20, 1, neg);
  EXPECT_EQ(r.failures, 20);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->trial, 0u);
  EXPECT_EQ(r.counterexample->matrices.size(), 2u);
  EXPECT_FALSE(r.pass());
}

TEST(lemma1_trial, identity_bound_is_2k) {
  for (Index k = 1; k <= 3; ++k) {
    const auto r = lemma1_trial(Matrix::Identity(6, 6), k, 500, 3);
    EXPECT_EQ(r.failures, 0);
    EXPECT_NEAR(r.parameters.back().second, 2.0 * k, 1e-12);
    EXPECT_LE(*r.witness_gap, 1e-12);
  }
}

TEST(lemma1_trial, diagonal_example) {
  const auto r = lemma1_trial(diag({1, 1, 9, 9}), 1, 1000, 4);
  EXPECT_NEAR(r.parameters.back().second, 2.0, 1e-12);
  EXPECT_EQ(r.failures, 0);
  EXPECT_LE(*r.witness_gap, 1e-12);
  EXPECT_THROW(lemma1_trial(diag({1, 1, 9, 9}), 3, 10, 4), DomainError);
}

TEST(lemma1_trial, random_seed_29) {
  CounterRng rng(29);
  const Matrix a = random_positive_definite(3, {0.5, 5.0}, rng);
  for (Index k = 1; k <= 3; ++k) {
    const auto r = lemma1_trial(a, k, 2000, 29 + static_cast<std::uint64_t>(k));
    EXPECT_EQ(r.failures, 0);
    EXPECT_LE(*r.witness_gap, 1e-8);
    EXPECT_TRUE(r.pass());
  }
}

TEST(schur_trial, complex_campaign) {
  const auto r = schur_trial(8, 300, 17);
  EXPECT_EQ(r.failures, 0);
  EXPECT_TRUE(r.pass());
}

TEST(concavity, grid_and_numerator) {
  const auto r = concavity_trial({1.1, 2.0, 3.0, 7.0}, 1.0 + 1e-3, 50.0, 400);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.trials, 1600);
  // p = 2: f_2 = 4x and f_0 = 0, so g_2 = 8.
  EXPECT_NEAR(concavity_numerator(3.0, 2.0), 8.0, 1e-12);
  // Second derivative of ln f_p against a fine central difference.
  for (double p : {2.5, 4.0}) {
    const double x = 2.0;
    const double h = 1e-4;
    const double fd = (std::log(f_p(x + h, p)) - 2.0 * std::log(f_p(x, p)) +
                       std::log(f_p(x - h, p))) / (h * h);
    const double closed = -p / std::pow(f_p(x, p), 2) * concavity_numerator(x, p);
    EXPECT_NEAR(fd, closed, 1e-5 * std::abs(closed));
  }
}
