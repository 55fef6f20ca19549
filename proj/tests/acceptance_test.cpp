// Acceptance campaign. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gchan/functionals.hpp"
#include "gchan/majorization.hpp"

using namespace gchan;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double rel(double scale) { return std::max(1.0, scale); }

// Williamson, Euler, congruence invariance and det S on random (A, S).
Outcome symplectic_core() {
  double w = 0, e = 0, c = 0, d = 0;
  for (long t = 0; t < 1000; ++t) {
    auto rng = CounterRng::for_trial(101, static_cast<std::uint64_t>(t));
    const Index n = 1 + static_cast<Index>(t % 4);
    const Matrix a = random_covariance(n, {1.0, 10.0}, rng);
    const auto s = random_symplectic(n, 4.0, rng);

    const auto wd = williamson(a);
    const Matrix ws = wd.s.matrix();
    const Matrix diag = wd.spectrum.paired_diagonal();
    w = std::max(w, max_abs((ws * a * ws.transpose() - diag).eval()) / rel(max_abs(diag)));

    const auto ed = euler_decompose(s);
    e = std::max(e, max_abs((ed.recompose() - s.matrix()).eval()) / rel(max_abs(s.matrix())));

    const Matrix b = s.matrix() * a * s.matrix().transpose();
    const Vector nu_a = symplectic_eigenvalues(a).values();
    const Vector nu_b = symplectic_eigenvalues(b).values();
    c = std::max(c, (nu_a - nu_b).cwiseAbs().maxCoeff() / rel(nu_a.maxCoeff()));

    d = std::max(d, std::abs(s.matrix().determinant() - 1.0));
    d = std::max(d, std::abs(ws.determinant() - 1.0));
  }
  const double worst = std::max({w, e, c, d});
  return {worst <= 1e-8,
          fmt("williamson %.2e, euler %.2e, congruence %.2e, |det-1| %.2e", w, e, c, d)};
}

// T(U)T(V) = T(UV) and T^{-1}(T(U)) = U.
Outcome isomorphism() {
  double hom = 0, trip = 0;
  for (long t = 0; t < 500; ++t) {
    auto rng = CounterRng::for_trial(202, static_cast<std::uint64_t>(t));
    const Index n = 1 + static_cast<Index>(t % 4);
    const auto u = random_unitary(n, rng);
    const auto v = random_unitary(n, rng);
    const Matrix lhs =
        unitary_to_orthosymplectic(u).matrix() * unitary_to_orthosymplectic(v).matrix();
    const Matrix rhs = unitary_to_orthosymplectic(ComplexUnitary<>(u.matrix() * v.matrix())).matrix();
    hom = std::max(hom, max_abs((lhs - rhs).eval()));
    const auto back = orthosymplectic_to_unitary(unitary_to_orthosymplectic(u));
    trip = std::max(trip, max_abs((back.matrix() - u.matrix()).eval()));
  }
  return {std::max(hom, trip) <= 1e-10, fmt("homomorphism %.2e, round trip %.2e", hom, trip)};
}

// S = -d/dp ln ||rho||_p at p = 1, one-sided second-order difference.
Outcome entropy_derivative() {
  const double h = 1e-4;
  double worst = 0;
  for (long t = 0; t < 200; ++t) {
    auto rng = CounterRng::for_trial(303, static_cast<std::uint64_t>(t));
    const Index n = 1 + static_cast<Index>(t % 4);
    Vector nu(n);
    for (Index j = 0; j < n; ++j) nu(j) = rng.uniform(1.05, 20.0);
    auto ln_norm = [&](double p) { return std::log(trace_p(nu, p)) / p; };
    const double deriv = (-3.0 * ln_norm(1.0) + 4.0 * ln_norm(1.0 + h) - ln_norm(1.0 + 2.0 * h)) / (2.0 * h);
    const double s = von_neumann_entropy(nu);
    worst = std::max(worst, std::abs(-deriv - s) / s);
  }
  return {worst <= 1e-4, fmt("worst relative error %.2e", worst)};
}

Outcome concavity() {
  const auto r = concavity_trial({1.1, 2.0, 3.0, 7.0}, 1.0 + 1e-3, 50.0, 1000);
  return {r.pass(), fmt("%g points, %g failures, worst margin %.2e", static_cast<double>(r.trials),
                        static_cast<double>(r.failures), r.worst_margin)};
}

Outcome theorem1() {
  const auto r = theorem1_trial(4, {0.1, 10.0}, 10000, 23);
  return {r.pass(), fmt("%g trials, %g violations, worst margin %.2e", static_cast<double>(r.trials),
                        static_cast<double>(r.failures), r.worst_margin)};
}

Outcome lemma1() {
  const auto r = lemma1_campaign(100, 3, {0.5, 5.0}, 10000, 29);
  return {r.pass(), fmt("%g samples, %g violations, worst margin %.2e, witness gap %.2e",
                        static_cast<double>(r.trials), static_cast<double>(r.failures),
                        r.worst_margin, r.witness_gap.value_or(NAN))};
}

Outcome closed_forms() {
  OptimizerSettings settings;
  settings.budget = 20000;
  settings.seed = 7;
  Matrix y = 2.0 * Matrix::Identity(2, 2);
  const auto cl = classical_noise(y);
  const auto th = thermal_noise(Vector::Constant(1, 0.5), Vector::Constant(1, 1.0));

  const double cl_closed = min_output_Fp_closed(cl, 2.0);
  const double th_closed = min_output_Fp_closed(th, 2.0);
  const double s_closed = min_output_entropy(cl);
  bool ok = std::abs(cl_closed - 12.0) <= 1e-12 && std::abs(th_closed - 8.0) <= 1e-12 &&
            std::abs(s_closed - 2.0 * std::log(2.0)) <= 1e-12;

  auto within = [](double numeric, double closed) {
    const double gap = numeric - closed;
    return gap >= -1e-12 * rel(closed) && gap <= 1e-6;
  };
  const auto cl_num = numeric_inf_Fp(cl, 2.0, settings);
  const auto th_num = numeric_inf_Fp(th, 2.0, settings);
  const auto s_num = min_output_entropy_search(cl, settings);
  ok = ok && within(cl_num.best_value, 12.0) && within(th_num.best_value, 8.0) &&
       within(s_num.best_value, 2.0 * std::log(2.0));
  return {ok, fmt("gaps: classical %.2e, thermal %.2e, S_min %.2e", cl_num.best_value - 12.0,
                  th_num.best_value - 8.0, s_num.best_value - 2.0 * std::log(2.0))};
}

Outcome multiplicativity() {
  const Vector half = Vector::Constant(1, 0.5);
  Matrix y13 = Matrix::Zero(2, 2);
  y13(0, 0) = 1.0;
  y13(1, 1) = 3.0;
  CounterRng rng(5);
  const Matrix y2 = random_positive_definite(2, {0.5, 2.0}, rng);
  const std::vector<std::vector<GaussianChannel>> pairs = {
      {classical_noise(2.0 * Matrix::Identity(2, 2)), classical_noise(Matrix::Identity(2, 2))},
      {thermal_noise(half, Vector::Constant(1, 1.0)), thermal_noise(Vector::Constant(1, 0.8), half)},
      {classical_noise(y13), thermal_noise(half, Vector::Constant(1, 1.0))},
      {lossy(Vector::Constant(1, 0.3)), classical_noise(y13)},
      {thermal_noise(Vector::Constant(1, 0.9), Vector::Constant(1, 2.0)), lossy(Vector::Constant(1, 0.6))},
      {classical_noise(y2), thermal_noise(half, half)},
  };
  int passed = 0;
  double worst_gap = INFINITY;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    OptimizerSettings settings;
    settings.budget = 20000;
    settings.seed = 40 + i;
    for (double p : {2.0, 3.0}) {
      const auto r = multiplicativity_check(pairs[i], p, settings, 1e-6);
      worst_gap = std::min(worst_gap, r.gap / rel(r.product));
      if (!r.pass) goto next;
    }
    ++passed;
  next:;
  }
  return {passed == static_cast<int>(pairs.size()) && passed >= 5,
          fmt("%g of %g pairs pass at p = 2, 3; smallest relative gap %.2e",
              static_cast<double>(passed), static_cast<double>(pairs.size()), worst_gap)};
}

Outcome capacity() {
  OptimizerSettings settings;
  settings.budget = 6000;
  settings.seed = 3;
  const Vector omega = Vector::Ones(1);
  const auto id = identity_channel(1);
  const double c = gaussian_holevo_capacity(id, {1.5, omega}, settings).capacity;
  const auto low = gaussian_holevo_capacity(id, {0.2, omega}, settings);
  bool ok = std::abs(c - 2.0 * std::log(2.0)) <= 1e-3 && low.capacity == 0.0 && !low.feasible;

  const auto th = thermal_noise(Vector::Constant(1, 0.7), Vector::Constant(1, 0.5));
  double prev = -INFINITY;
  double worst_drop = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double e = 0.5 + 0.5 * i;
    const double ci = gaussian_holevo_capacity(th, {e, omega}, settings).capacity;
    worst_drop = std::max(worst_drop, prev - ci);
    prev = ci;
  }
  ok = ok && worst_drop <= 1e-9;
  return {ok, fmt("C(1.5) - 2 ln 2 = %.2e, infeasible C = %g, largest decrease %.2e",
                  c - 2.0 * std::log(2.0), low.capacity, worst_drop)};
}

Outcome schur() {
  const auto r = schur_trial(8, 1000, 17, true);
  return {r.pass(), fmt("%g matrices, %g failures, worst margin %.2e", static_cast<double>(r.trials),
                        static_cast<double>(r.failures), r.worst_margin)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"symplectic core (1000 trials, n <= 4, 1e-8)", symplectic_core},
      {"U(n) isomorphism (500 trials, 1e-10)", isomorphism},
      {"entropy as p-derivative at p = 1 (200 spectra, 1e-4 rel)", entropy_derivative},
      {"log-concavity of f_p", concavity},
      {"weak supermajorization of nu(A+B) (1e4 pairs, 1e-9)", theorem1},
      {"trace bound and witness (100 instances, 1e4 samples, 1e-8)", lemma1},
      {"closed forms 12, 2 ln 2, 8 and numeric search", closed_forms},
      {"multiplicativity on tensor pairs (1e-6)", multiplicativity},
      {"capacity: identity, infeasible, monotone", capacity},
      {"Schur diagonal theorem (1000 Hermitian, n <= 8)", schur},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
