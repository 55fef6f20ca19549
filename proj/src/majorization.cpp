#include "gchan/majorization.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace gchan {

namespace {

void require_same_length(const Vector& x, const Vector& y, const char* what) {
  if (x.size() != y.size() || x.size() == 0) {
    std::ostringstream os;
    os << what << ": vectors must be nonempty and of equal length (got " << x.size() << " and "
       << y.size() << ")";
    throw DimensionError(os.str());
  }
}

std::vector<double> sorted(const Vector& v, bool descending) {
  std::vector<double> out(v.data(), v.data() + v.size());
  if (descending) {
    std::sort(out.begin(), out.end(), std::greater<>());
  } else {
    std::sort(out.begin(), out.end());
  }
  return out;
}

// Smallest of (sign * (prefix_x - prefix_y)) over all prefixes.
PrefixMargin compare_prefixes(const Vector& x, const Vector& y, bool descending, double sign,
                              PrefixTolerance tol) {
  const auto xs = sorted(x, descending);
  const auto ys = sorted(y, descending);
  PrefixMargin out;
  out.margin = std::numeric_limits<double>::infinity();
  double px = 0.0;
  double py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    const double m = sign * (px - py);
    if (m < out.margin) {
      out.margin = m;
      out.index = static_cast<Index>(k + 1);
    }
    if (m < -tol.at(std::max(std::abs(px), std::abs(py)))) out.violated = true;
  }
  return out;
}

}  // namespace

PrefixMargin majorization_margin(const Vector& x, const Vector& y, PrefixTolerance tol) {
  require_same_length(x, y, "majorize");
  PrefixMargin out = compare_prefixes(x, y, true, -1.0, tol);
  const double sx = x.sum();
  const double sy = y.sum();
  const double total = -std::abs(sx - sy);
  if (total < out.margin) {
    out.margin = total;
    out.index = x.size();
  }
  if (total < -tol.at(std::max(std::abs(sx), std::abs(sy)))) out.violated = true;
  return out;
}

PrefixMargin supermajorization_margin(const Vector& x, const Vector& y, PrefixTolerance tol) {
  require_same_length(x, y, "weak_supermajorize");
  return compare_prefixes(x, y, false, 1.0, tol);
}

PrefixMargin submajorization_margin(const Vector& x, const Vector& y, PrefixTolerance tol) {
  require_same_length(x, y, "weak_submajorize");
  return compare_prefixes(x, y, true, -1.0, tol);
}

bool majorize(const Vector& x, const Vector& y, double tol) {
  return !majorization_margin(x, y, {tol, 1e-12}).violated;
}

bool weak_supermajorize(const Vector& x, const Vector& y, double tol) {
  return !supermajorization_margin(x, y, {tol, 1e-12}).violated;
}

bool weak_submajorize(const Vector& x, const Vector& y, double tol) {
  return !submajorization_margin(x, y, {tol, 1e-12}).violated;
}

PrefixMargin schur_diag_margin(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("schur_diag_check: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double skew = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol * scale) {
    std::ostringstream os;
    os << "schur_diag_check: matrix is not Hermitian (residual " << skew << ")";
    throw PredicateError(os.str(), skew);
  }
  const ComplexMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const Vector diag = h.diagonal().real();
  return majorization_margin(diag, es.eigenvalues(), {tol, 1e-12});
}

bool schur_diag_check(const ComplexMatrix& a, double tol) {
  return !schur_diag_margin(a, tol).violated;
}

bool schur_diag_check(const Matrix& a, double tol) {
  return schur_diag_check(ComplexMatrix(a.cast<std::complex<double>>()), tol);
}

ComplexMatrix random_hermitian(Index n, CounterRng& rng, bool complex_entries) {
  if (n < 1) throw DimensionError("random_hermitian: dimension must be at least 1");
  ComplexMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      const double re = rng.normal();
      const double im = complex_entries ? rng.normal() : 0.0;
      g(j, k) = {re, im};
    }
  }
  return (g + g.adjoint()) / 2.0;
}

void t_transform(Vector& x, Index i, Index j, double lambda) {
  const double xi = x(i);
  const double xj = x(j);
  x(i) = lambda * xi + (1.0 - lambda) * xj;
  x(j) = (1.0 - lambda) * xi + lambda * xj;
}

MajorizationPair random_majorization_pair(Index n, std::uint64_t seed, int transforms) {
  if (n < 1) throw DimensionError("random_majorization_pair: n must be at least 1");
  CounterRng rng(seed);
  MajorizationPair out;
  out.y.resize(n);
  for (Index j = 0; j < n; ++j) out.y(j) = rng.uniform(0.0, 10.0);
  out.x = out.y;
  if (n < 2) return out;
  const int count = transforms < 0 ? static_cast<int>(2 * n) : transforms;
  for (int t = 0; t < count; ++t) {
    const Index i = static_cast<Index>(rng.uniform() * static_cast<double>(n));
    Index j = static_cast<Index>(rng.uniform() * static_cast<double>(n - 1));
    if (j >= i) ++j;
    t_transform(out.x, i, j, rng.uniform());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Campaigns

namespace {

struct TrialOutcome {
  double margin = std::numeric_limits<double>::infinity();
  bool failed = false;
};

// Reduces per-trial outcomes in index order.
void reduce(TrialReport& rep, const std::vector<TrialOutcome>& outcomes,
            const std::function<Counterexample(std::uint64_t)>& rebuild) {
  rep.worst_margin = std::numeric_limits<double>::infinity();
  std::optional<std::uint64_t> first;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rep.worst_margin = std::min(rep.worst_margin, outcomes[i].margin);
    if (outcomes[i].failed) {
      ++rep.failures;
      if (!first) first = i;
    }
  }
  if (first) rep.counterexample = rebuild(*first);
}

void require_trials(long trials, const char* what) {
  if (trials < 1) throw DomainError(std::string(what) + ": trials must be at least 1");
}

}  // namespace

TrialReport theorem1_trial(Index max_modes, Interval nu_range, long trials, std::uint64_t seed,
                           const TrialOptions& options) {
  require_trials(trials, "theorem1_trial");
  if (max_modes < 1) throw DomainError("theorem1_trial: max_modes must be at least 1");
  if (!(nu_range.lo > 0.0) || !(nu_range.hi >= nu_range.lo)) {
    throw DomainError("theorem1_trial: need 0 < nu_min <= nu_max");
  }
  const PrefixTolerance tol{options.tol, 1e-12};

  struct Draw {
    Matrix a, b;
    Vector lhs, rhs;
  };
  auto draw = [&](std::uint64_t t) {
    CounterRng rng = CounterRng::for_trial(seed, t);
    const Index n = 1 + std::min<Index>(max_modes - 1, static_cast<Index>(rng.uniform() * max_modes));
    Draw d;
    d.a = random_positive_definite(n, nu_range, rng);
    d.b = random_positive_definite(n, nu_range, rng);
    d.lhs = symplectic_eigenvalues(Matrix(d.a + d.b)).values();
    d.rhs = symplectic_eigenvalues(d.a).values() + symplectic_eigenvalues(d.b).values();
    return d;
  };

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(trials, options.threads, [&](long i) {
    const Draw d = draw(static_cast<std::uint64_t>(i));
    const PrefixMargin m = supermajorization_margin(d.lhs, d.rhs, tol);
    outcomes[static_cast<std::size_t>(i)] = {m.margin, m.violated != options.negate};
  });

  TrialReport rep;
  rep.check = "theorem1";
  rep.trials = trials;
  rep.tolerance = options.tol;
  rep.seed = seed;
  rep.parameters = {{"max_modes", static_cast<double>(max_modes)},
                    {"nu_min", nu_range.lo},
                    {"nu_max", nu_range.hi}};
  reduce(rep, outcomes, [&](std::uint64_t t) {
    const Draw d = draw(t);
    Counterexample c;
    c.trial = t;
    c.margin = outcomes[t].margin;
    c.matrices = {{"A", d.a}, {"B", d.b}};
    c.lhs = d.lhs;
    c.rhs = d.rhs;
    return c;
  });
  return rep;
}

TrialReport lemma1_trial(const Matrix& a, Index k, long samples, std::uint64_t seed,
                         const TrialOptions& options, double z_max, double witness_tol) {
  require_trials(samples, "lemma1_trial");
  const WilliamsonDecomposition<double> wd = williamson(a);
  const Index n = wd.spectrum.size();
  if (k < 1 || k > n) {
    std::ostringstream os;
    os << "lemma1_trial: k = " << k << " outside [1, " << n << "]";
    throw DomainError(os.str());
  }
  const double bound = 2.0 * wd.spectrum.sum_smallest(k);
  const double allowed = options.tol + 1e-12 * bound;
  const double near = 1e-6 * std::max(1.0, bound);

  auto sample = [&](std::uint64_t t) {
    CounterRng rng = CounterRng::for_trial(seed, t);
    return truncate_rows(random_symplectic(n, z_max, rng, SqueezeSampling::LogUniform), k);
  };

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(samples));
  parallel_for(samples, options.threads, [&](long i) {
    const Matrix s = sample(static_cast<std::uint64_t>(i)).matrix();
    const double value = (s * a * s.transpose()).trace();
    const double margin = value - bound;
    outcomes[static_cast<std::size_t>(i)] = {margin, (margin < -allowed) != options.negate};
  });

  TrialReport rep;
  rep.check = "lemma1";
  rep.trials = samples;
  rep.tolerance = options.tol;
  rep.seed = seed;
  rep.parameters = {{"n", static_cast<double>(n)},
                    {"k", static_cast<double>(k)},
                    {"z_max", z_max},
                    {"bound", bound}};
  for (const auto& o : outcomes) {
    if (o.margin <= near) ++rep.near_attainers;
  }
  reduce(rep, outcomes, [&](std::uint64_t t) {
    Counterexample c;
    c.trial = t;
    c.margin = outcomes[t].margin;
    c.matrices = {{"A", a}, {"S", sample(t).matrix()}};
    return c;
  });

  const Matrix w = wd.s.matrix().topRows(2 * k);
  rep.witness_gap = std::abs((w * a * w.transpose()).trace() - bound);
  rep.witness_pass = *rep.witness_gap <= witness_tol * std::max(1.0, bound);
  return rep;
}

TrialReport lemma1_campaign(long instances, Index max_modes, Interval nu_range, long samples,
                            std::uint64_t seed, const TrialOptions& options) {
  require_trials(instances, "lemma1_campaign");
  if (max_modes < 1) throw DomainError("lemma1_campaign: max_modes must be at least 1");
  TrialReport rep;
  rep.check = "lemma1";
  rep.tolerance = options.tol;
  rep.seed = seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.witness_gap = 0.0;
  long cases = 0;
  for (long i = 0; i < instances; ++i) {
    CounterRng rng = CounterRng::for_trial(seed, static_cast<std::uint64_t>(i));
    const Index n = 1 + std::min<Index>(max_modes - 1, static_cast<Index>(rng.uniform() * max_modes));
    const Matrix a = random_positive_definite(n, nu_range, rng);
    for (Index k = 1; k <= n; ++k, ++cases) {
      const TrialReport one = lemma1_trial(a, k, samples, rng(), options);
      rep.trials += one.trials;
      rep.failures += one.failures;
      rep.near_attainers += one.near_attainers;
      rep.worst_margin = std::min(rep.worst_margin, one.worst_margin);
      rep.witness_gap = std::max(*rep.witness_gap, *one.witness_gap);
      rep.witness_pass = rep.witness_pass && one.witness_pass;
      if (!rep.counterexample && one.counterexample) {
        rep.counterexample = one.counterexample;
        rep.counterexample->trial = static_cast<std::uint64_t>(rep.trials - one.trials) +
                                    one.counterexample->trial;
      }
    }
  }
  rep.parameters = {{"instances", static_cast<double>(instances)},
                    {"cases", static_cast<double>(cases)},
                    {"samples", static_cast<double>(samples)},
                    {"max_modes", static_cast<double>(max_modes)},
                    {"nu_min", nu_range.lo},
                    {"nu_max", nu_range.hi}};
  return rep;
}

TrialReport schur_trial(Index max_n, long trials, std::uint64_t seed, bool complex_entries,
                        const TrialOptions& options) {
  require_trials(trials, "schur_trial");
  if (max_n < 1) throw DomainError("schur_trial: max_n must be at least 1");
  auto draw = [&](std::uint64_t t) {
    CounterRng rng = CounterRng::for_trial(seed, t);
    const Index n = 1 + std::min<Index>(max_n - 1, static_cast<Index>(rng.uniform() * max_n));
    return random_hermitian(n, rng, complex_entries);
  };

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(trials, options.threads, [&](long i) {
    const PrefixMargin m = schur_diag_margin(draw(static_cast<std::uint64_t>(i)), options.tol);
    outcomes[static_cast<std::size_t>(i)] = {m.margin, m.violated != options.negate};
  });

  TrialReport rep;
  rep.check = "schur";
  rep.trials = trials;
  rep.tolerance = options.tol;
  rep.seed = seed;
  rep.parameters = {{"max_n", static_cast<double>(max_n)},
                    {"complex", complex_entries ? 1.0 : 0.0}};
  reduce(rep, outcomes, [&](std::uint64_t t) {
    const ComplexMatrix h = draw(t);
    Counterexample c;
    c.trial = t;
    c.margin = outcomes[t].margin;
    c.matrices = {{"re(A)", Matrix(h.real())}, {"im(A)", Matrix(h.imag())}};
    c.lhs = h.diagonal().real();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    c.rhs = es.eigenvalues();
    return c;
  });
  return rep;
}

namespace {

// (x + 1)^q - (x - 1)^q for any q >= 0.
double f_any(double x, double q) { return std::pow(x + 1.0, q) - std::pow(x - 1.0, q); }

}  // namespace

double concavity_numerator(double x, double p) {
  if (!(x >= 1.0) || !(p >= 1.0)) throw DomainError("concavity_numerator: need x >= 1, p >= 1");
  return 4.0 * p * std::pow(x * x - 1.0, p - 2.0) + f_any(x, p) * f_any(x, p - 2.0);
}

TrialReport concavity_trial(const std::vector<double>& p_values, double x_lo, double x_hi,
                            long points, const TrialOptions& options) {
  if (p_values.empty()) throw DomainError("concavity_trial: no p values");
  if (points < 2) throw DomainError("concavity_trial: need at least 2 grid points");
  if (!(x_lo > 1.0) || !(x_hi > x_lo)) throw DomainError("concavity_trial: need 1 < x_lo < x_hi");
  const double spacing = (x_hi - x_lo) / static_cast<double>(points - 1);
  const double h = std::min(0.5 * (x_lo - 1.0), 1e-3);

  TrialReport rep;
  rep.check = "concavity";
  rep.tolerance = options.tol;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.parameters = {{"x_lo", x_lo}, {"x_hi", x_hi}, {"points", static_cast<double>(points)},
                    {"step", h}};
  for (double p : p_values) rep.parameters.emplace_back("p", p);

  std::uint64_t index = 0;
  for (double p : p_values) {
    for (long i = 0; i < points; ++i, ++index) {
      const double x = x_lo + spacing * static_cast<double>(i);
      const double d2 = std::log(f_p(x + h, p)) - 2.0 * std::log(f_p(x, p)) + std::log(f_p(x - h, p));
      double margin = -d2;
      bool failed = d2 > options.tol;
      if (p >= 2.0) {
        const double g = concavity_numerator(x, p);
        failed = failed || g < 0.0;
        margin = std::min(margin, g);
      }
      ++rep.trials;
      rep.worst_margin = std::min(rep.worst_margin, margin);
      if (failed != options.negate) {
        ++rep.failures;
        if (!rep.counterexample) {
          Counterexample c;
          c.trial = index;
          c.margin = margin;
          c.lhs = Vector::Constant(1, d2);
          c.rhs = (Vector(2) << x, p).finished();
          rep.counterexample = c;
        }
      }
    }
  }
  return rep;
}

}  // namespace gchan
