#include "gchan/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gchan/log.hpp"
#include "gchan/nelder_mead.hpp"

namespace gchan {

namespace {

constexpr double kMaxSqueeze = 4.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_p(double p) {
  if (!(p > 1.0)) {
    std::ostringstream os;
    os << "p must exceed 1 (got " << p << ")";
    throw DomainError(os.str());
  }
}

void require_budget(const OptimizerSettings& s) {
  if (s.budget <= 0) throw DomainError("search budget must be positive");
}

double bounded_squeeze(double x) { return kMaxSqueeze * std::tanh(x / kMaxSqueeze); }

Vector output_spectrum(const GaussianChannel& channel, const Matrix& gamma) {
  return clamp_physical(symplectic_eigenvalues(apply_covariance(channel, gamma)).values());
}

// Derived seed for the i-th independent sub-search of a composite check.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t i) {
  CounterRng rng(seed, 0xA5A5A5A5ULL + i);
  return rng();
}

Matrix squeeze_diagonal(const Vector& r, double scale) {
  Vector d(2 * r.size());
  for (Index j = 0; j < r.size(); ++j) {
    d(2 * j) = std::exp(scale * r(j));
    d(2 * j + 1) = std::exp(-scale * r(j));
  }
  return d.asDiagonal();
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  Index dim = 0;
  for (const auto& b : blocks) dim += b.rows();
  Matrix out = Matrix::Zero(dim, dim);
  Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

OptimizationReport run_search(const std::string& operation, const Objective& objective, Index dim,
                              const OptimizerSettings& settings,
                              const std::function<Matrix(const Vector&)>& to_covariance) {
  require_budget(settings);
  RestartOptions ro;
  ro.budget = settings.budget;
  ro.per_run = settings.per_run;
  ro.seed = settings.seed;
  const RestartResult res = minimize_with_restarts(objective, dim, ro);
  OptimizationReport rep;
  rep.operation = operation;
  rep.argument = to_covariance(res.best.x);
  rep.evaluations = res.evaluations;
  rep.budget = settings.budget;
  rep.runs = res.runs;
  rep.converged = res.converged;
  rep.seed = settings.seed;
  log::info(operation, ": ", res.runs, " runs, ", res.evaluations, " evaluations, best objective ",
            res.best.value);
  return rep;
}

}  // namespace

bool EnergyBudget::feasible() const {
  return total >= zero_point() * (1.0 - 1e-12);
}

// ---------------------------------------------------------------------------
// Closed forms

std::optional<Vector> optimal_output_spectrum(const GaussianChannel& channel) {
  switch (channel.kind()) {
    case ChannelKind::Classical:
      return Vector(noise_spectrum(channel).array() + 1.0);
    case ChannelKind::Thermal:
    case ChannelKind::Lossy: {
      const Vector& eta = channel.eta();
      const Vector& nbar = channel.nbar();
      return Vector((2.0 * (1.0 - eta.array()) * nbar.array() + 1.0).matrix());
    }
    case ChannelKind::Tensor: {
      std::vector<Vector> parts;
      Index len = 0;
      for (const auto& c : channel.components()) {
        auto part = optimal_output_spectrum(c);
        if (!part) return std::nullopt;
        len += part->size();
        parts.push_back(std::move(*part));
      }
      Vector out(len);
      Index at = 0;
      for (const auto& part : parts) {
        out.segment(at, part.size()) = part;
        at += part.size();
      }
      return out;
    }
    case ChannelKind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Matrix> optimal_input(const GaussianChannel& channel) {
  const Index dim = 2 * channel.modes();
  switch (channel.kind()) {
    case ChannelKind::Classical: {
      if (channel.y().isZero(0.0)) return Matrix(Matrix::Identity(dim, dim));
      const auto s = noise_williamson_transform(channel);
      const Matrix inv = s.inverse();
      return Matrix(inv * inv.transpose());
    }
    case ChannelKind::Thermal:
    case ChannelKind::Lossy:
      return Matrix(Matrix::Identity(dim, dim));
    case ChannelKind::Tensor: {
      std::vector<Matrix> blocks;
      for (const auto& c : channel.components()) {
        auto b = optimal_input(c);
        if (!b) return std::nullopt;
        blocks.push_back(std::move(*b));
      }
      return block_diagonal(blocks);
    }
    case ChannelKind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

bool has_closed_form(const GaussianChannel& channel) {
  return optimal_output_spectrum(channel).has_value();
}

namespace {

Vector require_closed_form(const GaussianChannel& channel) {
  auto spec = optimal_output_spectrum(channel);
  if (!spec) {
    throw UnsupportedKindError("no closed form for channel kind '" + to_string(channel.kind()) +
                               "'; use the numeric search");
  }
  return *spec;
}

}  // namespace

double min_output_Fp_closed(const GaussianChannel& channel, double p) {
  require_p(p);
  return big_f_p(require_closed_form(channel), p);
}

double max_output_p_norm(const GaussianChannel& channel, double p) {
  require_p(p);
  const double log_inf = log_big_f_p(require_closed_form(channel), p);
  return std::exp(static_cast<double>(channel.modes()) * std::log(2.0) - log_inf / p);
}

double min_output_entropy(const GaussianChannel& channel) {
  return von_neumann_entropy(require_closed_form(channel));
}

// ---------------------------------------------------------------------------
// Parameterizations

ComplexUnitary<> unitary_from_parameters(Index n, const double* params) {
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  Index at = 0;
  for (Index j = 0; j < n; ++j) h(j, j) = params[at++];
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      h(j, k) = {params[at], params[at + 1]};
      h(k, j) = std::conj(h(j, k));
      at += 2;
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Eigen::VectorXcd phases(n);
  for (Index j = 0; j < n; ++j) phases(j) = std::polar(1.0, es.eigenvalues()(j));
  return ComplexUnitary<>(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

Index pure_parameter_count(Index n) { return n * n + n; }

Matrix pure_covariance_from_parameters(Index n, const Vector& params) {
  if (params.size() != pure_parameter_count(n)) {
    throw DimensionError("pure_covariance_from_parameters: wrong parameter count");
  }
  const Matrix t = unitary_to_orthosymplectic(unitary_from_parameters(n, params.data())).matrix();
  Vector r(n);
  for (Index j = 0; j < n; ++j) r(j) = bounded_squeeze(params(n * n + j));
  const Matrix z2 = squeeze_diagonal(r, 2.0);
  Matrix g = t * z2 * t.transpose();
  return (g + g.transpose()) / 2.0;
}

Index energy_constrained_parameter_count(Index n) { return 2 * n * n + 2 * n; }

double covariance_energy(const Matrix& gamma, const Vector& omega) {
  double e = 0.0;
  for (Index k = 0; k < omega.size(); ++k) {
    e += 0.25 * omega(k) * (gamma(2 * k, 2 * k) + gamma(2 * k + 1, 2 * k + 1));
  }
  return e;
}

Matrix energy_constrained_covariance(const EnergyBudget& budget, const Vector& params) {
  const Index n = budget.omega.size();
  if (params.size() != energy_constrained_parameter_count(n)) {
    throw DimensionError("energy_constrained_covariance: wrong parameter count");
  }
  if (budget.total <= budget.zero_point()) return Matrix::Identity(2 * n, 2 * n);
  const double* p = params.data();
  const Matrix t1 = unitary_to_orthosymplectic(unitary_from_parameters(n, p)).matrix();
  Vector r(n);
  for (Index j = 0; j < n; ++j) r(j) = bounded_squeeze(p[n * n + j]);
  const Matrix t2 = unitary_to_orthosymplectic(unitary_from_parameters(n, p + n * n + n)).matrix();
  Vector u(2 * n);
  for (Index j = 0; j < n; ++j) {
    const double x = p[2 * n * n + n + j];
    u(2 * j) = u(2 * j + 1) = x * x;
  }

  auto symplectic_at = [&](double scale) -> Matrix { return t1 * squeeze_diagonal(r, scale) * t2; };
  Matrix s = symplectic_at(1.0);
  Matrix pure = s * s.transpose();
  if (covariance_energy(pure, budget.omega) > budget.total) {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Matrix sm = symplectic_at(mid);
      if (covariance_energy(Matrix(sm * sm.transpose()), budget.omega) <= budget.total) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    s = symplectic_at(lo);
    pure = s * s.transpose();
  }
  const double slack = std::max(0.0, budget.total - covariance_energy(pure, budget.omega));
  Matrix thermal_part = s * u.asDiagonal() * s.transpose();
  double e1 = covariance_energy(thermal_part, budget.omega);
  if (!(e1 > 1e-12 * covariance_energy(pure, budget.omega))) {
    thermal_part = pure;
    e1 = covariance_energy(pure, budget.omega);
  }
  Matrix g = pure + (slack / e1) * thermal_part;
  return (g + g.transpose()) / 2.0;
}

// ---------------------------------------------------------------------------
// Searches

OptimizationReport numeric_inf_Fp(const GaussianChannel& channel, double p,
                                  const OptimizerSettings& settings) {
  require_p(p);
  const Index n = channel.modes();
  auto to_cov = [n](const Vector& x) { return pure_covariance_from_parameters(n, x); };
  const Objective objective = [&](const Vector& x) {
    try {
      return log_big_f_p(output_spectrum(channel, to_cov(x)), p);
    } catch (const std::exception&) {
      return kInf;
    }
  };
  OptimizationReport rep =
      run_search("numeric_inf_Fp", objective, pure_parameter_count(n), settings, to_cov);
  rep.best_value = big_f_p(output_spectrum(channel, rep.argument), p);
  if (auto spec = optimal_output_spectrum(channel)) {
    rep.closed_form = big_f_p(*spec, p);
    rep.gap_to_closed_form = rep.best_value - *rep.closed_form;
  }
  return rep;
}

OptimizationReport min_output_entropy_search(const GaussianChannel& channel,
                                             const OptimizerSettings& settings) {
  const Index n = channel.modes();
  auto to_cov = [n](const Vector& x) { return pure_covariance_from_parameters(n, x); };
  const Objective objective = [&](const Vector& x) {
    try {
      return von_neumann_entropy(output_spectrum(channel, to_cov(x)));
    } catch (const std::exception&) {
      return kInf;
    }
  };
  OptimizationReport rep =
      run_search("min_output_entropy", objective, pure_parameter_count(n), settings, to_cov);
  rep.best_value = von_neumann_entropy(output_spectrum(channel, rep.argument));
  if (auto spec = optimal_output_spectrum(channel)) {
    rep.closed_form = von_neumann_entropy(*spec);
    rep.gap_to_closed_form = rep.best_value - *rep.closed_form;
  }
  return rep;
}

OptimizationReport max_output_entropy_under_energy(const GaussianChannel& channel,
                                                   const EnergyBudget& budget,
                                                   const OptimizerSettings& settings) {
  require_budget(settings);
  const Index n = channel.modes();
  if (budget.omega.size() != n) {
    throw DimensionError("energy budget frequencies do not match the channel's mode count");
  }
  for (Index k = 0; k < n; ++k) {
    if (!(budget.omega(k) > 0.0)) throw DomainError("mode frequencies must be positive");
  }
  OptimizationReport rep;
  rep.operation = "max_output_entropy_under_energy";
  rep.budget = settings.budget;
  rep.seed = settings.seed;
  if (!budget.feasible()) {
    rep.feasible = false;
    rep.best_value = 0.0;
    rep.converged = true;
    return rep;
  }
  const Matrix vac = Matrix::Identity(2 * n, 2 * n);
  if (budget.total <= budget.zero_point() * (1.0 + 1e-12)) {
    // Tr gamma_[k] >= 2 for physical states, so only the vacuum fits.
    rep.argument = vac;
    rep.best_value = von_neumann_entropy(output_spectrum(channel, vac));
    rep.evaluations = 1;
    rep.converged = true;
    return rep;
  }
  auto to_cov = [&budget](const Vector& x) { return energy_constrained_covariance(budget, x); };
  const Objective objective = [&](const Vector& x) {
    try {
      return -von_neumann_entropy(output_spectrum(channel, to_cov(x)));
    } catch (const std::exception&) {
      return kInf;
    }
  };
  OptimizationReport found = run_search(rep.operation, objective,
                                        energy_constrained_parameter_count(n), settings, to_cov);
  found.best_value = von_neumann_entropy(output_spectrum(channel, found.argument));
  return found;
}

CapacityReport gaussian_holevo_capacity(const GaussianChannel& channel, const EnergyBudget& budget,
                                        const OptimizerSettings& settings) {
  CapacityReport rep;
  rep.sup_search = max_output_entropy_under_energy(channel, budget, settings);
  if (!rep.sup_search.feasible) {
    rep.feasible = false;
    rep.capacity = 0.0;
    return rep;
  }
  rep.sup_output_entropy = rep.sup_search.best_value;
  Matrix witness;
  if (has_closed_form(channel)) {
    rep.min_output_entropy = min_output_entropy(channel);
    witness = *optimal_input(channel);
  } else {
    OptimizerSettings inner = settings;
    inner.seed = sub_seed(settings.seed, 1);
    rep.min_search = min_output_entropy_search(channel, inner);
    rep.min_output_entropy = rep.min_search->best_value;
    rep.min_entropy_closed_form = false;
    witness = rep.min_search->argument;
  }
  rep.capacity = rep.sup_output_entropy - rep.min_output_entropy;
  rep.modulation = rep.sup_search.argument - witness;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.modulation, Eigen::EigenvaluesOnly);
  rep.modulation_min_eigenvalue = es.eigenvalues()(0);
  return rep;
}

// ---------------------------------------------------------------------------
// Multiplicativity and additivity

namespace {

void require_closed_form_list(const std::vector<GaussianChannel>& channels, const char* what) {
  if (channels.size() < 2) {
    throw DomainError(std::string(what) + ": need at least two channels");
  }
  for (const auto& c : channels) {
    if (!has_closed_form(c)) {
      throw UnsupportedKindError(std::string(what) + ": channel kind '" + to_string(c.kind()) +
                                 "' is not covered (classical or thermal noise only)");
    }
  }
}

}  // namespace

MultiplicativityReport multiplicativity_check(const std::vector<GaussianChannel>& channels,
                                              double p, const OptimizerSettings& settings,
                                              double tol) {
  require_p(p);
  require_closed_form_list(channels, "multiplicativity_check");
  MultiplicativityReport rep;
  rep.p = p;
  rep.tolerance = tol;
  for (const auto& c : channels) {
    rep.per_channel.push_back(min_output_Fp_closed(c, p));
    rep.product *= rep.per_channel.back();
  }
  const GaussianChannel joint = tensor(channels);
  rep.search = numeric_inf_Fp(joint, p, settings);
  rep.numeric_best = rep.search.best_value;
  rep.separable_value = big_f_p(output_spectrum(joint, *optimal_input(joint)), p);
  rep.gap = rep.numeric_best - rep.product;
  const double scale = std::max(1.0, rep.product);
  rep.pass = rep.gap >= -tol && std::abs(rep.separable_value - rep.product) <= tol * scale;
  return rep;
}

namespace {

// Enumerates the compositions of `steps` into `parts` nonnegative integers.
void compositions(int parts, int steps, std::vector<int>& current,
                  const std::function<void(const std::vector<int>&)>& visit) {
  if (parts == 1) {
    current.push_back(steps);
    visit(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= steps; ++k) {
    current.push_back(k);
    compositions(parts - 1, steps - k, current, visit);
    current.pop_back();
  }
}

}  // namespace

AdditivityReport additivity_check(const std::vector<GaussianChannel>& channels,
                                  const EnergyBudget& budget, const OptimizerSettings& settings,
                                  int grid_points, double tol) {
  require_closed_form_list(channels, "additivity_check");
  if (grid_points < 2) throw DomainError("additivity_check: need at least 2 grid points");
  const GaussianChannel joint = tensor(channels);
  if (budget.omega.size() != joint.modes()) {
    throw DimensionError("additivity_check: omega must cover every mode of the joint channel");
  }
  AdditivityReport rep;
  rep.grid_points = grid_points;
  rep.tolerance = tol;

  const int m = static_cast<int>(channels.size());
  std::vector<EnergyBudget> parts;
  Index at = 0;
  for (const auto& c : channels) {
    parts.push_back({0.0, budget.omega.segment(at, c.modes())});
    at += c.modes();
  }
  const double excess = budget.total - budget.zero_point();
  if (!budget.feasible()) {
    rep.pass = true;  // both sides are zero
    return rep;
  }

  OptimizerSettings joint_settings = settings;
  joint_settings.seed = sub_seed(settings.seed, 0);
  rep.joint_capacity = gaussian_holevo_capacity(joint, budget, joint_settings).capacity;

  std::uint64_t calls = 1;
  auto capacity_of = [&](int j, double fraction) {
    EnergyBudget b = parts[static_cast<std::size_t>(j)];
    b.total = b.zero_point() + std::max(0.0, fraction) * excess;
    OptimizerSettings s = settings;
    s.seed = sub_seed(settings.seed, calls++);
    return gaussian_holevo_capacity(channels[static_cast<std::size_t>(j)], b, s).capacity;
  };

  const int steps = grid_points - 1;
  std::vector<std::vector<double>> table(static_cast<std::size_t>(m),
                                         std::vector<double>(static_cast<std::size_t>(grid_points)));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k <= steps; ++k) {
      table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          capacity_of(j, static_cast<double>(k) / steps);
    }
  }
  rep.grid_best_sum = -kInf;
  std::vector<int> best_cell;
  std::vector<int> scratch;
  compositions(m, steps, scratch, [&](const std::vector<int>& cell) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      sum += table[static_cast<std::size_t>(j)][static_cast<std::size_t>(cell[static_cast<std::size_t>(j)])];
    }
    if (sum > rep.grid_best_sum) {
      rep.grid_best_sum = sum;
      best_cell = cell;
    }
  });
  for (int j = 0; j < m; ++j) {
    rep.grid_split.push_back(parts[static_cast<std::size_t>(j)].zero_point() +
                             excess * best_cell[static_cast<std::size_t>(j)] / steps);
  }
  rep.best_split_sum = rep.grid_best_sum;
  rep.best_split = rep.grid_split;

  if (m == 2 && excess > 0.0) {
    const double h = 1.0 / steps;
    const double centre = static_cast<double>(best_cell[0]) / steps;
    double a = std::max(0.0, centre - h);
    double b = std::min(1.0, centre + h);
    auto total_at = [&](double f) { return capacity_of(0, f) + capacity_of(1, 1.0 - f); };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = total_at(c);
    double fd = total_at(d);
    for (int it = 0; it < 24; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = total_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = total_at(d);
      }
    }
    const double f = fc > fd ? c : d;
    const double refined = std::max(fc, fd);
    if (refined > rep.best_split_sum) {
      rep.best_split_sum = refined;
      rep.best_split = {parts[0].zero_point() + f * excess,
                        parts[1].zero_point() + (1.0 - f) * excess};
    }
  }
  rep.gap = rep.joint_capacity - rep.best_split_sum;
  rep.pass = std::abs(rep.gap) <= tol;
  return rep;
}

double subadditivity_margin(const std::vector<GaussianChannel>& channels, const Matrix& joint_gamma) {
  const GaussianChannel joint = tensor(channels);
  const Matrix out = apply_covariance(joint, joint_gamma);
  const double whole = von_neumann_entropy(symplectic_eigenvalues(out));
  double parts = 0.0;
  Index at = 0;
  for (const auto& c : channels) {
    const Index d = 2 * c.modes();
    parts += von_neumann_entropy(symplectic_eigenvalues(Matrix(out.block(at, at, d, d))));
    at += d;
  }
  return parts - whole;
}

}  // namespace gchan
