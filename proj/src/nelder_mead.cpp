#include "gchan/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace gchan {

namespace {

struct Budgeted {
  const Objective& f;
  long limit;
  long used = 0;

  bool exhausted() const { return used >= limit; }
  double operator()(const Vector& x) {
    if (exhausted()) return std::numeric_limits<double>::infinity();
    ++used;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, const Vector& x0, const NelderMeadOptions& options) {
  const Index dim = x0.size();
  Budgeted eval{f, options.max_evaluations};
  MinimizeResult result;

  if (dim == 0) {
    result.x = x0;
    result.value = eval(x0);
    result.evaluations = eval.used;
    result.converged = true;
    return result;
  }

  std::vector<Vector> simplex(static_cast<std::size_t>(dim + 1), x0);
  std::vector<double> values(simplex.size());
  for (Index i = 0; i < dim; ++i) simplex[static_cast<std::size_t>(i + 1)](i) += options.initial_step;
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Vector> s2;
    std::vector<double> v2;
    for (auto i : order) {
      s2.push_back(simplex[i]);
      v2.push_back(values[i]);
    }
    simplex.swap(s2);
    values.swap(v2);
  };

  bool converged = false;
  while (!eval.exhausted()) {
    sort_simplex();
    const double best = values.front();
    const double worst = values.back();
    double diameter = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      diameter = std::max(diameter, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    }
    const double spread = std::abs(worst - best);
    if (spread <= options.f_tol * (std::abs(best) + 1e-300) + 1e-300 || diameter <= options.x_tol) {
      converged = true;
      break;
    }

    Vector centroid = Vector::Zero(dim);
    for (Index i = 0; i < dim; ++i) centroid += simplex[static_cast<std::size_t>(i)];
    centroid /= static_cast<double>(dim);

    Vector& worst_x = simplex.back();
    const Vector reflected = centroid + (centroid - worst_x);
    const double fr = eval(reflected);
    if (fr < values.front()) {
      const Vector expanded = centroid + 2.0 * (centroid - worst_x);
      const double fe = eval(expanded);
      if (fe < fr) {
        worst_x = expanded;
        values.back() = fe;
      } else {
        worst_x = reflected;
        values.back() = fr;
      }
      continue;
    }
    if (fr < values[values.size() - 2]) {
      worst_x = reflected;
      values.back() = fr;
      continue;
    }
    const bool outside = fr < values.back();
    const Vector contracted =
        outside ? Vector(centroid + 0.5 * (reflected - centroid)) : Vector(centroid + 0.5 * (worst_x - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values.back())) {
      worst_x = contracted;
      values.back() = fc;
      continue;
    }
    for (std::size_t i = 1; i < simplex.size() && !eval.exhausted(); ++i) {
      simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
      values[i] = eval(simplex[i]);
    }
  }

  sort_simplex();
  result.x = simplex.front();
  result.value = values.front();
  result.evaluations = eval.used;
  result.converged = converged;
  return result;
}

RestartResult minimize_with_restarts(const Objective& f, Index dim, const RestartOptions& options) {
  if (options.budget <= 0) throw DomainError("minimize_with_restarts: budget must be positive");
  RestartResult out;
  out.best.value = std::numeric_limits<double>::infinity();
  long remaining = options.budget;
  bool polish_next = false;
  while (remaining > 0) {
    Vector x0(dim);
    NelderMeadOptions nm;
    nm.max_evaluations = std::min(remaining, options.per_run);
    if (polish_next && out.best.x.size() == dim) {
      x0 = out.best.x;
      nm.initial_step = options.initial_step * 0.1;
    } else {
      CounterRng rng(options.seed, static_cast<std::uint64_t>(out.runs) + 1);
      for (Index i = 0; i < dim; ++i) x0(i) = options.start_scale * rng.normal();
      nm.initial_step = options.initial_step;
    }
    const MinimizeResult run = nelder_mead(f, x0, nm);
    remaining -= run.evaluations;
    out.evaluations += run.evaluations;
    ++out.runs;
    if (run.value < out.best.value || out.best.x.size() == 0) {
      out.best = run;
      out.converged = run.converged;
    }
    polish_next = !polish_next;
    if (dim == 0) break;
  }
  return out;
}

}  // namespace gchan
