#pragma once

#include <cstdint>
#include <functional>

#include "gchan/symplectic.hpp"

namespace gchan {

using Objective = std::function<double(const Vector&)>;

struct NelderMeadOptions {
  long max_evaluations = 2000;
  double initial_step = 0.5;
  double f_tol = 1e-13;  // relative spread of simplex values
  double x_tol = 1e-9;   // simplex diameter
};

struct MinimizeResult {
  Vector x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) from an axis-aligned initial simplex around x0.
MinimizeResult nelder_mead(const Objective& f, const Vector& x0, const NelderMeadOptions& options);

struct RestartOptions {
  long budget = 20000;        // total objective evaluations across restarts
  long per_run = 4000;        // cap for a single simplex run
  double start_scale = 1.0;   // std-dev of random starting points
  double initial_step = 0.5;
  std::uint64_t seed = 0;
};

struct RestartResult {
  MinimizeResult best;
  long evaluations = 0;
  int runs = 0;
  bool converged = false;  // the best run met its tolerances
};

/// Runs alternate between a fresh random start (stream = run index) and a
/// polish of the best point so far with a smaller simplex. Stops when the
/// budget is spent. Ties resolve to the earliest run.
RestartResult minimize_with_restarts(const Objective& f, Index dim, const RestartOptions& options);

}  // namespace gchan
