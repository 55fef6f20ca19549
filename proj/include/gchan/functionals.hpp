#pragma once

// Figures of merit of Gaussian channels: maximal output p-norm, minimal
// output entropy and the energy-constrained Gaussian Holevo capacity, each
// as a closed form (classical and thermal noise) and as a budgeted
// derivative-free search over Gaussian inputs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gchan/channel.hpp"

namespace gchan {

/// Mean-energy constraint sum_k w_k Tr gamma_[k] = 4 E.
struct EnergyBudget {
  double total = 0.0;
  Vector omega;

  double zero_point() const { return 0.5 * omega.sum(); }
  /// Below the zero-point energy no state satisfies the constraint.
  bool feasible() const;
};

struct OptimizationReport {
  std::string operation;
  double best_value = 0.0;
  Matrix argument;  // input covariance attaining best_value
  long evaluations = 0;
  long budget = 0;
  int runs = 0;
  bool converged = false;
  bool feasible = true;
  std::optional<double> closed_form;
  std::optional<double> gap_to_closed_form;  // best_value - closed_form
  std::uint64_t seed = 0;
};

struct OptimizerSettings {
  long budget = 20000;
  std::uint64_t seed = 0;
  long per_run = 4000;
};

// --- Closed forms ----------------------------------------------------------

/// Output symplectic spectrum of the optimal pure input: 1 + nu(Y) for
/// classical noise, 1 + 2(1 - eta_k) nbar_k for thermal noise,
/// concatenated over tensor components. Empty for custom channels.
std::optional<Vector> optimal_output_spectrum(const GaussianChannel& channel);

/// Pure input covariance attaining the closed-form optimum: S^{-1} S^{-T}
/// with S the Williamson transform of Y (classical), the vacuum (thermal),
/// and the direct sum over tensor components.
std::optional<Matrix> optimal_input(const GaussianChannel& channel);

bool has_closed_form(const GaussianChannel& channel);

/// inf over pure inputs of F_p(nu(phi(gamma_p))).
/// Throws UnsupportedKindError for custom channels.
double min_output_Fp_closed(const GaussianChannel& channel, double p);

/// xi_p = 2^n / (inf F_p)^{1/p}.
double max_output_p_norm(const GaussianChannel& channel, double p);

/// S_min as the sum of mode entropies of optimal_output_spectrum.
double min_output_entropy(const GaussianChannel& channel);

// --- Input parameterizations -------------------------------------------------

/// n x n unitary exp(iH), H Hermitian built from n^2 reals (diagonal first,
/// then real and imaginary parts of the strict upper triangle).
ComplexUnitary<> unitary_from_parameters(Index n, const double* params);

/// Pure covariance T(U) diag(e^{2r_1}, e^{-2r_1}, ...) T(U)^T from n^2 + n
/// parameters; squeezing is bounded by |r| < 4 through r = 4 tanh(x / 4).
Matrix pure_covariance_from_parameters(Index n, const Vector& params);
Index pure_parameter_count(Index n);

/// Mixed covariance S D S^T meeting the energy constraint exactly, from
/// 2n^2 + 2n parameters: S = T(U1) Z T(U2) and D = I + t diag(u_j^2).
/// t is fixed by the constraint. When the pure part S S^T already
/// exceeds the budget, the squeezing is scaled back by bisection toward
/// the vacuum.
Matrix energy_constrained_covariance(const EnergyBudget& budget, const Vector& params);
Index energy_constrained_parameter_count(Index n);

/// (1/4) sum_k w_k Tr gamma_[k].
double covariance_energy(const Matrix& gamma, const Vector& omega);

// --- Searches ----------------------------------------------------------------

/// Minimizes F_p(nu(phi(gamma_p))) over pure Gaussian inputs, entangled
/// inputs included. Reports the gap to the closed form when one exists.
OptimizationReport numeric_inf_Fp(const GaussianChannel& channel, double p,
                                  const OptimizerSettings& settings);

/// Same search with the output entropy as objective.
OptimizationReport min_output_entropy_search(const GaussianChannel& channel,
                                             const OptimizerSettings& settings);

/// sup S(phi(gamma)) under the energy constraint. An infeasible budget
/// yields feasible = false and best_value = 0.
OptimizationReport max_output_entropy_under_energy(const GaussianChannel& channel,
                                                   const EnergyBudget& budget,
                                                   const OptimizerSettings& settings);

struct CapacityReport {
  double capacity = 0.0;
  bool feasible = true;
  double sup_output_entropy = 0.0;
  double min_output_entropy = 0.0;
  bool min_entropy_closed_form = true;
  OptimizationReport sup_search;
  std::optional<OptimizationReport> min_search;  // custom channels only
  /// Y_mu = gamma_bar - gamma_star: the Gaussian displacement modulation
  /// implied by the optimal averaged input and the S_min witness.
  Matrix modulation;
  double modulation_min_eigenvalue = 0.0;
};

/// C_G = sup S(phi(gamma)) - S_min, and exactly 0 for infeasible budgets.
CapacityReport gaussian_holevo_capacity(const GaussianChannel& channel, const EnergyBudget& budget,
                                        const OptimizerSettings& settings);

// --- Multiplicativity and additivity ------------------------------------------

struct MultiplicativityReport {
  double p = 2.0;
  std::vector<double> per_channel;  // closed-form inf F_p of each factor
  double product = 1.0;
  double numeric_best = 0.0;        // entangled joint search
  double separable_value = 0.0;     // product of per-channel optimal inputs
  double gap = 0.0;                 // numeric_best - product
  double tolerance = 1e-6;
  bool pass = false;
  OptimizationReport search;
};

/// PASS iff the joint search never goes below the product of single-channel
/// optima by more than `tol` and the separable optimal input attains it.
MultiplicativityReport multiplicativity_check(const std::vector<GaussianChannel>& channels,
                                              double p, const OptimizerSettings& settings,
                                              double tol = 1e-6);

struct AdditivityReport {
  double joint_capacity = 0.0;
  double best_split_sum = 0.0;
  std::vector<double> best_split;  // energies E_j
  double grid_best_sum = 0.0;      // best before refinement
  std::vector<double> grid_split;
  int grid_points = 11;
  double gap = 0.0;  // joint - best split
  double tolerance = 1e-3;
  bool pass = false;
};

/// Joint capacity of the tensor product versus the best split of the
/// energy over the factors. The split is searched on a uniform grid of
/// `grid_points` per split dimension; with two factors the best grid cell
/// is then refined by golden-section search.
///
/// `budget.omega` covers all modes of the joint channel in order.
AdditivityReport additivity_check(const std::vector<GaussianChannel>& channels,
                                  const EnergyBudget& budget, const OptimizerSettings& settings,
                                  int grid_points = 11, double tol = 1e-3);

/// sum_j S(phi_j(gamma_j)) - S(phi(gamma)) with gamma_j the diagonal blocks
/// of the joint input; nonnegative by subadditivity.
double subadditivity_margin(const std::vector<GaussianChannel>& channels, const Matrix& joint_gamma);

}  // namespace gchan
