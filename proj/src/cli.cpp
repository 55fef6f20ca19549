#include "gchan/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gchan/io.hpp"
#include "gchan/log.hpp"

namespace gchan {

namespace {

using io::Json;

struct RunConfig {
  std::string command;
  std::string target;
  std::vector<std::string> channels;
  std::vector<double> p;
  std::optional<double> energy;
  std::vector<double> omega;
  std::optional<long> trials;
  std::optional<long> samples;
  std::optional<long> max_modes;
  std::uint64_t seed = 0;
  long budget = 20000;
  std::optional<double> tol;
  bool numeric = false;
  std::string format = "json";
  std::string out_path;
  bool timing = false;
  bool negate = false;
  unsigned threads = 0;
  int verbosity = 0;
};

// Thrown for configuration problems detected after parsing.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  std::string status;  // pass | fail | ok | infeasible
  Json results = Json::array();
  Json tolerances = Json::object();
  Json parameters = Json::object();
  int exit_code = kExitOk;
};

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

Json base_tolerances() {
  const Tolerances t;
  Json j;
  j["symplectic"] = t.symplectic;
  j["decomposition"] = t.decomposition;
  j["physical"] = t.physical;
  return j;
}

io::ChannelSpec single_channel(const RunConfig& cfg) {
  if (cfg.channels.size() != 1) throw ConfigError("--channel: exactly one channel spec is required");
  return io::load_channel_spec(cfg.channels.front());
}

// Factors for the tensor checks: several --channel files, or one tensor spec.
std::vector<io::ChannelSpec> factor_specs(const RunConfig& cfg) {
  if (cfg.channels.empty()) throw ConfigError("--channel: at least one channel spec is required");
  std::vector<io::ChannelSpec> specs;
  for (const auto& path : cfg.channels) specs.push_back(io::load_channel_spec(path));
  if (specs.size() == 1) {
    const io::ChannelSpec whole = specs.front();
    if (whole.factors.size() < 2) {
      throw ConfigError("--channel: need two or more channels (several files or one tensor spec)");
    }
    specs.clear();
    Index at = 0;
    for (const auto& f : whole.factors) {
      io::ChannelSpec part;
      part.channel = f;
      part.omega = whole.omega.segment(at, f.modes());
      at += f.modes();
      specs.push_back(std::move(part));
    }
  }
  return specs;
}

Vector resolve_omega(const RunConfig& cfg, const Vector& from_spec) {
  if (cfg.omega.empty()) return from_spec;
  Vector omega = to_vector(cfg.omega);
  if (omega.size() != from_spec.size()) {
    throw ConfigError("--omega: expected " + std::to_string(from_spec.size()) + " values");
  }
  for (Index k = 0; k < omega.size(); ++k) {
    if (!(omega(k) > 0.0)) throw ConfigError("--omega: frequencies must be positive");
  }
  return omega;
}

double require_energy(const RunConfig& cfg) {
  if (!cfg.energy) throw ConfigError("--energy is required");
  if (!std::isfinite(*cfg.energy)) throw ConfigError("--energy must be finite");
  return *cfg.energy;
}

OptimizerSettings settings_of(const RunConfig& cfg) {
  if (cfg.budget <= 0) throw ConfigError("--budget must be positive");
  OptimizerSettings s;
  s.budget = cfg.budget;
  s.seed = cfg.seed;
  return s;
}

std::vector<double> p_values(const RunConfig& cfg, std::vector<double> fallback) {
  std::vector<double> ps = cfg.p.empty() ? std::move(fallback) : cfg.p;
  for (double p : ps) {
    if (!(p > 1.0)) throw ConfigError("--p: values must exceed 1");
  }
  return ps;
}

// ---------------------------------------------------------------------------

Outcome cmd_analyze(const RunConfig& cfg) {
  const io::ChannelSpec spec = single_channel(cfg);
  const GaussianChannel& ch = spec.channel;
  const bool closed = has_closed_form(ch);
  if (!closed && !cfg.numeric) {
    throw UnsupportedKindError("no closed form for channel kind '" + to_string(ch.kind()) +
                               "'; rerun with --numeric");
  }
  Outcome o;
  o.status = "ok";
  o.tolerances = base_tolerances();
  o.parameters["kind"] = to_string(ch.kind());
  o.parameters["n_modes"] = ch.modes();
  o.parameters["cp_eigenvalue"] = ch.cp_eigenvalue();
  const double n = static_cast<double>(ch.modes());
  std::optional<OptimizationReport> entropy_search;
  if (cfg.numeric) entropy_search = min_output_entropy_search(ch, settings_of(cfg));
  for (double p : p_values(cfg, {2.0})) {
    Json r;
    r["p"] = p;
    r["closed_form"] = closed;
    if (closed) {
      r["inf_Fp"] = min_output_Fp_closed(ch, p);
      r["xi_p"] = max_output_p_norm(ch, p);
      r["S_min"] = min_output_entropy(ch);
    }
    if (cfg.numeric) {
      const OptimizationReport rep = numeric_inf_Fp(ch, p, settings_of(cfg));
      r["numeric_inf_Fp"] = rep.best_value;
      r["numeric_xi_p"] = std::exp(n * std::log(2.0) - std::log(rep.best_value) / p);
      r["numeric_S_min"] = entropy_search->best_value;
      Json search = io::to_json(rep);
      search.erase("argument");
      r["search"] = std::move(search);
    }
    o.results.push_back(std::move(r));
  }
  return o;
}

Outcome cmd_capacity(const RunConfig& cfg) {
  const io::ChannelSpec spec = single_channel(cfg);
  EnergyBudget budget{require_energy(cfg), resolve_omega(cfg, spec.omega)};
  const CapacityReport rep = gaussian_holevo_capacity(spec.channel, budget, settings_of(cfg));
  Outcome o;
  o.status = rep.feasible ? "ok" : "infeasible";
  o.tolerances = base_tolerances();
  o.parameters["energy"] = budget.total;
  o.parameters["omega"] = io::to_json(budget.omega);
  o.parameters["zero_point"] = budget.zero_point();
  o.parameters["kind"] = to_string(spec.channel.kind());
  o.results.push_back(io::to_json(rep));
  return o;
}

Outcome from_trial(const TrialReport& rep) {
  Outcome o;
  o.status = rep.pass() ? "pass" : "fail";
  o.exit_code = rep.pass() ? kExitOk : kExitVerificationFailed;
  o.tolerances = base_tolerances();
  o.tolerances["check"] = rep.tolerance;
  o.results.push_back(io::to_json(rep));
  return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
  TrialOptions opts;
  opts.tol = cfg.tol.value_or(1e-9);
  opts.threads = cfg.threads;
  opts.negate = cfg.negate;
  auto positive = [](std::optional<long> v, long fallback, const char* flag) {
    const long x = v.value_or(fallback);
    if (x < 1) throw ConfigError(std::string(flag) + " must be at least 1");
    return x;
  };

  if (cfg.target == "theorem1") {
    const long trials = positive(cfg.trials, 10000, "--trials");
    const Index modes = positive(cfg.max_modes, 4, "--max-modes");
    return from_trial(theorem1_trial(modes, {0.1, 10.0}, trials, cfg.seed, opts));
  }
  if (cfg.target == "lemma1") {
    const long instances = positive(cfg.trials, 100, "--trials");
    const long samples = positive(cfg.samples, 10000, "--samples");
    const Index modes = positive(cfg.max_modes, 3, "--max-modes");
    return from_trial(lemma1_campaign(instances, modes, {0.5, 5.0}, samples, cfg.seed, opts));
  }
  if (cfg.target == "schur") {
    const long trials = positive(cfg.trials, 1000, "--trials");
    const Index modes = positive(cfg.max_modes, 8, "--max-modes");
    return from_trial(schur_trial(modes, trials, cfg.seed, true, opts));
  }
  if (cfg.target == "concavity") {
    const long points = positive(cfg.trials, 1000, "--trials");
    std::vector<double> ps = cfg.p.empty() ? std::vector<double>{1.1, 2.0, 3.0, 7.0} : cfg.p;
    for (double p : ps) {
      if (!(p >= 1.0)) throw ConfigError("--p: values must be at least 1");
    }
    return from_trial(concavity_trial(ps, 1.0 + 1e-3, 50.0, points, opts));
  }

  std::vector<io::ChannelSpec> specs = factor_specs(cfg);
  std::vector<GaussianChannel> channels;
  for (const auto& s : specs) channels.push_back(s.channel);
  Outcome o;
  o.tolerances = base_tolerances();
  bool all = true;
  if (cfg.target == "multiplicativity") {
    const double tol = cfg.tol.value_or(1e-6);
    o.tolerances["optimization"] = tol;
    for (double p : p_values(cfg, {2.0})) {
      MultiplicativityReport rep = multiplicativity_check(channels, p, settings_of(cfg), tol);
      rep.pass = rep.pass != cfg.negate;
      all = all && rep.pass;
      Json j = io::to_json(rep);
      j["search"].erase("argument");
      o.results.push_back(std::move(j));
    }
  } else if (cfg.target == "additivity") {
    const double tol = cfg.tol.value_or(1e-3);
    o.tolerances["optimization"] = tol;
    Index total = 0;
    for (const auto& s : specs) total += s.omega.size();
    Vector omega(total);
    total = 0;
    for (const auto& s : specs) {
      omega.segment(total, s.omega.size()) = s.omega;
      total += s.omega.size();
    }
    EnergyBudget budget{require_energy(cfg), resolve_omega(cfg, omega)};
    o.parameters["energy"] = budget.total;
    o.parameters["omega"] = io::to_json(budget.omega);
    AdditivityReport rep = additivity_check(channels, budget, settings_of(cfg), 11, tol);
    rep.pass = rep.pass != cfg.negate;
    all = rep.pass;
    o.results.push_back(io::to_json(rep));
  } else {
    throw ConfigError("verify: unknown target '" + cfg.target + "'");
  }
  o.status = all ? "pass" : "fail";
  o.exit_code = all ? kExitOk : kExitVerificationFailed;
  return o;
}

Json assemble(const RunConfig& cfg, const Outcome& o, std::optional<double> wall) {
  Json j;
  j["tool"] = "gchan-cli";
  j["version"] = kVersion;
  j["command"] = cfg.command;
  if (!cfg.target.empty()) j["target"] = cfg.target;
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["tolerances"] = o.tolerances;
  Json config;
  if (!cfg.channels.empty()) config["channels"] = cfg.channels;
  if (!cfg.p.empty()) config["p"] = cfg.p;
  for (auto it = o.parameters.begin(); it != o.parameters.end(); ++it) config[it.key()] = it.value();
  if (cfg.trials) config["trials"] = *cfg.trials;
  if (cfg.samples) config["samples"] = *cfg.samples;
  if (cfg.max_modes) config["max_modes"] = *cfg.max_modes;
  config["numeric"] = cfg.numeric;
  j["config"] = std::move(config);
  j["status"] = o.status;
  if (wall) j["wall_time_s"] = *wall;
  j["results"] = o.results;
  return j;
}

std::string render(const RunConfig& cfg, const Json& report) {
  if (cfg.format == "json") return report.dump(2) + "\n";
  std::vector<Json> rows;
  for (const auto& r : report["results"]) {
    Json row;
    row["command"] = report["command"];
    if (report.contains("target")) row["target"] = report["target"];
    row["seed"] = report["seed"];
    row["status"] = report["status"];
    for (auto it = r.begin(); it != r.end(); ++it) row[it.key()] = it.value();
    rows.push_back(std::move(row));
  }
  return io::to_csv(rows);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian channel toolkit: p-norms, entropies, capacities and verification campaigns",
               "gchan-cli"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  app.add_option("--channel", cfg.channels, "Channel spec file (JSON); repeat for tensor checks");
  app.add_option("--p", cfg.p, "Comma-separated p values")->delimiter(',');
  app.add_option("--energy", cfg.energy, "Energy budget");
  app.add_option("--omega", cfg.omega, "Comma-separated mode frequencies")->delimiter(',');
  app.add_option("--trials", cfg.trials, "Trials (instances for lemma1, grid points for concavity)");
  app.add_option("--samples", cfg.samples, "Samples per (A, k) for lemma1");
  app.add_option("--max-modes", cfg.max_modes, "Largest mode count (matrix size for schur)");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--budget", cfg.budget, "Objective evaluations per search");
  app.add_option("--tol", cfg.tol, "Check tolerance override");
  app.add_flag("--numeric", cfg.numeric, "Also run the numeric searches");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "Write the report here instead of standard output");
  app.add_flag("--timing", cfg.timing, "Embed wall time in the report");
  app.add_option("--threads", cfg.threads, "Worker threads for campaigns (0: all cores)");
  app.add_flag("-v,--verbose", cfg.verbosity, "Progress on the diagnostic stream");
  app.add_flag("--negate-check", cfg.negate, "Invert every verdict (harness self-test)")
      ->group("");

  app.add_subcommand("analyze", "Closed-form (and optionally numeric) p-norms and S_min");
  app.add_subcommand("capacity", "Energy-constrained Gaussian Holevo capacity");
  CLI::App* verify = app.add_subcommand("verify", "Verification campaigns");
  verify->require_subcommand(1);
  const std::pair<const char*, const char*> targets[] = {
      {"theorem1", "nu(A + B) <^w nu(A) + nu(B) on random positive-definite pairs"},
      {"lemma1", "Tr S A S^T >= 2 sum of the k smallest nu(A), with witness"},
      {"schur", "diag(A) is majorized by the eigenvalues of Hermitian A"},
      {"concavity", "ln f_p is concave on x > 1"},
      {"multiplicativity", "inf F_p of a tensor product equals the product of optima"},
      {"additivity", "joint capacity equals the best energy split"},
  };
  for (const auto& [name, about] : targets) verify->add_subcommand(name, about);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  for (const CLI::App* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (const CLI::App* s2 : sub->get_subcommands()) cfg.target = s2->get_name();
  }
  log::set_level(cfg.verbosity >= 2 ? log::Level::Debug
                 : cfg.verbosity == 1 ? log::Level::Info
                                      : log::Level::Quiet);

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (cfg.command == "analyze") {
      outcome = cmd_analyze(cfg);
    } else if (cfg.command == "capacity") {
      outcome = cmd_capacity(cfg);
    } else {
      outcome = cmd_verify(cfg);
    }
  } catch (const UnsupportedKindError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "wall time: " << wall << " s\n";

  const Json report = assemble(cfg, outcome, cfg.timing ? std::optional<double>(wall) : std::nullopt);
  const std::string text = render(cfg, report);
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.out_path << "'\n";
      return kExitInputError;
    }
    file << text;
  }
  return outcome.exit_code;
}

}  // namespace gchan
