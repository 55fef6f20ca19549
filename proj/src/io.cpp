#include "gchan/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gchan::io {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

const Json* find(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

double real_field(const Json& j, const std::string& field) {
  if (!j.is_number()) throw SpecError(field, "expected a number");
  return j.get<double>();
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(number(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Vector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw SpecError(field, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = real_field(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw SpecError(field, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw SpecError(field, "row " + std::to_string(i) + " is not an array of length " +
                                 std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Index>(i), static_cast<Index>(k)) =
          real_field(j[i][k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json state_to_json(const GaussianState& state) {
  Json j;
  j["n"] = state.modes();
  j["omega"] = to_json(state.omega());
  j["gamma"] = to_json(state.covariance());
  j["m"] = to_json(state.displacement());
  return j;
}

GaussianState state_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("state", "expected an object");
  const Json* g = find(j, "gamma");
  if (!g) throw SpecError("gamma", "missing");
  Matrix gamma = matrix_from_json(*g, "gamma");
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0) {
    throw SpecError("gamma", "must be a square matrix of even size");
  }
  const Index n = gamma.rows() / 2;
  if (const Json* nn = find(j, "n"); nn && (!nn->is_number_integer() || nn->get<Index>() != n)) {
    throw SpecError("n", "does not match the size of gamma");
  }
  Vector m = Vector::Zero(2 * n);
  if (const Json* mj = find(j, "m")) m = vector_from_json(*mj, "m");
  Vector omega = Vector::Ones(n);
  if (const Json* oj = find(j, "omega")) omega = vector_from_json(*oj, "omega");
  if (m.size() != 2 * n) throw SpecError("m", "expected " + std::to_string(2 * n) + " entries");
  if (omega.size() != n) throw SpecError("omega", "expected " + std::to_string(n) + " entries");
  try {
    return GaussianState(std::move(gamma), std::move(m), std::move(omega));
  } catch (const DomainError& e) {
    throw SpecError("omega", e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError("gamma", e.what());
  }
}

namespace {

Vector required_vector(const Json& j, const char* key, Index n) {
  const Json* v = find(j, key);
  if (!v) throw SpecError(key, "missing");
  Vector out = vector_from_json(*v, key);
  if (n >= 0 && out.size() != n) {
    throw SpecError(key, "expected " + std::to_string(n) + " entries, got " +
                             std::to_string(out.size()));
  }
  return out;
}

Matrix square_matrix(const Json& j, const char* key, Index n) {
  const Json* v = find(j, key);
  if (!v) throw SpecError(key, "missing");
  Matrix m = matrix_from_json(*v, key);
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || (n >= 0 && m.rows() != 2 * n)) {
    std::ostringstream os;
    os << "expected a square " << (n >= 0 ? std::to_string(2 * n) : std::string("2n")) << "x"
       << (n >= 0 ? std::to_string(2 * n) : std::string("2n")) << " matrix, got " << m.rows() << "x"
       << m.cols();
    throw SpecError(key, os.str());
  }
  return m;
}

template <typename Build>
GaussianChannel construct(const char* field, Build&& build) {
  try {
    return build();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecError(field, e.what());
  }
}

ChannelSpec parse_spec(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path.empty() ? "spec" : path, "expected an object");
  auto at = [&path](const std::string& key) { return path.empty() ? key : path + "." + key; };

  const Json* kind_json = find(j, "kind");
  if (!kind_json || !kind_json->is_string()) throw SpecError(at("kind"), "missing or not a string");
  ChannelKind kind;
  try {
    kind = channel_kind_from_string(kind_json->get<std::string>());
  } catch (const DomainError& e) {
    throw SpecError(at("kind"), e.what());
  }

  Index n = -1;
  if (const Json* nj = find(j, "n_modes")) {
    if (!nj->is_number_integer() || nj->get<long>() < 1) {
      throw SpecError(at("n_modes"), "expected a positive integer");
    }
    n = nj->get<Index>();
  }

  ChannelSpec spec;
  spec.source = j;
  try {
    switch (kind) {
      case ChannelKind::Classical: {
        const Matrix y = square_matrix(j, "Y", n);
        if (find(j, "X")) {
          const Matrix x = square_matrix(j, "X", y.rows() / 2);
          if (!x.isIdentity(0.0)) throw SpecError("X", "classical channels require X = I");
        }
        spec.channel = construct("Y", [&] { return classical_noise(y); });
        break;
      }
      case ChannelKind::Thermal:
      case ChannelKind::Lossy: {
        const Vector eta = required_vector(j, "eta", n);
        Vector nbar = Vector::Zero(eta.size());
        if (kind == ChannelKind::Thermal) {
          nbar = required_vector(j, "nbar", eta.size());
        } else if (find(j, "nbar")) {
          nbar = required_vector(j, "nbar", eta.size());
          if (!nbar.isZero(0.0)) throw SpecError("nbar", "lossy channels have nbar = 0");
        }
        for (Index k = 0; k < eta.size(); ++k) {
          if (!(eta(k) >= 0.0 && eta(k) <= 1.0)) {
            throw SpecError("eta", "transmittivity must lie in [0, 1]");
          }
          if (!(nbar(k) >= 0.0)) throw SpecError("nbar", "must be >= 0");
        }
        spec.channel = construct("eta", [&] { return thermal_noise(eta, nbar); });
        break;
      }
      case ChannelKind::Custom: {
        const Matrix x = square_matrix(j, "X", n);
        const Matrix y = square_matrix(j, "Y", x.rows() / 2);
        spec.channel = construct("Y", [&] { return make_channel(x, y); });
        break;
      }
      case ChannelKind::Tensor: {
        const Json* comps = find(j, "components");
        if (!comps || !comps->is_array() || comps->empty()) {
          throw SpecError("components", "expected a nonempty array of channel specs");
        }
        std::vector<Vector> omegas;
        for (std::size_t i = 0; i < comps->size(); ++i) {
          ChannelSpec part = parse_spec((*comps)[i], at("components[" + std::to_string(i) + "]"));
          spec.factors.push_back(part.channel);
          omegas.push_back(part.omega);
        }
        spec.channel = tensor(spec.factors);
        Index total = 0;
        for (const auto& o : omegas) total += o.size();
        spec.omega.resize(total);
        total = 0;
        for (const auto& o : omegas) {
          spec.omega.segment(total, o.size()) = o;
          total += o.size();
        }
        if (n >= 0 && spec.channel.modes() != n) {
          throw SpecError("n_modes", "components cover " + std::to_string(spec.channel.modes()) +
                                         " modes");
        }
        break;
      }
    }
  } catch (const SpecError& e) {
    // Fields of nested components already carry their full path.
    if (path.empty() || e.field().rfind(path, 0) == 0) throw;
    throw SpecError(at(e.field()), e.reason());
  }

  const Index modes = spec.channel.modes();
  if (n >= 0 && modes != n) {
    throw SpecError(at("n_modes"), "does not match the channel size (" + std::to_string(modes) + ")");
  }
  if (const Json* oj = find(j, "omega")) {
    spec.omega = vector_from_json(*oj, at("omega"));
  } else if (spec.omega.size() == 0) {
    spec.omega = Vector::Ones(modes);
  }
  if (spec.omega.size() != modes) {
    throw SpecError(at("omega"), "expected " + std::to_string(modes) + " entries");
  }
  for (Index k = 0; k < modes; ++k) {
    if (!(spec.omega(k) > 0.0)) throw SpecError(at("omega"), "frequencies must be positive");
  }
  return spec;
}

}  // namespace

ChannelSpec parse_channel_spec(const Json& j) { return parse_spec(j, ""); }

ChannelSpec load_channel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("channel", "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SpecError("channel", std::string("malformed JSON: ") + e.what());
  }
  return parse_channel_spec(j);
}

Json channel_to_json(const GaussianChannel& channel, const Vector& omega) {
  Json j;
  j["n_modes"] = channel.modes();
  j["kind"] = to_string(channel.kind());
  if (channel.kind() == ChannelKind::Thermal || channel.kind() == ChannelKind::Lossy) {
    j["eta"] = to_json(channel.eta());
    j["nbar"] = to_json(channel.nbar());
  }
  j["X"] = to_json(channel.x());
  j["Y"] = to_json(channel.y());
  j["omega"] = to_json(omega);
  if (!channel.components().empty()) {
    Json comps = Json::array();
    Index at = 0;
    for (const auto& c : channel.components()) {
      comps.push_back(channel_to_json(c, omega.segment(at, c.modes())));
      at += c.modes();
    }
    j["components"] = std::move(comps);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const OptimizationReport& r) {
  Json j;
  j["operation"] = r.operation;
  j["feasible"] = r.feasible;
  j["best_value"] = number(r.best_value);
  j["closed_form"] = r.closed_form ? number(*r.closed_form) : Json(nullptr);
  j["gap_to_closed_form"] = r.gap_to_closed_form ? number(*r.gap_to_closed_form) : Json(nullptr);
  j["evaluations"] = r.evaluations;
  j["budget"] = r.budget;
  j["runs"] = r.runs;
  j["converged"] = r.converged;
  j["seed"] = r.seed;
  if (r.argument.size() > 0) j["argument"] = to_json(r.argument);
  return j;
}

Json to_json(const CapacityReport& r) {
  Json j;
  j["capacity"] = number(r.capacity);
  j["feasible"] = r.feasible;
  if (!r.feasible) {
    j["flag"] = "infeasible";
    return j;
  }
  j["sup_output_entropy"] = number(r.sup_output_entropy);
  j["min_output_entropy"] = number(r.min_output_entropy);
  j["min_entropy_closed_form"] = r.min_entropy_closed_form;
  j["modulation_min_eigenvalue"] = number(r.modulation_min_eigenvalue);
  j["modulation"] = to_json(r.modulation);
  j["sup_search"] = to_json(r.sup_search);
  if (r.min_search) j["min_search"] = to_json(*r.min_search);
  return j;
}

Json to_json(const MultiplicativityReport& r) {
  Json j;
  j["p"] = r.p;
  j["per_channel"] = to_json(Vector(Eigen::Map<const Vector>(r.per_channel.data(),
                                                            static_cast<Index>(r.per_channel.size()))));
  j["product"] = number(r.product);
  j["numeric_best"] = number(r.numeric_best);
  j["separable_value"] = number(r.separable_value);
  j["gap"] = number(r.gap);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["search"] = to_json(r.search);
  return j;
}

Json to_json(const AdditivityReport& r) {
  auto vec = [](const std::vector<double>& v) {
    return to_json(Vector(Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()))));
  };
  Json j;
  j["joint_capacity"] = number(r.joint_capacity);
  j["best_split_sum"] = number(r.best_split_sum);
  j["best_split"] = vec(r.best_split);
  j["grid_best_sum"] = number(r.grid_best_sum);
  j["grid_split"] = vec(r.grid_split);
  j["grid_points"] = r.grid_points;
  j["gap"] = number(r.gap);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const TrialReport& r) {
  Json j;
  j["check"] = r.check;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["worst_margin"] = number(r.worst_margin);
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  Json params = Json::object();
  std::map<std::string, int> repeats;
  for (const auto& [name, value] : r.parameters) {
    const int seen = repeats[name]++;
    params[seen == 0 ? name : name + "_" + std::to_string(seen + 1)] = number(value);
  }
  j["parameters"] = std::move(params);
  if (r.witness_gap) {
    j["witness_gap"] = number(*r.witness_gap);
    j["witness_pass"] = r.witness_pass;
    j["near_attainers"] = r.near_attainers;
  }
  j["pass"] = r.pass();
  if (r.counterexample) {
    const Counterexample& c = *r.counterexample;
    Json cj;
    cj["trial"] = c.trial;
    cj["margin"] = number(c.margin);
    for (const auto& [name, m] : c.matrices) cj[name] = to_json(m);
    if (c.lhs.size() > 0) cj["lhs"] = to_json(c.lhs);
    if (c.rhs.size() > 0) cj["rhs"] = to_json(c.rhs);
    j["counterexample"] = std::move(cj);
  }
  return j;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& cells) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), cells);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "_" + std::to_string(i + 1), cells);
    }
  } else if (j.is_string()) {
    cells.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    cells.emplace_back(prefix, "");
  } else {
    cells.emplace_back(prefix, j.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const std::vector<Json>& records) {
  std::vector<std::string> columns;
  std::map<std::string, std::size_t> index;
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& rec : records) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(rec, "", cells);
    std::map<std::string, std::string> row;
    for (auto& [key, value] : cells) {
      if (index.emplace(key, columns.size()).second) columns.push_back(key);
      row[key] = std::move(value);
    }
    rows.push_back(std::move(row));
  }
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_escape(columns[c]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) os << ',';
      auto it = row.find(columns[c]);
      if (it != row.end()) os << csv_escape(it->second);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gchan::io
