#pragma once

// JSON records for matrices, states, channel specs and reports, plus CSV
// flattening. Numbers are written in shortest round-trip form and never
// depend on the locale.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gchan/functionals.hpp"
#include "gchan/majorization.hpp"

namespace gchan::io {

using Json = nlohmann::ordered_json;

/// Input validation failure tied to a field of a spec file.
class SpecError : public std::invalid_argument {
 public:
  SpecError(std::string field, std::string reason)
      : std::invalid_argument("field '" + field + "': " + reason),
        field_(std::move(field)),
        reason_(std::move(reason)) {}
  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

Json to_json(const Matrix& m);  // array of rows
Json to_json(const Vector& v);
Matrix matrix_from_json(const Json& j, const std::string& field);
Vector vector_from_json(const Json& j, const std::string& field);

/// {n, omega, gamma, m}
Json state_to_json(const GaussianState& state);
GaussianState state_from_json(const Json& j);

/// A parsed channel spec: the channel, its mode frequencies and, for
/// tensor specs, the factors in order.
struct ChannelSpec {
  GaussianChannel channel = identity_channel(1);
  Vector omega;
  std::vector<GaussianChannel> factors;
  Json source;
};

/// {n_modes, kind, eta[], nbar[], X, Y, omega[], components[]}. X and Y
/// are row-major arrays of rows. omega defaults to all ones. Errors are
/// SpecError naming the offending field.
ChannelSpec parse_channel_spec(const Json& j);
ChannelSpec load_channel_spec(const std::string& path);
Json channel_to_json(const GaussianChannel& channel, const Vector& omega);

Json to_json(const OptimizationReport& r);
Json to_json(const CapacityReport& r);
Json to_json(const MultiplicativityReport& r);
Json to_json(const AdditivityReport& r);
Json to_json(const TrialReport& r);

/// One CSV row per record. Nested objects become dotted columns, numeric
/// arrays indexed columns (eta_1, eta_2, ...) and matrices name_i_j.
/// Columns appear in first-seen order; missing cells are left empty.
std::string to_csv(const std::vector<Json>& records);

}  // namespace gchan::io
