#include "gchan/io.hpp"

#include <gtest/gtest.h>

#include <clocale>
#include <cmath>
#include <fstream>

using namespace gchan;
using io::Json;

namespace {

io::SpecError spec_error(const Json& j) {
  try {
    io::parse_channel_spec(j);
  } catch (const io::SpecError& e) {
    return e;
  }
  ADD_FAILURE() << "spec accepted: " << j.dump();
  return io::SpecError("", "");
}

}  // namespace

TEST(io, matrix_round_trip_full_precision) {
  Matrix m(2, 3);
  m << 1.0 / 3.0, -2.5e-300, 7.0, std::nextafter(1.0, 2.0), 0.1, -0.0;
  const Json j = io::to_json(m);
  const Matrix back = io::matrix_from_json(Json::parse(j.dump()), "m");
  EXPECT_EQ(back, m);
}

TEST(io, numbers_ignore_locale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  Vector v(1);
  v << 0.5;
  EXPECT_EQ(io::to_json(v).dump(), "[0.5]");
  std::setlocale(LC_NUMERIC, old);
}

TEST(io, state_round_trip) {
  Vector omega(2);
  omega << 1.0, 2.5;
  Vector m(4);
  m << 0.1, 0.2, -0.3, 0.4;
  const GaussianState s(random_covariance(2, {1.0, 3.0}, 5), m, omega);
  const GaussianState back = io::state_from_json(Json::parse(io::state_to_json(s).dump()));
  EXPECT_EQ(back.covariance(), s.covariance());
  EXPECT_EQ(back.displacement(), s.displacement());
  EXPECT_EQ(back.omega(), s.omega());
}

TEST(io, state_errors_name_fields) {
  try {
    io::state_from_json(Json::parse(R"({"gamma": [[0.5, 0], [0, 0.5]]})"));
    FAIL();
  } catch (const io::SpecError& e) {
    EXPECT_EQ(e.field(), "gamma");
  }
  try {
    io::state_from_json(Json::parse(R"({"gamma": [[1, 0], [0, 1]], "m": [1]})"));
    FAIL();
  } catch (const io::SpecError& e) {
    EXPECT_EQ(e.field(), "m");
  }
}

TEST(io, channel_specs_parse) {
  const auto th = io::parse_channel_spec(
      Json::parse(R"({"n_modes": 1, "kind": "thermal", "eta": [0.5], "nbar": [1], "omega": [2]})"));
  EXPECT_EQ(th.channel.kind(), ChannelKind::Thermal);
  EXPECT_EQ(th.omega(0), 2.0);

  const auto cl = io::parse_channel_spec(Json::parse(R"({"kind": "classical", "Y": [[2, 0], [0, 2]]})"));
  EXPECT_EQ(cl.channel.kind(), ChannelKind::Classical);
  EXPECT_EQ(cl.omega, Vector::Ones(1));

  const auto lossy = io::parse_channel_spec(Json::parse(R"({"kind": "lossy", "eta": [0.3, 0.9]})"));
  EXPECT_EQ(lossy.channel.kind(), ChannelKind::Lossy);
  EXPECT_EQ(lossy.channel.modes(), 2);

  const auto custom = io::parse_channel_spec(
      Json::parse(R"({"kind": "custom", "X": [[0.5, 0], [0, 0.5]], "Y": [[1, 0], [0, 1]]})"));
  EXPECT_EQ(custom.channel.kind(), ChannelKind::Custom);

  const auto t = io::parse_channel_spec(Json::parse(R"({"kind": "tensor", "components": [
      {"kind": "classical", "Y": [[1, 0], [0, 1]], "omega": [3]},
      {"kind": "thermal", "eta": [0.5], "nbar": [1]}]})"));
  EXPECT_EQ(t.channel.kind(), ChannelKind::Tensor);
  EXPECT_EQ(t.factors.size(), 2u);
  EXPECT_EQ(t.omega(0), 3.0);
  EXPECT_EQ(t.omega(1), 1.0);
}

TEST(io, channel_spec_errors_name_fields) {
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "classical", "Y": [[2, 1], [0, 2]]})")).field(), "Y");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "warp"})")).field(), "kind");
  EXPECT_EQ(spec_error(Json::parse(R"({"Y": [[1, 0], [0, 1]]})")).field(), "kind");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "thermal", "eta": [1.5], "nbar": [0]})")).field(), "eta");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "thermal", "eta": [0.5]})")).field(), "nbar");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "thermal", "eta": [0.5], "nbar": [-1]})")).field(), "nbar");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "lossy", "eta": [0.5], "n_modes": 2})")).field(), "eta");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "lossy", "eta": [0.5], "omega": [0]})")).field(), "omega");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "classical", "Y": [[1, 0], [0, "a"]]})")).field(), "Y[1][1]");
  EXPECT_EQ(spec_error(Json::parse(
                R"({"kind": "custom", "X": [[1.4142, 0], [0, 1.4142]], "Y": [[0, 0], [0, 0]]})"))
                .field(),
            "Y");
  EXPECT_EQ(spec_error(Json::parse(R"({"kind": "tensor", "components": [
      {"kind": "lossy", "eta": [0.5]}, {"kind": "lossy", "eta": [2]}]})")).field(),
            "components[1].eta");
}

TEST(io, channel_to_json_round_trip) {
  const auto ch = tensor({classical_noise(Matrix::Identity(2, 2)), lossy(Vector::Constant(1, 0.4))});
  const Vector omega = Vector::Constant(2, 1.5);
  const auto back = io::parse_channel_spec(io::channel_to_json(ch, omega));
  EXPECT_EQ(back.channel.x(), ch.x());
  EXPECT_EQ(back.channel.y(), ch.y());
  EXPECT_EQ(back.omega, omega);
}

TEST(io, load_errors) {
  EXPECT_THROW(io::load_channel_spec("/nonexistent/spec.json"), io::SpecError);
  const std::string path = ::testing::TempDir() + "bad_spec.json";
  std::ofstream(path) << "{not json";
  EXPECT_THROW(io::load_channel_spec(path), io::SpecError);
}

TEST(io, trial_report_serialization) {
  TrialOptions neg;
  neg.negate = true;
  const auto r = theorem1_trial(1, {1.0, 2.0}, 3, 7, neg);
  const Json j = io::to_json(r);
  EXPECT_EQ(j["failures"], 3);
  EXPECT_EQ(j["pass"], false);
  EXPECT_TRUE(j["counterexample"].contains("A"));
  EXPECT_EQ(j["seed"], 7);
}

TEST(io, csv_flattening) {
  Json a;
  a["name"] = "x";
  a["eta"] = {0.5, 0.25};
  a["nested"]["value"] = 1;
  a["M"] = Json::parse("[[1, 2], [3, 4]]");
  Json b;
  b["name"] = "y,z";
  b["extra"] = true;
  const std::string csv = io::to_csv({a, b});
  EXPECT_EQ(csv,
            "name,eta_1,eta_2,nested.value,M_1_1,M_1_2,M_2_1,M_2_2,extra\n"
            "x,0.5,0.25,1,1,2,3,4,\n"
            "\"y,z\",,,,,,,,true\n");
}
