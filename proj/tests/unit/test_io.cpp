#include <cmath>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "sftbound/error.hpp"
#include "sftbound/io.hpp"
#include "sftbound/spectral.hpp"

using namespace sftb;
using io::json;

namespace {
std::string data(const char* name) { return std::string(SFTBOUND_TEST_DATA) + "/" + name; }
}  // namespace

TEST_CASE("matrix files") {
  CHECK(io::load_matrix(data("golden.json")) == oracle::golden());
  const auto j = io::matrix_to_json(oracle::golden());
  CHECK(io::matrix_from_json(j) == oracle::golden());
  CHECK(j["size"] == 2);
  CHECK_THROWS_AS(io::load_matrix(data("malformed.json")), InputError);
  CHECK_THROWS_AS(io::load_matrix(data("nonbinary.json")), InvalidMatrixError);
  CHECK_THROWS_AS(io::load_matrix(data("nope.json")), InputError);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"size", 3}, {"rows", {{1, 1}, {1, 1}}}}),
                  InvalidMatrixError);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"size", 2}}), InputError);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"rows", "oops"}}), InputError);
}

TEST_CASE("measure files") {
  const auto a = TransitionMatrix::full_shift(2);
  const auto mu = io::measure_from_json(io::read_json(data("full2_markov.json")), a);
  CHECK(mu.transition()(0, 0) == doctest::Approx(0.9));
  const auto back = io::measure_from_json(io::measure_to_json(mu), a);
  CHECK(back.transition() == mu.transition());
  CHECK(back.stationary() == mu.stationary());
  CHECK_THROWS_AS(io::measure_from_json(io::read_json(data("full2_markov.json")),
                                        TransitionMatrix::full_shift(3)),
                  InputError);
}

TEST_CASE("function files require every admissible word") {
  const auto a = TransitionMatrix::full_shift(2);
  const auto f = io::function_from_json(io::read_json(data("indicator0.json")), a);
  CHECK(f.depth() == 1);
  CHECK(f(Word{0}) == 1.0);
  CHECK(f(Word{1}) == 0.0);
  const auto back = io::function_from_json(io::function_to_json(f), a);
  CHECK(back.values() == f.values());

  CHECK_THROWS_AS(io::function_from_json(json{{"depth", 2}, {"values", {{"00", 1.0}}}}, a),
                  InputError);
  const json extra = {{"depth", 2}, {"values", {{"00", 0.0}, {"01", 0.0}, {"10", 1.0}, {"11", 2.0}}}};
  CHECK_THROWS_AS(io::function_from_json(extra, oracle::golden()), InputError);
}

TEST_CASE("model files") {
  const auto m = io::load_model(data("doubling_model.json"));
  CHECK(m.transition() == TransitionMatrix::full_shift(2));
  CHECK_FALSE(m.circle());
  const auto preset = io::load_model("golden");
  const auto back = io::model_from_json(io::model_to_json(preset));
  CHECK(back.transition() == preset.transition());
  CHECK(back.theta0() == preset.theta0());
  CHECK_THROWS_AS(io::load_model(data("non_markov_model.json")), InputError);
  CHECK_THROWS_AS(io::model_from_json(json{{"branches", 3}}), InputError);
}
