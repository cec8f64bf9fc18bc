#pragma once

// JSON file formats for matrices, measures, functions and models.
//
//   matrix:   {"size": s, "rows": [[0,1,...], ...]}
//   measure:  {"stationary": [...], "transition": [[...], ...]}
//   function: {"depth": d, "values": {"<word>": x, ...}}  (every admissible word)
//   model:    {"branches": [{"domain": [a,b], "slope": s, "intercept": c}, ...],
//              "circle": false}

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sftbound/measures.hpp"
#include "sftbound/models.hpp"
#include "sftbound/sft.hpp"

namespace sftb::io {

using json = nlohmann::json;

json read_json(const std::filesystem::path& path);

TransitionMatrix matrix_from_json(const json& j);
json matrix_to_json(const TransitionMatrix& a);
TransitionMatrix load_matrix(const std::filesystem::path& path);

MarkovMeasure measure_from_json(const json& j, const TransitionMatrix& a);
json measure_to_json(const MarkovMeasure& mu);

LocallyConstantFunction function_from_json(const json& j, const TransitionMatrix& a);
json function_to_json(const LocallyConstantFunction& f);

ExpandingModel model_from_json(const json& j);
json model_to_json(const ExpandingModel& model);
/// A preset name ("doubling", "triadic", "golden") or a path to a model file.
ExpandingModel load_model(const std::string& name_or_path);

json vector_to_json(const Eigen::VectorXd& v);
json matrix_values_to_json(const Eigen::MatrixXd& m);

}  // namespace sftb::io
