#include "sftbound/io.hpp"

#include <fstream>
#include <map>

#include "sftbound/error.hpp"

namespace sftb::io {

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "' has the wrong type: " + e.what());
  }
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

TransitionMatrix matrix_from_json(const json& j) {
  const auto rows = get_field<std::vector<std::vector<int>>>(j, "rows");
  if (j.contains("size")) {
    const int s = get_field<int>(j, "size");
    if (s != static_cast<int>(rows.size())) {
      throw InvalidMatrixError("'size' is " + std::to_string(s) + " but 'rows' has " +
                               std::to_string(rows.size()) + " rows");
    }
  }
  return TransitionMatrix::from_rows(rows);
}

json matrix_to_json(const TransitionMatrix& a) {
  return json{{"size", a.size()}, {"rows", a.rows()}};
}

TransitionMatrix load_matrix(const std::filesystem::path& path) {
  return matrix_from_json(read_json(path));
}

MarkovMeasure measure_from_json(const json& j, const TransitionMatrix& a) {
  const auto r = get_field<std::vector<double>>(j, "stationary");
  const auto q = get_field<std::vector<std::vector<double>>>(j, "transition");
  const int s = a.size();
  if (static_cast<int>(r.size()) != s || static_cast<int>(q.size()) != s) {
    throw InputError("measure dimensions do not match the matrix of size " + std::to_string(s));
  }
  Eigen::VectorXd rv(s);
  Eigen::MatrixXd qm(s, s);
  for (int i = 0; i < s; ++i) {
    rv(i) = r[i];
    if (static_cast<int>(q[i].size()) != s) throw InputError("transition matrix is not square");
    for (int k = 0; k < s; ++k) qm(i, k) = q[i][k];
  }
  return MarkovMeasure::create(std::move(rv), std::move(qm), a);
}

json vector_to_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json matrix_values_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Eigen::VectorXd row = m.row(i).transpose();
    rows.push_back(vector_to_json(row));
  }
  return rows;
}

json measure_to_json(const MarkovMeasure& mu) {
  return json{{"stationary", vector_to_json(mu.stationary())},
              {"transition", matrix_values_to_json(mu.transition())}};
}

LocallyConstantFunction function_from_json(const json& j, const TransitionMatrix& a) {
  const int depth = get_field<int>(j, "depth");
  if (depth < 1) throw InputError("function depth must be >= 1");
  const auto values = get_field<std::map<std::string, double>>(j, "values");
  auto space = WordSpace::make(a, depth);
  Eigen::VectorXd v(static_cast<Eigen::Index>(space->size()));
  for (std::size_t i = 0; i < space->size(); ++i) {
    const std::string key = render_word(space->word(i), a.size());
    auto it = values.find(key);
    if (it == values.end()) throw InputError("function file is missing word '" + key + "'");
    v(static_cast<Eigen::Index>(i)) = it->second;
  }
  if (values.size() != space->size()) {
    for (const auto& [key, _] : values) {
      const Word w = parse_word(key, a.size());
      if (static_cast<int>(w.size()) != depth || !space->find(w)) {
        throw InputError("function file has '" + key + "', not an admissible word of depth " +
                         std::to_string(depth));
      }
    }
  }
  return {std::move(space), std::move(v)};
}

json function_to_json(const LocallyConstantFunction& f) {
  json values = json::object();
  const int s = f.space().matrix().size();
  for (std::size_t i = 0; i < f.space().size(); ++i) {
    values[render_word(f.space().word(i), s)] = f.values()(static_cast<Eigen::Index>(i));
  }
  return json{{"depth", f.depth()}, {"values", values}};
}

ExpandingModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("branches") || !j["branches"].is_array()) {
    throw InputError("model file needs a 'branches' array");
  }
  std::vector<AffineBranch> branches;
  for (const json& b : j["branches"]) {
    const auto domain = get_field<std::vector<double>>(b, "domain");
    if (domain.size() != 2) throw InputError("branch 'domain' must be [a, b]");
    branches.push_back({domain[0], domain[1], get_field<double>(b, "slope"),
                        b.contains("intercept") ? get_field<double>(b, "intercept") : 0.0});
  }
  const bool circle = j.contains("circle") ? get_field<bool>(j, "circle") : false;
  return ExpandingModel::build(std::move(branches), circle);
}

json model_to_json(const ExpandingModel& model) {
  json branches = json::array();
  for (const auto& b : model.branches()) {
    branches.push_back(
        {{"domain", {b.lo, b.hi}}, {"slope", b.slope}, {"intercept", b.intercept}});
  }
  return json{{"branches", branches}, {"circle", model.circle()}};
}

ExpandingModel load_model(const std::string& name_or_path) {
  if (name_or_path == "doubling" || name_or_path == "triadic" || name_or_path == "golden") {
    return ExpandingModel::preset(name_or_path);
  }
  return model_from_json(read_json(name_or_path));
}

}  // namespace sftb::io
