#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sftbound/bounds.hpp"
#include "sftbound/cli.hpp"
#include "sftbound/error.hpp"
#include "sftbound/holes.hpp"
#include "sftbound/measures.hpp"
#include "sftbound/models.hpp"
#include "sftbound/sft.hpp"
#include "sftbound/spectral.hpp"
#include "sftbound/transfer.hpp"

namespace py = pybind11;
using namespace sftb;

namespace {

LocallyConstantFunction make_function(const TransitionMatrix& a, int depth,
                                      const Eigen::VectorXd& values) {
  return LocallyConstantFunction(WordSpace::make(a, depth), values);
}

py::dict decay_dict(const DecayEstimate& d) {
  py::dict out;
  out["C"] = d.C;
  out["rho"] = d.rho;
  out["depth"] = d.depth;
  out["source"] = d.source == DecaySource::spectral ? "spectral" : "fitted";
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subshifts of finite type: Perron data, entropy gaps, transfer operators, holes";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  py::class_<TransitionMatrix>(m, "TransitionMatrix")
      .def(py::init(&TransitionMatrix::from_rows), py::arg("rows"))
      .def_static("full_shift", &TransitionMatrix::full_shift, py::arg("s"))
      .def_property_readonly("size", &TransitionMatrix::size)
      .def_property_readonly("irreducible", &TransitionMatrix::irreducible)
      .def_property_readonly("primitive", &TransitionMatrix::primitive)
      .def_property_readonly("diagonal_ones", &TransitionMatrix::diagonal_ones)
      .def("allowed", &TransitionMatrix::allowed)
      .def("rows", &TransitionMatrix::rows)
      .def("dense", &TransitionMatrix::dense)
      .def("__eq__", [](const TransitionMatrix& a, const TransitionMatrix& b) { return a == b; })
      .def("__repr__", [](const TransitionMatrix& a) {
        return "TransitionMatrix(size=" + std::to_string(a.size()) + ")";
      });

  m.def("enumerate_words", &enumerate_words, py::arg("a"), py::arg("k"),
        py::arg("ceiling") = kDefaultWordCeiling);
  m.def("count_words", &count_words, py::arg("a"), py::arg("k"));

  py::class_<PerronData>(m, "PerronData")
      .def_readonly("lam", &PerronData::lambda)
      .def_readonly("u", &PerronData::u)
      .def_readonly("v", &PerronData::v);
  m.def("perron_eigendata", [](const TransitionMatrix& a) { return perron_eigendata(a); },
        py::arg("a"));
  m.def("subdominant_modulus", &subdominant_modulus, py::arg("m"));

  py::class_<MarkovMeasure>(m, "MarkovMeasure")
      .def(py::init(&MarkovMeasure::create), py::arg("stationary"), py::arg("transition"),
           py::arg("a"))
      .def_property_readonly("stationary", &MarkovMeasure::stationary)
      .def_property_readonly("transition", &MarkovMeasure::transition)
      .def_property_readonly("size", &MarkovMeasure::size);
  m.def("parry_measure", &parry_from, py::arg("a"), py::arg("eig"));
  m.def("markov_from_transition", &markov_from_transition, py::arg("a"), py::arg("q"));
  m.def("sample_markov", &sample_markov, py::arg("a"), py::arg("seed"),
        py::arg("concentration") = 1.0);
  m.def("entropy", &entropy, py::arg("mu"));
  m.def("information_mean", &information_mean, py::arg("mu"), py::arg("eig"));
  m.def("cylinder_measure",
        [](const MarkovMeasure& mu, const Word& w) { return cylinder_measure(mu, w); },
        py::arg("mu"), py::arg("word"));

  m.def("phi_divergence", &phi_divergence, py::arg("p"), py::arg("q"));
  m.def(
      "pinsker_verify",
      [](const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
        const PinskerResult r = pinsker_verify(p, q);
        return py::dict(py::arg("l1") = r.l1, py::arg("bound") = r.bound,
                        py::arg("holds") = r.holds);
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "gap_identity_check",
      [](const MarkovMeasure& mu, const PerronData& eig) {
        const GapIdentity g = gap_identity_check(mu, eig);
        return py::dict(py::arg("lhs") = g.lhs, py::arg("rhs") = g.rhs,
                        py::arg("discrepancy") = g.discrepancy);
      },
      py::arg("mu"), py::arg("eig"));

  m.def(
      "decay_estimate",
      [](const TransitionMatrix& a, const PerronData& eig, int depth, const std::string& mode,
         std::uint64_t seed) {
        if (mode != "spectral" && mode != "fitted") {
          throw InputError("mode must be 'spectral' or 'fitted'");
        }
        return decay_dict(decay_estimate(
            a, eig, depth, mode == "spectral" ? DecaySource::spectral : DecaySource::fitted, seed));
      },
      py::arg("a"), py::arg("eig"), py::arg("depth") = 1, py::arg("mode") = "spectral",
      py::arg("seed") = 0);
  m.def(
      "transfer_apply",
      [](const TransitionMatrix& a, const PerronData& eig, int depth,
         const Eigen::VectorXd& values) {
        const auto g = transfer_apply(make_function(a, depth, values), eig);
        return py::make_tuple(g.depth(), g.values());
      },
      py::arg("a"), py::arg("eig"), py::arg("depth"), py::arg("values"),
      "Apply the transfer operator to a depth-d function given by its values on the "
      "lexicographically ordered admissible d-words; returns (new_depth, values).");

  m.def(
      "effective_bound_verify",
      [](const TransitionMatrix& a, const MarkovMeasure& mu, int depth,
         const Eigen::VectorXd& values, double theta, double slack) {
        const PerronData eig = perron_eigendata(a);
        const MetricParams metric = MetricParams::with_theta(theta);
        const auto f = make_function(a, depth, values);
        const DecayEstimate decay = decay_estimate(a, eig, depth, DecaySource::spectral);
        const BoundReport r = effective_bound_verify(f, mu, eig, decay, metric, slack);
        py::dict out;
        out["lhs"] = r.lhs;
        out["seminorm"] = r.seminorm;
        out["gap"] = r.gap;
        out["c_hat"] = r.c_hat;
        out["bound"] = r.bound;
        out["ratio"] = r.ratio ? py::cast(*r.ratio) : py::none();
        out["holds"] = r.holds;
        return out;
      },
      py::arg("a"), py::arg("mu"), py::arg("depth"), py::arg("values"), py::arg("theta") = 2.0,
      py::arg("slack") = 1e-9);
  m.def(
      "ratio_scan",
      [](const TransitionMatrix& a, int samples, std::uint64_t seed, int depth) {
        ScanOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        opts.depth = depth;
        const ScanSummary s = ratio_scan(a, opts);
        py::dict out;
        out["max_ratio"] = s.max_ratio ? py::cast(*s.max_ratio) : py::none();
        out["slope"] = s.slope ? py::cast(*s.slope) : py::none();
        out["c_hat"] = s.c_hat;
        out["decay"] = decay_dict(s.decay);
        out["all_hold"] = s.all_hold;
        out["violations"] = s.violations;
        return out;
      },
      py::arg("a"), py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("depth") = 2);

  py::class_<PrunedSystem>(m, "PrunedSystem")
      .def_readonly("block_length", &PrunedSystem::block_length)
      .def_readonly("states", &PrunedSystem::states)
      .def_readonly("survivor_lambda", &PrunedSystem::survivor_lambda)
      .def_readonly("empty_survivor", &PrunedSystem::empty_survivor);
  m.def("higher_block_prune", &higher_block_prune, py::arg("a"), py::arg("word"));
  m.def("prune_words", &prune_words, py::arg("a"), py::arg("forbidden"),
        py::arg("min_block_length") = 1);
  m.def("survivor_entropy", &survivor_entropy, py::arg("pruned"));
  m.def("dim_upper_bound", &dim_upper_bound, py::arg("h"), py::arg("log_lambda"),
        py::arg("dim_m"), py::arg("log_theta"));

  py::class_<ExpandingModel>(m, "ExpandingModel")
      .def_static("preset", &ExpandingModel::preset, py::arg("name"))
      .def_property_readonly("transition", &ExpandingModel::transition)
      .def_property_readonly("theta0", &ExpandingModel::theta0)
      .def_property_readonly("Theta", &ExpandingModel::Theta)
      .def_property_readonly("branch_count", &ExpandingModel::branch_count);
  m.def(
      "exceptional_dimension_bound",
      [](const ExpandingModel& model, double x0, double delta) {
        const DimensionReport r = exceptional_dimension_bound(model, x0, delta);
        py::dict out;
        out["depth"] = r.cover.depth;
        out["inner"] = r.cover.inner;
        out["outer"] = r.cover.outer;
        out["survivor_lambda"] = r.survivor_lambda;
        out["dim_bound"] = r.dim_bound;
        out["trivial"] = r.trivial;
        out["fitted_c"] = r.fitted_c;
        return out;
      },
      py::arg("model"), py::arg("x0"), py::arg("delta"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        // Thin wrapper over the CLI dispatcher: ("verify", "--matrix", path, ...).
        if (args.empty()) throw InputError("missing command");
        cli::RunConfig cfg;
        const auto cmd = cli::parse_command(args[0]);
        if (!cmd) throw InputError("unknown command '" + args[0] + "'");
        cfg.command = *cmd;
        for (std::size_t i = 1; i + 1 < args.size(); i += 2) {
          const std::string& k = args[i];
          const std::string& v = args[i + 1];
          if (k == "--matrix") cfg.matrix_path = v;
          else if (k == "--model") cfg.model_path = v;
          else if (k == "--measure") cfg.measure_path = v;
          else if (k == "--function") cfg.function_path = v;
          else if (k == "--word") cfg.word = v;
          else if (k == "--theta") cfg.theta = std::stod(v);
          else if (k == "--depth") cfg.depth = std::stoi(v);
          else if (k == "--samples") cfg.samples = std::stoi(v);
          else if (k == "--seed") cfg.seed = std::stoull(v);
          else if (k == "--tol") cfg.tolerance = std::stod(v);
          else if (k == "--out") cfg.output_path = v;
          else if (k == "--max-hole-depth") cfg.max_hole_depth = std::stoi(v);
          else if (k == "--x0") cfg.x0 = std::stod(v);
          else if (k == "--delta") cfg.delta = std::stod(v);
          else throw InputError("unknown flag '" + k + "'");
        }
        if (args.size() % 2 == 0) throw InputError("flag '" + args.back() + "' has no value");
        std::ostringstream out, err;
        const int code = cli::execute(cfg, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
