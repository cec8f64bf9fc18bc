#include "sftbound/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <random>
#include <vector>

#include "sftbound/bounds.hpp"
#include "sftbound/error.hpp"
#include "sftbound/holes.hpp"
#include "sftbound/io.hpp"
#include "sftbound/measures.hpp"
#include "sftbound/models.hpp"
#include "sftbound/spectral.hpp"
#include "sftbound/transfer.hpp"

namespace sftb::cli {

namespace {

using io::json;

// Exact identities are checked at this level regardless of --tol.
constexpr double kIdentityTol = 1e-12;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  json report;
  Table table;
  bool passed = true;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : ""; }

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json finite_or_string(double x) { return std::isfinite(x) ? json(x) : json(num(x)); }

TransitionMatrix require_matrix(const RunConfig& cfg) {
  if (cfg.matrix_path.empty()) throw InputError("this command needs --matrix");
  return io::load_matrix(cfg.matrix_path);
}

void check_common(const RunConfig& cfg) {
  if (!(cfg.theta > 1.0)) throw InputError("--theta must be > 1");
  if (cfg.samples < 1) throw InputError("--samples must be >= 1");
  if (cfg.depth < 1) throw InputError("--depth must be >= 1");
  if (!(cfg.tolerance >= 0.0)) throw InputError("--tol must be >= 0");
}

Eigen::VectorXd dirichlet(std::mt19937_64& rng, int n, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = gamma(rng);
  if (!(x.sum() > 0.0)) x.setOnes();
  return x / x.sum();
}

Outcome run_analyze(const RunConfig& cfg) {
  const TransitionMatrix a = require_matrix(cfg);
  const StructureReport st = validate_structure(a);
  const PerronData eig = perron_eigendata(a);
  const MarkovMeasure parry = parry_from(a, eig);
  const double h = entropy(parry);

  double a_min = std::numeric_limits<double>::infinity();
  double b_max = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      a_min = std::min(a_min, eig.u(i) * eig.v(j));
      b_max = std::max(b_max, eig.u(i) * eig.v(j));
    }
  }
  Outcome o;
  o.report = {{"size", a.size()},
              {"irreducible", st.irreducible},
              {"primitive", st.primitive},
              {"diagonal_ones", st.diagonal_ones},
              {"lambda", eig.lambda},
              {"log_lambda", std::log(eig.lambda)},
              {"h_parry", h},
              {"u", io::vector_to_json(eig.u)},
              {"v", io::vector_to_json(eig.v)},
              {"parry", io::measure_to_json(parry)},
              {"cylinder_bound_a", a_min},
              {"cylinder_bound_b", b_max},
              {"perron_residual", perron_residual(a.dense(), eig)}};
  if (a.size() <= kEigensolverCeiling) {
    o.report["transfer_rho"] = subdominant_modulus(a.dense()) / eig.lambda;
  }
  o.passed = std::abs(h - std::log(eig.lambda)) <= std::max(cfg.tolerance, kIdentityTol);
  o.table.header = {"symbol", "u", "v", "stationary"};
  for (int i = 0; i < a.size(); ++i) {
    o.table.rows.push_back({std::to_string(i), num(eig.u(i)), num(eig.v(i)),
                            num(parry.stationary()(i))});
  }
  return o;
}

Outcome run_entropy(const RunConfig& cfg) {
  const TransitionMatrix a = require_matrix(cfg);
  const PerronData eig = perron_eigendata(a);
  const double log_lambda = std::log(eig.lambda);
  Outcome o;
  o.table.header = {"sample_id", "concentration", "entropy",      "gap",
                    "information_mean", "identity_discrepancy", "holds"};

  auto evaluate = [&](int id, double conc, const MarkovMeasure& mu) {
    const double h = entropy(mu);
    const double info = information_mean(mu, eig);
    const GapIdentity gi = gap_identity_check(mu, eig);
    const bool holds = h <= log_lambda + cfg.tolerance &&
                       std::abs(info - log_lambda) <= cfg.tolerance &&
                       gi.discrepancy <= cfg.tolerance;
    o.table.rows.push_back({std::to_string(id), num(conc), num(h), num(log_lambda - h), num(info),
                            num(gi.discrepancy), holds ? "true" : "false"});
    return std::make_tuple(h, std::abs(info - log_lambda), gi.discrepancy, holds);
  };

  if (!cfg.measure_path.empty()) {
    const MarkovMeasure mu = io::measure_from_json(io::read_json(cfg.measure_path), a);
    const auto [h, info_err, disc, holds] = evaluate(0, 0.0, mu);
    o.report = {{"log_lambda", log_lambda},       {"entropy", h},
                {"gap", log_lambda - h},         {"information_mean_error", info_err},
                {"identity_discrepancy", disc}, {"holds", holds}};
    o.passed = holds;
    return o;
  }

  std::mt19937_64 master(cfg.seed);
  constexpr double kConcentrations[] = {0.5, 1.0, 5.0, 50.0};
  double max_h = 0.0, max_info = 0.0, max_disc = 0.0;
  int violations = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const double conc = kConcentrations[i % 4];
    const MarkovMeasure mu = sample_markov(a, master(), conc);
    const auto [h, info_err, disc, holds] = evaluate(i, conc, mu);
    max_h = std::max(max_h, h);
    max_info = std::max(max_info, info_err);
    max_disc = std::max(max_disc, disc);
    if (!holds) ++violations;
  }
  o.report = {{"log_lambda", log_lambda},
              {"samples", cfg.samples},
              {"max_entropy", max_h},
              {"max_information_mean_error", max_info},
              {"max_identity_discrepancy", max_disc},
              {"violations", violations}};
  o.passed = violations == 0;
  return o;
}

Outcome run_pinsker(const RunConfig& cfg) {
  Outcome o;
  o.table.header = {"dimension", "sample_id", "l1", "bound", "holds"};
  std::mt19937_64 rng(cfg.seed);
  int violations = 0;
  double worst = 0.0;
  bool unique_zero = true;
  for (int s = 2; s <= 8; ++s) {
    for (int i = 0; i < cfg.samples; ++i) {
      const Eigen::VectorXd p = dirichlet(rng, s, 1.0);
      const Eigen::VectorXd q = dirichlet(rng, s, 0.3);
      const PinskerResult r = pinsker_verify(p, q);
      if (!r.holds) ++violations;
      if (r.bound > 0.0) worst = std::max(worst, r.l1 / r.bound);
      o.table.rows.push_back({std::to_string(s), std::to_string(i), num(r.l1), num(r.bound),
                              r.holds ? "true" : "false"});
      const PinskerResult self = pinsker_verify(p, p);
      unique_zero = unique_zero && self.l1 == 0.0 && self.bound <= 1e-8;
    }
  }
  o.report = {{"samples_per_dimension", cfg.samples},
              {"dimensions", {2, 3, 4, 5, 6, 7, 8}},
              {"violations", violations},
              {"max_l1_over_bound", worst},
              {"unique_zero", unique_zero}};
  o.passed = violations == 0 && unique_zero;
  return o;
}

Outcome run_transfer_decay(const RunConfig& cfg) {
  const TransitionMatrix a = require_matrix(cfg);
  const PerronData eig = perron_eigendata(a);
  const MarkovMeasure parry = parry_from(a, eig);
  const MetricParams metric = MetricParams::with_theta(cfg.theta);
  const DecayEstimate spectral = decay_estimate(a, eig, cfg.depth, DecaySource::spectral);
  const DecayEstimate fitted = decay_estimate(a, eig, cfg.depth, DecaySource::fitted, cfg.seed);

  const auto space = WordSpace::make(a, cfg.depth);
  const auto one = LocallyConstantFunction::constant(space, 1.0);
  const double one_error = (transfer_apply(one, eig).values().array() - 1.0).abs().maxCoeff();

  double preservation = 0.0, cond_exp = 0.0;
  bool decay_holds = true;
  std::vector<double> worst_sup(kDecayHorizon + 1, 0.0);
  for (const auto& g : cylinder_probes(a, eig, cfg.depth)) {
    preservation = std::max(
        preservation, std::abs(integrate(transfer_apply(g, eig), parry) - integrate(g, parry)));
    cond_exp = std::max(cond_exp, conditional_expectation_check(g, eig));
    const double semi = lip_seminorm(g, metric);
    LocallyConstantFunction gn = g;
    for (int n = 0; n <= kDecayHorizon; ++n) {
      const double sup = gn.sup_norm();
      worst_sup[n] = std::max(worst_sup[n], sup / semi);
      if (sup > spectral.C * std::pow(spectral.rho, n) * semi + cfg.tolerance) decay_holds = false;
      gn = transfer_apply(gn, eig);
    }
  }
  Outcome o;
  o.report = {{"depth", cfg.depth},
              {"theta", cfg.theta},
              {"spectral", {{"C", spectral.C}, {"rho", spectral.rho}}},
              {"fitted", {{"C", fitted.C}, {"rho", fitted.rho}}},
              {"c_hat", certified_constant(spectral)},
              {"one_preserved_error", one_error},
              {"integral_preservation_error", preservation},
              {"conditional_expectation_discrepancy", cond_exp},
              {"decay_holds", decay_holds}};
  o.passed = one_error <= kIdentityTol && preservation <= kIdentityTol &&
             cond_exp <= kIdentityTol && decay_holds;
  o.table.header = {"n", "max_sup_over_seminorm", "C_rho_n"};
  for (int n = 0; n <= kDecayHorizon; ++n) {
    o.table.rows.push_back(
        {std::to_string(n), num(worst_sup[n]), num(spectral.C * std::pow(spectral.rho, n))});
  }
  return o;
}

Outcome run_verify(const RunConfig& cfg) {
  const TransitionMatrix a = require_matrix(cfg);
  ScanOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.depth = cfg.depth;
  opts.metric = MetricParams::with_theta(cfg.theta);
  opts.slack = cfg.tolerance;
  if (!cfg.function_path.empty()) {
    opts.function = io::function_from_json(io::read_json(cfg.function_path), a);
  }
  const ScanSummary scan = ratio_scan(a, opts);
  Outcome o;
  o.report = {{"samples", cfg.samples},
              {"depth", scan.decay.depth},
              {"max_ratio", opt_json(scan.max_ratio)},
              {"argmax_sample", scan.argmax_sample ? json(*scan.argmax_sample) : json(nullptr)},
              {"slope", opt_json(scan.slope)},
              {"c_hat", scan.c_hat},
              {"C", scan.decay.C},
              {"rho", scan.decay.rho},
              {"violations", scan.violations}};
  o.passed = scan.all_hold;
  o.table.header = {"sample_id", "gap", "lhs", "seminorm", "ratio", "holds"};
  for (const auto& row : scan.rows) {
    o.table.rows.push_back({std::to_string(row.sample_id), num(row.report.gap),
                            num(row.report.lhs), num(row.report.seminorm),
                            opt_num(row.report.ratio), row.report.holds ? "true" : "false"});
  }
  return o;
}

Outcome run_hole(const RunConfig& cfg) {
  const TransitionMatrix a = require_matrix(cfg);
  const MetricParams metric = MetricParams::with_theta(cfg.theta);
  Outcome o;
  o.table.header = {"word",     "depth", "delta",     "hole_measure",
                    "survivor_lambda", "gap",   "per_hole_c"};
  if (!cfg.word.empty()) {
    const PerronData eig = perron_eigendata(a);
    const HoleSpec hole = HoleSpec::make(a, eig, parse_word(cfg.word, a.size()), metric);
    const PrunedSystem ps = higher_block_prune(a, hole.word);
    const double log_lambda = std::log(eig.lambda);
    const double h = survivor_entropy(ps);
    const double log_theta = std::log(cfg.theta);
    const double dim =
        ps.empty_survivor ? 0.0 : dim_upper_bound(h, log_lambda, log_lambda / log_theta, log_theta);
    const double gap = log_lambda - h;
    const double per_hole_c = gap / std::pow(hole.delta * hole.measure, 2);
    o.report = {{"word", cfg.word},
                {"depth", hole.depth},
                {"delta", hole.delta},
                {"hole_measure", hole.measure},
                {"block_states", ps.states.size()},
                {"survivor_lambda", ps.survivor_lambda},
                {"survivor_entropy", finite_or_string(h)},
                {"empty_survivor", ps.empty_survivor},
                {"gap", finite_or_string(gap)},
                {"dim", dim}};
    o.table.rows.push_back({cfg.word, std::to_string(hole.depth), num(hole.delta),
                            num(hole.measure), num(ps.survivor_lambda), num(gap),
                            num(per_hole_c)});
    o.passed = ps.survivor_lambda <= eig.lambda + 1e-10;
    return o;
  }
  const HoleFamilyReport fam = hole_family_scan(a, cfg.max_hole_depth, metric);
  for (const auto& row : fam.rows) {
    o.table.rows.push_back({render_word(row.hole.word, a.size()), std::to_string(row.hole.depth),
                            num(row.hole.delta), num(row.hole.measure), num(row.survivor_lambda),
                            num(row.gap), num(row.per_hole_c)});
  }
  o.report = {{"max_hole_depth", cfg.max_hole_depth},
              {"holes", fam.rows.size()},
              {"fitted_c", finite_or_string(fam.fitted_c)},
              {"argmin", fam.argmin ? json(render_word(*fam.argmin, a.size())) : json(nullptr)},
              {"monotone", fam.monotone},
              {"monotonicity_checks", fam.monotonicity_checks}};
  o.passed = fam.monotone && fam.fitted_c > 0.0;
  return o;
}

Outcome run_model_dim(const RunConfig& cfg) {
  if (cfg.model_path.empty()) throw InputError("model-dim needs --model");
  const ExpandingModel model = io::load_model(cfg.model_path);
  const DimensionReport r = exceptional_dimension_bound(model, cfg.x0, cfg.delta);
  const int s = model.branch_count();
  auto words = [s](const std::vector<Word>& ws) {
    json out = json::array();
    for (const Word& w : ws) out.push_back(render_word(w, s));
    return out;
  };
  Outcome o;
  o.report = {{"model", io::model_to_json(model)},
              {"transition", io::matrix_to_json(model.transition())},
              {"theta0", model.theta0()},
              {"Theta", model.Theta()},
              {"x0", cfg.x0},
              {"delta", cfg.delta},
              {"depth", r.cover.depth},
              {"inner", words(r.cover.inner)},
              {"outer", words(r.cover.outer)},
              {"inner_empty", r.cover.inner_empty},
              {"log_lambda", r.log_lambda},
              {"survivor_lambda", r.survivor_lambda},
              {"survivor_entropy", finite_or_string(r.survivor_entropy)},
              {"dim_bound", r.dim_bound},
              {"trivial", r.trivial},
              {"empty_survivor", r.empty_survivor},
              {"outer_measure", r.outer_measure},
              {"inner_measure", r.inner_measure},
              {"fitted_c", finite_or_string(r.fitted_c)},
              {"gap_shape_bound", r.gap_shape_bound}};
  o.table.header = {"word", "role", "lo", "hi"};
  for (const Word& w : r.cover.outer) {
    const auto ci = cylinder_interval(model, w);
    const bool inner =
        std::find(r.cover.inner.begin(), r.cover.inner.end(), w) != r.cover.inner.end();
    o.table.rows.push_back({render_word(w, s), inner ? "inner" : "outer", num(ci.interval.lo),
                            num(ci.interval.hi)});
  }
  return o;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "analyze") return Command::analyze;
  if (name == "entropy") return Command::entropy;
  if (name == "pinsker") return Command::pinsker;
  if (name == "transfer-decay") return Command::transfer_decay;
  if (name == "verify") return Command::verify;
  if (name == "hole") return Command::hole;
  if (name == "model-dim") return Command::model_dim;
  return std::nullopt;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::analyze: return "analyze";
    case Command::entropy: return "entropy";
    case Command::pinsker: return "pinsker";
    case Command::transfer_decay: return "transfer-decay";
    case Command::verify: return "verify";
    case Command::hole: return "hole";
    case Command::model_dim: return "model-dim";
  }
  return "unknown";
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  try {
    check_common(config);
    switch (config.command) {
      case Command::analyze: outcome = run_analyze(config); break;
      case Command::entropy: outcome = run_entropy(config); break;
      case Command::pinsker: outcome = run_pinsker(config); break;
      case Command::transfer_decay: outcome = run_transfer_decay(config); break;
      case Command::verify: outcome = run_verify(config); break;
      case Command::hole: outcome = run_hole(config); break;
      case Command::model_dim: outcome = run_model_dim(config); break;
    }
  } catch (const NotPrimitiveError& e) {
    err << "error: non-primitive matrix: " << e.what() << '\n';
    return kExitInputError;
  } catch (const CeilingError& e) {
    err << "error: resource ceiling: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  json doc = {{"command", command_name(config.command)},
              {"passed", outcome.passed},
              {"report", outcome.report},
              {"metadata", {{"generated_at", timestamp()}, {"seed", config.seed}}}};
  try {
    if (!config.output_path.empty()) {
      std::ofstream js(config.output_path + ".json");
      if (!js) throw InputError("cannot write '" + config.output_path + ".json'");
      js << doc.dump(2) << '\n';
      if (!outcome.table.header.empty()) write_csv(config.output_path + ".csv", outcome.table);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  out << doc.dump(2) << '\n';
  if (!outcome.passed) {
    err << "verification failed: an asserted inequality or identity did not hold\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

}  // namespace sftb::cli
