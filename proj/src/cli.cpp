// Copyright 2026 The ergoflux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ergoflux/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ergoflux/emitted_field.hpp"
#include "ergoflux/errors.hpp"
#include "ergoflux/pulse_optimizer.hpp"
#include "ergoflux/report.hpp"
#include "ergoflux/scenarios.hpp"
#include "ergoflux/verification.hpp"

namespace ergoflux::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kPi = std::numbers::pi;

std::vector<std::string> json_inputs(const json& v, const std::string& key) {
  auto scalar = [&](const json& x) -> std::string {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_boolean()) return x.get<bool>() ? "true" : "false";
    if (x.is_number()) return x.dump();
    throw UsageError("config key '" + key + "': unsupported value type");
  };
  std::vector<std::string> inputs;
  if (v.is_array()) {
    for (const auto& x : v) inputs.push_back(scalar(x));
  } else {
    inputs.push_back(scalar(v));
  }
  return inputs;
}

// Keys are option names without leading dashes. A section named after the
// subcommand, when present, replaces the top level.
void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config: top level must be a JSON object");
  const auto& name = sub.get_name();
  const json& section = (doc.contains(name) && doc.at(name).is_object()) ? doc.at(name) : doc;
  for (const auto& [key, value] : section.items()) {
    if (key == "config") throw UsageError("config: nested config files are not supported");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config: unknown key '" + key + "' for '" + name + "'");
    if (opt->count() > 0) continue;
    opt->add_result(json_inputs(value, key));
    opt->run_callback();
  }
}

void require(const CLI::Option* opt) {
  if (opt->count() == 0) throw UsageError(opt->get_name() + " is required");
}

void forbid(const CLI::Option* opt, const std::string& context) {
  if (opt->count() > 0) throw UsageError(opt->get_name() + " does not apply to " + context);
}

Eigen::Index axis_count(double v, const std::string& name) {
  if (!(v >= 2.0) || v != std::floor(v) || v > 1e7) throw UsageError(name + ": point count must be an integer >= 2");
  return static_cast<Eigen::Index>(v);
}

Axis linear_axis(const std::string& name, const std::vector<double>& v) {
  return {name, v.at(0), v.at(1), axis_count(v.at(2), name), AxisScale::Linear};
}

Axis log_axis(const std::string& name, const std::vector<double>& v) {
  return {name, std::pow(10.0, v.at(0)), std::pow(10.0, v.at(1)), axis_count(v.at(2), name), AxisScale::Log};
}

void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void emit_json(const std::string& path, std::ostream& fallback, const json& doc) {
  emit(path, fallback, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
};

void add_common(CLI::App& sub, Common& c) {
  sub.add_option("--config", c.config, "JSON file of option values; command-line flags take precedence");
  sub.add_option("--out", c.out, "Output file (default: standard output)");
  sub.add_option("--seed", c.seed, "Seed for randomized restarts and audits");
}

// scenario ------------------------------------------------------------------

struct ScenarioArgs {
  Common common;
  std::string case_id;
  double p = 0.0;
  double theta = 0.0;
  double ndot = 0.0;
  double nbar = 0.0;
  double tau = 1.0;
  std::string trace_out;
  CLI::Option* case_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* ndot_opt = nullptr;
  CLI::Option* nbar_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
};

void setup(CLI::App& sub, ScenarioArgs& a) {
  add_common(sub, a.common);
  a.case_opt = sub.add_option("--case", a.case_id, "Scenario: i (continuous), ii (spontaneous), iii (pulsed)");
  sub.add_option("--p", a.p, "Mixing weight p in [0, 1/2]");
  a.theta_opt = sub.add_option("--theta", a.theta, "Preparation angle theta in [0, pi]");
  a.ndot_opt = sub.add_option("--ndot", a.ndot, "Photon rate N_dot/gamma (case i)");
  a.nbar_opt = sub.add_option("--nbar", a.nbar, "Wave-packet charge N_bar (case iii)");
  a.tau_opt = sub.add_option("--tau", a.tau, "Pulse duration in 1/gamma (case iii, default 1)");
  sub.add_option("--trace-out", a.trace_out, "Also write the numeric energetics trace as CSV");
}

int execute(ScenarioArgs& a, std::ostream& out) {
  require(a.case_opt);
  require(a.theta_opt);
  const ScenarioId id = parse_scenario_id(a.case_id);
  const auto prep = Preparation::make(a.p, a.theta);
  const ScenarioOptions opts{!a.trace_out.empty()};
  ScenarioResult r;
  double charge = std::numeric_limits<double>::quiet_NaN();
  switch (id) {
    case ScenarioId::Continuous:
      require(a.ndot_opt);
      forbid(a.nbar_opt, "case i");
      forbid(a.tau_opt, "case i");
      charge = a.ndot;
      r = scenario_continuous(prep, a.ndot, opts);
      break;
    case ScenarioId::Spontaneous:
      forbid(a.ndot_opt, "case ii");
      forbid(a.nbar_opt, "case ii");
      forbid(a.tau_opt, "case ii");
      r = scenario_spontaneous(prep, opts);
      break;
    case ScenarioId::Pulsed:
      require(a.nbar_opt);
      forbid(a.ndot_opt, "case iii");
      charge = a.nbar;
      r = scenario_pulsed(prep, a.nbar, a.tau, opts);
      break;
  }
  emit(a.common.out, out, [&](std::ostream& os) { scenario_table(id, prep, charge, r).write(os); });
  if (r.trace) emit(a.trace_out, out, [&](std::ostream& os) { trace_table(*r.trace).write(os); });
  return kExitOk;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::string case_id;
  double p = 0.0;
  double tau = 1.0;
  std::vector<double> theta{0.0, kPi, 101};
  std::vector<double> ndot;
  std::vector<double> ndot_log{-2.0, 4.0, 101};
  std::vector<double> nbar;
  std::vector<double> nbar_log{-3.0, 3.0, 101};
  std::vector<double> p_axis{0.0, 0.5, 101};
  CLI::Option* case_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* ndot_opt = nullptr;
  CLI::Option* ndot_log_opt = nullptr;
  CLI::Option* nbar_opt = nullptr;
  CLI::Option* nbar_log_opt = nullptr;
  CLI::Option* p_axis_opt = nullptr;
};

void setup(CLI::App& sub, SweepArgs& a) {
  add_common(sub, a.common);
  a.case_opt = sub.add_option("--case", a.case_id, "Scenario: i, ii or iii");
  a.p_opt = sub.add_option("--p", a.p, "Fixed mixing weight (cases i and iii)");
  a.tau_opt = sub.add_option("--tau", a.tau, "Pulse duration in 1/gamma (case iii)");
  sub.add_option("--theta", a.theta, "theta axis: MIN MAX COUNT")->expected(3);
  a.ndot_opt = sub.add_option("--ndot", a.ndot, "Linear N_dot/gamma axis (case i): MIN MAX COUNT")->expected(3);
  a.ndot_log_opt = sub.add_option("--ndot-log", a.ndot_log, "Log axis (case i): LOG10_MIN LOG10_MAX COUNT")
                       ->expected(3);
  a.nbar_opt = sub.add_option("--nbar", a.nbar, "Linear N_bar axis (case iii): MIN MAX COUNT")->expected(3);
  a.nbar_log_opt = sub.add_option("--nbar-log", a.nbar_log, "Log axis (case iii): LOG10_MIN LOG10_MAX COUNT")
                       ->expected(3);
  a.p_axis_opt = sub.add_option("--p-axis", a.p_axis, "p axis (case ii): MIN MAX COUNT")->expected(3);
}

Axis pick_axis(const CLI::Option* lin, const CLI::Option* log, const std::string& name,
               const std::vector<double>& lin_values, const std::vector<double>& log_values) {
  if (lin->count() > 0 && log->count() > 0)
    throw UsageError(lin->get_name() + " and " + log->get_name() + " are mutually exclusive");
  return lin->count() > 0 ? linear_axis(name, lin_values) : log_axis(name, log_values);
}

int execute(SweepArgs& a, std::ostream& out) {
  require(a.case_opt);
  SweepSpec spec;
  spec.scenario = parse_scenario_id(a.case_id);
  spec.p = a.p;
  spec.tau = a.tau;
  spec.theta = linear_axis("theta", a.theta);
  switch (spec.scenario) {
    case ScenarioId::Continuous:
      for (const auto* o : {a.nbar_opt, a.nbar_log_opt, a.p_axis_opt, a.tau_opt}) forbid(o, "case i");
      spec.second = pick_axis(a.ndot_opt, a.ndot_log_opt, "ndot", a.ndot, a.ndot_log);
      break;
    case ScenarioId::Spontaneous:
      for (const auto* o : {a.ndot_opt, a.ndot_log_opt, a.nbar_opt, a.nbar_log_opt, a.p_opt, a.tau_opt})
        forbid(o, "case ii");
      spec.second = linear_axis("p", a.p_axis);
      break;
    case ScenarioId::Pulsed:
      for (const auto* o : {a.ndot_opt, a.ndot_log_opt, a.p_axis_opt}) forbid(o, "case iii");
      spec.second = pick_axis(a.nbar_opt, a.nbar_log_opt, "nbar", a.nbar, a.nbar_log);
      break;
  }
  spec.theta.validate();
  spec.second.validate();
  const auto grid = sweep(spec);
  emit(a.common.out, out, [&](std::ostream& os) { sweep_table(grid).write(os); });
  return kExitOk;
}

// optimize ------------------------------------------------------------------

struct OptimizeArgs {
  Common common;
  std::string mode = "control";
  double p = 0.0;
  double theta = 0.0;
  std::vector<double> theta_range{kPi / 2.0, kPi};
  double nbar = 0.0;
  double horizon = 10.0;
  int nodes = 400;
  int restarts = 3;
  int max_iter = 5000;
  std::string pulse_out;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* theta_range_opt = nullptr;
  CLI::Option* nbar_opt = nullptr;
};

void setup(CLI::App& sub, OptimizeArgs& a) {
  add_common(sub, a.common);
  sub.add_option("--mode", a.mode, "exponential | control | shaped (control maximized over theta)");
  sub.add_option("--p", a.p, "Mixing weight p in [0, 1/2]");
  a.theta_opt = sub.add_option("--theta", a.theta, "Preparation angle (modes exponential and control)");
  a.theta_range_opt =
      sub.add_option("--theta-range", a.theta_range, "theta search interval (mode shaped): MIN MAX")->expected(2);
  a.nbar_opt = sub.add_option("--nbar", a.nbar, "Photon budget N_bar");
  sub.add_option("--horizon", a.horizon, "Control horizon T in 1/gamma");
  sub.add_option("--nodes", a.nodes, "Control nodes M");
  sub.add_option("--restarts", a.restarts, "Random restarts besides the exponential start");
  sub.add_option("--max-iter", a.max_iter, "Iteration cap per ascent");
  sub.add_option("--pulse-out", a.pulse_out, "Write the optimized pulse at the control nodes as CSV");
}

json pulse_json(const OptimalPulse& pulse, const ControlProblem& problem) {
  const auto expo = exponential_drive(problem.n_bar, pulse.exponential_tau, problem.gamma);
  return {{"work", pulse.work},
          {"iterations", pulse.iterations},
          {"converged", pulse.converged},
          {"gradient_norm", pulse.gradient_norm},
          {"exponential_tau", pulse.exponential_tau},
          {"exponential_work", pulse.exponential_work},
          {"l2_distance_to_exponential", pulse_distance(pulse.drive, expo, problem.horizon)}};
}

void write_pulse(const std::string& path, std::ostream& fallback, const OptimalPulse& pulse,
                 const ControlProblem& problem) {
  const auto& table = std::get<Tabulated>(pulse.drive.shape());
  const auto expo = exponential_drive(problem.n_bar, pulse.exponential_tau, problem.gamma);
  CsvTable t;
  t.header = {"t", "rabi", "rabi_exponential"};
  for (std::size_t k = 0; k < table.times.size(); ++k)
    t.rows.push_back({format_number(table.times[k]), format_number(table.rabi_values[k]),
                      format_number(expo.rabi(table.times[k]))});
  emit(path, fallback, [&](std::ostream& os) { t.write(os); });
}

int execute(OptimizeArgs& a, std::ostream& out) {
  require(a.nbar_opt);
  json doc{{"mode", a.mode}, {"p", a.p}, {"nbar", a.nbar}};
  if (a.mode == "exponential") {
    require(a.theta_opt);
    const auto opt = optimize_exponential_tau(Preparation::make(a.p, a.theta), a.nbar);
    doc["theta"] = a.theta;
    doc["exponential"] = {{"tau_opt", opt.tau_opt}, {"work", opt.work}, {"at_boundary", opt.at_boundary}};
  } else if (a.mode == "control" || a.mode == "shaped") {
    ControlProblem problem;
    problem.n_bar = a.nbar;
    problem.horizon = a.horizon;
    problem.nodes = a.nodes;
    problem.seed = a.common.seed;
    problem.restarts = a.restarts;
    problem.max_iterations = a.max_iter;
    OptimalPulse pulse;
    if (a.mode == "control") {
      require(a.theta_opt);
      forbid(a.theta_range_opt, "mode control");
      problem.prep = Preparation::make(a.p, a.theta);
      pulse = solve_optimal_control(problem);
      doc["theta"] = a.theta;
    } else {
      forbid(a.theta_opt, "mode shaped (use --theta-range)");
      problem.prep = Preparation::make(a.p, a.theta_range.at(0));
      auto best = optimize_shaped_over_theta(problem, a.theta_range.at(0), a.theta_range.at(1));
      problem.prep = Preparation::make(a.p, best.theta);
      pulse = std::move(best.pulse);
      doc["theta"] = best.theta;
    }
    doc["control"] = pulse_json(pulse, problem);
    doc["control"]["horizon"] = a.horizon;
    doc["control"]["nodes"] = a.nodes;
    doc["seed"] = a.common.seed;
    if (!a.pulse_out.empty()) write_pulse(a.pulse_out, out, pulse, problem);
  } else {
    throw UsageError("--mode must be exponential, control or shaped");
  }
  emit_json(a.common.out, out, doc);
  return kExitOk;
}

// husimi --------------------------------------------------------------------

struct HusimiArgs {
  Common common;
  double p = 0.0;
  double theta = 0.0;
  std::vector<double> re{-2.5, 2.5, 101};
  std::vector<double> im{-2.5, 2.5, 101};
  CLI::Option* theta_opt = nullptr;
};

void setup(CLI::App& sub, HusimiArgs& a) {
  add_common(sub, a.common);
  sub.add_option("--p", a.p, "Mixing weight (only p = 0 is supported)");
  a.theta_opt = sub.add_option("--theta", a.theta, "Preparation angle theta in [0, pi]");
  sub.add_option("--re", a.re, "Re(alpha) axis: MIN MAX COUNT")->expected(3);
  sub.add_option("--im", a.im, "Im(alpha) axis: MIN MAX COUNT")->expected(3);
}

int execute(HusimiArgs& a, std::ostream& out) {
  require(a.theta_opt);
  const auto psi = output_state(Preparation::make(a.p, a.theta));
  HusimiSpec spec;
  spec.re_min = a.re.at(0);
  spec.re_max = a.re.at(1);
  spec.re_count = axis_count(a.re.at(2), "--re");
  spec.im_min = a.im.at(0);
  spec.im_max = a.im.at(1);
  spec.im_count = axis_count(a.im.at(2), "--im");
  const auto grid = husimi(psi, spec);
  emit(a.common.out, out, [&](std::ostream& os) { husimi_table(grid).write(os); });
  return kExitOk;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string suite = "all";
  int resolution = 50;
  double eps_min = 0.05;
  double eps_max = 50.0;
  int cases = 20;
  double epsilon = 1.0;
  std::vector<double> scales{0.1, 10.0};
  double p = 0.0;
  double theta = kPi / 2.0;
};

void setup(CLI::App& sub, VerifyArgs& a) {
  add_common(sub, a.common);
  sub.add_option("--suite", a.suite, "bound-scan | conservation | scale-invariance | all");
  sub.add_option("--resolution", a.resolution, "Bound scan points per axis (>= 20)");
  sub.add_option("--eps-min", a.eps_min, "Smallest gamma/Omega");
  sub.add_option("--eps-max", a.eps_max, "Largest gamma/Omega");
  sub.add_option("--cases", a.cases, "Randomized conservation trajectories");
  sub.add_option("--epsilon", a.epsilon, "gamma/Omega for the scale-invariance check");
  sub.add_option("--scales", a.scales, "Scale factors k for the scale-invariance check");
  sub.add_option("--p", a.p, "Mixing weight for the scale-invariance check");
  sub.add_option("--theta", a.theta, "Preparation angle for the scale-invariance check");
}

json cell_json(const BoundScanCell& c) {
  return {{"p", c.p},
          {"theta", c.theta},
          {"epsilon", c.epsilon},
          {"ergotropy", c.ergotropy},
          {"work_opt", c.work_opt},
          {"gap", c.gap}};
}

json bound_scan_json(const VerifyArgs& a) {
  const auto rep = ergotropy_bound_scan(a.resolution, a.eps_min, a.eps_max);
  json violations = json::array();
  for (const auto& c : rep.violations) violations.push_back(cell_json(c));
  return {{"suite", "bound-scan"},
          {"passed", rep.passed},
          {"resolution", a.resolution},
          {"epsilon_range", {a.eps_min, a.eps_max}},
          {"tolerance", kBoundTolerance},
          {"covers_both_regimes", rep.covers_both_regimes},
          {"min_gap", rep.worst.gap},
          {"min_gap_cell", cell_json(rep.worst)},
          {"violations", violations}};
}

json conservation_json(const VerifyArgs& a) {
  const auto rep = conservation_suite(a.cases, a.common.seed, a.eps_min, a.eps_max);
  json cases = json::array();
  for (const auto& c : rep.cases)
    cases.push_back({{"drive", c.drive_kind},
                     {"p", c.p},
                     {"theta", c.theta},
                     {"epsilon", c.epsilon},
                     {"switched_off", c.switched_off},
                     {"first_law_residual", c.report.first_law_residual},
                     {"power_balance_residual", c.report.power_balance_residual},
                     {"points_checked", c.report.points_checked},
                     {"passed", c.report.passed}});
  return {{"suite", "conservation"},
          {"passed", rep.passed},
          {"tolerance", kConservationTolerance},
          {"worst_first_law_residual", rep.worst_first_law},
          {"worst_power_balance_residual", rep.worst_power_balance},
          {"cases", cases}};
}

json scale_json(const VerifyArgs& a) {
  const auto rep = scale_invariance_check(Preparation::make(a.p, a.theta), a.epsilon, a.scales);
  json rows = json::array();
  for (std::size_t i = 0; i < rep.scales.size(); ++i)
    rows.push_back({{"k", rep.scales[i]}, {"work_delta", rep.work_delta[i]}, {"gamma_tau_delta", rep.tau_delta[i]}});
  return {{"suite", "scale-invariance"},
          {"passed", rep.passed},
          {"tolerance", kScaleTolerance},
          {"epsilon", a.epsilon},
          {"work_opt", rep.work_opt},
          {"gamma_tau_opt", finite_or_null(rep.gamma_tau_opt)},
          {"scales", rows},
          {"failing_scales", rep.failing_scales}};
}

int execute(VerifyArgs& a, std::ostream& out) {
  std::vector<json> reports;
  const bool all = a.suite == "all";
  if (!all && a.suite != "bound-scan" && a.suite != "conservation" && a.suite != "scale-invariance")
    throw UsageError("--suite must be bound-scan, conservation, scale-invariance or all");
  if (all || a.suite == "bound-scan") reports.push_back(bound_scan_json(a));
  if (all || a.suite == "conservation") reports.push_back(conservation_json(a));
  if (all || a.suite == "scale-invariance") reports.push_back(scale_json(a));
  bool passed = true;
  for (const auto& r : reports) passed = passed && r.at("passed").get<bool>();
  emit_json(a.common.out, out, json{{"passed", passed}, {"suites", reports}});
  return passed ? kExitOk : kExitVerification;
}

template <class Args>
int dispatch(CLI::App& sub, Args& args, std::ostream& out) {
  if (!args.common.config.empty()) apply_config(sub, args.common.config);
  return execute(args, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ergoflux: work extraction from a driven qubit into a waveguide", "ergoflux"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);

  ScenarioArgs scenario_args;
  SweepArgs sweep_args;
  OptimizeArgs optimize_args;
  HusimiArgs husimi_args;
  VerifyArgs verify_args;
  auto* scenario_cmd = app.add_subcommand("scenario", "Run one scenario and print a CSV row");
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a scenario over a theta x charge grid (CSV)");
  auto* optimize_cmd = app.add_subcommand("optimize", "Exponential or fully shaped pulse optimization (JSON)");
  auto* husimi_cmd = app.add_subcommand("husimi", "Husimi Q grid of the emitted field (CSV)");
  auto* verify_cmd = app.add_subcommand("verify", "Run verification audits (JSON)");
  setup(*scenario_cmd, scenario_args);
  setup(*sweep_cmd, sweep_args);
  setup(*optimize_cmd, optimize_args);
  setup(*husimi_cmd, husimi_args);
  setup(*verify_cmd, verify_args);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*scenario_cmd) return dispatch(*scenario_cmd, scenario_args, out);
    if (*sweep_cmd) return dispatch(*sweep_cmd, sweep_args, out);
    if (*optimize_cmd) return dispatch(*optimize_cmd, optimize_args, out);
    if (*husimi_cmd) return dispatch(*husimi_cmd, husimi_args, out);
    if (*verify_cmd) return dispatch(*verify_cmd, verify_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  err << app.help();
  return kExitValidation;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace ergoflux::cli
