// Copyright 2026 The qbd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qbd: validate models, run inference and decisions, evaluate the cost model.
//
// Exit status: 0 success, 1 domain or validation failure, 2 usage or I/O.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbd/qbd.hpp"

namespace {

using namespace qbd;
using report::Format;
using report::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t qubit_cap() {
  const char* env = std::getenv("QBD_QUBIT_CAP");
  if (!env || !*env) return kDefaultQubitCap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 40) throw UsageError("QBD_QUBIT_CAP must be an integer in [1, 40]");
  return static_cast<std::size_t>(v);
}

const std::map<std::string, Format> kFormats{{"table", Format::Table}, {"csv", Format::Csv}, {"json", Format::Json}};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Model read_model(const std::string& path) { return parse_model(read_text_file(path)); }

Evidence merge_evidence(const Model& model, const std::vector<std::string>& items) {
  Evidence e = model.evidence;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("evidence must look like NAME=VALUE, got '" + item + "'");
    VarIndex var = model.network.index_of(item.substr(0, eq));
    e[var] = parse_value(model.network.variables[var], item.substr(eq + 1));
  }
  return e;
}

json evidence_json(const BayesianNetwork& net, const Evidence& e) {
  json j = json::object();
  for (const auto& [var, value] : e) j[net.variables[var].name] = net.variables[var].label(value);
  return j;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string model;
  std::string format = "table";
  bool force = false;
};

int cmd_validate(const ValidateArgs& a) {
  Model model = read_model(a.model);
  std::size_t cap = qubit_cap();
  std::vector<Violation> violations = validate(model.network, cap);
  if (!has_errors(violations)) {
    try {
      check_evidence(model.network, model.evidence);
    } catch (const Error& e) {
      violations.push_back({Severity::Error, std::nullopt, e.what()});
    }
  }
  if (!has_errors(violations) && model.is_decision_problem()) {
    auto more = validate_problem(model.decision_problem(), a.force, cap);
    violations.insert(violations.end(), more.begin(), more.end());
  }
  bool ok = !has_errors(violations);
  Format f = kFormats.at(a.format);
  if (f == Format::Json) {
    json list = json::array();
    for (const auto& v : violations) {
      json item{{"severity", v.severity == Severity::Error ? "error" : "warning"}, {"message", v.message}};
      if (v.variable) item["node"] = model.network.variables[*v.variable].name;
      list.push_back(item);
    }
    std::cout << dump({{"valid", ok},
                       {"nodes", model.network.size()},
                       {"qubits", model.network.qubit_count()},
                       {"decision_problem", model.is_decision_problem()},
                       {"violations", list}});
  } else if (f == Format::Csv) {
    report::Table t{{"severity", "node", "message"}, {}};
    for (const auto& v : violations) {
      t.add({v.severity == Severity::Error ? "error" : "warning",
             v.variable ? model.network.variables[*v.variable].name : "", v.message});
    }
    std::cout << report::render_csv(t);
  } else {
    for (const auto& v : violations) std::cout << describe(v, &model.network) << '\n';
    std::cout << (ok ? "valid" : "invalid") << ": " << model.network.size() << " nodes, "
              << model.network.qubit_count() << " qubits"
              << (model.is_decision_problem() ? ", decision problem" : "") << '\n';
  }
  return ok ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------- infer

struct InferArgs {
  std::string model;
  std::vector<std::string> evidence;
  std::string query;
  std::string method = "exact";
  std::size_t shots = 10000;
  std::uint64_t seed = 0;
  std::string format = "table";
};

int cmd_infer(const InferArgs& a) {
  Model model = read_model(a.model);
  std::size_t cap = qubit_cap();
  require_valid(model.network, cap);
  const BayesianNetwork& net = model.network;
  Evidence e = merge_evidence(model, a.evidence);
  VarIndex query = net.index_of(a.query);
  if (e.contains(query)) throw DomainError("query variable '" + a.query + "' is part of the evidence");
  check_evidence(net, e);

  Distribution dist;
  json meta = json::object();
  std::vector<std::string> meta_lines;
  if (a.method == "exact") {
    dist = classical::exact_conditional(net, query, e);
    meta["p_evidence"] = classical::evidence_probability(net, e);
  } else if (a.method == "rejection") {
    auto est = classical::rejection_sample(net, e, query, a.shots, a.seed);
    if (!est.estimate) throw UnavailableError("no sample matched the evidence");
    dist = *est.estimate;
    meta = {{"samples", est.samples}, {"useful_samples", est.useful}, {"acceptance", est.acceptance()}};
  } else {
    auto est = qinference::q_conditional(net, e, query, a.shots, a.seed, cap);
    if (!est.estimate) throw UnavailableError("no shot satisfied the evidence");
    dist = *est.estimate;
    meta = {{"shots", est.shots},
            {"accepted_shots", est.accepted},
            {"grover_iterations", est.schedule.iterations},
            {"predicted_success", est.schedule.predicted_success},
            {"p_evidence", est.p_evidence}};
  }

  const Variable& var = net.variables[query];
  switch (kFormats.at(a.format)) {
    case Format::Json:
      std::cout << dump({{"query", var.name},
                         {"method", a.method},
                         {"evidence", evidence_json(net, e)},
                         {"distribution", report::distribution_json(dist, var)},
                         {"metadata", meta}});
      break;
    case Format::Csv:
      std::cout << report::render_csv(report::distribution_table(dist, var));
      break;
    case Format::Table:
      std::cout << "P(" << var.name << " | evidence) by " << a.method << '\n';
      std::cout << report::render_table(report::distribution_table(dist, var));
      for (const auto& [k, v] : meta.items()) std::cout << k << ": " << v.dump() << '\n';
      break;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- decide

struct DecideArgs {
  std::string model;
  std::string process = "a";
  std::size_t shots = 8192;
  std::uint64_t seed = 0;
  bool exact = false;
  bool force = false;
  bool shift_utility = false;
  std::string plot_data;
  std::string format = "table";
};

void write_plot_data(const std::string& path, const qdecision::DecisionReport& r, const Variable& action) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write plot data to '" + path + "'");
  out << "label,probability\n";
  for (std::size_t v = 0; v < r.action_distribution.size(); ++v) {
    out << report::csv_escape(action.label(v)) << ',' << report::format_number(r.action_distribution[v]) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

int cmd_decide(const DecideArgs& a) {
  Model model = read_model(a.model);
  std::size_t cap = qubit_cap();
  require_valid(model.network, cap);
  DecisionProblem problem = model.decision_problem();
  if (a.shift_utility) problem.utility = shift_to_non_negative(problem.utility);
  for (const auto& v : validate_problem(problem, a.force, cap)) {
    if (v.severity == Severity::Warning) std::cerr << describe(v, &problem.network) << '\n';
  }

  qdecision::DecisionReport r;
  if (a.process == "a") {
    r = qdecision::decide_process_a(problem, {a.exact, a.shots, a.seed, a.force, cap});
  } else if (a.process == "b") {
    r = qdecision::decide_process_b(problem, a.shots, a.seed, {a.force, cap});
  } else {
    r = qdecision::decide_classical(problem, {a.force, cap});
  }

  const Variable& action = problem.network.variables[problem.action];
  if (!a.plot_data.empty()) write_plot_data(a.plot_data, r, action);
  Format f = kFormats.at(a.format);
  if (f == Format::Json) {
    std::cout << dump(report::decision_json(r, problem));
  } else {
    std::cout << report::decision_text(r, problem, f);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- cost

struct CostArgs {
  std::string params;
  std::string model;
  double delta = 0.05;
  double alpha = 0.05;
  std::optional<double> pi;
  std::optional<double> delta_b;
  std::string format = "table";
};

cost::CostParams parse_params(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--params: '" + item + "' is not a number");
    }
  }
  if (v.size() != 7) {
    throw UsageError("--params expects 7 values n,m,Na,Nr,pe,delta,alpha; got " + std::to_string(v.size()));
  }
  cost::CostParams p;
  p.n = v[0];
  p.m = v[1];
  p.n_a = v[2];
  p.n_r = v[3];
  p.p_e = v[4];
  p.delta = v[5];
  p.alpha = v[6];
  return p;
}

int cmd_cost(const CostArgs& a) {
  cost::CostParams p;
  if (!a.params.empty()) {
    p = parse_params(a.params);
  } else if (!a.model.empty()) {
    Model model = read_model(a.model);
    require_valid(model.network, qubit_cap());
    p = cost::params_for(model.decision_problem(), a.delta, a.alpha);
  } else {
    throw UsageError("cost needs --params or --model");
  }
  p.pi = a.pi;
  p.delta_b = a.delta_b;

  cost::CostEstimate ea = cost::total_ops(cost::Process::A, p);
  cost::CostEstimate eb = cost::total_ops(cost::Process::B, p);
  cost::RatioCheck rc = cost::ratio_check(p);
  double ratio = eb.total_ops / ea.total_ops;

  switch (kFormats.at(a.format)) {
    case Format::Json:
      std::cout << dump(report::cost_json(ea, eb, rc));
      break;
    case Format::Csv:
      std::cout << report::render_csv(report::cost_table(ea, eb));
      break;
    case Format::Table: {
      std::cout << report::render_table(report::cost_table(ea, eb));
      report::Table t{{"ratio B/A", "bound sqrt(Nr/Na)", "ratio_check", "status", "t1", "asymptotic"}, {}};
      t.add({report::format_number(ratio), report::format_number(rc.bound), report::format_number(rc.ratio),
             rc.holds ? "holds" : "below bound", report::format_number(rc.t1),
             report::format_number(rc.asymptotic)});
      std::cout << '\n' << report::render_table(t);
      break;
    }
  }
  return kExitOk;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << " error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-inspired Bayesian decisions: inference, decision processes and cost model"};
  app.require_subcommand(1);
  auto formats = CLI::IsMember({"table", "csv", "json"});

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Check a model document");
  validate_cmd->add_option("--model", va.model, "Model JSON")->required();
  validate_cmd->add_flag("--force", va.force, "Downgrade a non-uniform action prior to a warning");
  validate_cmd->add_option("--format", va.format)->check(formats);

  InferArgs ia;
  auto* infer_cmd = app.add_subcommand("infer", "Conditional distribution of one variable");
  infer_cmd->add_option("--model", ia.model, "Model JSON")->required();
  infer_cmd->add_option("--evidence", ia.evidence, "NAME=VALUE (index or label); overrides the model's evidence");
  infer_cmd->add_option("--query", ia.query, "Query variable")->required();
  infer_cmd->add_option("--method", ia.method)->check(CLI::IsMember({"exact", "rejection", "quantum"}));
  infer_cmd->add_option("--shots", ia.shots, "Samples or shots")->check(CLI::PositiveNumber);
  infer_cmd->add_option("--seed", ia.seed);
  infer_cmd->add_option("--format", ia.format)->check(formats);

  DecideArgs da;
  auto* decide_cmd = app.add_subcommand("decide", "Choose an action");
  decide_cmd->add_option("--model", da.model, "Decision problem JSON")->required();
  decide_cmd->add_option("--process", da.process)->check(CLI::IsMember({"a", "b", "classical"}));
  decide_cmd->add_option("--shots", da.shots, "Shots (per action for process b)")->check(CLI::PositiveNumber);
  decide_cmd->add_option("--seed", da.seed);
  decide_cmd->add_flag("--exact", da.exact, "Process a: exact matched-subspace marginal instead of shots");
  decide_cmd->add_flag("--force", da.force, "Accept a non-uniform action prior");
  decide_cmd->add_flag("--shift-utility", da.shift_utility,
                       "Replace U by U - min U (keeps the argmax, changes process a's distribution)");
  decide_cmd->add_option("--plot-data", da.plot_data, "Write label,probability CSV of the action distribution");
  decide_cmd->add_option("--format", da.format)->check(formats);

  CostArgs ca;
  auto* cost_cmd = app.add_subcommand("cost", "Operation-count estimates for processes A and B");
  auto* params_opt = cost_cmd->add_option("--params", ca.params, "n,m,Na,Nr,pe,delta,alpha");
  auto* model_opt = cost_cmd->add_option("--model", ca.model, "Take n, m, Na, Nr and P(e) from a decision problem");
  params_opt->excludes(model_opt);
  cost_cmd->add_option("--delta", ca.delta, "Target delta_a (with --model)");
  cost_cmd->add_option("--alpha", ca.alpha, "Significance level (with --model)");
  cost_cmd->add_option("--pi", ca.pi, "Category probability (default 1/2)");
  cost_cmd->add_option("--delta-b", ca.delta_b, "Per-action error for process b (default: propagated)");
  cost_cmd->add_option("--format", ca.format)->check(formats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*validate_cmd) return guarded([&] { return cmd_validate(va); });
  if (*infer_cmd) return guarded([&] { return cmd_infer(ia); });
  if (*decide_cmd) return guarded([&] { return cmd_decide(da); });
  return guarded([&] { return cmd_cost(ca); });
}
