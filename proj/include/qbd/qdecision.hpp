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

/**
 * @file qdecision.hpp
 * Quantum decision procedures.
 *
 * Process A keeps the network state unobserved until the utility is applied:
 *
 *   1. amplify the evidence on the encoded network (the action variable is
 *      never evidence);
 *   2. append a utility register prepared as sum_r sqrt(U(r)/sum U) |r>;
 *   3. amplify the basis states whose outcome register equals the utility
 *      register (and whose evidence bits are still correct).
 *
 * Inside that matched subspace the weight of action a is
 * sum_r P(a, r, e) U(r) / sum U, so with a uniform, evidence-independent
 * action prior the action marginal is EU(a|e) / sum_a' EU(a'|e). A single
 * matched shot therefore samples an action with probability proportional
 * to its expected utility.
 *
 * Process B estimates P(r | a, e) for each action with quantum rejection
 * sampling and combines the estimates with U classically.
 */

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qbd/classical.hpp"
#include "qbd/encoder.hpp"
#include "qbd/qinference.hpp"
#include "qbd/rng.hpp"
#include "qbd/statevector.hpp"

namespace qbd::qdecision {

using qinference::AmplificationSchedule;
using qinference::RegisterMatch;
using qsim::BasisIndex;
using qsim::CircuitPlan;
using qsim::QubitRange;
using qsim::StateVector;

/// Amplitudes sqrt(U(r) / sum U) over a register of ceil(log2 N_r) qubits;
/// padding entries are zero.
inline std::vector<double> utility_state(const UtilityTable& utility) {
  if (utility.values.empty()) throw DomainError("empty utility table");
  double total = 0.0;
  for (double u : utility.values) {
    if (!std::isfinite(u) || u < 0.0) throw DomainError("utility entries must be finite and non-negative");
    total += u;
  }
  if (!(total > 0.0)) throw DomainError("utility is zero everywhere");
  std::size_t width = qubits_for_arity(std::max<std::size_t>(utility.values.size(), 2));
  std::vector<double> amps(std::size_t{1} << width, 0.0);
  for (std::size_t r = 0; r < utility.values.size(); ++r) amps[r] = std::sqrt(utility.values[r] / total);
  return amps;
}

/// Evidence bits correct and outcome register == utility register.
struct MatchPredicate {
  RegisterMatch evidence;
  QubitRange outcome;
  QubitRange utility;

  bool operator()(BasisIndex i) const noexcept {
    return evidence(i) && outcome.read(i) == utility.read(i);
  }
};

struct ProcessAState {
  CircuitPlan prep;  // stage-1 circuit plus utility preparation
  StateVector state;
  QubitRange action_reg;
  QubitRange outcome_reg;
  QubitRange utility_reg;
  std::size_t action_arity = 0;
  MatchPredicate match;

  double p_evidence = 1.0;
  AmplificationSchedule stage1;
  AmplificationSchedule stage2;
  /// Closed form of the matched mass before stage 2:
  /// success_1 * sum_r U(r) P(r|e) / sum U.
  double match_mass_predicted = 0.0;
  /// Same quantity measured on the state.
  double match_mass_initial = 0.0;
  double match_mass_final = 0.0;
  std::size_t oracle_calls_stage1 = 0;
  std::size_t oracle_calls_stage2 = 0;
};

struct Options {
  bool force = false;
  std::size_t qubit_cap = kDefaultQubitCap;
};

inline ProcessAState process_a_state(const DecisionProblem& problem, const Options& opt = {}) {
  require_valid(problem, opt.force, opt.qubit_cap);
  const BayesianNetwork& net = problem.network;

  ProcessAState out;
  CircuitPlan network = encoder::encode(net, opt.qubit_cap);
  out.action_reg = network.var_map[problem.action];
  out.outcome_reg = network.var_map[problem.outcome];
  out.action_arity = net.variables[problem.action].arity;

  // stage 1: evidence amplification on the network register only
  RegisterMatch evidence = qinference::evidence_mask(network, problem.evidence);
  out.p_evidence = classical::evidence_probability(net, problem.evidence);
  if (!(out.p_evidence > 0.0)) throw NoSolutionError("evidence has probability zero");
  out.stage1 = qinference::iteration_count(out.p_evidence);
  auto stage1_ops = qsim::grover_ops(network, evidence, out.stage1.iterations);
  out.oracle_calls_stage1 = qsim::count_oracle_calls(stage1_ops);

  // utility register above the network register
  std::vector<double> uamps = utility_state(problem.utility);
  out.utility_reg = QubitRange{network.qubits, qubits_for_arity(std::max<std::size_t>(problem.utility.values.size(), 2))};
  if (out.utility_reg.count != out.outcome_reg.count) {
    throw DomainError("utility register width does not match the outcome register");
  }
  std::vector<double> uprobs(uamps.size());
  for (std::size_t r = 0; r < uamps.size(); ++r) uprobs[r] = uamps[r] * uamps[r];

  out.prep.qubits = network.qubits + out.utility_reg.count;
  out.prep.var_map = network.var_map;
  out.prep.ops = network.ops;
  out.prep.ops.insert(out.prep.ops.end(), stage1_ops.begin(), stage1_ops.end());
  encoder::emit_distribution(out.prep.ops, out.utility_reg, uprobs, {});

  out.match = MatchPredicate{evidence, out.outcome_reg, out.utility_reg};
  out.state = qsim::run(out.prep, opt.qubit_cap);

  Distribution p_r = classical::exact_conditional(net, problem.outcome, problem.evidence);
  double weighted = 0.0;
  for (std::size_t r = 0; r < p_r.size(); ++r) weighted += problem.utility.values[r] * p_r[r];
  out.match_mass_predicted = out.stage1.predicted_success * weighted / problem.utility.total();
  out.match_mass_initial = qsim::good_mass(out.state, out.match);
  if (!(out.match_mass_predicted > 0.0)) {
    throw DegenerateUtilityError("utility is zero on every outcome reachable under the evidence");
  }

  // stage 2: amplify outcome/utility agreement
  out.stage2 = qinference::iteration_count(out.match_mass_predicted);
  auto stage2_ops = qsim::grover_ops(out.prep, out.match, out.stage2.iterations);
  qsim::apply_all(out.state, stage2_ops);
  // every iterate replays prep and its inverse, each carrying the stage-1 oracles
  out.oracle_calls_stage2 =
      qsim::count_oracle_calls(stage2_ops) - 2 * out.stage2.iterations * out.oracle_calls_stage1;
  out.match_mass_final = qsim::good_mass(out.state, out.match);
  return out;
}

/// Action marginal within the matched subspace, renormalized (exact).
inline Distribution exact_action_distribution(const ProcessAState& pa) {
  std::vector<double> w(pa.action_arity, 0.0);
  for (BasisIndex i = 0; i < pa.state.size(); ++i) {
    if (!pa.match(i)) continue;
    std::size_t a = pa.action_reg.read(i);
    if (a < w.size()) w[a] += pa.state.probability(i);
  }
  return Distribution::normalized(std::move(w));
}

struct ShotTally {
  std::optional<Distribution> distribution;
  std::vector<std::size_t> counts;
  std::size_t shots = 0;
  std::size_t matched = 0;
};

/// Measures every qubit, keeps matched shots and tallies the action register.
inline ShotTally sampled_action_distribution(const ProcessAState& pa, std::size_t shots, std::uint64_t seed) {
  ShotTally t;
  t.shots = shots;
  t.counts.assign(pa.action_arity, 0);
  qsim::for_each_shot(pa.state, shots, seed, [&](BasisIndex i) {
    if (!pa.match(i)) return;
    ++t.matched;
    std::size_t a = pa.action_reg.read(i);
    if (a < t.counts.size()) ++t.counts[a];
  });
  if (t.matched > 0) t.distribution = Distribution::from_counts(t.counts);
  return t;
}

struct ActionMode {
  bool exact = true;
  std::size_t shots = 0;
  std::uint64_t seed = 0;

  static ActionMode exact_state() { return {}; }
  static ActionMode postselect_shots(std::size_t shots, std::uint64_t seed) { return {false, shots, seed}; }
};

inline Distribution action_distribution(const ProcessAState& pa, const ActionMode& mode) {
  if (mode.exact) return exact_action_distribution(pa);
  if (mode.shots == 0) throw DomainError("shots must be positive");
  ShotTally t = sampled_action_distribution(pa, mode.shots, mode.seed);
  if (!t.distribution) throw UnavailableError("no shot matched the outcome/utility registers");
  return *t.distribution;
}

enum class Process { A, B, Classical };

inline const char* to_string(Process p) {
  switch (p) {
    case Process::A: return "A";
    case Process::B: return "B";
    case Process::Classical: return "classical";
  }
  return "?";
}

struct DecisionReport {
  Process process = Process::A;
  bool exact = false;
  Distribution action_distribution;
  std::optional<Distribution> theoretical_distribution;
  std::size_t chosen_action = 0;
  std::size_t shots_used = 0;
  std::size_t matched_shots = 0;
  double matched_shot_fraction = 0.0;
  /// Process B and classical only.
  std::vector<double> expected_utilities;
  std::vector<double> eu_deltas;
  /// Grover iterations: (stage 1, stage 2) for A, one per action for B.
  std::vector<std::size_t> iterations;
  std::size_t amplified_state_constructions = 0;
  std::size_t classical_combination_ops = 0;
};

struct DecideOptions {
  bool exact = false;
  std::size_t shots = 8192;
  std::uint64_t seed = 0;
  bool force = false;
  std::size_t qubit_cap = kDefaultQubitCap;
};

inline DecisionReport decide_process_a(const DecisionProblem& problem, const DecideOptions& opt) {
  ProcessAState pa = process_a_state(problem, {opt.force, opt.qubit_cap});
  DecisionReport r;
  r.process = Process::A;
  r.exact = opt.exact;
  r.theoretical_distribution = exact_action_distribution(pa);
  r.iterations = {pa.stage1.iterations, pa.stage2.iterations};
  r.amplified_state_constructions = 1;
  if (opt.exact) {
    r.action_distribution = *r.theoretical_distribution;
    r.matched_shot_fraction = pa.match_mass_final;
  } else {
    if (opt.shots == 0) throw DomainError("shots must be positive");
    ShotTally t = sampled_action_distribution(pa, opt.shots, opt.seed);
    if (!t.distribution) throw UnavailableError("no shot matched the outcome/utility registers");
    r.action_distribution = *t.distribution;
    r.shots_used = t.shots;
    r.matched_shots = t.matched;
    r.matched_shot_fraction = double(t.matched) / double(t.shots);
  }
  r.chosen_action = r.action_distribution.argmax();
  return r;
}

/// Per-action quantum estimate of P(r | a, e), EU combined classically.
/// Action a uses shot seed derive_seed(seed, a).
inline DecisionReport decide_process_b(const DecisionProblem& problem, std::size_t shots_per_estimate,
                                       std::uint64_t seed, const Options& opt = {}) {
  require_valid(problem, opt.force, opt.qubit_cap);
  if (shots_per_estimate == 0) throw DomainError("shots must be positive");
  const BayesianNetwork& net = problem.network;
  const std::size_t n_a = net.variables[problem.action].arity;
  const std::size_t n_r = net.variables[problem.outcome].arity;
  const auto& u = problem.utility.values;

  DecisionReport r;
  r.process = Process::B;
  for (std::size_t a = 0; a < n_a; ++a) {
    Evidence e = problem.evidence;
    e[problem.action] = a;
    auto est = qinference::q_conditional(net, e, problem.outcome, shots_per_estimate, derive_seed(seed, a),
                                         opt.qubit_cap);
    ++r.amplified_state_constructions;
    r.iterations.push_back(est.schedule.iterations);
    r.shots_used += est.shots;
    r.matched_shots += est.accepted;
    if (!est.estimate) {
      throw UnavailableError("no accepted shot for action " + std::to_string(a));
    }
    double eu = 0.0, var = 0.0;
    for (std::size_t v = 0; v < n_r; ++v) {
      double p = (*est.estimate)[v];
      eu += p * u[v];
      var += u[v] * u[v] * p * (1.0 - p);
    }
    r.expected_utilities.push_back(eu);
    r.eu_deltas.push_back(std::sqrt(var / double(est.accepted)));
  }
  r.classical_combination_ops = 2 * (n_a + n_r);
  r.matched_shot_fraction = double(r.matched_shots) / double(r.shots_used);

  double total = 0.0;
  for (double eu : r.expected_utilities) total += eu;
  if (!(total > 0.0)) throw DegenerateUtilityError("all estimated expected utilities are zero");
  r.action_distribution = Distribution::normalized(r.expected_utilities);
  r.chosen_action = argmax_lowest(r.expected_utilities);
  return r;
}

inline DecisionReport decide_classical(const DecisionProblem& problem, const Options& opt = {}) {
  require_valid(problem, opt.force, opt.qubit_cap);
  classical::EuReport eu = classical::best_action(problem);
  DecisionReport r;
  r.process = Process::Classical;
  r.exact = true;
  r.expected_utilities = eu.expected_utilities;
  r.eu_deltas = eu.deltas;
  r.chosen_action = eu.best_action;
  double total = 0.0;
  for (double v : eu.expected_utilities) total += v;
  if (!(total > 0.0)) throw DegenerateUtilityError("all expected utilities are zero");
  r.action_distribution = Distribution::normalized(eu.expected_utilities);
  r.theoretical_distribution = r.action_distribution;
  return r;
}

}  // namespace qbd::qdecision
