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
 * @file costmodel.hpp
 * Operation-count model for the two decision processes.
 *
 * A run needs S samples, each costing I_s amplified preparations of a
 * circuit with n 2^m rotations:
 *
 *   A: n 2^m sqrt(N_r / P(e)) * A pi (1 - pi) / delta_a^2
 *   B: n 2^m sqrt(N_a / P(e)) * A pi (1 - pi) / delta_b^2 * N_a + 2 (N_a + N_r)
 *
 * where A is a chi-square percentile for simultaneous multinomial intervals,
 * bounded below by k + 2 ln(1/alpha) - 5/2 for k degrees of freedom.
 * Process A samples the action variable (N_a - 1 degrees of freedom),
 * Process B the outcome variable (N_r - 1).
 *
 * When B's estimates are combined into normalized expected utilities the
 * per-action error delta_b turns into delta_a = sqrt(N_r) / N_a * delta_b.
 */

#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "qbd/classical.hpp"
#include "qbd/qdecision.hpp"
#include "qbd/qinference.hpp"

namespace qbd::cost {

using qdecision::Process;

/// sqrt(N_r / p_e)
inline double iterations_a(double n_r, double p_e) {
  if (!(n_r >= 1.0)) throw DomainError("N_r must be at least 1");
  if (!(p_e > 0.0 && p_e <= 1.0)) throw DomainError("P(e) must lie in (0, 1]");
  return std::sqrt(n_r / p_e);
}

/// sqrt(N_a / p_e)
inline double iterations_b(double n_a, double p_e) {
  if (!(n_a >= 1.0)) throw DomainError("N_a must be at least 1");
  if (!(p_e > 0.0 && p_e <= 1.0)) throw DomainError("P(e) must lie in (0, 1]");
  return std::sqrt(n_a / p_e);
}

/// A pi (1 - pi) / delta^2; zero for a degenerate category.
inline double samples_needed(double a, double pi, double delta) {
  if (!(a > 0.0)) throw DomainError("chi-square percentile must be positive");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(pi >= 0.0 && pi <= 1.0)) throw DomainError("category probability outside [0, 1]");
  if (pi == 0.0 || pi == 1.0) return 0.0;
  return a * pi * (1.0 - pi) / (delta * delta);
}

/// k + 2 ln(1/alpha) - 5/2. Not clamped; may be non-positive.
inline double chi_square_lower_bound(double k, double alpha) {
  return k + 2.0 * std::log(1.0 / alpha) - 2.5;
}

inline double delta_a_from_b(double delta_b, double n_a, double n_r) { return std::sqrt(n_r) / n_a * delta_b; }
inline double delta_b_from_a(double delta_a, double n_a, double n_r) { return delta_a * n_a / std::sqrt(n_r); }

struct CostParams {
  double n = 1;  // variables
  double m = 0;  // largest parent set
  double n_a = 2;
  double n_r = 2;
  double p_e = 1.0;
  double delta = 0.05;  // target error on Process A's action distribution
  double alpha = 0.05;
  /// Category probability; 1/2 (worst case) when unset.
  std::optional<double> pi;
  /// Per-action error for Process B; propagated from delta when unset.
  std::optional<double> delta_b;
};

struct CostEstimate {
  Process process = Process::A;
  CostParams params;
  double encoding = 0.0;               // n 2^m
  double iterations_per_sample = 0.0;  // I_s
  double degrees_of_freedom = 0.0;
  double chi_square = 0.0;  // A
  double pi = 0.5;
  double delta = 0.0;    // delta_a for A, delta_b for B
  double samples = 0.0;  // S
  double repetitions = 1.0;  // N_a for B
  double additive = 0.0;     // 2 (N_a + N_r) for B
  double total_ops = 0.0;
};

inline void check_params(const CostParams& p) {
  if (!(p.n >= 1.0)) throw DomainError("n must be at least 1");
  if (!(p.m >= 0.0)) throw DomainError("m must be non-negative");
  if (!(p.n_a >= 1.0) || !(p.n_r >= 1.0)) throw DomainError("N_a and N_r must be at least 1");
  if (!(p.p_e > 0.0 && p.p_e <= 1.0)) throw DomainError("P(e) must lie in (0, 1]");
  if (!(p.delta > 0.0)) throw DomainError("delta must be positive");
  if (p.delta_b && !(*p.delta_b > 0.0)) throw DomainError("delta_b must be positive");
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (p.pi && !(*p.pi > 0.0 && *p.pi < 1.0)) throw DomainError("pi must lie in (0, 1)");
}

inline CostEstimate total_ops(Process process, const CostParams& p) {
  if (process == Process::Classical) throw DomainError("no operation model for the classical process");
  check_params(p);
  CostEstimate c;
  c.process = process;
  c.params = p;
  c.encoding = p.n * std::exp2(p.m);
  c.pi = p.pi.value_or(0.5);
  const bool is_a = process == Process::A;
  const double categories = is_a ? p.n_a : p.n_r;
  c.degrees_of_freedom = std::max(categories - 1.0, 1.0);
  c.chi_square = chi_square_lower_bound(c.degrees_of_freedom, p.alpha);
  if (!(c.chi_square > 0.0)) {
    throw DomainError("chi-square bound is not positive for alpha = " + std::to_string(p.alpha));
  }
  if (is_a) {
    c.iterations_per_sample = iterations_a(p.n_r, p.p_e);
    c.delta = p.delta;
  } else {
    c.iterations_per_sample = iterations_b(p.n_a, p.p_e);
    c.delta = p.delta_b.value_or(delta_b_from_a(p.delta, p.n_a, p.n_r));
    c.repetitions = p.n_a;
    c.additive = 2.0 * (p.n_a + p.n_r);
  }
  c.samples = samples_needed(c.chi_square, c.pi, c.delta);
  c.total_ops = c.encoding * c.iterations_per_sample * c.samples * c.repetitions + c.additive;
  return c;
}

/// sqrt(N_r / N_a)
inline double ratio_bound(double n_r, double n_a) {
  if (!(n_r >= 1.0) || !(n_a >= 1.0)) throw DomainError("N_r and N_a must be at least 1");
  return std::sqrt(n_r / n_a);
}

struct RatioCheck {
  CostEstimate a;
  CostEstimate b;
  double ratio = 0.0;
  double bound = 0.0;
  bool holds = false;
  /// Additive term of B over A's total.
  double t1 = 0.0;
  /// Large-dimension approximation sqrt(N_r/N_a) + 2 N_a sqrt(N_r P(e)) delta_a^2 / (n 2^m).
  double asymptotic = 0.0;
};

/// B/A with the mean category probabilities 1/N_a and 1/N_r (or a common
/// pi when one is given) and delta_b propagated from delta_a.
inline RatioCheck ratio_check(const CostParams& p) {
  RatioCheck r;
  CostParams pa = p, pb = p;
  if (!p.pi) {
    pa.pi = 1.0 / p.n_a;
    pb.pi = 1.0 / p.n_r;
  }
  r.a = total_ops(Process::A, pa);
  r.b = total_ops(Process::B, pb);
  r.ratio = r.b.total_ops / r.a.total_ops;
  r.bound = ratio_bound(p.n_r, p.n_a);
  r.holds = r.ratio >= r.bound;
  r.t1 = r.b.additive / r.a.total_ops;
  r.asymptotic = r.bound + 2.0 * p.n_a * std::sqrt(p.n_r * p.p_e) * p.delta * p.delta / r.a.encoding;
  return r;
}

/// Cost parameters of a decision problem; P(e) by exact enumeration.
inline CostParams params_for(const DecisionProblem& problem, double delta, double alpha) {
  const auto& net = problem.network;
  CostParams p;
  p.n = double(net.size());
  p.m = double(net.max_in_degree());
  p.n_a = double(net.variables.at(problem.action).arity);
  p.n_r = double(net.variables.at(problem.outcome).arity);
  p.p_e = classical::evidence_probability(net, problem.evidence);
  p.delta = delta;
  p.alpha = alpha;
  return p;
}

struct Comparison {
  double predicted = 0.0;
  double measured = 0.0;
  double ratio() const { return predicted != 0.0 ? measured / predicted : (measured == 0.0 ? 1.0 : INFINITY); }
};

struct AcceptanceCheck {
  double expected = 0.0;  // per-shot acceptance probability
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double observed() const { return trials ? double(accepted) / double(trials) : 0.0; }
  double z() const {
    double sd = std::sqrt(expected * (1.0 - expected) / double(trials));
    double diff = observed() - expected;
    if (sd == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
    return diff / sd;
  }
  bool within_3sigma() const { return std::abs(z()) <= 3.0; }
};

struct CostAudit {
  Comparison stage1_iterations;
  Comparison stage2_iterations;
  /// Oracle queries per accepted inference sample: sqrt(N_r / P(e)) against
  /// (2k + 1) shots / accepted.
  Comparison queries_per_sample;
  /// Forward samples per accepted sample: 1 / P(e).
  Comparison classical_samples_per_sample;
  AcceptanceCheck quantum_inference;  // against sin^2((2k+1) theta / 2)
  AcceptanceCheck process_a_match;    // against the final matched mass
  AcceptanceCheck rejection;          // against P(e)
};

/// Runs inference and Process A with instrumentation and compares counted
/// iterations and shot acceptance with their predictions.
inline CostAudit empirical_cost_audit(const DecisionProblem& problem, std::uint64_t seed,
                                      std::size_t shots = 8192, const qdecision::Options& opt = {}) {
  if (shots == 0) throw DomainError("shots must be positive");
  const auto& net = problem.network;
  CostAudit audit;

  qdecision::ProcessAState pa = qdecision::process_a_state(problem, opt);
  audit.stage1_iterations = {double(qinference::iteration_count(pa.p_evidence).iterations),
                             double(pa.oracle_calls_stage1)};
  audit.stage2_iterations = {double(qinference::iteration_count(pa.match_mass_predicted).iterations),
                             double(pa.oracle_calls_stage2)};
  auto tally = qdecision::sampled_action_distribution(pa, shots, derive_seed(seed, 0));
  audit.process_a_match = {pa.match_mass_final, tally.shots, tally.matched};

  qinference::AmplifiedState amp = qinference::amplified_state(net, problem.evidence, opt.qubit_cap);
  auto est = qinference::q_conditional(amp, problem.outcome, net.variables[problem.outcome].arity, shots,
                                       derive_seed(seed, 1));
  audit.quantum_inference = {amp.schedule.predicted_success, est.shots, est.accepted};
  double per_shot = 2.0 * double(amp.oracle_calls) + 1.0;
  double n_r = double(net.variables[problem.outcome].arity);
  audit.queries_per_sample = {iterations_a(n_r, amp.p_evidence),
                              est.accepted ? per_shot * double(est.shots) / double(est.accepted) : INFINITY};

  auto rej = classical::rejection_sample(net, problem.evidence, problem.outcome, shots, derive_seed(seed, 2));
  audit.rejection = {amp.p_evidence, rej.samples, rej.useful};
  audit.classical_samples_per_sample = {1.0 / amp.p_evidence,
                                        rej.useful ? double(rej.samples) / double(rej.useful) : INFINITY};
  return audit;
}

}  // namespace qbd::cost
