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
 * @file classical.hpp
 * Classical reference inference: exact conditionals by full enumeration,
 * forward-sampling rejection estimates, and expected-utility argmax.
 * Everything quantum in this library is checked against these.
 */

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qbd/bayesnet.hpp"
#include "qbd/distribution.hpp"
#include "qbd/rng.hpp"

namespace qbd::classical {

/// P(e) by enumeration.
inline double evidence_probability(const BayesianNetwork& net, const Evidence& evidence) {
  check_evidence(net, evidence);
  std::vector<std::size_t> x(net.size(), 0);
  double total = 0.0;
  do {
    if (consistent(x, evidence)) total += joint_probability(net, x);
  } while (next_assignment(net, x));
  return total;
}

/// P(query | evidence): sums joints over every unassigned variable and
/// normalizes by P(e).
inline Distribution exact_conditional(const BayesianNetwork& net, VarIndex query,
                                      const Evidence& evidence) {
  if (query >= net.size()) throw DomainError("query variable out of range");
  if (evidence.contains(query)) throw DomainError("query variable is part of the evidence");
  check_evidence(net, evidence);

  std::vector<double> weights(net.variables[query].arity, 0.0);
  std::vector<std::size_t> x(net.size(), 0);
  do {
    if (consistent(x, evidence)) weights[x[query]] += joint_probability(net, x);
  } while (next_assignment(net, x));

  double p_e = 0.0;
  for (double w : weights) p_e += w;
  if (!(p_e > 0.0)) throw ZeroEvidenceError("evidence has probability zero");
  for (double& w : weights) w /= p_e;
  return Distribution(std::move(weights));
}

/// Draws one full assignment, each variable from its CPT row in topological
/// order.
inline void forward_sample(const BayesianNetwork& net, CounterRng& rng, std::vector<std::size_t>& x) {
  x.resize(net.size());
  for (VarIndex i = 0; i < net.size(); ++i) {
    const auto& row = net.cpts[i].rows[net.row_index(i, x)];
    double u = rng.uniform();
    std::size_t v = 0;
    double acc = row[0];
    while (u >= acc && v + 1 < row.size()) acc += row[++v];
    // rounding can leave u past the final partial sum
    while (row[v] == 0.0 && v > 0) --v;
    x[i] = v;
  }
}

struct RejectionEstimate {
  std::optional<Distribution> estimate;
  std::vector<std::size_t> counts;
  std::size_t samples = 0;
  std::size_t useful = 0;

  double acceptance() const { return samples ? double(useful) / double(samples) : 0.0; }
};

inline constexpr std::size_t kSampleBatch = 4096;

/// Rejection sampling. Batch b draws from stream (seed, b), so results do not
/// depend on how batches are scheduled.
inline RejectionEstimate rejection_sample(const BayesianNetwork& net, const Evidence& evidence,
                                          VarIndex target, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw DomainError("n_samples must be positive");
  if (target >= net.size()) throw DomainError("target variable out of range");
  check_evidence(net, evidence);

  RejectionEstimate out;
  out.samples = n_samples;
  out.counts.assign(net.variables[target].arity, 0);

  CounterRng root(seed);
  std::vector<std::size_t> x;
  for (std::size_t begin = 0, batch = 0; begin < n_samples; begin += kSampleBatch, ++batch) {
    CounterRng rng = root.split(batch);
    std::size_t end = std::min(n_samples, begin + kSampleBatch);
    for (std::size_t s = begin; s < end; ++s) {
      forward_sample(net, rng, x);
      if (!consistent(x, evidence)) continue;
      ++out.useful;
      ++out.counts[x[target]];
    }
  }
  if (out.useful > 0) out.estimate = Distribution::from_counts(out.counts);
  return out;
}

/// EU(a | e) = sum_r P(r | a, e) U(r).
inline double expected_utility(const DecisionProblem& problem, std::size_t action_value) {
  const auto& net = problem.network;
  if (action_value >= net.variables.at(problem.action).arity) {
    throw DomainError("action value out of range");
  }
  if (problem.utility.values.size() != net.variables.at(problem.outcome).arity) {
    throw DomainError("utility length does not match outcome arity");
  }
  Evidence e = problem.evidence;
  e[problem.action] = action_value;
  Distribution p = exact_conditional(net, problem.outcome, e);
  double eu = 0.0;
  for (std::size_t r = 0; r < p.size(); ++r) eu += p[r] * problem.utility.values[r];
  return eu;
}

struct EuReport {
  std::vector<double> expected_utilities;
  std::size_t best_action = 0;
  /// Per-action uncertainty of the EU values; zero for exact computation.
  std::vector<double> deltas;
  bool tie = false;
};

inline EuReport best_action(const DecisionProblem& problem) {
  std::size_t n_a = problem.network.variables.at(problem.action).arity;
  EuReport report;
  for (std::size_t a = 0; a < n_a; ++a) report.expected_utilities.push_back(expected_utility(problem, a));
  report.deltas.assign(n_a, 0.0);
  report.best_action = argmax_lowest(report.expected_utilities);
  double best = report.expected_utilities[report.best_action];
  for (std::size_t a = 0; a < n_a; ++a) {
    if (a != report.best_action && report.expected_utilities[a] == best) report.tie = true;
  }
  return report;
}

}  // namespace qbd::classical
