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
 * @file qinference.hpp
 * Quantum rejection sampling: encode the network, amplify the amplitudes
 * consistent with the evidence, then measure. Shots that still miss the
 * evidence (integer iteration counts rarely land exactly on the good
 * subspace) are rejected, so the estimate stays unbiased and the
 * imprecision only costs shots.
 */

#pragma once

#include <cfenv>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "qbd/classical.hpp"
#include "qbd/encoder.hpp"
#include "qbd/statevector.hpp"

namespace qbd::qinference {

using qsim::BasisIndex;
using qsim::BasisPredicate;
using qsim::CircuitPlan;
using qsim::StateVector;

/// Bit test for a set of register values; callable as a BasisPredicate.
struct RegisterMatch {
  BasisIndex mask = 0;
  BasisIndex value = 0;

  bool operator()(BasisIndex index) const noexcept { return (index & mask) == value; }
};

inline RegisterMatch evidence_mask(const CircuitPlan& plan, const Evidence& evidence) {
  RegisterMatch m;
  for (const auto& [var, value] : evidence) {
    if (var >= plan.var_map.size()) throw DomainError("evidence variable has no register in the plan");
    const auto& reg = plan.var_map[var];
    if (value >= (std::size_t{1} << reg.count)) throw DomainError("evidence value does not fit its register");
    m.mask |= reg.mask();
    m.value |= reg.place(value);
  }
  return m;
}

/// True iff each evidence variable's register holds its observed value.
/// Empty evidence gives the always-true predicate.
inline BasisPredicate evidence_predicate(const CircuitPlan& plan, const Evidence& evidence) {
  return evidence_mask(plan, evidence);
}

struct AmplificationSchedule {
  double p_good = 1.0;
  double theta = 0.0;
  std::size_t iterations = 0;
  double predicted_success = 1.0;
};

/// theta = 2 asin(sqrt p), k = round(pi / (2 theta) - 1/2) with ties to even,
/// success = sin^2((2k + 1) theta / 2).
inline AmplificationSchedule iteration_count(double p_good) {
  if (!(p_good <= 1.0 + kProbabilityTolerance)) throw DomainError("good-subspace probability above 1");
  if (!(p_good > 0.0)) throw NoSolutionError("good subspace has probability zero");
  p_good = std::min(p_good, 1.0);

  AmplificationSchedule s;
  s.p_good = p_good;
  s.theta = 2.0 * std::asin(std::sqrt(p_good));
  double x = std::numbers::pi / (2.0 * s.theta) - 0.5;
  // snap values a rounding error away from a half so the tie rule applies
  double half = std::floor(x) + 0.5;
  if (std::abs(x - half) < 1e-9) x = half;
  double k = std::nearbyint(x);  // FE_TONEAREST: ties to even
  s.iterations = k > 0.0 ? static_cast<std::size_t>(k) : 0;
  double amp = std::sin((2.0 * double(s.iterations) + 1.0) * s.theta / 2.0);
  s.predicted_success = amp * amp;
  return s;
}

struct AmplifiedState {
  CircuitPlan plan;  // encoding circuit; its var_map locates every variable
  StateVector state;
  RegisterMatch good;
  AmplificationSchedule schedule;
  double p_evidence = 1.0;
  /// Oracle calls actually applied while building `state`.
  std::size_t oracle_calls = 0;
};

/// run(encode(net)) followed by k evidence-amplification iterates, k chosen
/// from the classically computed P(e).
inline AmplifiedState amplified_state(const BayesianNetwork& net, const Evidence& evidence,
                                      std::size_t qubit_cap = kDefaultQubitCap) {
  AmplifiedState out;
  out.plan = encoder::encode(net, qubit_cap);
  out.good = evidence_mask(out.plan, evidence);
  out.p_evidence = classical::evidence_probability(net, evidence);
  if (!(out.p_evidence > 0.0)) throw NoSolutionError("evidence has probability zero");
  out.schedule = iteration_count(out.p_evidence);

  out.state = qsim::run(out.plan, qubit_cap);
  auto ops = qsim::grover_ops(out.plan, out.good, out.schedule.iterations);
  qsim::apply_all(out.state, ops);
  out.oracle_calls = qsim::count_oracle_calls(ops);
  return out;
}

/// Full-register distribution inside the good subspace, renormalized
/// (exact, no sampling). Entry i is the posterior of basis state i.
inline std::vector<double> good_subspace_distribution(const AmplifiedState& amp) {
  std::vector<double> p(amp.state.size(), 0.0);
  double mass = 0.0;
  for (BasisIndex i = 0; i < p.size(); ++i) {
    if (amp.good(i)) {
      p[i] = amp.state.probability(i);
      mass += p[i];
    }
  }
  if (!(mass > 0.0)) throw NoSolutionError("good subspace is empty");
  for (double& v : p) v /= mass;
  return p;
}

/// Exact (post-selected) conditional of one variable from the amplified state.
inline Distribution exact_conditional(const AmplifiedState& amp, VarIndex query, std::size_t arity) {
  const auto& reg = amp.plan.var_map.at(query);
  std::vector<double> w(arity, 0.0);
  for (BasisIndex i = 0; i < amp.state.size(); ++i) {
    if (!amp.good(i)) continue;
    std::size_t v = reg.read(i);
    if (v < arity) w[v] += amp.state.probability(i);
  }
  return Distribution::normalized(std::move(w));
}

struct QuantumEstimate {
  std::optional<Distribution> estimate;
  std::vector<std::size_t> counts;
  std::size_t shots = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  AmplificationSchedule schedule;
  double p_evidence = 1.0;

  double acceptance() const { return shots ? double(accepted) / double(shots) : 0.0; }
};

/// Measures the amplified state `shots` times, rejects shots that violate the
/// evidence and tallies the query variable over the rest.
inline QuantumEstimate q_conditional(const AmplifiedState& amp, VarIndex query, std::size_t arity,
                                     std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw DomainError("shots must be positive");
  if (query >= amp.plan.var_map.size()) throw DomainError("query variable out of range");
  const auto& reg = amp.plan.var_map[query];

  QuantumEstimate out;
  out.shots = shots;
  out.schedule = amp.schedule;
  out.p_evidence = amp.p_evidence;
  out.counts.assign(arity, 0);
  qsim::for_each_shot(amp.state, shots, seed, [&](BasisIndex i) {
    if (!amp.good(i)) {
      ++out.rejected;
      return;
    }
    ++out.accepted;
    std::size_t v = reg.read(i);
    if (v < arity) ++out.counts[v];
  });
  if (out.accepted > 0) out.estimate = Distribution::from_counts(out.counts);
  return out;
}

inline QuantumEstimate q_conditional(const BayesianNetwork& net, const Evidence& evidence, VarIndex query,
                                     std::size_t shots, std::uint64_t seed,
                                     std::size_t qubit_cap = kDefaultQubitCap) {
  if (query >= net.size()) throw DomainError("query variable out of range");
  if (evidence.contains(query)) throw DomainError("query variable is part of the evidence");
  if (shots == 0) throw DomainError("shots must be positive");
  check_evidence(net, evidence);
  AmplifiedState amp = amplified_state(net, evidence, qubit_cap);
  return q_conditional(amp, query, net.variables[query].arity, shots, seed);
}

}  // namespace qbd::qinference
