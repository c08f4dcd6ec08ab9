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
 * @file statevector.hpp
 * Dense statevector simulator restricted to the gates the inference and
 * decision circuits use: multi-controlled Y rotations and phase oracles.
 * Amplitude amplification is expressed with those two gates plus exact
 * uncomputation of the preparation circuit.
 *
 * Conventions:
 *  - qubit 0 is the least significant bit of the basis index;
 *  - Ry(t)|0> = cos(t/2)|0> + sin(t/2)|1>.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qbd/bayesnet.hpp"
#include "qbd/distribution.hpp"
#include "qbd/error.hpp"
#include "qbd/rng.hpp"

namespace qbd::qsim {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;
using BasisPredicate = std::function<bool(BasisIndex)>;

struct Control {
  std::size_t qubit;
  bool bit;
};

/// Y rotation on `target`, applied only where every control qubit holds its
/// required bit.
struct CRy {
  std::size_t target = 0;
  double angle = 0.0;
  std::vector<Control> controls;
};

/// What a phase flip is for; only used for instrumentation.
enum class FlipRole { Generic, Oracle, ZeroReflection };

/// Negates every amplitude whose basis index satisfies the predicate.
struct PhaseFlip {
  BasisPredicate predicate;
  FlipRole role = FlipRole::Generic;
};

using GateOp = std::variant<CRy, PhaseFlip>;

/// Contiguous block of qubits holding one register (variable value, LSB first).
struct QubitRange {
  std::size_t first = 0;
  std::size_t count = 0;

  BasisIndex mask() const noexcept { return ((BasisIndex{1} << count) - 1) << first; }
  std::size_t read(BasisIndex index) const noexcept {
    return static_cast<std::size_t>((index >> first) & ((BasisIndex{1} << count) - 1));
  }
  BasisIndex place(std::size_t value) const noexcept { return BasisIndex(value) << first; }
  std::size_t end() const noexcept { return first + count; }
};

struct CircuitPlan {
  std::size_t qubits = 0;
  std::vector<GateOp> ops;
  /// var_map[i] is the register of variable i (empty for non-network plans).
  std::vector<QubitRange> var_map;
};

class StateVector {
 public:
  StateVector() = default;

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  const Amplitude& operator[](BasisIndex i) const { return amps_.at(i); }

  double probability(BasisIndex i) const { return std::norm(amps_.at(i)); }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  /// |0...0> on q qubits. Throws CapacityError above `cap`.
  static StateVector zero(std::size_t q, std::size_t cap = kDefaultQubitCap) {
    if (q == 0) throw DomainError("state needs at least one qubit");
    if (q > cap) {
      throw CapacityError("state of " + std::to_string(q) + " qubits exceeds the cap of " +
                          std::to_string(cap));
    }
    StateVector s;
    s.qubits_ = q;
    s.amps_.assign(std::size_t{1} << q, Amplitude{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
  }

  /// Product state |high> (x) |low> where `low` occupies the low qubits.
  static StateVector tensor(const StateVector& high, const StateVector& low,
                            std::size_t cap = kDefaultQubitCap) {
    StateVector s = zero(high.qubits() + low.qubits(), cap);
    for (std::size_t h = 0; h < high.size(); ++h) {
      for (std::size_t l = 0; l < low.size(); ++l) {
        s.amps_[(h << low.qubits()) | l] = high.amps_[h] * low.amps_[l];
      }
    }
    return s;
  }

 private:
  std::size_t qubits_ = 0;
  std::vector<Amplitude> amps_;
};

inline StateVector zero_state(std::size_t q, std::size_t cap = kDefaultQubitCap) {
  return StateVector::zero(q, cap);
}

inline void check_op(const CRy& ry, std::size_t qubits) {
  if (ry.target >= qubits) {
    throw DomainError("rotation target qubit " + std::to_string(ry.target) + " out of range");
  }
  if (!std::isfinite(ry.angle)) throw DomainError("rotation angle is not finite");
  for (const auto& c : ry.controls) {
    if (c.qubit >= qubits) throw DomainError("control qubit " + std::to_string(c.qubit) + " out of range");
    if (c.qubit == ry.target) throw DomainError("control qubit equals rotation target");
  }
}

inline void check_op(const PhaseFlip& flip, std::size_t) {
  if (!flip.predicate) throw DomainError("phase flip without a predicate");
}

inline void check_op(const GateOp& op, std::size_t qubits) {
  std::visit([&](const auto& g) { check_op(g, qubits); }, op);
}

inline void apply(StateVector& state, const CRy& op) {
  check_op(op, state.qubits());
  BasisIndex cmask = 0, cvalue = 0;
  for (const auto& c : op.controls) {
    cmask |= BasisIndex{1} << c.qubit;
    if (c.bit) cvalue |= BasisIndex{1} << c.qubit;
  }
  const double c = std::cos(op.angle / 2.0);
  const double s = std::sin(op.angle / 2.0);
  const BasisIndex tbit = BasisIndex{1} << op.target;
  const BasisIndex low = tbit - 1;
  auto amps = state.amplitudes();
  const BasisIndex half = amps.size() / 2;
  for (BasisIndex k = 0; k < half; ++k) {
    // insert a zero at the target bit position
    BasisIndex i0 = ((k & ~low) << 1) | (k & low);
    if ((i0 & cmask) != cvalue) continue;
    BasisIndex i1 = i0 | tbit;
    Amplitude a0 = amps[i0], a1 = amps[i1];
    amps[i0] = c * a0 - s * a1;
    amps[i1] = s * a0 + c * a1;
  }
}

inline void apply(StateVector& state, const PhaseFlip& op) {
  if (!op.predicate) throw DomainError("phase flip without a predicate");
  auto amps = state.amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if (op.predicate(i)) amps[i] = -amps[i];
  }
}

inline void apply(StateVector& state, const GateOp& op) {
  std::visit([&](const auto& g) { qsim::apply(state, g); }, op);
}

/// Exact inverse: rotations negate their angle, phase flips are involutions.
inline GateOp inverse(const GateOp& op) {
  if (const auto* ry = std::get_if<CRy>(&op)) {
    CRy inv = *ry;
    inv.angle = -ry->angle;
    return inv;
  }
  return op;
}

inline void apply_all(StateVector& state, std::span<const GateOp> ops) {
  for (const auto& op : ops) qsim::apply(state, op);
}

inline void apply_inverse(StateVector& state, std::span<const GateOp> ops) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) qsim::apply(state, inverse(*it));
}

inline void check_plan(const CircuitPlan& plan) {
  for (const auto& op : plan.ops) check_op(op, plan.qubits);
  std::vector<bool> used(plan.qubits, false);
  for (const auto& r : plan.var_map) {
    if (r.end() > plan.qubits) throw DomainError("register exceeds the plan's qubit count");
    for (std::size_t q = r.first; q < r.end(); ++q) {
      if (used[q]) throw DomainError("registers overlap at qubit " + std::to_string(q));
      used[q] = true;
    }
  }
}

inline StateVector run(const CircuitPlan& plan, std::size_t cap = kDefaultQubitCap) {
  check_plan(plan);
  StateVector state = zero_state(plan.qubits, cap);
  apply_all(state, plan.ops);
  return state;
}

/// Reflection 2|0><0| - I restricted to the low `qubits` qubits (identity on
/// the rest).
inline PhaseFlip zero_reflection(std::size_t qubits) {
  const BasisIndex mask = (BasisIndex{1} << qubits) - 1;
  return PhaseFlip{[mask](BasisIndex i) { return (i & mask) != 0; }, FlipRole::ZeroReflection};
}

/// Gate sequence for k amplitude-amplification iterates
///   Q = (2|psi><psi| - I) S_good,   |psi> = P|0>,
/// with the reflection realised as P (2|0><0| - I) P^dagger.
inline std::vector<GateOp> grover_ops(const CircuitPlan& prep, const BasisPredicate& good, std::size_t k) {
  std::vector<GateOp> ops;
  ops.reserve(k * (2 * prep.ops.size() + 2));
  for (std::size_t it = 0; it < k; ++it) {
    ops.push_back(PhaseFlip{good, FlipRole::Oracle});
    for (auto op = prep.ops.rbegin(); op != prep.ops.rend(); ++op) ops.push_back(inverse(*op));
    ops.push_back(zero_reflection(prep.qubits));
    ops.insert(ops.end(), prep.ops.begin(), prep.ops.end());
  }
  return ops;
}

/// Applies k iterates of Q in place. `state` must be run(prep) or an earlier
/// iterate of it; prep may act on fewer qubits than the state.
inline void grover_iterate(StateVector& state, const CircuitPlan& prep, const BasisPredicate& good,
                           std::size_t k) {
  if (prep.qubits > state.qubits()) throw DomainError("preparation circuit is wider than the state");
  for (std::size_t it = 0; it < k; ++it) {
    qsim::apply(state, PhaseFlip{good, FlipRole::Oracle});
    apply_inverse(state, prep.ops);
    qsim::apply(state, zero_reflection(prep.qubits));
    apply_all(state, prep.ops);
  }
}

/// Number of oracle calls (Grover iterates) in an op list.
inline std::size_t count_oracle_calls(std::span<const GateOp> ops) {
  return std::count_if(ops.begin(), ops.end(), [](const GateOp& op) {
    const auto* f = std::get_if<PhaseFlip>(&op);
    return f && f->role == FlipRole::Oracle;
  });
}

inline double good_mass(const StateVector& state, const BasisPredicate& good) {
  double m = 0.0;
  auto amps = state.amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if (good(i)) m += std::norm(amps[i]);
  }
  return m;
}

/// Reads the bits at `qubits` (qubits[0] least significant) as an integer.
inline std::size_t gather_bits(BasisIndex index, std::span<const std::size_t> qubits) {
  std::size_t v = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) v |= std::size_t((index >> qubits[j]) & 1U) << j;
  return v;
}

inline void check_subset(const StateVector& state, std::span<const std::size_t> qubits) {
  if (qubits.empty()) throw DomainError("empty qubit subset");
  for (std::size_t q : qubits) {
    if (q >= state.qubits()) throw DomainError("qubit " + std::to_string(q) + " out of range");
  }
}

/// Diagonal of the reduced density operator on `qubits`:
/// P(v) = sum over basis states whose subset bits equal v of |amp|^2.
inline Distribution marginal(const StateVector& state, std::span<const std::size_t> qubits) {
  check_subset(state, qubits);
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  auto amps = state.amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i) p[gather_bits(i, qubits)] += std::norm(amps[i]);
  return Distribution(std::move(p));
}

inline std::vector<std::size_t> qubits_of(const QubitRange& r) {
  std::vector<std::size_t> q(r.count);
  for (std::size_t j = 0; j < r.count; ++j) q[j] = r.first + j;
  return q;
}

inline Distribution marginal(const StateVector& state, const QubitRange& reg) {
  return marginal(state, qubits_of(reg));
}

/// Measurement in the computational basis: inverse-CDF sampling over the
/// squared amplitudes. Built once per state; draws are O(log 2^q).
class BasisSampler {
 public:
  explicit BasisSampler(const StateVector& state) : cdf_(state.size()) {
    double acc = 0.0;
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      acc += std::norm(amps[i]);
      cdf_[i] = acc;
    }
    total_ = acc;
  }

  BasisIndex draw(CounterRng& rng) const {
    double u = rng.uniform() * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t i = it == cdf_.end() ? cdf_.size() - 1 : std::size_t(it - cdf_.begin());
    // never land on a zero-probability index at the tail
    while (i > 0 && cdf_[i] == cdf_[i - 1]) --i;
    return i;
  }

 private:
  std::vector<double> cdf_;
  double total_ = 0.0;
};

inline constexpr std::size_t kShotBatch = 4096;

/// Calls fn(basis_index) for each of `shots` i.i.d. measurements. Batch b uses
/// RNG stream (seed, b).
template <class Fn>
void for_each_shot(const StateVector& state, std::size_t shots, std::uint64_t seed, Fn&& fn) {
  if (shots == 0) throw DomainError("shots must be positive");
  BasisSampler sampler(state);
  CounterRng root(seed);
  for (std::size_t begin = 0, batch = 0; begin < shots; begin += kShotBatch, ++batch) {
    CounterRng rng = root.split(batch);
    std::size_t end = std::min(shots, begin + kShotBatch);
    for (std::size_t s = begin; s < end; ++s) fn(sampler.draw(rng));
  }
}

/// Counts per subset value over `shots` measurements.
inline std::vector<std::size_t> sample(const StateVector& state, std::span<const std::size_t> qubits,
                                       std::size_t shots, std::uint64_t seed) {
  check_subset(state, qubits);
  std::vector<std::size_t> counts(std::size_t{1} << qubits.size(), 0);
  for_each_shot(state, shots, seed, [&](BasisIndex i) { ++counts[gather_bits(i, qubits)]; });
  return counts;
}

}  // namespace qbd::qsim
