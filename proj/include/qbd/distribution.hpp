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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "qbd/error.hpp"

namespace qbd {

/// Index of the largest entry; ties resolve to the lowest index.
inline std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw DomainError("argmax of an empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

/// Discrete distribution over the values 0..size()-1 of one variable (or of
/// a qubit subset read as an integer).
struct Distribution {
  std::vector<double> probs;

  Distribution() = default;
  explicit Distribution(std::vector<double> p) : probs(std::move(p)) {}

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::size_t i) const { return probs.at(i); }

  double total() const noexcept {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
  }

  std::size_t argmax() const { return argmax_lowest(probs); }

  /// Builds a normalized distribution from non-negative weights. Throws if
  /// every weight is zero.
  static Distribution normalized(std::vector<double> weights) {
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(sum > 0.0)) throw DomainError("cannot normalize zero total weight");
    for (double& w : weights) w /= sum;
    return Distribution(std::move(weights));
  }

  template <class Count>
  static Distribution from_counts(const std::vector<Count>& counts) {
    std::vector<double> w(counts.begin(), counts.end());
    return normalized(std::move(w));
  }
};

inline double total_variation(const Distribution& a, const Distribution& b) {
  std::size_t n = std::max(a.size(), b.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pa = i < a.size() ? a.probs[i] : 0.0;
    double pb = i < b.size() ? b.probs[i] : 0.0;
    tv += std::abs(pa - pb);
  }
  return 0.5 * tv;
}

inline double max_abs_difference(const Distribution& a, const Distribution& b) {
  std::size_t n = std::max(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pa = i < a.size() ? a.probs[i] : 0.0;
    double pb = i < b.size() ? b.probs[i] : 0.0;
    worst = std::max(worst, std::abs(pa - pb));
  }
  return worst;
}

}  // namespace qbd
