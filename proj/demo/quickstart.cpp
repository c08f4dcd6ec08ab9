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

// Builds a three-node decision problem in code and decides it three ways.

#include <cstdio>

#include "qbd/qbd.hpp"

int main() {
  using namespace qbd;

  BayesianNetwork net;
  net.variables = {{"Weather", 2, {}, {"dry", "wet"}},
                   {"Plan", 2, {}, {"picnic", "museum"}},
                   {"Mood", 2, {0, 1}, {"good", "bad"}}};
  net.cpts = {{{{0.6, 0.4}}},
              {{{0.5, 0.5}}},
              {{{0.9, 0.1}, {0.7, 0.3}, {0.2, 0.8}, {0.6, 0.4}}}};

  DecisionProblem problem{net, 1, 2, {{0, 1}}, {{10.0, 1.0}}};

  auto classical = qdecision::decide_classical(problem);
  auto a = qdecision::decide_process_a(problem, {.exact = true});
  auto b = qdecision::decide_process_b(problem, 20000, 42);

  for (const auto* r : {&classical, &a, &b}) {
    std::printf("%-9s -> %-7s  P = [%.4f, %.4f]\n", qdecision::to_string(r->process),
                net.variables[1].label(r->chosen_action).c_str(), r->action_distribution[0],
                r->action_distribution[1]);
  }

  auto state = qdecision::process_a_state(problem);
  std::printf("stage iterations: %zu then %zu, matched mass %.4f\n", state.stage1.iterations,
              state.stage2.iterations, state.match_mass_final);
}
