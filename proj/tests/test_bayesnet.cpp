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

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qbd/bayesnet.hpp"
#include "random_models.hpp"

namespace qbd {
namespace {

BayesianNetwork coin() {
  BayesianNetwork net;
  net.variables = {{"C", 2, {}, {}}};
  net.cpts = {{{{0.5, 0.5}}}};
  return net;
}

BayesianNetwork chain() {
  BayesianNetwork net;
  net.variables = {{"A", 2, {}, {}}, {"B", 2, {0}, {}}};
  net.cpts = {{{{0.3, 0.7}}}, {{{0.2, 0.8}, {0.6, 0.4}}}};
  return net;
}

TEST(QubitsForArity, CeilLog2) {
  EXPECT_EQ(qubits_for_arity(2), 1u);
  EXPECT_EQ(qubits_for_arity(3), 2u);
  EXPECT_EQ(qubits_for_arity(4), 2u);
  EXPECT_EQ(qubits_for_arity(5), 3u);
  EXPECT_EQ(qubits_for_arity(8), 3u);
  EXPECT_EQ(qubits_for_arity(9), 4u);
}

TEST(Validate, UniformRootIsValid) { EXPECT_TRUE(validate(coin()).empty()); }

TEST(Validate, RowSumViolationNamesVariable) {
  BayesianNetwork net = coin();
  net.cpts[0].rows[0] = {0.6, 0.6};
  auto v = validate(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].variable, std::optional<VarIndex>(0));
  EXPECT_NE(v[0].message.find("sums to"), std::string::npos);
}

TEST(Validate, ForwardEdgeIsTopologicalViolation) {
  BayesianNetwork net = chain();
  net.variables[0].parents = {1};
  auto v = validate(net);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].variable, std::optional<VarIndex>(0));
  EXPECT_NE(v[0].message.find("topological"), std::string::npos);
}

TEST(Validate, ToleranceIsOneInABillion) {
  BayesianNetwork net = coin();
  net.cpts[0].rows[0] = {0.5 + 5e-10, 0.5};
  EXPECT_TRUE(validate(net).empty());
  net.cpts[0].rows[0] = {0.5 + 5e-9, 0.5};
  EXPECT_FALSE(validate(net).empty());
}

TEST(Validate, StructuralProblems) {
  BayesianNetwork net = chain();
  net.variables[1].arity = 1;
  EXPECT_TRUE(has_errors(validate(net)));

  net = chain();
  net.cpts[1].rows.pop_back();
  EXPECT_TRUE(has_errors(validate(net)));

  net = chain();
  net.cpts[1].rows[0] = {0.2, 0.3, 0.5};
  EXPECT_TRUE(has_errors(validate(net)));

  net = chain();
  net.cpts[1].rows[0] = {-0.2, 1.2};
  EXPECT_TRUE(has_errors(validate(net)));

  net = chain();
  net.variables[1].name = "A";
  EXPECT_TRUE(has_errors(validate(net)));

  net = chain();
  net.variables[1].labels = {"only-one"};
  EXPECT_TRUE(has_errors(validate(net)));

  net = chain();
  net.cpts.pop_back();
  EXPECT_TRUE(has_errors(validate(net)));
}

TEST(Validate, QubitCap) {
  BayesianNetwork net;
  for (int i = 0; i < 5; ++i) {
    net.variables.push_back({"X" + std::to_string(i), 4, {}, {}});
    net.cpts.push_back({{{0.25, 0.25, 0.25, 0.25}}});
  }
  EXPECT_EQ(net.qubit_count(), 10u);
  EXPECT_TRUE(validate(net, 10).empty());
  EXPECT_TRUE(has_errors(validate(net, 9)));
}

TEST(JointProbability, IndependentCoins) {
  BayesianNetwork net;
  net.variables = {{"A", 2, {}, {}}, {"B", 2, {}, {}}};
  net.cpts = {{{{0.5, 0.5}}}, {{{0.5, 0.5}}}};
  std::vector<std::size_t> x{0, 0};
  EXPECT_DOUBLE_EQ(joint_probability(net, x), 0.25);
}

TEST(JointProbability, ChainByHand) {
  std::vector<std::size_t> x{0, 0};
  EXPECT_NEAR(joint_probability(chain(), x), 0.06, 1e-15);
  x = {1, 1};
  EXPECT_NEAR(joint_probability(chain(), x), 0.7 * 0.4, 1e-15);
}

TEST(JointProbability, OutOfRangeIsDomainError) {
  std::vector<std::size_t> x{0, 2};
  EXPECT_THROW(joint_probability(chain(), x), DomainError);
  std::vector<std::size_t> short_x{0};
  EXPECT_THROW(joint_probability(chain(), short_x), DomainError);
}

TEST(RowIndex, FirstParentMostSignificant) {
  BayesianNetwork net;
  net.variables = {{"P", 3, {}, {}}, {"Q", 2, {}, {}}, {"C", 2, {0, 1}, {}}};
  std::vector<std::size_t> x{2, 1, 0};
  EXPECT_EQ(net.row_index(2, x), 2u * 2u + 1u);
  EXPECT_EQ(net.row_count(2), 6u);
}

TEST(Ancestry, IsAncestorFollowsEdges) {
  BayesianNetwork net;
  net.variables = {{"A", 2, {}, {}}, {"B", 2, {0}, {}}, {"C", 2, {1}, {}}, {"D", 2, {}, {}}};
  EXPECT_TRUE(net.is_ancestor(0, 2));
  EXPECT_FALSE(net.is_ancestor(2, 0));
  EXPECT_FALSE(net.is_ancestor(3, 2));
}

TEST(JointProbability, RandomNetworksSumToOne) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CounterRng rng(seed);
    BayesianNetwork net = testing::random_network(rng, {.max_nodes = 5, .max_arity = 3});
    ASSERT_TRUE(validate(net).empty()) << "seed " << seed;
    double total = 0.0;
    std::vector<std::size_t> x(net.size(), 0);
    do {
      total += joint_probability(net, x);
    } while (next_assignment(net, x));
    EXPECT_NEAR(total, 1.0, 1e-9) << "seed " << seed;

    auto table = oracle::joint(net);
    for (std::size_t i = 0; i < table.probs.size(); ++i) {
      EXPECT_NEAR(joint_probability(net, table.assignments[i]), table.probs[i], 1e-15);
    }
  }
}

// validate accepts iff rows sum to one and order is topological
TEST(Validate, AcceptsIffRowsNormalizedAndTopological) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CounterRng rng(seed, 7);
    BayesianNetwork net = testing::random_network(rng, {.max_nodes = 4, .max_arity = 3});
    const int mutation = int(testing::uniform_int(rng, 0, 2));
    bool expect_valid = true;
    if (mutation == 1) {
      VarIndex v = testing::uniform_int(rng, 0, net.size() - 1);
      net.cpts[v].rows[0][0] += 1e-6;
      expect_valid = false;
    } else if (mutation == 2 && net.size() >= 2) {
      net.variables[0].parents.push_back(net.size() - 1);
      expect_valid = false;
    }
    EXPECT_EQ(validate(net).empty(), expect_valid) << "seed " << seed;
  }
}

DecisionProblem tiny_problem() {
  DecisionProblem p;
  p.network.variables = {{"E", 2, {}, {}}, {"A", 2, {}, {}}, {"R", 2, {0, 1}, {}}};
  p.network.cpts = {{{{0.4, 0.6}}}, {{{0.5, 0.5}}}, {{{0.9, 0.1}, {0.2, 0.8}, {0.5, 0.5}, {0.3, 0.7}}}};
  p.action = 1;
  p.outcome = 2;
  p.evidence = {{0, 1}};
  p.utility = {{1.0, 2.0}};
  return p;
}

TEST(ValidateProblem, AcceptsWellFormed) { EXPECT_TRUE(validate_problem(tiny_problem()).empty()); }

TEST(ValidateProblem, RejectsRoleViolations) {
  auto p = tiny_problem();
  p.evidence[1] = 0;
  EXPECT_TRUE(has_errors(validate_problem(p)));

  p = tiny_problem();
  p.evidence[2] = 0;
  EXPECT_TRUE(has_errors(validate_problem(p)));

  p = tiny_problem();
  p.outcome = 1;
  EXPECT_TRUE(has_errors(validate_problem(p)));

  p = tiny_problem();
  p.action = 2;  // has parents
  p.outcome = 1;
  EXPECT_TRUE(has_errors(validate_problem(p)));
}

TEST(ValidateProblem, EvidenceBelowActionIsRejected) {
  DecisionProblem p;
  p.network.variables = {{"A", 2, {}, {}}, {"M", 2, {0}, {}}, {"R", 2, {1}, {}}};
  p.network.cpts = {{{{0.5, 0.5}}}, {{{0.9, 0.1}, {0.2, 0.8}}}, {{{0.7, 0.3}, {0.1, 0.9}}}};
  p.action = 0;
  p.outcome = 2;
  p.evidence = {{1, 0}};
  p.utility = {{1.0, 0.0}};
  EXPECT_TRUE(has_errors(validate_problem(p)));
}

TEST(ValidateProblem, NonUniformPriorIsErrorUnlessForced) {
  auto p = tiny_problem();
  p.network.cpts[1].rows[0] = {0.6, 0.4};
  EXPECT_TRUE(has_errors(validate_problem(p)));
  auto forced = validate_problem(p, true);
  EXPECT_FALSE(has_errors(forced));
  ASSERT_EQ(forced.size(), 1u);
  EXPECT_EQ(forced[0].severity, Severity::Warning);
  EXPECT_THROW(require_valid(p), ValidationError);
  EXPECT_NO_THROW(require_valid(p, true));
}

TEST(ValidateProblem, UtilityConstraints) {
  auto p = tiny_problem();
  p.utility = {{1.0, -1.0}};
  EXPECT_TRUE(has_errors(validate_problem(p)));
  p.utility = {{0.0, 0.0}};
  EXPECT_TRUE(has_errors(validate_problem(p)));
  p.utility = {{1.0}};
  EXPECT_TRUE(has_errors(validate_problem(p)));
}

TEST(ShiftUtility, SubtractsMinimum) {
  UtilityTable u = shift_to_non_negative({{-2.0, 1.0, 3.0}});
  EXPECT_EQ(u.values, (std::vector<double>{0.0, 3.0, 5.0}));
}

TEST(CheckEvidence, RangeChecks) {
  EXPECT_NO_THROW(check_evidence(chain(), {{1, 1}}));
  EXPECT_THROW(check_evidence(chain(), {{1, 2}}), DomainError);
  EXPECT_THROW(check_evidence(chain(), {{5, 0}}), DomainError);
}

}  // namespace
}  // namespace qbd
