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

#include <string>

#include "qbd/model_io.hpp"

namespace qbd::testing {

inline std::string model_path(const std::string& name) { return std::string(QBD_MODELS_DIR) + "/" + name; }

/// Three-node fixture: L (evidence), A (action), R (outcome).
inline DecisionProblem fixture_problem() {
  return load_model(read_text_file(model_path("fixture_decision.json"))).decision_problem();
}

}  // namespace qbd::testing
