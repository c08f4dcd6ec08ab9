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

#include "qbd/bayesnet.hpp"
#include "qbd/classical.hpp"
#include "qbd/costmodel.hpp"
#include "qbd/distribution.hpp"
#include "qbd/encoder.hpp"
#include "qbd/error.hpp"
#include "qbd/model_io.hpp"
#include "qbd/qdecision.hpp"
#include "qbd/qinference.hpp"
#include "qbd/report.hpp"
#include "qbd/rng.hpp"
#include "qbd/statevector.hpp"
