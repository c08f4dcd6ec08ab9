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

#include <stdexcept>
#include <string>

namespace qbd {

enum class ErrorKind {
  Domain,
  Capacity,
  ZeroEvidence,
  NoSolution,
  DegenerateUtility,
  Unavailable,
  Parse,
  Validation,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Capacity: return "capacity error";
    case ErrorKind::ZeroEvidence: return "zero-evidence error";
    case ErrorKind::NoSolution: return "no-solution error";
    case ErrorKind::DegenerateUtility: return "degenerate-utility error";
    case ErrorKind::Unavailable: return "estimate unavailable";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

/// Base of every exception thrown by the library. `kind()` lets callers
/// (the CLI in particular) map failures onto exit codes without RTTI chains.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define QBD_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

QBD_DEFINE_ERROR(DomainError, Domain)
QBD_DEFINE_ERROR(CapacityError, Capacity)
QBD_DEFINE_ERROR(ZeroEvidenceError, ZeroEvidence)
QBD_DEFINE_ERROR(NoSolutionError, NoSolution)
QBD_DEFINE_ERROR(DegenerateUtilityError, DegenerateUtility)
QBD_DEFINE_ERROR(UnavailableError, Unavailable)
QBD_DEFINE_ERROR(ParseError, Parse)
QBD_DEFINE_ERROR(ValidationError, Validation)
QBD_DEFINE_ERROR(IoError, Io)

#undef QBD_DEFINE_ERROR

}  // namespace qbd
