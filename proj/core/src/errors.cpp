// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qthermo/errors.hpp"

namespace qthermo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InfeasibleEnergy: return "InfeasibleEnergy";
    case ErrorKind::ConvergenceError: return "ConvergenceError";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorKind::InvalidState: return "InvalidState";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::DomainError || kind == ErrorKind::InfeasibleEnergy ||
         kind == ErrorKind::ConvergenceError;
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace qthermo
