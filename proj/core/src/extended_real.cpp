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

#include "qthermo/extended_real.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

ExtendedReal::ExtendedReal(double value) : value_(value) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::InvalidInput, "ExtendedReal: non-finite value; use the infinity tags");
  }
}

ExtendedReal ExtendedReal::from_double(double value) {
  if (std::isnan(value)) fail(ErrorKind::InvalidInput, "ExtendedReal: NaN");
  if (std::isinf(value)) return value > 0 ? pos_inf() : neg_inf();
  return ExtendedReal(value);
}

double ExtendedReal::value() const {
  if (kind_ != Kind::Finite) {
    fail(ErrorKind::DomainError, "ExtendedReal: finite value requested from " + to_string());
  }
  return value_;
}

double ExtendedReal::to_double() const {
  switch (kind_) {
    case Kind::PosInf: return std::numeric_limits<double>::infinity();
    case Kind::NegInf: return -std::numeric_limits<double>::infinity();
    case Kind::Finite: break;
  }
  return value_;
}

std::string ExtendedReal::to_string() const {
  if (kind_ == Kind::PosInf) return "inf";
  if (kind_ == Kind::NegInf) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

}  // namespace qthermo
