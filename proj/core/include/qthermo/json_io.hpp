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

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qthermo/bounds.hpp"
#include "qthermo/entropy_production.hpp"
#include "qthermo/extended_real.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo {

using Json = nlohmann::json;

/// {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const CMatrix& m);
/// Inverse of matrix_to_json. "im" may be omitted for real matrices.
/// Throws InvalidInput on malformed objects.
CMatrix matrix_from_json(const Json& j);

/// Finite values as numbers, infinities as "inf" / "-inf".
Json extended_to_json(const ExtendedReal& x);
ExtendedReal extended_from_json(const Json& j);

Json bounds_to_json(const BoundReport& b);
/// Every EPReport field; `bounds` nested under "bounds" when given.
Json report_to_json(const EPReport& r, const BoundReport* bounds = nullptr);

/// Flat column names and values for sweep CSV rows.
std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_values(const EPReport& r, const BoundReport* bounds);

/// Shortest round-trip decimal form.
std::string format_double(double x);

// Typed field access with InvalidInput on missing or mistyped entries.
const Json& require_field(const Json& j, const std::string& key, const std::string& where);
double require_number(const Json& j, const std::string& key, const std::string& where);
int require_int(const Json& j, const std::string& key, const std::string& where);
std::string require_string(const Json& j, const std::string& key, const std::string& where);

}  // namespace qthermo
