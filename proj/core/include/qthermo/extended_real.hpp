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

#include <compare>
#include <string>

namespace qthermo {

/// A real number or one of the two infinities.
///
/// Inverse temperatures reach +inf (ground-state projector) and -inf (top
/// eigenspace) for boundary energies, and relative entropies are +inf on
/// disjoint support. Both are carried as explicit tags so that no NaN can be
/// produced by arithmetic on a float sentinel.
class ExtendedReal {
 public:
  enum class Kind { Finite, PosInf, NegInf };

  ExtendedReal() = default;
  // Rejects NaN and +-inf; use pos_inf()/neg_inf() for the infinite values.
  ExtendedReal(double value);  // NOLINT(google-explicit-constructor)

  static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }
  static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }
  // Maps IEEE infinities onto the tags; NaN is rejected.
  static ExtendedReal from_double(double value);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  // Throws DomainError when infinite.
  double value() const;
  // IEEE view, +-infinity for the tags. Only for printing and comparisons.
  double to_double() const;

  std::string to_string() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    return a.to_double() <=> b.to_double();
  }

 private:
  explicit ExtendedReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

}  // namespace qthermo
