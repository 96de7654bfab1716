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

#include "qthermo/json_io.hpp"

#include <charconv>
#include <cmath>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

std::vector<double> read_row(const Json& row, Index n, const char* part) {
  if (!row.is_array() || static_cast<Index>(row.size()) != n) {
    fail(ErrorKind::InvalidInput, std::string("matrix: each \"") + part + "\" row needs dim entries");
  }
  std::vector<double> out;
  out.reserve(row.size());
  for (const Json& x : row) {
    if (!x.is_number()) fail(ErrorKind::InvalidInput, std::string("matrix: non-numeric \"") + part + "\" entry");
    const double v = x.get<double>();
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "matrix: non-finite entry");
    out.push_back(v);
  }
  return out;
}

void read_part(const Json& rows, Index n, const char* part, CMatrix& m, bool imag) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    fail(ErrorKind::InvalidInput, std::string("matrix: \"") + part + "\" needs dim rows");
  }
  for (Index i = 0; i < n; ++i) {
    const std::vector<double> row = read_row(rows[static_cast<std::size_t>(i)], n, part);
    for (Index k = 0; k < n; ++k) {
      if (imag) {
        m(i, k).imag(row[static_cast<std::size_t>(k)]);
      } else {
        m(i, k).real(row[static_cast<std::size_t>(k)]);
      }
    }
  }
}

Json optional_number(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "matrix_to_json: square matrix required");
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    Json c = Json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "matrix: expected an object");
  const int n = require_int(j, "dim", "matrix");
  if (n < 1) fail(ErrorKind::InvalidInput, "matrix: dim must be positive");
  CMatrix m = CMatrix::Zero(n, n);
  read_part(require_field(j, "re", "matrix"), n, "re", m, false);
  if (j.contains("im")) read_part(j.at("im"), n, "im", m, true);
  return m;
}

Json extended_to_json(const ExtendedReal& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

ExtendedReal extended_from_json(const Json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "extended real: non-finite number");
    return ExtendedReal(v);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return ExtendedReal::pos_inf();
    if (s == "-inf") return ExtendedReal::neg_inf();
  }
  fail(ErrorKind::InvalidInput, "extended real: expected a number, \"inf\" or \"-inf\"");
}

Json bounds_to_json(const BoundReport& b) {
  Json j{{"lambda_S", b.lambda_S},
         {"lambda_T", b.lambda_T},
         {"lambda_T_prod", optional_number(b.lambda_T_prod)},
         {"delta_T", b.delta_T},
         {"d_gamma_0", b.d_gamma_0},
         {"sufficient_general", b.general.holds},
         {"sufficient_general_lhs", b.general.lhs},
         {"sufficient_general_rhs", b.general.rhs}};
  if (b.product) {
    j["sufficient_product"] = b.product->holds;
    j["sufficient_product_lhs"] = b.product->lhs;
    j["sufficient_product_rhs"] = b.product->rhs;
  } else {
    j["sufficient_product"] = nullptr;
  }
  return j;
}

Json report_to_json(const EPReport& r, const BoundReport* bounds) {
  Json j{{"beta0", r.beta0},
         {"beta_tau", r.beta_tau},
         {"beta_star0", extended_to_json(r.beta_star0)},
         {"beta_star_tau", extended_to_json(r.beta_star_tau)},
         {"delta_sigma", r.delta_sigma},
         {"delta_sigma_cl", r.delta_sigma_cl},
         {"delta_D", r.delta_D},
         {"delta_sigma_star", r.delta_sigma_star},
         {"delta_sigma_star_quadrature", optional_number(r.delta_sigma_star_quadrature)},
         {"d_gamma_0", r.d_gamma_0},
         {"d_gamma_tau", r.d_gamma_tau},
         {"delta_I", r.delta_I},
         {"delta_S_S", r.delta_S_S},
         {"delta_S_E", r.delta_S_E},
         {"delta_S_gamma", r.delta_S_gamma},
         {"endpoint_candidate", r.endpoint_candidate},
         {"residual_drift_split", r.residual_drift_split},
         {"residual_mismatch_split", r.residual_mismatch_split}};
  if (bounds) j["bounds"] = bounds_to_json(*bounds);
  return j;
}

std::vector<std::string> report_csv_header() {
  return {"beta0",         "beta_tau",        "beta_star0",       "beta_star_tau",
          "delta_sigma",   "delta_sigma_cl",  "delta_D",          "delta_sigma_star",
          "d_gamma_0",     "d_gamma_tau",     "delta_I",          "delta_S_S",
          "delta_S_E",     "delta_S_gamma",   "residual_drift_split", "residual_mismatch_split",
          "lambda_S",      "lambda_T",        "delta_T",          "sufficient_general"};
}

std::vector<std::string> report_csv_values(const EPReport& r, const BoundReport* bounds) {
  const auto f = [](double x) { return format_double(x); };
  std::vector<std::string> v{f(r.beta0),
                             f(r.beta_tau),
                             r.beta_star0.to_string(),
                             r.beta_star_tau.to_string(),
                             f(r.delta_sigma),
                             f(r.delta_sigma_cl),
                             f(r.delta_D),
                             f(r.delta_sigma_star),
                             f(r.d_gamma_0),
                             f(r.d_gamma_tau),
                             f(r.delta_I),
                             f(r.delta_S_S),
                             f(r.delta_S_E),
                             f(r.delta_S_gamma),
                             f(r.residual_drift_split),
                             f(r.residual_mismatch_split)};
  if (bounds) {
    v.push_back(f(bounds->lambda_S));
    v.push_back(f(bounds->lambda_T));
    v.push_back(f(bounds->delta_T));
    v.push_back(bounds->general.holds ? "1" : "0");
  } else {
    v.insert(v.end(), 4, "");
  }
  return v;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const Json& require_field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorKind::InvalidInput, where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double require_number(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number()) fail(ErrorKind::InvalidInput, where + ": \"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, where + ": \"" + key + "\" must be finite");
  return x;
}

int require_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number_integer()) {
    fail(ErrorKind::InvalidInput, where + ": \"" + key + "\" must be an integer");
  }
  const auto x = v.get<long long>();
  if (x < -2147483647LL || x > 2147483647LL) {
    fail(ErrorKind::InvalidInput, where + ": \"" + key + "\" out of range");
  }
  return static_cast<int>(x);
}

std::string require_string(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_string()) fail(ErrorKind::InvalidInput, where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace qthermo
