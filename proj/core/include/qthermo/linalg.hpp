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

#include <complex>
#include <functional>
#include <memory>
#include <span>

#include <Eigen/Dense>

namespace qthermo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
// Hermiticity, relative to the largest entry magnitude.
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kUnitary = 1e-10;
// Eigenvalues below this are exact zeros inside entropy sums.
inline constexpr double kEntropyZero = 1e-14;
}  // namespace tol

// Eigenvalue threshold separating support from kernel in relative entropies.
double support_tolerance();
void set_support_tolerance(double value);

double max_abs(const CMatrix& m);

/// Dense complex self-adjoint matrix.
///
/// Construction symmetrizes (A + A^dag)/2 when the deviation from
/// hermiticity is below tol::kHermitian relative to max |A_ij|, and throws
/// InvalidInput above that or on non-finite entries.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m);

  static HermitianMatrix zero(Index n);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(std::span<const double> diag);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}
  friend class DensityMatrix;
  friend HermitianMatrix tensor_product(const HermitianMatrix&, const HermitianMatrix&);

  CMatrix m_;
};

/// Eigenvalues ascending; columns of `vectors` are the matching eigenvectors.
struct Eigensystem {
  RVector values;
  CMatrix vectors;
};

Eigensystem eig_hermitian(const HermitianMatrix& a);

/// V diag(f(lambda)) V^dag. Throws DomainError when f is not finite at an
/// eigenvalue.
HermitianMatrix matrix_function(const HermitianMatrix& a, const std::function<double(double)>& f);

/// Unit-trace positive semidefinite Hermitian matrix. Immutable; the spectrum
/// is computed once on first use and shared between copies.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix h);

  static DensityMatrix maximally_mixed(Index n);
  static DensityMatrix pure(const CVector& psi);

  Index dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }
  const Eigensystem& spectrum() const;

  // For operations that preserve positivity and trace by construction
  // (unitary conjugation, partial trace, tensor products of states).
  static DensityMatrix from_trusted(CMatrix m);

 private:
  struct Cache;
  DensityMatrix(HermitianMatrix h, std::shared_ptr<Cache> cache);

  HermitianMatrix h_;
  std::shared_ptr<Cache> cache_;
};

enum class Subsystem { S, E };

/// Density operator on C^{d_S} (x) C^{d_E}; row index i*d_E + k.
class BipartiteState {
 public:
  BipartiteState(Index d_s, Index d_e, DensityMatrix state);

  static BipartiteState product(const DensityMatrix& rho_s, const DensityMatrix& rho_e);

  Index d_s() const { return d_s_; }
  Index d_e() const { return d_e_; }
  const DensityMatrix& state() const { return state_; }
  DensityMatrix system() const;
  DensityMatrix environment() const;

 private:
  Index d_s_;
  Index d_e_;
  DensityMatrix state_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix u);
  static UnitaryMatrix identity(Index n);

  Index dim() const { return u_.rows(); }
  const CMatrix& matrix() const { return u_; }
  // max |(U^dag U - I)_ij|
  double unitarity_defect() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  CMatrix u_;
};

HermitianMatrix tensor_product(const HermitianMatrix& a, const HermitianMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

HermitianMatrix partial_trace(const HermitianMatrix& m, Index d_s, Index d_e, Subsystem keep);
DensityMatrix partial_trace(const BipartiteState& rho, Subsystem keep);

double trace_norm(const HermitianMatrix& m);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// exp(-i H dt) by spectral calculus.
UnitaryMatrix unitary_step(const HermitianMatrix& h, double dt);

DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho);
BipartiteState conjugate(const UnitaryMatrix& u, const BipartiteState& rho);

// Re tr(A B) for Hermitian A, B.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace qthermo
