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

#include "qthermo/linalg.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

std::atomic<double> g_support_tol{1e-12};

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": matrix must be square and non-empty, got " +
                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

double support_tolerance() { return g_support_tol.load(std::memory_order_relaxed); }

void set_support_tolerance(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(ErrorKind::InvalidInput, "support tolerance must be positive and finite");
  }
  g_support_tol.store(value, std::memory_order_relaxed);
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(CMatrix m) {
  require_square(m, "HermitianMatrix");
  if (!all_finite(m)) fail(ErrorKind::InvalidInput, "HermitianMatrix: non-finite entries");
  const double scale = max_abs(m);
  const double defect = max_abs(m - m.adjoint());
  if (defect > tol::kHermitian * scale) {
    fail(ErrorKind::InvalidInput,
         "HermitianMatrix: not self-adjoint (defect " + std::to_string(defect) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  CMatrix m = CMatrix::Zero(Index(diag.size()), Index(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) m(Index(i), Index(i)) = diag[i];
  return HermitianMatrix(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::InvalidInput, "HermitianMatrix +: dimension mismatch");
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::InvalidInput, "HermitianMatrix -: dimension mismatch");
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  if (!std::isfinite(s)) fail(ErrorKind::InvalidInput, "HermitianMatrix *: non-finite scalar");
  return HermitianMatrix(s * a.m_, HermitianMatrix::Trusted{});
}

Eigensystem eig_hermitian(const HermitianMatrix& a) {
  if (!all_finite(a.matrix())) fail(ErrorKind::InvalidInput, "eig_hermitian: non-finite entries");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::ConvergenceError, "eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix matrix_function(const HermitianMatrix& a, const std::function<double(double)>& f) {
  const Eigensystem es = eig_hermitian(a);
  RVector fv(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    fv(i) = f(es.values(i));
    if (!std::isfinite(fv(i))) {
      fail(ErrorKind::DomainError,
           "matrix_function: f undefined at eigenvalue " + std::to_string(es.values(i)));
    }
  }
  return HermitianMatrix(es.vectors * fv.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

// ---------------------------------------------------------------------------
// DensityMatrix

struct DensityMatrix::Cache {
  std::once_flag once;
  Eigensystem spectrum;
};

DensityMatrix::DensityMatrix(HermitianMatrix h, std::shared_ptr<Cache> cache)
    : h_(std::move(h)), cache_(std::move(cache)) {}

DensityMatrix::DensityMatrix(HermitianMatrix h) : h_(std::move(h)), cache_(std::make_shared<Cache>()) {
  const double tr = h_.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    fail(ErrorKind::InvalidState, "DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const double lmin = spectrum().values(0);
  if (lmin < -tol::kPsd) {
    fail(ErrorKind::InvalidState,
         "DensityMatrix: negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::from_trusted(CMatrix m) {
  require_square(m, "DensityMatrix");
  CMatrix sym = 0.5 * (m + m.adjoint());
  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    fail(ErrorKind::InvalidState, "DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  return DensityMatrix(HermitianMatrix(std::move(sym), HermitianMatrix::Trusted{}),
                       std::make_shared<Cache>());
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "maximally_mixed: dimension must be positive");
  return from_trusted(CMatrix::Identity(n, n) / double(n));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    fail(ErrorKind::InvalidInput, "DensityMatrix::pure: zero or non-finite vector");
  }
  const CVector v = psi / norm;
  return from_trusted(v * v.adjoint());
}

const Eigensystem& DensityMatrix::spectrum() const {
  std::call_once(cache_->once, [this] { cache_->spectrum = eig_hermitian(h_); });
  return cache_->spectrum;
}

// ---------------------------------------------------------------------------
// BipartiteState

BipartiteState::BipartiteState(Index d_s, Index d_e, DensityMatrix state)
    : d_s_(d_s), d_e_(d_e), state_(std::move(state)) {
  if (d_s < 1) fail(ErrorKind::InvalidInput, "BipartiteState: d_S must be positive");
  if (d_e < 2) fail(ErrorKind::InvalidInput, "BipartiteState: d_E must be at least 2");
  if (state_.dim() != d_s * d_e) {
    fail(ErrorKind::InvalidInput, "BipartiteState: state dimension " + std::to_string(state_.dim()) +
                                      " != d_S*d_E = " + std::to_string(d_s * d_e));
  }
}

BipartiteState BipartiteState::product(const DensityMatrix& rho_s, const DensityMatrix& rho_e) {
  return BipartiteState(rho_s.dim(), rho_e.dim(), tensor_product(rho_s, rho_e));
}

DensityMatrix BipartiteState::system() const { return partial_trace(*this, Subsystem::S); }
DensityMatrix BipartiteState::environment() const { return partial_trace(*this, Subsystem::E); }

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(CMatrix u) : u_(std::move(u)) {
  require_square(u_, "UnitaryMatrix");
  if (!all_finite(u_)) fail(ErrorKind::InvalidInput, "UnitaryMatrix: non-finite entries");
  const double defect = unitarity_defect();
  if (defect > tol::kUnitary) {
    fail(ErrorKind::InvalidInput, "UnitaryMatrix: defect " + std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index n) { return UnitaryMatrix(CMatrix::Identity(n, n)); }

double UnitaryMatrix::unitarity_defect() const {
  return max_abs(u_.adjoint() * u_ - CMatrix::Identity(u_.rows(), u_.cols()));
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::InvalidInput, "UnitaryMatrix *: dimension mismatch");
  return UnitaryMatrix(a.u_ * b.u_);
}

// ---------------------------------------------------------------------------
// Products, traces, distances

HermitianMatrix tensor_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  const Index da = a.dim();
  const Index db = b.dim();
  CMatrix out(da * db, da * db);
  for (Index i = 0; i < da; ++i) {
    for (Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return HermitianMatrix(std::move(out), HermitianMatrix::Trusted{});
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_trusted(tensor_product(a.hermitian(), b.hermitian()).matrix());
}

HermitianMatrix partial_trace(const HermitianMatrix& m, Index d_s, Index d_e, Subsystem keep) {
  if (d_s < 1 || d_e < 1 || m.dim() != d_s * d_e) {
    fail(ErrorKind::InvalidInput, "partial_trace: dimension mismatch");
  }
  const CMatrix& a = m.matrix();
  if (keep == Subsystem::S) {
    CMatrix out = CMatrix::Zero(d_s, d_s);
    for (Index i = 0; i < d_s; ++i) {
      for (Index j = 0; j < d_s; ++j) {
        Complex acc = 0.0;
        for (Index k = 0; k < d_e; ++k) acc += a(i * d_e + k, j * d_e + k);
        out(i, j) = acc;
      }
    }
    return HermitianMatrix(std::move(out));
  }
  CMatrix out = CMatrix::Zero(d_e, d_e);
  for (Index i = 0; i < d_s; ++i) out += a.block(i * d_e, i * d_e, d_e, d_e);
  return HermitianMatrix(std::move(out));
}

DensityMatrix partial_trace(const BipartiteState& rho, Subsystem keep) {
  return DensityMatrix::from_trusted(
      partial_trace(rho.state().hermitian(), rho.d_s(), rho.d_e(), keep).matrix());
}

double trace_norm(const HermitianMatrix& m) { return eig_hermitian(m).values.cwiseAbs().sum(); }

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) fail(ErrorKind::InvalidInput, "trace_distance: dimension mismatch");
  return 0.5 * trace_norm(rho.hermitian() - sigma.hermitian());
}

UnitaryMatrix unitary_step(const HermitianMatrix& h, double dt) {
  if (!std::isfinite(dt)) fail(ErrorKind::InvalidInput, "unitary_step: non-finite dt");
  const Eigensystem es = eig_hermitian(h);
  CVector phases(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -es.values(i) * dt));
  }
  return UnitaryMatrix(es.vectors * phases.asDiagonal() * es.vectors.adjoint());
}

DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) fail(ErrorKind::InvalidInput, "conjugate: dimension mismatch");
  return DensityMatrix::from_trusted(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

BipartiteState conjugate(const UnitaryMatrix& u, const BipartiteState& rho) {
  return BipartiteState(rho.d_s(), rho.d_e(), conjugate(u, rho.state()));
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::InvalidInput, "trace_product: dimension mismatch");
  return a.matrix().cwiseProduct(b.matrix().transpose()).sum().real();
}

}  // namespace qthermo
