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

#include "qthermo/random.hpp"

#include <cmath>

#include "qthermo/errors.hpp"

namespace qthermo {

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

UnitaryMatrix haar_unitary(Index n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(std::move(q));
}

DensityMatrix random_density(Index n, Rng& rng, Index rank) {
  if (rank <= 0) rank = n;
  const CMatrix g = ginibre(n, rank, rng);
  CMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix(HermitianMatrix(std::move(w)));
}

HermitianMatrix random_hermitian(Index n, Rng& rng, double scale) {
  const CMatrix g = ginibre(n, n, rng);
  const HermitianMatrix h(0.5 * (g + g.adjoint()));
  const double norm = eig_hermitian(h).values.cwiseAbs().maxCoeff();
  if (norm == 0.0) fail(ErrorKind::DomainError, "random_hermitian: degenerate draw");
  return (scale / norm) * h;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace qthermo
