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

#include <cstdint>
#include <random>

#include "qthermo/linalg.hpp"

namespace qthermo {

using Rng = std::mt19937_64;

/// Complex Ginibre matrix, entries with independent N(0, 1/2) real and
/// imaginary parts.
CMatrix ginibre(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal absorbed into Q.
UnitaryMatrix haar_unitary(Index n, Rng& rng);

/// Wishart density matrix G G^dag / tr, G of shape n x rank. Full rank when
/// rank >= n.
DensityMatrix random_density(Index n, Rng& rng, Index rank = 0);

/// Hermitian (G + G^dag) / 2, rescaled to spectral norm `scale`.
HermitianMatrix random_hermitian(Index n, Rng& rng, double scale = 1.0);

double uniform(Rng& rng, double lo, double hi);

}  // namespace qthermo
