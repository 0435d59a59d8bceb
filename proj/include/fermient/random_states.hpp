// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file random_states.hpp
 * @brief Seeded random states and operators for property tests and the
 *        `mixed_random` state spec.
 */

#pragma once

#include "fermient/bipartition.hpp"
#include "fermient/fock_space.hpp"

#include <cstdint>
#include <random>

namespace fermient {

using Rng = std::mt19937_64;

/// Entries i.i.d. complex Gaussian with unit variance.
CMatrix ginibre(Index rows, Index cols, Rng& rng);

/// Haar-random unit vector.
StateVector random_pure(const SpacePtr& space, Rng& rng);

/// G G† / Tr with G a D x rank Ginibre matrix; rank <= 0 means full rank.
DensityMatrix random_mixed(const SpacePtr& space, Rng& rng, Index rank = 0);

/// Random c ⊗ c' inside a uniformly chosen sector k.
StateVector random_product_pure(const SpacePtr& space, const ModeBipartition& bp, Rng& rng);

/// Convex mixture of `terms` random product pure states with Dirichlet-like weights.
DensityMatrix random_separable(const SpacePtr& space, const ModeBipartition& bp, Rng& rng, int terms = 4);

/// sum_k p_k rho_k with every rho_k a random full-rank state of its sector.
DensityMatrix random_block_diagonal(const SpacePtr& space, const ModeBipartition& bp, Rng& rng);

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
CMatrix random_unitary(Index n, Rng& rng);

/// (G + G†) / 2 with G Ginibre.
CMatrix random_hermitian(Index n, Rng& rng);

}  // namespace fermient
