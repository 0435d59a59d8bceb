// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bipartition.hpp
 * @brief (m, M-m) mode bipartitions, the even/odd grading and the sector
 *        (k, sigma, sigma') relabeling of the Fock basis.
 *
 * The first partition is always modes 1..m. Non-contiguous choices go through
 * relabel_modes() first.
 *
 * Within a sector, sigma and sigma' are 1-based ranks of the side-1 / side-2
 * sub-patterns under the same descending lexicographic order as the global
 * basis. Because side-1 creators stand to the left of side-2 creators in every
 * basis vector, |k,sigma; N-k,sigma'> is literally |k,sigma> ⊗ |N-k,sigma'>
 * and no sign enters any of the embeddings below.
 */

#pragma once

#include "fermient/fock_space.hpp"
#include "fermient/ladder.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fermient {

class ModeBipartition {
public:
    /// Throws InvalidShape unless 0 <= m <= M <= kMaxModes.
    ModeBipartition(int first_modes, int modes);

    /// Copy bound to a particle number; throws InvalidShape if N is not in [0, M].
    [[nodiscard]] ModeBipartition bound_to(int particles) const;
    /// Bound to the space's N; throws ShapeMismatch if the mode counts differ.
    [[nodiscard]] ModeBipartition bound_to(const FockSpace& space) const;

    [[nodiscard]] int first_modes() const noexcept { return m_; }
    [[nodiscard]] int second_modes() const noexcept { return modes_ - m_; }
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] bool is_bound() const noexcept { return particles_.has_value(); }

    /// The remaining accessors throw UnboundSpace on an unbound bipartition.
    [[nodiscard]] int particles() const;
    /// max(0, N - M + m)
    [[nodiscard]] int n_minus() const;
    /// min(N, m)
    [[nodiscard]] int n_plus() const;

    [[nodiscard]] Mask first_part(Mask mask) const noexcept { return mask >> (modes_ - m_); }
    [[nodiscard]] Mask second_part(Mask mask) const noexcept { return mask & low_bits(modes_ - m_); }
    [[nodiscard]] Mask join(Mask first, Mask second) const noexcept {
        return (first << (modes_ - m_)) | second;
    }

private:
    int m_;
    int modes_;
    std::optional<int> particles_;
};

struct SectorLabel {
    int k = 0;
    std::size_t sigma = 1;        ///< 1-based, <= C(m, k)
    std::size_t sigma_prime = 1;  ///< 1-based, <= C(M-m, N-k)

    auto operator<=>(const SectorLabel&) const = default;
};

/// Throws UnboundSpace if bp is unbound, InvalidShape if the state is not an
/// N-particle pattern of bp's mode count.
SectorLabel sector_of(const OccupationState& state, const ModeBipartition& bp);

struct BlockDims {
    int k = 0;
    std::size_t first = 0;   ///< D_k = C(m, k)
    std::size_t second = 0;  ///< D'_{N-k} = C(M-m, N-k)

    [[nodiscard]] std::size_t size() const noexcept { return first * second; }
    bool operator==(const BlockDims&) const = default;
};

/// One entry per k in [N_minus, N_plus], ascending.
std::vector<BlockDims> block_dimensions(const ModeBipartition& bp, int particles);

enum class Parity { Even, Odd, Mixed };

const char* to_string(Parity p) noexcept;
Parity parity_of(const LadderMonomial& m) noexcept;
/// Even for the empty expression.
Parity parity_of(const OperatorExpr& expr) noexcept;
/// Parity of a product of two homogeneous elements.
Parity product_parity(Parity a, Parity b) noexcept;

/**
 * Bijection between the Fock basis and the sector labels, plus the two
 * embeddings used downstream:
 *
 *  - sector-major order: blocks k = N_minus..N_plus, inside a block index
 *    (sigma-1) * D'_{N-k} + (sigma'-1);
 *  - product order: C^{d1} ⊗ C^{d2} with d1 = sum_k D_k, d2 = sum_k D'_{N-k};
 *    side-1 patterns grouped by k ascending then sigma, side-2 patterns by
 *    particle count ascending then sigma'. Positions of the product space that
 *    hold no N-particle pattern are padding.
 */
class SectorLayout {
public:
    SectorLayout(const FockSpace& space, const ModeBipartition& bp);

    [[nodiscard]] const ModeBipartition& bipartition() const noexcept { return bp_; }
    [[nodiscard]] const std::vector<BlockDims>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] Index dimension() const noexcept { return static_cast<Index>(labels_.size()); }

    [[nodiscard]] const SectorLabel& label(Index basis_index) const { return labels_.at(static_cast<std::size_t>(basis_index)); }
    [[nodiscard]] Index basis_index(const SectorLabel& label) const;

    /// Block number (0-based position in blocks()) holding particle count k, or -1.
    [[nodiscard]] int block_of(int k) const noexcept;
    [[nodiscard]] Index block_offset(std::size_t block) const { return offsets_.at(block); }
    /// Position of a basis vector in sector-major order, and back.
    [[nodiscard]] Index sector_position(Index basis_index) const { return to_sector_[static_cast<std::size_t>(basis_index)]; }
    [[nodiscard]] Index basis_at(Index sector_position) const { return from_sector_[static_cast<std::size_t>(sector_position)]; }

    [[nodiscard]] Index product_first_dim() const noexcept { return d1_; }
    [[nodiscard]] Index product_second_dim() const noexcept { return d2_; }
    [[nodiscard]] Index product_row(Index basis_index) const { return prod_row_[static_cast<std::size_t>(basis_index)]; }
    [[nodiscard]] Index product_col(Index basis_index) const { return prod_col_[static_cast<std::size_t>(basis_index)]; }
    [[nodiscard]] Index product_index(Index basis_index) const {
        return product_row(basis_index) * d2_ + product_col(basis_index);
    }
    /// Particle count of the side-1 / side-2 pattern at a product-space row / column.
    [[nodiscard]] int first_count_at(Index row) const { return row_count_[static_cast<std::size_t>(row)]; }
    [[nodiscard]] int second_count_at(Index col) const { return col_count_[static_cast<std::size_t>(col)]; }

private:
    ModeBipartition bp_;
    std::vector<BlockDims> blocks_;
    std::vector<Index> offsets_;
    std::vector<SectorLabel> labels_;
    std::vector<Index> to_sector_;
    std::vector<Index> from_sector_;
    Index d1_ = 0;
    Index d2_ = 0;
    std::vector<Index> first_offset_;   // by k - N_minus
    std::vector<Index> second_offset_;  // by (N-k) - (N - N_plus)
    std::vector<Index> prod_row_;
    std::vector<Index> prod_col_;
    std::vector<int> row_count_;
    std::vector<int> col_count_;
};

/// Amplitudes split into per-sector coefficient matrices C^{(k)}_{sigma, sigma'}.
struct BlockedAmplitudes {
    std::vector<BlockDims> blocks;
    std::vector<CMatrix> coefficients;  ///< D_k x D'_{N-k} each
};

/// Density matrix in sector-major order; block (a, b) couples blocks[a] and blocks[b].
struct BlockedMatrix {
    std::vector<BlockDims> blocks;
    std::vector<Index> offsets;
    CMatrix matrix;

    [[nodiscard]] CMatrix block(std::size_t a, std::size_t b) const {
        return matrix.block(offsets[a], offsets[b], static_cast<Index>(blocks[a].size()),
                            static_cast<Index>(blocks[b].size()));
    }
};

BlockedAmplitudes embed_block(const StateVector& psi, const ModeBipartition& bp);
StateVector unembed_block(const BlockedAmplitudes& blocked, const SpacePtr& space, const ModeBipartition& bp);
BlockedMatrix embed_block(const CMatrix& rho, const FockSpace& space, const ModeBipartition& bp);
CMatrix unembed_block(const BlockedMatrix& blocked, const FockSpace& space, const ModeBipartition& bp);

/// Coefficients C_{p, beta} of a state as a d1 x d2 matrix over the product
/// space of side patterns (zero on padding).
CMatrix product_coefficients(const StateVector& psi, const SectorLayout& layout);
/// rho embedded in C^{d1} ⊗ C^{d2} (zero on padding rows/columns).
CMatrix product_embedding(const CMatrix& rho, const SectorLayout& layout);

/**
 * Re-expresses a state after relabeling the modes: new mode j is old mode
 * order[j-1]. The fermionic reordering sign of every basis vector is applied,
 * so the result is the same physical state written in the new mode order and
 * any subset of old modes can be moved to the front to form a contiguous
 * first partition. Throws InvalidShape unless `order` is a permutation of 1..M.
 */
StateVector relabel_modes(const StateVector& psi, std::span<const int> order);
CMatrix relabel_modes(const CMatrix& rho, const FockSpace& space, std::span<const int> order);

}  // namespace fermient
