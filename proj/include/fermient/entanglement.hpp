// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file entanglement.hpp
 * @brief Separability tests for fixed-N fermion states under an (m, M-m)
 *        mode bipartition.
 *
 * Summary of the logic implemented here:
 *  - a nonzero expectation of A1 A2 with both factors odd certifies entanglement;
 *  - a pure state is separable iff its coefficient matrix C_{p, beta} has rank one;
 *  - a mixed state is separable iff it is block diagonal in the particle count
 *    of the first partition and every diagonal block is separable on
 *    C^{D_k} ⊗ C^{D'_{N-k}};
 *  - for m = 1 the block-diagonal part is always separable, so coherences
 *    between sectors are the only source of entanglement.
 *
 * classify() is sound but not complete: large PPT blocks that none of the
 * constructive rules resolve come back Undetermined.
 */

#pragma once

#include "fermient/bipartition.hpp"
#include "fermient/fock_space.hpp"
#include "fermient/ladder.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace fermient {

struct EntanglementTolerances {
    double rank = 1e-10;        ///< singular values, eigenvalues, purity defect
    double coherence = 1e-12;   ///< max |eta| entry regarded as zero
    double negativity = 1e-10;  ///< negativity regarded as zero
    double weight = 1e-14;      ///< sector weights p_k below this are dropped
    double witness = 1e-10;     ///< |Tr[rho A1 A2]| regarded as zero
};

// ---------------------------------------------------------------------------

struct SectorBlock {
    BlockDims dims;
    double weight = 0.0;  ///< p_k
    CMatrix state;        ///< rho_k, unit trace, (sigma, sigma') order; empty if p_k < cutoff
};

struct BlockDecomposition {
    SectorLayout layout;
    std::vector<SectorBlock> blocks;
    CMatrix eta;  ///< cross-sector part in the original basis
    double eta_norm = 0.0;  ///< max |eta_ij|

    /// sum_k p_k rho_k + eta, in the original basis.
    [[nodiscard]] CMatrix reconstruct() const;
};

BlockDecomposition block_decompose(const DensityMatrix& rho, const ModeBipartition& bp,
                                   const EntanglementTolerances& tol = {});

// ---------------------------------------------------------------------------

enum class Status { Separable, Entangled, Undetermined };
const char* to_string(Status s) noexcept;

struct OddOddWitness {
    LadderMonomial first;   ///< odd monomial on modes 1..m
    LadderMonomial second;  ///< odd monomial on modes m+1..M
    Complex value;          ///< Tr[rho first second]
};

struct NonBlockDiagonal {
    double eta_norm = 0.0;
};

struct NegativeBlock {
    int k = 0;
    double negativity = 0.0;
};

struct SchmidtSpectrum {
    std::vector<double> values;  ///< descending, only those above the rank tolerance
};

enum class BlockRule {
    TrivialFactor,       ///< D_k = 1 or D'_{N-k} = 1
    ProductPure,         ///< rank-one block with Schmidt rank one
    Diagonal,            ///< diagonal in the product basis
    PptSmall,            ///< PPT and D_k D'_{N-k} <= 6
    ProductOfMarginals,  ///< equals the tensor product of its marginals
    EntangledPure,       ///< rank-one block with Schmidt rank > 1
    NegativePartialTranspose,
    Unresolved,
};
const char* to_string(BlockRule r) noexcept;

struct BlockCertificate {
    int k = 0;
    BlockRule rule = BlockRule::Unresolved;
    double negativity = 0.0;
};

struct BlockCertificates {
    std::vector<BlockCertificate> blocks;
};

using Evidence = std::variant<std::monostate, OddOddWitness, NonBlockDiagonal, NegativeBlock,
                              SchmidtSpectrum, BlockCertificates>;

struct Verdict {
    Status status = Status::Undetermined;
    Evidence evidence;
};

// ---------------------------------------------------------------------------

/**
 * Normal-ordered monomials of odd degree <= max_degree on modes
 * [first_mode, last_mode]: creators ascending, then annihilators descending,
 * distinct modes within each group. Ordered by degree, then lexicographically
 * on the factor sequence with a†_i < a_i < a†_{i+1}.
 */
std::vector<LadderMonomial> odd_monomials(int first_mode, int last_mode, int max_degree);

/// First (by degree of side 1, degree of side 2, then the order above)
/// product A1 A2 of odd monomials with |Tr[rho A1 A2]| above tolerance.
/// Throws InvalidShape unless max_degree is odd and >= 1.
std::optional<OddOddWitness> odd_odd_witness(const DensityMatrix& rho, const ModeBipartition& bp,
                                             int max_degree, const EntanglementTolerances& tol = {});

/// Singular values of the coefficient matrix C_{p, beta}, descending.
std::vector<double> schmidt_coefficients(const StateVector& psi, const ModeBipartition& bp);

/// Separable iff exactly one Schmidt coefficient exceeds `tol`; the evidence
/// is always the Schmidt spectrum. Throws NotNormalized.
Verdict pure_separability(const StateVector& psi, const ModeBipartition& bp, double tol = 1e-10);

/// rho in C^{d1} ⊗ C^{d2} (see SectorLayout) with the first factor transposed.
CMatrix partial_transpose(const DensityMatrix& rho, const ModeBipartition& bp);

/// (sum |lambda_i| - Tr) / 2 over the eigenvalues of a Hermitian matrix.
double negativity_of(const CMatrix& hermitian);

/// Negativity of rho's partial transpose. Computed block by block: the
/// transposed matrix conserves (side-1 count of the row) - (side-2 count of
/// the row), so the full d1 d2 matrix is never formed.
double negativity(const DensityMatrix& rho, const ModeBipartition& bp);

/// Negativity of a state on C^a ⊗ C^b (row index i*b + j).
double product_negativity(const CMatrix& rho, Index a, Index b);

struct BlockAnalysis {
    BlockRule rule = BlockRule::Unresolved;
    Status status = Status::Undetermined;
    double negativity = 0.0;
    std::vector<double> schmidt;  ///< filled for rank-one blocks
};

/// Separability of a unit-trace block on C^a ⊗ C^b, by the rules of BlockRule in order.
BlockAnalysis analyze_block(const CMatrix& block, Index a, Index b, const EntanglementTolerances& tol = {});

Verdict classify(const DensityMatrix& rho, const ModeBipartition& bp, const EntanglementTolerances& tol = {});

struct Robustness {
    enum class Kind { Exact, Infinite, LowerBound };
    Kind kind = Kind::Exact;
    double value = 0.0;  ///< +inf for Infinite
};
const char* to_string(Robustness::Kind k) noexcept;

/**
 * Infinite when rho has cross-sector coherences; otherwise sum_k p_k R(rho_k)
 * with R = 0 for separable blocks and R = (sum_i s_i)^2 - 1 for pure blocks
 * with Schmidt coefficients s_i. Entangled mixed blocks contribute their
 * negativity, which is a lower bound on their robustness, and the result is
 * then flagged LowerBound.
 */
Robustness robustness(const DensityMatrix& rho, const ModeBipartition& bp, const EntanglementTolerances& tol = {});

/// Identity / D on the N-particle space.
DensityMatrix maximally_mixed(int particles, int modes);

}  // namespace fermient
