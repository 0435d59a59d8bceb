// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock_space.hpp
 * @brief Fixed-N fermionic Fock spaces over M modes.
 *
 * An occupation pattern (n_1, ..., n_M) is stored as a bitmask with mode i at
 * bit position M - i, so mode 1 is the most significant bit. With that layout
 * the lexicographic order of bit-vectors (mode 1 first) is the numeric order
 * of the masks, and the basis is listed in descending numeric order:
 * (1,1,0,0) precedes (1,0,1,0) precedes ... (0,0,1,1).
 *
 * The basis vector for a pattern is the ordered product
 * (a†_1)^{n_1} (a†_2)^{n_2} ... (a†_M)^{n_M} |0>, mode 1 leftmost.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fermient {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;
using Mask = std::uint64_t;

inline constexpr int kMaxModes = 62;
inline constexpr std::size_t kDefaultDimensionCap = 20000;

/// Dimension cap used when none is passed explicitly: FERMIENT_DIM_CAP if set
/// to a positive integer, otherwise kDefaultDimensionCap.
std::size_t default_dimension_cap();

/// C(n, k); zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k) noexcept;

/// Bit of mode `mode` (1-based) in an M-mode mask.
constexpr Mask mode_bit(int mode, int modes) noexcept {
    return Mask{1} << (modes - mode);
}

constexpr Mask low_bits(int count) noexcept {
    return count >= 64 ? ~Mask{0} : ((Mask{1} << count) - 1);
}

/// 0-based rank of `mask` among all `nbits`-bit masks with `ones` set bits,
/// counted in descending numeric order (the largest such mask has rank 0).
std::uint64_t descending_rank(Mask mask, int nbits, int ones) noexcept;

/// Inverse of descending_rank.
Mask descending_unrank(std::uint64_t rank, int nbits, int ones) noexcept;

class OccupationState {
public:
    /// Throws InvalidShape unless every entry is 0 or 1 and size <= kMaxModes.
    explicit OccupationState(const std::vector<int>& occupations);

    static OccupationState from_mask(Mask mask, int modes);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] Mask mask() const noexcept { return mask_; }
    [[nodiscard]] int particle_count() const noexcept;
    /// n_mode, mode is 1-based. Throws ModeOutOfRange.
    [[nodiscard]] int occupation(int mode) const;
    [[nodiscard]] std::vector<int> occupations() const;
    /// "|1,0,0,1>"
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const OccupationState&) const = default;

private:
    OccupationState(Mask mask, int modes) : mask_(mask), modes_(modes) {}

    Mask mask_ = 0;
    int modes_ = 0;
};

class FockSpace;
using SpacePtr = std::shared_ptr<const FockSpace>;

/// The C(M, N)-dimensional space of N fermions in M modes. Immutable.
class FockSpace {
public:
    [[nodiscard]] int particles() const noexcept { return particles_; }
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return basis_.size(); }
    [[nodiscard]] Index size() const noexcept { return static_cast<Index>(basis_.size()); }

    [[nodiscard]] const std::vector<Mask>& basis() const noexcept { return basis_; }
    [[nodiscard]] Mask mask(std::size_t i) const { return basis_.at(i); }
    [[nodiscard]] OccupationState state(std::size_t i) const {
        return OccupationState::from_mask(basis_.at(i), modes_);
    }

    [[nodiscard]] bool contains(Mask mask) const noexcept;
    /// Position of a pattern in the basis, or nullopt when it is not an N-particle pattern.
    [[nodiscard]] std::optional<std::size_t> find(Mask mask) const noexcept;
    /// Throws InvalidShape when the state does not belong to this space.
    [[nodiscard]] std::size_t index_of(const OccupationState& state) const;

    friend SpacePtr enumerate_basis(int particles, int modes, std::size_t cap);

private:
    FockSpace(int particles, int modes, std::vector<Mask> basis)
        : particles_(particles), modes_(modes), basis_(std::move(basis)) {}

    int particles_;
    int modes_;
    std::vector<Mask> basis_;
};

/// Builds the N-particle, M-mode space. Throws InvalidShape when N < 0, N > M or
/// M > kMaxModes, DimensionCapExceeded when C(M, N) > cap.
SpacePtr enumerate_basis(int particles, int modes, std::size_t cap = default_dimension_cap());

/// Amplitudes over a FockSpace.
struct StateVector {
    SpacePtr space;
    CVector amplitudes;

    static StateVector zero(SpacePtr space);
    static StateVector basis_state(SpacePtr space, const OccupationState& state);

    [[nodiscard]] double norm() const { return amplitudes.norm(); }
    [[nodiscard]] bool is_normalized(double tol = 1e-12) const {
        return std::abs(amplitudes.squaredNorm() - 1.0) <= tol;
    }
    /// Throws NotNormalized on the zero vector.
    [[nodiscard]] StateVector normalized() const;
};

struct StateTolerances {
    double hermitian = 1e-12;
    double trace = 1e-12;
    double min_eigenvalue = -1e-10;
};

/// A validated density matrix. Construction checks Hermiticity, unit trace and
/// positivity and throws InvalidState otherwise.
class DensityMatrix {
public:
    DensityMatrix(SpacePtr space, CMatrix matrix, const StateTolerances& tol = {});

    static DensityMatrix from_pure(const StateVector& psi);
    /// Mixture of validated states on the same space; weights must be
    /// non-negative and sum to 1 within 1e-9.
    static DensityMatrix mixture(const std::vector<DensityMatrix>& states,
                                 const std::vector<double>& weights);

    [[nodiscard]] const SpacePtr& space() const noexcept { return space_; }
    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] Index size() const noexcept { return matrix_.rows(); }
    [[nodiscard]] double purity() const;

private:
    struct Trusted {};
    DensityMatrix(SpacePtr space, CMatrix matrix, Trusted)
        : space_(std::move(space)), matrix_(std::move(matrix)) {}

    SpacePtr space_;
    CMatrix matrix_;
};

}  // namespace fermient
