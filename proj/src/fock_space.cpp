// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/fock_space.hpp"

#include "fermient/error.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cstdlib>
#include <sstream>

namespace fermient {

std::size_t default_dimension_cap() {
    if (const char* env = std::getenv("FERMIENT_DIM_CAP")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return static_cast<std::size_t>(value);
        }
    }
    return kDefaultDimensionCap;
}

std::uint64_t binomial(int n, int k) noexcept {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // exact at every step: result * (n - k + i) is divisible by i
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

std::uint64_t descending_rank(Mask mask, int nbits, int ones) noexcept {
    std::uint64_t rank = 0;
    int remaining = ones;
    for (int pos = nbits - 1; pos >= 0 && remaining > 0; --pos) {
        if (mask & (Mask{1} << pos)) {
            --remaining;
        } else {
            rank += binomial(pos, remaining - 1);
        }
    }
    return rank;
}

Mask descending_unrank(std::uint64_t rank, int nbits, int ones) noexcept {
    Mask mask = 0;
    int remaining = ones;
    for (int pos = nbits - 1; pos >= 0 && remaining > 0; --pos) {
        const std::uint64_t with_bit = binomial(pos, remaining - 1);
        if (rank < with_bit) {
            mask |= Mask{1} << pos;
            --remaining;
        } else {
            rank -= with_bit;
        }
    }
    return mask;
}

// ---------------------------------------------------------------------------

OccupationState::OccupationState(const std::vector<int>& occupations) {
    if (occupations.size() > static_cast<std::size_t>(kMaxModes)) {
        throw Error(ErrorCode::InvalidShape, "too many modes in occupation pattern");
    }
    modes_ = static_cast<int>(occupations.size());
    for (int i = 0; i < modes_; ++i) {
        const int n = occupations[static_cast<std::size_t>(i)];
        if (n != 0 && n != 1) {
            throw Error(ErrorCode::InvalidShape, "fermionic occupation numbers must be 0 or 1");
        }
        if (n == 1) mask_ |= mode_bit(i + 1, modes_);
    }
}

OccupationState OccupationState::from_mask(Mask mask, int modes) {
    if (modes < 0 || modes > kMaxModes || (mask & ~low_bits(modes)) != 0) {
        throw Error(ErrorCode::InvalidShape, "mask does not fit the mode count");
    }
    return OccupationState(mask, modes);
}

int OccupationState::particle_count() const noexcept { return std::popcount(mask_); }

int OccupationState::occupation(int mode) const {
    if (mode < 1 || mode > modes_) {
        throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(mode) + " out of range");
    }
    return (mask_ & mode_bit(mode, modes_)) ? 1 : 0;
}

std::vector<int> OccupationState::occupations() const {
    std::vector<int> out(static_cast<std::size_t>(modes_));
    for (int i = 1; i <= modes_; ++i) out[static_cast<std::size_t>(i - 1)] = occupation(i);
    return out;
}

std::string OccupationState::to_string() const {
    std::ostringstream os;
    os << '|';
    for (int i = 1; i <= modes_; ++i) {
        if (i > 1) os << ',';
        os << occupation(i);
    }
    os << '>';
    return os.str();
}

// ---------------------------------------------------------------------------

bool FockSpace::contains(Mask mask) const noexcept {
    return (mask & ~low_bits(modes_)) == 0 && std::popcount(mask) == particles_;
}

std::optional<std::size_t> FockSpace::find(Mask mask) const noexcept {
    if (!contains(mask)) return std::nullopt;
    return static_cast<std::size_t>(descending_rank(mask, modes_, particles_));
}

std::size_t FockSpace::index_of(const OccupationState& state) const {
    if (state.modes() != modes_) {
        throw Error(ErrorCode::InvalidShape, "state has a different mode count than the space");
    }
    const auto idx = find(state.mask());
    if (!idx) {
        throw Error(ErrorCode::InvalidShape, "state " + state.to_string() + " is not in the N=" +
                                                 std::to_string(particles_) + " space");
    }
    return *idx;
}

SpacePtr enumerate_basis(int particles, int modes, std::size_t cap) {
    if (modes < 0 || modes > kMaxModes) {
        throw Error(ErrorCode::InvalidShape, "mode count must be in [0, " +
                                                 std::to_string(kMaxModes) + "]");
    }
    if (particles < 0) throw Error(ErrorCode::InvalidShape, "N must be non-negative");
    if (particles > modes) throw Error(ErrorCode::InvalidShape, "N exceeds M");
    const std::uint64_t dim = binomial(modes, particles);
    if (dim > cap) {
        throw Error(ErrorCode::DimensionCapExceeded,
                    "C(" + std::to_string(modes) + ", " + std::to_string(particles) + ") = " +
                        std::to_string(dim) + " exceeds the dimension cap " + std::to_string(cap));
    }
    std::vector<Mask> basis(static_cast<std::size_t>(dim));
    for (std::uint64_t r = 0; r < dim; ++r) {
        basis[static_cast<std::size_t>(r)] = descending_unrank(r, modes, particles);
    }
    return SpacePtr(new FockSpace(particles, modes, std::move(basis)));
}

// ---------------------------------------------------------------------------

StateVector StateVector::zero(SpacePtr space) {
    const Index n = space->size();
    return StateVector{std::move(space), CVector::Zero(n)};
}

StateVector StateVector::basis_state(SpacePtr space, const OccupationState& state) {
    StateVector v = zero(space);
    v.amplitudes(static_cast<Index>(space->index_of(state))) = 1.0;
    return v;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw Error(ErrorCode::NotNormalized, "cannot normalize the zero vector");
    return StateVector{space, amplitudes / n};
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(SpacePtr space, CMatrix matrix, const StateTolerances& tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    const Index d = space_->size();
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw Error(ErrorCode::ShapeMismatch, "density matrix shape does not match the space");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian) {
        throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > tol.trace) {
        throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tol.min_eigenvalue) {
        throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    if (!psi.is_normalized(1e-10)) {
        throw Error(ErrorCode::NotNormalized, "pure state is not normalized");
    }
    return DensityMatrix(psi.space, psi.amplitudes * psi.amplitudes.adjoint(), Trusted{});
}

DensityMatrix DensityMatrix::mixture(const std::vector<DensityMatrix>& states,
                                     const std::vector<double>& weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw Error(ErrorCode::LengthMismatch, "mixture needs one weight per state");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw Error(ErrorCode::InvalidState, "mixture weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidState, "mixture weights must sum to 1");
    }
    const SpacePtr& space = states.front().space();
    CMatrix rho = CMatrix::Zero(space->size(), space->size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        if (s.space()->particles() != space->particles() || s.space()->modes() != space->modes()) {
            throw Error(ErrorCode::ShapeMismatch, "mixture components live on different spaces");
        }
        rho += weights[i] * s.matrix();
    }
    rho /= total;
    return DensityMatrix(space, std::move(rho), Trusted{});
}

double DensityMatrix::purity() const {
    return (matrix_ * matrix_).trace().real();
}

}  // namespace fermient
