// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fermient/fock_space.hpp"

#include <bit>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fermient {

/// a_mode (dagger = false) or a†_mode (dagger = true); mode is 1-based.
struct LadderOp {
    int mode = 1;
    bool dagger = false;

    auto operator<=>(const LadderOp&) const = default;
};

constexpr LadderOp cre(int mode) noexcept { return {mode, true}; }
constexpr LadderOp ann(int mode) noexcept { return {mode, false}; }

/// coefficient * factors[0] * factors[1] * ... ; the rightmost factor acts first.
/// No normal ordering is ever applied.
struct LadderMonomial {
    std::vector<LadderOp> factors;
    Complex coefficient{1.0, 0.0};

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(factors.size()); }
    /// (#creators - #annihilators)
    [[nodiscard]] int particle_change() const noexcept;
    [[nodiscard]] LadderMonomial adjoint() const;
    /// e.g. "a+1 a2", with a "(re,im)*" prefix when the coefficient is not 1.
    [[nodiscard]] std::string to_string() const;

    bool operator==(const LadderMonomial&) const = default;
};

LadderMonomial operator*(const LadderMonomial& lhs, const LadderMonomial& rhs);
LadderMonomial operator*(Complex scalar, LadderMonomial rhs);

/// Sum of ladder monomials.
struct OperatorExpr {
    std::vector<LadderMonomial> terms;

    OperatorExpr() = default;
    OperatorExpr(LadderMonomial m) : terms{std::move(m)} {}  // NOLINT(implicit)

    [[nodiscard]] OperatorExpr adjoint() const;
};

OperatorExpr operator+(OperatorExpr lhs, const OperatorExpr& rhs);
OperatorExpr operator-(OperatorExpr lhs, const OperatorExpr& rhs);
OperatorExpr operator*(const OperatorExpr& lhs, const OperatorExpr& rhs);
OperatorExpr operator*(Complex scalar, OperatorExpr rhs);

/// Monomial from a factor list: monomial({cre(1), ann(2)}) == a†_1 a_2.
inline LadderMonomial monomial(std::vector<LadderOp> factors, Complex coefficient = 1.0) {
    return LadderMonomial{std::move(factors), coefficient};
}

/// {A, B} and [A, B]
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

struct MaskAction {
    Mask mask;
    int sign;
};

/// Action of one ladder operator on a basis pattern. The sign is
/// (-1)^{sum_{j<mode} n_j}; nullopt when the result vanishes.
constexpr std::optional<MaskAction> act(Mask mask, int modes, LadderOp op) noexcept {
    const Mask bit = mode_bit(op.mode, modes);
    const bool occupied = (mask & bit) != 0;
    if (occupied == op.dagger) return std::nullopt;
    // modes 1..mode-1 sit above `bit`
    const int left = std::popcount(mask >> (modes - op.mode + 1));
    return MaskAction{mask ^ bit, (left & 1) ? -1 : 1};
}

/// Action of a whole factor list, rightmost factor first.
constexpr std::optional<MaskAction> act(Mask mask, int modes, std::span<const LadderOp> factors) noexcept {
    int sign = 1;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const auto step = act(mask, modes, *it);
        if (!step) return std::nullopt;
        mask = step->mask;
        sign *= step->sign;
    }
    return MaskAction{mask, sign};
}

/// Throws ModeOutOfRange when a factor addresses a mode outside [1, modes].
void check_modes(const LadderMonomial& m, int modes);

/// a_mode or a†_mode applied to a state. The result lives in the N-1 or N+1
/// space; nullopt means that sector does not exist (N-1 < 0 or N+1 > M), i.e.
/// the result is zero. Throws ModeOutOfRange.
std::optional<StateVector> apply_ladder(const StateVector& state, int mode, bool dagger);

/// Rectangular matrix of a_mode / a†_mode from the N-particle to the N±1
/// particle sector. Sectors that do not exist have dimension 0.
CMatrix ladder_matrix(int particles, int modes, int mode, bool dagger);

using OperatorMatrix = CMatrix;

/// Dense matrix of a number-conserving expression on a fixed-N space.
/// Throws NumberNonconserving or ModeOutOfRange.
OperatorMatrix operator_matrix(const OperatorExpr& expr, const FockSpace& space);

}  // namespace fermient
