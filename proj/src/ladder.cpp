// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/ladder.hpp"

#include "fermient/error.hpp"
#include "fermient/kernels.hpp"

#include <sstream>

namespace fermient {

int LadderMonomial::particle_change() const noexcept {
    int change = 0;
    for (const auto& f : factors) change += f.dagger ? 1 : -1;
    return change;
}

LadderMonomial LadderMonomial::adjoint() const {
    LadderMonomial out;
    out.coefficient = std::conj(coefficient);
    out.factors.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        out.factors.push_back({it->mode, !it->dagger});
    }
    return out;
}

std::string LadderMonomial::to_string() const {
    std::ostringstream os;
    if (coefficient != Complex(1.0)) {
        os << '(' << coefficient.real() << ',' << coefficient.imag() << ")*";
    }
    if (factors.empty()) os << '1';
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << ' ';
        os << (factors[i].dagger ? "a+" : "a") << factors[i].mode;
    }
    return os.str();
}

LadderMonomial operator*(const LadderMonomial& lhs, const LadderMonomial& rhs) {
    LadderMonomial out;
    out.coefficient = lhs.coefficient * rhs.coefficient;
    out.factors = lhs.factors;
    out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
    return out;
}

LadderMonomial operator*(Complex scalar, LadderMonomial rhs) {
    rhs.coefficient *= scalar;
    return rhs;
}

OperatorExpr OperatorExpr::adjoint() const {
    OperatorExpr out;
    out.terms.reserve(terms.size());
    for (const auto& t : terms) out.terms.push_back(t.adjoint());
    return out;
}

OperatorExpr operator+(OperatorExpr lhs, const OperatorExpr& rhs) {
    lhs.terms.insert(lhs.terms.end(), rhs.terms.begin(), rhs.terms.end());
    return lhs;
}

OperatorExpr operator-(OperatorExpr lhs, const OperatorExpr& rhs) {
    for (auto t : rhs.terms) {
        t.coefficient = -t.coefficient;
        lhs.terms.push_back(std::move(t));
    }
    return lhs;
}

OperatorExpr operator*(const OperatorExpr& lhs, const OperatorExpr& rhs) {
    OperatorExpr out;
    out.terms.reserve(lhs.terms.size() * rhs.terms.size());
    for (const auto& a : lhs.terms)
        for (const auto& b : rhs.terms) out.terms.push_back(a * b);
    return out;
}

OperatorExpr operator*(Complex scalar, OperatorExpr rhs) {
    for (auto& t : rhs.terms) t.coefficient *= scalar;
    return rhs;
}

OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b + b * a; }

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }

void check_modes(const LadderMonomial& m, int modes) {
    for (const auto& f : m.factors) {
        if (f.mode < 1 || f.mode > modes) {
            throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(f.mode) +
                                                       " outside [1, " + std::to_string(modes) + "]");
        }
    }
}

std::optional<StateVector> apply_ladder(const StateVector& state, int mode, bool dagger) {
    const FockSpace& from = *state.space;
    if (mode < 1 || mode > from.modes()) {
        throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(mode) + " outside [1, " +
                                                   std::to_string(from.modes()) + "]");
    }
    const int target = from.particles() + (dagger ? 1 : -1);
    if (target < 0 || target > from.modes()) return std::nullopt;
    const auto to = enumerate_basis(target, from.modes());
    StateVector out = StateVector::zero(to);
    for (Index i = 0; i < from.size(); ++i) {
        const Complex c = state.amplitudes(i);
        if (c == Complex{}) continue;
        const auto hit = act(from.basis()[static_cast<std::size_t>(i)], from.modes(), LadderOp{mode, dagger});
        if (!hit) continue;
        out.amplitudes(static_cast<Index>(*to->find(hit->mask))) += static_cast<double>(hit->sign) * c;
    }
    return out;
}

CMatrix ladder_matrix(int particles, int modes, int mode, bool dagger) {
    if (mode < 1 || mode > modes) {
        throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(mode) + " out of range");
    }
    const int target = particles + (dagger ? 1 : -1);
    const auto rows = static_cast<Index>(binomial(modes, target));
    const auto cols = static_cast<Index>(binomial(modes, particles));
    CMatrix out = CMatrix::Zero(rows, cols);
    if (rows == 0 || cols == 0) return out;
    const auto from = enumerate_basis(particles, modes);
    const auto to = enumerate_basis(target, modes);
    for (Index j = 0; j < cols; ++j) {
        const auto hit = act(from->basis()[static_cast<std::size_t>(j)], modes, LadderOp{mode, dagger});
        if (hit) out(static_cast<Index>(*to->find(hit->mask)), j) = static_cast<double>(hit->sign);
    }
    return out;
}

OperatorMatrix operator_matrix(const OperatorExpr& expr, const FockSpace& space) {
    for (const auto& term : expr.terms) {
        check_modes(term, space.modes());
        if (term.particle_change() != 0) {
            throw Error(ErrorCode::NumberNonconserving,
                        "monomial " + term.to_string() + " changes the particle number");
        }
    }
    OperatorMatrix out;
    kernels::omp::fill_operator_matrix(expr.terms, space, out);
    return out;
}

}  // namespace fermient
