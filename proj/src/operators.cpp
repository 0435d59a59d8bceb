// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/operators.hpp"

#include "fermient/error.hpp"

#include <cmath>
#include <map>

namespace fermient {

SpectralWeights SpectralWeights::power(int m, int p) {
    SpectralWeights w;
    for (int k = 1; k <= m; ++k) w.omega.push_back(std::pow(static_cast<double>(k), p));
    return w;
}

SpectralWeights SpectralWeights::constant(int m, double value) {
    return SpectralWeights{std::vector<double>(static_cast<std::size_t>(m), value)};
}

Dispersion Dispersion::linear(int modes) {
    Dispersion d;
    for (int k = 1; k <= modes; ++k) d.omega.push_back(static_cast<double>(k));
    return d;
}

const char* to_string(Axis a) noexcept {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

OperatorExpr j_expr(Axis axis, int n, const SpectralWeights& w, const ModeBipartition& bp) {
    const int m = bp.first_modes();
    if (m != bp.second_modes()) {
        throw Error(ErrorCode::UnbalancedBipartition, "pair operators need a balanced (m, m) bipartition");
    }
    if (static_cast<int>(w.omega.size()) != m) {
        throw Error(ErrorCode::LengthMismatch, "need one spectral weight per pair");
    }
    OperatorExpr out;
    for (int k = 1; k <= m; ++k) {
        const double weight = std::pow(w.omega[static_cast<std::size_t>(k - 1)], n);
        if (!std::isfinite(weight)) {
            throw Error(ErrorCode::InvalidShape, "spectral weight power is not finite");
        }
        const LadderMonomial hop = monomial({cre(k), ann(m + k)});
        const LadderMonomial hop_back = monomial({cre(m + k), ann(k)});
        switch (axis) {
            case Axis::X:
                out = out + (0.5 * weight) * (OperatorExpr(hop) + hop_back);
                break;
            case Axis::Y:
                out = out + Complex(0.0, -0.5 * weight) * (OperatorExpr(hop) - hop_back);
                break;
            case Axis::Z:
                out = out + (0.5 * weight) *
                                (OperatorExpr(monomial({cre(k), ann(k)})) - monomial({cre(m + k), ann(m + k)}));
                break;
        }
    }
    return out;
}

OperatorMatrix build_j(Axis axis, int n, const SpectralWeights& w, const ModeBipartition& bp,
                       const FockSpace& space) {
    return operator_matrix(j_expr(axis, n, w, bp.bound_to(space)), space);
}

OperatorMatrix build_hamiltonian(const Dispersion& d, const FockSpace& space) {
    if (static_cast<int>(d.omega.size()) != space.modes()) {
        throw Error(ErrorCode::LengthMismatch, "dispersion needs one entry per mode");
    }
    OperatorMatrix h = OperatorMatrix::Zero(space.size(), space.size());
    for (Index i = 0; i < space.size(); ++i) {
        const Mask mask = space.basis()[static_cast<std::size_t>(i)];
        double e = 0.0;
        for (int k = 1; k <= space.modes(); ++k) {
            if (mask & mode_bit(k, space.modes())) e += d.omega[static_cast<std::size_t>(k - 1)];
        }
        h(i, i) = e;
    }
    return h;
}

OperatorMatrix mode_product_propagator(const Dispersion& d, const FockSpace& space, double t) {
    if (static_cast<int>(d.omega.size()) != space.modes()) {
        throw Error(ErrorCode::LengthMismatch, "dispersion needs one entry per mode");
    }
    OperatorMatrix u = OperatorMatrix::Identity(space.size(), space.size());
    for (int k = 1; k <= space.modes(); ++k) {
        const auto number = operator_matrix(OperatorExpr(monomial({cre(k), ann(k)})), space);
        OperatorMatrix factor = OperatorMatrix::Zero(space.size(), space.size());
        for (Index i = 0; i < space.size(); ++i) {
            factor(i, i) = std::exp(Complex(0.0, -t * d.omega[static_cast<std::size_t>(k - 1)] * number(i, i).real()));
        }
        u = u * factor;
    }
    return u;
}

CMatrix bogolubov_single_particle(int m) {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix v = CMatrix::Zero(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) {
        // b†_k = (a†_k + a†_{m+k})/√2
        v(k, k) = s;
        v(m + k, k) = s;
        // b†_{m+k} = (a†_k - a†_{m+k})/√2
        v(k, m + k) = s;
        v(m + k, m + k) = -s;
    }
    return v;
}

CMatrix lift_single_particle(const CMatrix& v, const FockSpace& space) {
    const int modes = space.modes();
    if (v.rows() != modes || v.cols() != modes) {
        throw Error(ErrorCode::ShapeMismatch, "single-particle matrix must be M x M");
    }
    const Index d = space.size();
    CMatrix w = CMatrix::Zero(d, d);
    for (Index col = 0; col < d; ++col) {
        const Mask target = space.basis()[static_cast<std::size_t>(col)];
        std::map<Mask, Complex> current{{Mask{0}, Complex(1.0)}};
        // rightmost creator (highest mode) acts first
        for (int i = modes; i >= 1; --i) {
            if (!(target & mode_bit(i, modes))) continue;
            std::map<Mask, Complex> next;
            for (const auto& [mask, amp] : current) {
                for (int j = 1; j <= modes; ++j) {
                    const Complex c = v(j - 1, i - 1);
                    if (c == Complex{}) continue;
                    const auto hit = act(mask, modes, cre(j));
                    if (hit) next[hit->mask] += c * amp * static_cast<double>(hit->sign);
                }
            }
            current = std::move(next);
        }
        for (const auto& [mask, amp] : current) {
            w(static_cast<Index>(*space.find(mask)), col) = amp;
        }
    }
    return w;
}

CMatrix bogolubov_pairwise(const FockSpace& space, int m) {
    if (space.modes() != 2 * m) {
        throw Error(ErrorCode::UnbalancedBipartition, "pairwise rotation needs M = 2m");
    }
    return lift_single_particle(bogolubov_single_particle(m), space).adjoint();
}

// ---------------------------------------------------------------------------

namespace {

Mask pattern_mask(const std::vector<int>& pattern, int expected_len) {
    if (static_cast<int>(pattern.size()) != expected_len) {
        throw Error(ErrorCode::PatternOutOfRange, "pattern length " + std::to_string(pattern.size()) +
                                                      " does not match the side's " +
                                                      std::to_string(expected_len) + " modes");
    }
    Mask mask = 0;
    for (int i = 0; i < expected_len; ++i) {
        const int b = pattern[static_cast<std::size_t>(i)];
        if (b != 0 && b != 1) throw Error(ErrorCode::PatternOutOfRange, "pattern entries must be 0 or 1");
        if (b) mask |= mode_bit(i + 1, expected_len);
    }
    return mask;
}

// <psi| creators · P · annihilators |psi>, where P keeps only basis states with
// every mode of `empty_modes` unoccupied.
Complex sandwich(const StateVector& psi, const std::vector<LadderOp>& annihilators, Mask empty_modes,
                 const std::vector<LadderOp>& creators) {
    std::optional<StateVector> v = psi;
    for (auto it = annihilators.rbegin(); it != annihilators.rend() && v; ++it) {
        v = apply_ladder(*v, it->mode, it->dagger);
    }
    if (!v) return {};
    for (Index i = 0; i < v->space->size(); ++i) {
        if (v->space->basis()[static_cast<std::size_t>(i)] & empty_modes) v->amplitudes(i) = 0.0;
    }
    for (auto it = creators.rbegin(); it != creators.rend() && v; ++it) {
        v = apply_ladder(*v, it->mode, it->dagger);
    }
    if (!v || v->space->particles() != psi.space->particles()) return {};
    return psi.amplitudes.dot(v->amplitudes);
}

// a†_{i1} a†_{i2} ... for the set modes, ascending
std::vector<LadderOp> creators_of(Mask mask, int modes) {
    std::vector<LadderOp> out;
    for (int i = 1; i <= modes; ++i)
        if (mask & mode_bit(i, modes)) out.push_back(cre(i));
    return out;
}

// ... a_{i2} a_{i1}, descending
std::vector<LadderOp> annihilators_of(Mask mask, int modes) {
    std::vector<LadderOp> out;
    for (int i = modes; i >= 1; --i)
        if (mask & mode_bit(i, modes)) out.push_back(ann(i));
    return out;
}

}  // namespace

LocalFlip::LocalFlip(Side side, std::vector<int> p, std::vector<int> p_prime, const ModeBipartition& bp)
    : side_(side), bp_(bp) {
    const int len = side == Side::First ? bp.first_modes() : bp.second_modes();
    p_ = pattern_mask(p, len);
    p_prime_ = pattern_mask(p_prime, len);
}

Complex LocalFlip::expectation(const StateVector& psi) const {
    const FockSpace& space = *psi.space;
    if (space.modes() != bp_.modes()) throw Error(ErrorCode::ShapeMismatch, "state and bipartition differ in M");
    Complex acc{};
    for (Index i = 0; i < space.size(); ++i) {
        const Mask mask = space.basis()[static_cast<std::size_t>(i)];
        const Mask own = side_ == Side::First ? bp_.first_part(mask) : bp_.second_part(mask);
        if (own != p_) continue;
        const Mask partner = side_ == Side::First ? bp_.join(p_prime_, bp_.second_part(mask))
                                                  : bp_.join(bp_.first_part(mask), p_prime_);
        if (const auto j = space.find(partner)) {
            acc += std::conj(psi.amplitudes(static_cast<Index>(*j))) * psi.amplitudes(i);
        }
    }
    return acc;
}

Complex LocalFlip::expectation_via_operators(const StateVector& psi) const {
    const int modes = bp_.modes();
    const Mask from = side_ == Side::First ? bp_.join(p_, 0) : bp_.join(0, p_);
    const Mask to = side_ == Side::First ? bp_.join(p_prime_, 0) : bp_.join(0, p_prime_);
    const Mask side_modes = side_ == Side::First ? bp_.join(low_bits(bp_.first_modes()), 0)
                                                 : bp_.join(0, low_bits(bp_.second_modes()));
    return sandwich(psi, annihilators_of(from, modes), side_modes, creators_of(to, modes));
}

JointFlip::JointFlip(std::vector<int> p, std::vector<int> beta, std::vector<int> p_prime,
                     std::vector<int> beta_prime, const ModeBipartition& bp)
    : bp_(bp) {
    from_ = bp.join(pattern_mask(p, bp.first_modes()), pattern_mask(beta, bp.second_modes()));
    to_ = bp.join(pattern_mask(p_prime, bp.first_modes()), pattern_mask(beta_prime, bp.second_modes()));
}

Complex JointFlip::expectation(const StateVector& psi) const {
    const auto i = psi.space->find(from_);
    const auto j = psi.space->find(to_);
    if (!i || !j) return {};
    return std::conj(psi.amplitudes(static_cast<Index>(*j))) * psi.amplitudes(static_cast<Index>(*i));
}

Complex JointFlip::expectation_via_operators(const StateVector& psi) const {
    const int modes = bp_.modes();
    return sandwich(psi, annihilators_of(from_, modes), low_bits(modes), creators_of(to_, modes));
}

}  // namespace fermient
