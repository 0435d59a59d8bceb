// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/bipartition.hpp"

#include "fermient/error.hpp"

#include <algorithm>
#include <bit>

namespace fermient {

ModeBipartition::ModeBipartition(int first_modes, int modes) : m_(first_modes), modes_(modes) {
    if (modes < 0 || modes > kMaxModes || first_modes < 0 || first_modes > modes) {
        throw Error(ErrorCode::InvalidShape, "bipartition needs 0 <= m <= M");
    }
}

ModeBipartition ModeBipartition::bound_to(int particles) const {
    if (particles < 0 || particles > modes_) {
        throw Error(ErrorCode::InvalidShape, "N must lie in [0, M] to bind a bipartition");
    }
    ModeBipartition out = *this;
    out.particles_ = particles;
    return out;
}

ModeBipartition ModeBipartition::bound_to(const FockSpace& space) const {
    if (space.modes() != modes_) {
        throw Error(ErrorCode::ShapeMismatch, "bipartition has M=" + std::to_string(modes_) +
                                                  " but the space has M=" + std::to_string(space.modes()));
    }
    return bound_to(space.particles());
}

int ModeBipartition::particles() const {
    if (!particles_) throw Error(ErrorCode::UnboundSpace, "bipartition is not bound to a particle number");
    return *particles_;
}

int ModeBipartition::n_minus() const { return std::max(0, particles() - modes_ + m_); }

int ModeBipartition::n_plus() const { return std::min(particles(), m_); }

SectorLabel sector_of(const OccupationState& state, const ModeBipartition& bp) {
    const int n = bp.particles();
    if (state.modes() != bp.modes() || state.particle_count() != n) {
        throw Error(ErrorCode::InvalidShape, "state " + state.to_string() + " is not in the bound space");
    }
    const Mask first = bp.first_part(state.mask());
    const Mask second = bp.second_part(state.mask());
    const int k = std::popcount(first);
    return SectorLabel{k, descending_rank(first, bp.first_modes(), k) + 1,
                       descending_rank(second, bp.second_modes(), n - k) + 1};
}

std::vector<BlockDims> block_dimensions(const ModeBipartition& bp, int particles) {
    const ModeBipartition bound = bp.bound_to(particles);
    std::vector<BlockDims> out;
    for (int k = bound.n_minus(); k <= bound.n_plus(); ++k) {
        out.push_back({k, binomial(bp.first_modes(), k), binomial(bp.second_modes(), particles - k)});
    }
    return out;
}

const char* to_string(Parity p) noexcept {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::Mixed: return "mixed";
    }
    return "mixed";
}

Parity parity_of(const LadderMonomial& m) noexcept {
    return (m.degree() % 2 == 0) ? Parity::Even : Parity::Odd;
}

Parity parity_of(const OperatorExpr& expr) noexcept {
    bool even = false;
    bool odd = false;
    for (const auto& t : expr.terms) {
        (parity_of(t) == Parity::Even ? even : odd) = true;
    }
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

Parity product_parity(Parity a, Parity b) noexcept {
    if (a == Parity::Mixed || b == Parity::Mixed) return Parity::Mixed;
    return a == b ? Parity::Even : Parity::Odd;
}

// ---------------------------------------------------------------------------

SectorLayout::SectorLayout(const FockSpace& space, const ModeBipartition& bp)
    : bp_(bp.bound_to(space)) {
    const int n = bp_.particles();
    const int n_minus = bp_.n_minus();
    const int n_plus = bp_.n_plus();
    blocks_ = block_dimensions(bp_, n);

    offsets_.reserve(blocks_.size());
    Index acc = 0;
    for (const auto& b : blocks_) {
        offsets_.push_back(acc);
        acc += static_cast<Index>(b.size());
    }

    for (const auto& b : blocks_) {
        first_offset_.push_back(d1_);
        d1_ += static_cast<Index>(b.first);
        row_count_.insert(row_count_.end(), b.first, b.k);
    }
    // side-2 counts ascending: N - N_plus .. N - N_minus, i.e. blocks in reverse
    for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
        second_offset_.push_back(d2_);
        d2_ += static_cast<Index>(it->second);
        col_count_.insert(col_count_.end(), it->second, n - it->k);
    }

    const std::size_t dim = space.dimension();
    labels_.resize(dim);
    to_sector_.resize(dim);
    from_sector_.resize(dim);
    prod_row_.resize(dim);
    prod_col_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const SectorLabel label = sector_of(space.state(i), bp_);
        labels_[i] = label;
        const auto block = static_cast<std::size_t>(label.k - n_minus);
        const Index pos = offsets_[block] +
                          static_cast<Index>((label.sigma - 1) * blocks_[block].second + (label.sigma_prime - 1));
        to_sector_[i] = pos;
        from_sector_[static_cast<std::size_t>(pos)] = static_cast<Index>(i);
        prod_row_[i] = first_offset_[block] + static_cast<Index>(label.sigma - 1);
        prod_col_[i] = second_offset_[static_cast<std::size_t>(n_plus - label.k)] +
                       static_cast<Index>(label.sigma_prime - 1);
    }
}

Index SectorLayout::basis_index(const SectorLabel& label) const {
    const int n = bp_.particles();
    if (block_of(label.k) < 0 || label.sigma < 1 || label.sigma > binomial(bp_.first_modes(), label.k) ||
        label.sigma_prime < 1 || label.sigma_prime > binomial(bp_.second_modes(), n - label.k)) {
        throw Error(ErrorCode::InvalidShape, "sector label out of range");
    }
    const Mask first = descending_unrank(label.sigma - 1, bp_.first_modes(), label.k);
    const Mask second = descending_unrank(label.sigma_prime - 1, bp_.second_modes(), n - label.k);
    return static_cast<Index>(descending_rank(bp_.join(first, second), bp_.modes(), n));
}

int SectorLayout::block_of(int k) const noexcept {
    if (blocks_.empty() || k < blocks_.front().k || k > blocks_.back().k) return -1;
    return k - blocks_.front().k;
}

// ---------------------------------------------------------------------------

BlockedAmplitudes embed_block(const StateVector& psi, const ModeBipartition& bp) {
    const SectorLayout layout(*psi.space, bp);
    BlockedAmplitudes out;
    out.blocks = layout.blocks();
    for (const auto& b : out.blocks) {
        out.coefficients.push_back(CMatrix::Zero(static_cast<Index>(b.first), static_cast<Index>(b.second)));
    }
    for (Index i = 0; i < layout.dimension(); ++i) {
        const auto& l = layout.label(i);
        out.coefficients[static_cast<std::size_t>(layout.block_of(l.k))](
            static_cast<Index>(l.sigma - 1), static_cast<Index>(l.sigma_prime - 1)) = psi.amplitudes(i);
    }
    return out;
}

StateVector unembed_block(const BlockedAmplitudes& blocked, const SpacePtr& space, const ModeBipartition& bp) {
    const SectorLayout layout(*space, bp);
    if (blocked.blocks != layout.blocks()) {
        throw Error(ErrorCode::ShapeMismatch, "block structure does not match the space");
    }
    StateVector out = StateVector::zero(space);
    for (Index i = 0; i < layout.dimension(); ++i) {
        const auto& l = layout.label(i);
        out.amplitudes(i) = blocked.coefficients[static_cast<std::size_t>(layout.block_of(l.k))](
            static_cast<Index>(l.sigma - 1), static_cast<Index>(l.sigma_prime - 1));
    }
    return out;
}

BlockedMatrix embed_block(const CMatrix& rho, const FockSpace& space, const ModeBipartition& bp) {
    const SectorLayout layout(space, bp);
    const Index d = layout.dimension();
    if (rho.rows() != d || rho.cols() != d) {
        throw Error(ErrorCode::ShapeMismatch, "matrix does not match the space");
    }
    BlockedMatrix out;
    out.blocks = layout.blocks();
    for (std::size_t b = 0; b < out.blocks.size(); ++b) out.offsets.push_back(layout.block_offset(b));
    out.matrix.resize(d, d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i)
            out.matrix(i, j) = rho(layout.basis_at(i), layout.basis_at(j));
    return out;
}

CMatrix unembed_block(const BlockedMatrix& blocked, const FockSpace& space, const ModeBipartition& bp) {
    const SectorLayout layout(space, bp);
    const Index d = layout.dimension();
    if (blocked.blocks != layout.blocks() || blocked.matrix.rows() != d) {
        throw Error(ErrorCode::ShapeMismatch, "block structure does not match the space");
    }
    CMatrix out(d, d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i)
            out(layout.basis_at(i), layout.basis_at(j)) = blocked.matrix(i, j);
    return out;
}

CMatrix product_coefficients(const StateVector& psi, const SectorLayout& layout) {
    CMatrix c = CMatrix::Zero(layout.product_first_dim(), layout.product_second_dim());
    for (Index i = 0; i < layout.dimension(); ++i) {
        c(layout.product_row(i), layout.product_col(i)) = psi.amplitudes(i);
    }
    return c;
}

CMatrix product_embedding(const CMatrix& rho, const SectorLayout& layout) {
    const Index n = layout.product_first_dim() * layout.product_second_dim();
    CMatrix out = CMatrix::Zero(n, n);
    const Index d = layout.dimension();
    for (Index j = 0; j < d; ++j) {
        const Index pj = layout.product_index(j);
        for (Index i = 0; i < d; ++i) out(layout.product_index(i), pj) = rho(i, j);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SignedIndex {
    Index index;
    int sign;
};

std::vector<SignedIndex> relabel_map(const FockSpace& space, std::span<const int> order) {
    const int modes = space.modes();
    if (static_cast<int>(order.size()) != modes) {
        throw Error(ErrorCode::InvalidShape, "relabeling must list every mode once");
    }
    std::vector<int> new_label(static_cast<std::size_t>(modes + 1), 0);
    for (int j = 1; j <= modes; ++j) {
        const int old = order[static_cast<std::size_t>(j - 1)];
        if (old < 1 || old > modes || new_label[static_cast<std::size_t>(old)] != 0) {
            throw Error(ErrorCode::InvalidShape, "relabeling is not a permutation of 1..M");
        }
        new_label[static_cast<std::size_t>(old)] = j;
    }
    std::vector<SignedIndex> out(space.dimension());
    std::vector<int> seq;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        const Mask mask = space.basis()[i];
        seq.clear();
        Mask target = 0;
        for (int old = 1; old <= modes; ++old) {
            if (mask & mode_bit(old, modes)) {
                const int j = new_label[static_cast<std::size_t>(old)];
                seq.push_back(j);
                target |= mode_bit(j, modes);
            }
        }
        int inversions = 0;
        for (std::size_t a = 0; a < seq.size(); ++a)
            for (std::size_t b = a + 1; b < seq.size(); ++b)
                if (seq[a] > seq[b]) ++inversions;
        out[i] = {static_cast<Index>(*space.find(target)), (inversions & 1) ? -1 : 1};
    }
    return out;
}

}  // namespace

StateVector relabel_modes(const StateVector& psi, std::span<const int> order) {
    const auto map = relabel_map(*psi.space, order);
    StateVector out = StateVector::zero(psi.space);
    for (std::size_t i = 0; i < map.size(); ++i) {
        out.amplitudes(map[i].index) = static_cast<double>(map[i].sign) * psi.amplitudes(static_cast<Index>(i));
    }
    return out;
}

CMatrix relabel_modes(const CMatrix& rho, const FockSpace& space, std::span<const int> order) {
    const auto map = relabel_map(space, order);
    const Index d = space.size();
    CMatrix out(d, d);
    for (Index j = 0; j < d; ++j) {
        const auto& cj = map[static_cast<std::size_t>(j)];
        for (Index i = 0; i < d; ++i) {
            const auto& ci = map[static_cast<std::size_t>(i)];
            out(ci.index, cj.index) = static_cast<double>(ci.sign * cj.sign) * rho(i, j);
        }
    }
    return out;
}

}  // namespace fermient
