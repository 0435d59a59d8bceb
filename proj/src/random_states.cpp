// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/random_states.hpp"

#include <Eigen/QR>

#include <cmath>

namespace fermient {

namespace {

/// Sector-major amplitudes -> basis order.
StateVector from_sector_major(const SpacePtr& space, const SectorLayout& layout, const CVector& sector) {
    StateVector out = StateVector::zero(space);
    for (Index s = 0; s < sector.size(); ++s) out.amplitudes(layout.basis_at(s)) = sector(s);
    return out;
}

}  // namespace

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

StateVector random_pure(const SpacePtr& space, Rng& rng) {
    CVector v = ginibre(space->size(), 1, rng).col(0);
    return StateVector{space, v / v.norm()};
}

DensityMatrix random_mixed(const SpacePtr& space, Rng& rng, Index rank) {
    const Index d = space->size();
    const CMatrix g = ginibre(d, rank <= 0 ? d : rank, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(space, std::move(rho));
}

StateVector random_product_pure(const SpacePtr& space, const ModeBipartition& bp, Rng& rng) {
    const SectorLayout layout(*space, bp);
    const auto& blocks = layout.blocks();
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
    const std::size_t a = pick(rng);
    const auto d1 = static_cast<Index>(blocks[a].first);
    const auto d2 = static_cast<Index>(blocks[a].second);
    CVector c = ginibre(d1, 1, rng).col(0);
    CVector cp = ginibre(d2, 1, rng).col(0);
    CVector sector = CVector::Zero(layout.dimension());
    const Index off = layout.block_offset(a);
    for (Index i = 0; i < d1; ++i)
        for (Index j = 0; j < d2; ++j) sector(off + i * d2 + j) = c(i) * cp(j);
    sector /= sector.norm();
    return from_sector_major(space, layout, sector);
}

DensityMatrix random_separable(const SpacePtr& space, const ModeBipartition& bp, Rng& rng, int terms) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> w(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (double& x : w) total += (x = exp1(rng));
    const Index d = space->size();
    CMatrix rho = CMatrix::Zero(d, d);
    for (double x : w) {
        const StateVector psi = random_product_pure(space, bp, rng);
        rho += (x / total) * psi.amplitudes * psi.amplitudes.adjoint();
    }
    rho = (0.5 * (rho + rho.adjoint())).eval();
    rho /= rho.trace().real();
    return DensityMatrix(space, std::move(rho));
}

DensityMatrix random_block_diagonal(const SpacePtr& space, const ModeBipartition& bp, Rng& rng) {
    const SectorLayout layout(*space, bp);
    std::exponential_distribution<double> exp1(1.0);
    const Index d = space->size();
    CMatrix rho = CMatrix::Zero(d, d);
    double total = 0.0;
    for (std::size_t a = 0; a < layout.blocks().size(); ++a) {
        const auto n = static_cast<Index>(layout.blocks()[a].size());
        const CMatrix g = ginibre(n, n, rng);
        CMatrix blk = g * g.adjoint();
        const double p = exp1(rng);
        total += p;
        blk *= p / blk.trace().real();
        const Index off = layout.block_offset(a);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i) rho(layout.basis_at(off + i), layout.basis_at(off + j)) = blk(i, j);
    }
    rho /= total;
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(space, std::move(rho));
}

CMatrix random_unitary(Index n, Rng& rng) {
    const Eigen::HouseholderQR<CMatrix> qr(ginibre(n, n, rng));
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) q.col(i) *= r(i, i) / mag;
    }
    return q;
}

CMatrix random_hermitian(Index n, Rng& rng) {
    const CMatrix g = ginibre(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

}  // namespace fermient
