// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/entanglement.hpp"
#include "fermient/error.hpp"
#include "fermient/operators.hpp"
#include "fermient/random_states.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include <bit>

using namespace fermient;
using fermient::testing::bell_pair;
using fermient::testing::fock;
using fermient::testing::max_abs;
using fermient::testing::superpose;

namespace {

DensityMatrix pure(const StateVector& psi) { return DensityMatrix::from_pure(psi); }

/// Negativity from the full partial transpose (no block structure used).
double full_negativity(const DensityMatrix& rho, const ModeBipartition& bp) {
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<CMatrix>(partial_transpose(rho, bp), Eigen::EigenvaluesOnly).eigenvalues();
    return (ev.cwiseAbs().sum() - ev.sum()) / 2.0;
}

/// sum_{S1, S2} p_{S1} q_{S2} a†_{S1} a†_{S2} |0> with random homogeneous
/// creator polynomials P (degree k on modes 1..m) and Q (degree N-k on the rest).
StateVector polynomial_product(int n, int modes, int m, int k, Rng& rng) {
    std::normal_distribution<double> normal;
    const auto vacuum_space = enumerate_basis(0, modes);
    StateVector total = StateVector::zero(enumerate_basis(n, modes));
    std::vector<Complex> q(std::size_t{1} << (modes - m));
    for (auto& c : q) c = Complex(normal(rng), normal(rng));
    for (Mask s1 = 0; s1 < (Mask{1} << m); ++s1) {
        if (std::popcount(s1) != k) continue;
        const Complex p(normal(rng), normal(rng));
        for (Mask s2 = 0; s2 < (Mask{1} << (modes - m)); ++s2) {
            if (std::popcount(s2) != n - k) continue;
            StateVector v = StateVector::basis_state(vacuum_space, OccupationState(std::vector<int>(modes, 0)));
            // Rightmost creator first: side-2 modes descending, then side-1 modes descending.
            for (int mode = modes; mode >= 1; --mode) {
                const bool on = mode <= m ? (s1 >> (m - mode)) & 1 : (s2 >> (modes - mode)) & 1;
                if (on) v = *apply_ladder(v, mode, true);
            }
            total.amplitudes += p * q[s2] * v.amplitudes;
        }
    }
    return total.normalized();
}

/// A block-diagonal state on N=2, M=4, m=2 whose k=1 block (2x2 qubits) is `block`
/// with weight p, the two 1x1 blocks sharing 1-p equally.
DensityMatrix with_middle_block(const CMatrix& block, double p) {
    const auto space = enumerate_basis(2, 4);
    const SectorLayout layout(*space, ModeBipartition(2, 4));
    CMatrix rho = CMatrix::Zero(6, 6);
    const int mid = layout.block_of(1);
    const Index off = layout.block_offset(static_cast<std::size_t>(mid));
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) rho(layout.basis_at(off + i), layout.basis_at(off + j)) = p * block(i, j);
    for (int k : {0, 2}) {
        const Index o = layout.block_offset(static_cast<std::size_t>(layout.block_of(k)));
        rho(layout.basis_at(o), layout.basis_at(o)) = (1.0 - p) / 2.0;
    }
    return DensityMatrix(space, rho);
}

CMatrix bell_like(double a) {
    const double b = std::sqrt(1.0 - a * a);
    CVector v = CVector::Zero(4);
    v(0) = a;  // |1,0;1,0>
    v(3) = b;  // |0,1;0,1>
    return v * v.adjoint();
}

}  // namespace

TEST_CASE("block decomposition examples") {
    const auto f = pure(fock({1, 0, 1, 0}));
    const auto bd = block_decompose(f, ModeBipartition(2, 4));
    int nonzero = 0;
    for (const auto& b : bd.blocks) nonzero += b.weight > 0 ? 1 : 0;
    CHECK(nonzero == 1);
    CHECK(bd.eta_norm == 0.0);

    const auto e6 = block_decompose(pure(bell_pair()), ModeBipartition(1, 2));
    REQUIRE(e6.blocks.size() == 2);
    CHECK(e6.blocks[0].weight == doctest::Approx(0.5));
    CHECK(e6.blocks[1].weight == doctest::Approx(0.5));
    CHECK(e6.eta_norm == doctest::Approx(0.5));

    const auto mix = block_decompose(maximally_mixed(2, 5), ModeBipartition(2, 5));
    CHECK(mix.eta_norm == 0.0);
    for (const auto& b : mix.blocks) {
        const auto n = static_cast<Index>(b.dims.size());
        CHECK(max_abs(b.state - CMatrix::Identity(n, n) / static_cast<double>(n)) < 1e-15);
    }
}

TEST_CASE("block decomposition reconstructs exactly") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int modes = 2 + trial % 5;
        const int n = trial % (modes + 1);
        const int m = (trial / 2) % (modes + 1);
        const auto space = enumerate_basis(n, modes);
        const DensityMatrix rho = random_mixed(space, rng);
        const auto bd = block_decompose(rho, ModeBipartition(m, modes));
        CHECK(max_abs(bd.reconstruct() - rho.matrix()) < 1e-15);
        double total = 0.0;
        for (const auto& b : bd.blocks) total += b.weight;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // eta vanishes inside every diagonal sector block.
        for (Index i = 0; i < space->size(); ++i)
            for (Index j = 0; j < space->size(); ++j)
                if (bd.layout.label(i).k == bd.layout.label(j).k) CHECK(bd.eta(i, j) == Complex{});
    }
}

TEST_CASE("odd monomials are normal ordered and sorted") {
    const auto one = odd_monomials(1, 1, 1);
    REQUIRE(one.size() == 2);
    CHECK(one[0].to_string() == "a+1");
    CHECK(one[1].to_string() == "a1");

    const auto two = odd_monomials(3, 4, 3);
    // degree 1: a+3 a3 a+4 a4; degree 3: C(4,3) = 4 monomials
    REQUIRE(two.size() == 8);
    CHECK(two[0].to_string() == "a+3");
    CHECK(two[1].to_string() == "a3");
    CHECK(two[2].to_string() == "a+4");
    CHECK(two[3].to_string() == "a4");
    CHECK(two[4].to_string() == "a+3 a+4 a3");
    CHECK(two[5].to_string() == "a+3 a+4 a4");
    CHECK(two[6].to_string() == "a+3 a4 a3");
    CHECK(two[7].to_string() == "a+4 a4 a3");
    for (const auto& x : two) CHECK(x.degree() % 2 == 1);
}

TEST_CASE("odd-odd witness examples") {
    const auto w = odd_odd_witness(pure(bell_pair()), ModeBipartition(1, 2), 1);
    REQUIRE(w);
    CHECK(w->first.to_string() == "a+1");
    CHECK(w->second.to_string() == "a2");
    CHECK(std::abs(w->value - 0.5) < 1e-12);

    for (const auto& occ : {std::vector<int>{1, 0, 1, 0}, std::vector<int>{0, 1, 1, 1}, std::vector<int>{1, 1, 0, 0}}) {
        for (int m = 0; m <= 4; ++m) CHECK_FALSE(odd_odd_witness(pure(fock(occ)), ModeBipartition(m, 4), 3));
    }

    // (|N;0> + |0;N>)/√2 with N = 3, m = 3: only degree-3 monomials see the coherence.
    const auto noon = superpose({{1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}}, {1.0, 1.0});
    CHECK_FALSE(odd_odd_witness(pure(noon), ModeBipartition(3, 6), 1));
    const auto w3 = odd_odd_witness(pure(noon), ModeBipartition(3, 6), 3);
    REQUIRE(w3);
    CHECK(w3->first.degree() == 3);
    CHECK(w3->second.degree() == 3);
    CHECK(std::abs(std::abs(w3->value) - 0.5) < 1e-12);
    // Oracle: direct contraction <Φ|A1 A2|Φ> = conj(c_to) c_from for the single flip it induces.
    const CMatrix a = operator_matrix(w3->first * w3->second, *noon.space);
    CHECK(std::abs(noon.amplitudes.dot(a * noon.amplitudes) - w3->value) < 1e-14);

    CHECK_THROWS_AS((void)odd_odd_witness(pure(bell_pair()), ModeBipartition(1, 2), 2), Error);
    CHECK_THROWS_AS((void)odd_odd_witness(pure(bell_pair()), ModeBipartition(1, 2), 0), Error);
}

TEST_CASE("witness never fires on constructed separable states") {
    Rng rng(404);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int modes = 2 + trial % 4;
        const int n = 1 + trial % (modes - 1);
        const int m = 1 + (trial / 3) % (modes - 1);
        const auto space = enumerate_basis(n, modes);
        const ModeBipartition bp(m, modes);
        const DensityMatrix rho = random_separable(space, bp, rng, 1 + trial % 5);
        CHECK_FALSE(odd_odd_witness(rho, bp, 3));
        CHECK(negativity(rho, bp) < 1e-10);
        CHECK(oracle::min_eigenvalue(partial_transpose(rho, bp)) > -1e-12);
        CHECK(classify(rho, bp).status != Status::Entangled);
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("pure separability examples") {
    const auto v = pure_separability(fock({1, 0, 0, 1}), ModeBipartition(2, 4));
    CHECK(v.status == Status::Separable);
    const auto& s = std::get<SchmidtSpectrum>(v.evidence).values;
    REQUIRE(s.size() == 1);
    CHECK(s[0] == doctest::Approx(1.0));

    const auto e = pure_separability(bell_pair(), ModeBipartition(1, 2));
    CHECK(e.status == Status::Entangled);
    const auto& es = std::get<SchmidtSpectrum>(e.evidence).values;
    REQUIRE(es.size() == 2);
    CHECK(es[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(es[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

    CHECK_THROWS_AS((void)pure_separability(StateVector{bell_pair().space, 2.0 * bell_pair().amplitudes},
                                            ModeBipartition(1, 2)),
                    Error);
}

TEST_CASE("products of homogeneous polynomials acting on the vacuum are separable") {
    Rng rng(12);
    for (int modes = 2; modes <= 6; ++modes) {
        for (int m = 1; m < modes; ++m) {
            for (int n = 1; n < modes; ++n) {
                const ModeBipartition bp(m, modes);
                const auto bound = bp.bound_to(n);
                for (int k = bound.n_minus(); k <= bound.n_plus(); ++k) {
                    const StateVector psi = polynomial_product(n, modes, m, k, rng);
                    CHECK(pure_separability(psi, bp).status == Status::Separable);
                }
            }
        }
    }
}

TEST_CASE("partial transpose") {
    const auto rho = pure(bell_pair());
    const CMatrix pt = partial_transpose(rho, ModeBipartition(1, 2));
    CHECK(max_abs(pt - pt.adjoint()) < 1e-15);
    CHECK(oracle::min_eigenvalue(pt) == doctest::Approx(-0.5));

    Rng rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const int modes = 2 + trial % 4;
        const int n = trial % (modes + 1);
        const int m = trial % (modes + 1);
        const DensityMatrix r = random_mixed(enumerate_basis(n, modes), rng);
        const CMatrix t = partial_transpose(r, ModeBipartition(m, modes));
        CHECK(std::abs(t.trace() - Complex(1.0)) < 1e-12);
        CHECK(max_abs(t - t.adjoint()) < 1e-15);
    }

    // A product block state stays positive.
    const auto space = enumerate_basis(2, 4);
    const ModeBipartition bp(2, 4);
    const StateVector prod = random_product_pure(space, bp, rng);
    CHECK(oracle::min_eigenvalue(partial_transpose(pure(prod), bp)) > -1e-14);
}

TEST_CASE("negativity examples") {
    for (int m = 0; m <= 4; ++m) CHECK(negativity(pure(fock({1, 0, 1, 0})), ModeBipartition(m, 4)) == 0.0);
    CHECK(negativity(pure(bell_pair()), ModeBipartition(1, 2)) == doctest::Approx(0.5));

    const auto mix = maximally_mixed(1, 2);
    const CMatrix eps_mix = 0.99 * mix.matrix() + 0.01 * pure(bell_pair()).matrix();
    const DensityMatrix r(mix.space(), eps_mix);
    const double neg = negativity(r, ModeBipartition(1, 2));
    CHECK(neg > 0.0);
    // Oracle: PT of diag(1/2,1/2) mixed with the coherence has eigenvalues ±0.005 around the zero diagonal.
    CHECK(neg == doctest::Approx(0.005));
    CHECK(neg == doctest::Approx(full_negativity(r, ModeBipartition(1, 2))));
}

TEST_CASE("blockwise negativity equals the full eigen-decomposition") {
    Rng rng(55);
    for (int trial = 0; trial < 60; ++trial) {
        const int modes = 2 + trial % 5;
        const int n = trial % (modes + 1);
        const int m = (trial / 2) % (modes + 1);
        const auto space = enumerate_basis(n, modes);
        const ModeBipartition bp(m, modes);
        const DensityMatrix rho = (trial % 2) ? random_mixed(space, rng, 2) : pure(random_pure(space, rng));
        CHECK(negativity(rho, bp) == doctest::Approx(full_negativity(rho, bp)).epsilon(1e-10));
    }
}

TEST_CASE("m = 1: negativity is positive exactly when the state has coherences between sectors") {
    Rng rng(1);
    for (int modes = 2; modes <= 5; ++modes) {
        for (int n = 1; n <= std::min(3, modes - 1); ++n) {
            const auto space = enumerate_basis(n, modes);
            const ModeBipartition bp(1, modes);
            for (int trial = 0; trial < 20; ++trial) {
                const DensityMatrix rho = random_mixed(space, rng, 1 + trial % 3);
                const bool coherent = block_decompose(rho, bp).eta_norm > 1e-10;
                CHECK(coherent == (negativity(rho, bp) > 1e-10));
                const DensityMatrix bd = random_block_diagonal(space, bp, rng);
                CHECK(negativity(bd, bp) < 1e-10);
                CHECK(classify(bd, bp).status == Status::Separable);
            }
        }
    }
}

TEST_CASE("pure states: Schmidt verdict agrees with vanishing negativity") {
    Rng rng(2);
    for (int modes = 2; modes <= 6; ++modes) {
        for (int n = 0; n <= modes; ++n) {
            const auto space = enumerate_basis(n, modes);
            for (int m = 0; m <= modes; ++m) {
                const ModeBipartition bp(m, modes);
                for (std::size_t i = 0; i < space->dimension(); ++i) {
                    const auto f = StateVector::basis_state(space, space->state(i));
                    CHECK(pure_separability(f, bp).status == Status::Separable);
                    CHECK(negativity(pure(f), bp) < 1e-10);
                }
                for (int t = 0; t < 3; ++t) {
                    for (const auto& psi : {random_pure(space, rng), random_product_pure(space, bp, rng)}) {
                        const bool sep = pure_separability(psi, bp).status == Status::Separable;
                        CHECK(sep == (negativity(pure(psi), bp) <= 1e-10));
                    }
                }
            }
        }
    }
}

TEST_CASE("classify examples") {
    Rng rng(3);
    const auto space = enumerate_basis(2, 4);
    const ModeBipartition one(1, 4);
    const DensityMatrix bd = random_block_diagonal(space, one, rng);
    const Verdict v = classify(bd, one);
    CHECK(v.status == Status::Separable);
    CHECK(std::holds_alternative<BlockCertificates>(v.evidence));

    const DensityMatrix coherent = random_mixed(space, rng);
    const Verdict c = classify(coherent, ModeBipartition(2, 4));
    CHECK(c.status == Status::Entangled);
    CHECK(std::holds_alternative<NonBlockDiagonal>(c.evidence));

    const DensityMatrix bell_block = with_middle_block(bell_like(1.0 / std::sqrt(2.0)), 0.6);
    const Verdict nb = classify(bell_block, ModeBipartition(2, 4));
    CHECK(nb.status == Status::Entangled);
    REQUIRE(std::holds_alternative<NegativeBlock>(nb.evidence));
    CHECK(std::get<NegativeBlock>(nb.evidence).k == 1);
    CHECK(std::get<NegativeBlock>(nb.evidence).negativity == doctest::Approx(0.5));
    // Oracle: 4x4 PPT test on the block itself.
    CHECK(oracle::min_eigenvalue(oracle::pt_2x2(bell_like(1.0 / std::sqrt(2.0)))) == doctest::Approx(-0.5));

    // Mixed entangled 2x2 block (Werner-like) -> NegativeBlock; separable Werner-like -> PPT rule.
    const CMatrix werner_ent = 0.8 * bell_like(1.0 / std::sqrt(2.0)) + 0.2 * CMatrix::Identity(4, 4) / 4.0;
    CHECK(classify(with_middle_block(werner_ent, 0.5), ModeBipartition(2, 4)).status == Status::Entangled);
    const CMatrix werner_sep = 0.3 * bell_like(1.0 / std::sqrt(2.0)) + 0.7 * CMatrix::Identity(4, 4) / 4.0;
    const Verdict ws = classify(with_middle_block(werner_sep, 0.5), ModeBipartition(2, 4));
    CHECK(ws.status == Status::Separable);
    bool saw_ppt = false;
    for (const auto& cert : std::get<BlockCertificates>(ws.evidence).blocks) saw_ppt |= cert.rule == BlockRule::PptSmall;
    CHECK(saw_ppt);
}

TEST_CASE("maximally mixed state") {
    const auto r = maximally_mixed(1, 2);
    CHECK(max_abs(r.matrix() - CMatrix::Identity(2, 2) / 2.0) == 0.0);
    for (int modes = 1; modes <= 6; ++modes)
        for (int n = 0; n <= modes; ++n) {
            const auto mix = maximally_mixed(n, modes);
            for (int m = 0; m <= modes; ++m) {
                CHECK(classify(mix, ModeBipartition(m, modes)).status == Status::Separable);
                const auto rob = robustness(mix, ModeBipartition(m, modes));
                CHECK(rob.kind == Robustness::Kind::Exact);
                CHECK(rob.value == 0.0);
            }
        }
    for (int m = 1; m <= 3; ++m)
        for (int n = 0; n <= 2 * m; ++n) {
            const auto mix = maximally_mixed(n, 2 * m);
            const CMatrix u = bogolubov_pairwise(*mix.space(), m);
            CHECK(max_abs(u * mix.matrix() * u.adjoint() - mix.matrix()) < 1e-12);
        }
}

TEST_CASE("border property: any cross-sector coherence makes a separable state entangled") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int modes = 3 + trial % 3;
        const int n = 1 + trial % (modes - 1);
        const int m = 1 + trial % (modes - 1);
        const auto space = enumerate_basis(n, modes);
        const ModeBipartition bp(m, modes);
        const DensityMatrix base = random_block_diagonal(space, bp, rng);
        const auto bd = block_decompose(base, bp);
        // Coherence between the first entries of two different sectors.
        const SectorLayout& layout = bd.layout;
        if (layout.blocks().size() < 2) continue;
        const Index i = layout.basis_at(layout.block_offset(0));
        const Index j = layout.basis_at(layout.block_offset(1));
        CMatrix rho = base.matrix();
        const double eps = 1e-6;
        rho(i, j) += eps;
        rho(j, i) += eps;
        const DensityMatrix perturbed(space, rho);
        const Verdict v = classify(perturbed, bp);
        CHECK(v.status == Status::Entangled);
        CHECK(std::holds_alternative<NonBlockDiagonal>(v.evidence));
        CHECK(robustness(perturbed, bp).kind == Robustness::Kind::Infinite);
    }
}

TEST_CASE("robustness") {
    const auto inf = robustness(pure(bell_pair()), ModeBipartition(1, 2));
    CHECK(inf.kind == Robustness::Kind::Infinite);
    CHECK(std::isinf(inf.value));

    Rng rng(4);
    const auto space = enumerate_basis(2, 4);
    const auto sep = robustness(random_block_diagonal(space, ModeBipartition(1, 4), rng), ModeBipartition(1, 4));
    CHECK(sep.kind == Robustness::Kind::Exact);
    CHECK(sep.value == 0.0);

    // One pure Bell-like block of weight p: p * ((a + b)^2 - 1), checked against the grid oracle.
    for (double a : {1.0 / std::sqrt(2.0), 0.6, 0.9}) {
        const double b = std::sqrt(1.0 - a * a);
        const double closed = (a + b) * (a + b) - 1.0;
        const double grid = oracle::grid_robustness(bell_like(a));
        CHECK(std::abs(grid - closed) < 2e-3);
        for (double p : {1.0, 0.4}) {
            const auto r = robustness(with_middle_block(bell_like(a), p), ModeBipartition(2, 4));
            CHECK(r.kind == Robustness::Kind::Exact);
            CHECK(r.value == doctest::Approx(p * closed).epsilon(1e-10));
        }
    }

    // Mixed entangled block: flagged lower bound equal to weight times negativity.
    const CMatrix werner = 0.8 * bell_like(1.0 / std::sqrt(2.0)) + 0.2 * CMatrix::Identity(4, 4) / 4.0;
    const auto lb = robustness(with_middle_block(werner, 0.5), ModeBipartition(2, 4));
    CHECK(lb.kind == Robustness::Kind::LowerBound);
    CHECK(lb.value == doctest::Approx(0.5 * (3 * 0.8 - 1) / 4.0));
    CHECK(lb.value <= 0.5 * oracle::grid_robustness(werner) + 1e-12);
}

TEST_CASE("robustness is additive over sector blocks") {
    // N=2, M=6, m=3: blocks k=0 (1x3), k=1 (3x3), k=2 (3x1). Put pure states with
    // known Schmidt spectra into the k=1 block of separate states and mix.
    const auto space = enumerate_basis(2, 6);
    const ModeBipartition bp(3, 6);
    const SectorLayout layout(*space, bp);
    const auto blk = static_cast<std::size_t>(layout.block_of(1));
    const Index off = layout.block_offset(blk);
    auto embed = [&](const CVector& v9) {
        CVector amp = CVector::Zero(space->size());
        for (Index s = 0; s < 9; ++s) amp(layout.basis_at(off + s)) = v9(s);
        return StateVector{space, amp / amp.norm()};
    };
    CVector x = CVector::Zero(9);
    x(0) = 0.8;
    x(4) = 0.6;  // Schmidt (0.8, 0.6)
    CVector y = CVector::Zero(9);
    y(0) = y(4) = y(8) = 1.0 / std::sqrt(3.0);  // maximally entangled 3x3
    const double rx = (0.8 + 0.6) * (0.8 + 0.6) - 1.0;
    const double ry = 3.0 - 1.0;
    CHECK(robustness(pure(embed(x)), bp).value == doctest::Approx(rx));
    CHECK(robustness(pure(embed(y)), bp).value == doctest::Approx(ry));

    // Mixing two pure states inside the same block does not decompose; mixing
    // across sectors does. Put y's pattern on the k=1 block and a Fock state on k=0.
    const auto k0 = StateVector::basis_state(space, space->state(static_cast<std::size_t>(
                                                        layout.basis_at(layout.block_offset(static_cast<std::size_t>(layout.block_of(0)))))));
    for (double p : {0.25, 0.5, 0.9}) {
        const CMatrix rho = p * pure(embed(y)).matrix() + (1 - p) * pure(k0).matrix();
        const auto r = robustness(DensityMatrix(space, rho), bp);
        CHECK(r.kind == Robustness::Kind::Exact);
        CHECK(r.value == doctest::Approx(p * ry + (1 - p) * 0.0));
    }
}
