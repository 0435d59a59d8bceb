// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/error.hpp"
#include "fermient/metrology.hpp"
#include "fermient/random_states.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace fermient;
using fermient::testing::fock;
using fermient::testing::max_abs;

namespace {

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("evolve_phase") {
    Rng rng(6);
    const auto space = enumerate_basis(2, 4);
    const ModeBipartition bp(2, 4);
    const DensityMatrix rho = random_mixed(space, rng);
    const CMatrix jx = build_j(Axis::X, 1, SpectralWeights::power(2, 1), bp, *space);

    CHECK(max_abs(evolve_phase(rho, jx, 0.0).matrix() - rho.matrix()) < 1e-14);

    const DensityMatrix rotated = evolve_phase(rho, jx, 0.8);
    CHECK(std::abs(rotated.matrix().trace() - Complex(1.0)) < 1e-12);
    const Eigen::VectorXd before = Eigen::SelfAdjointEigenSolver<CMatrix>(rho.matrix()).eigenvalues();
    const Eigen::VectorXd after = Eigen::SelfAdjointEigenSolver<CMatrix>(rotated.matrix()).eigenvalues();
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-12);

    // Commuting case.
    const DensityMatrix diag = DensityMatrix::from_pure(fock({1, 0, 1, 0}));
    const CMatrix h = build_hamiltonian(Dispersion::linear(4), *space);
    CHECK(max_abs(evolve_phase(diag, h, 1.3).matrix() - diag.matrix()) < 1e-14);

    // d rho / d theta at 0 is +i[J, rho] for rho_theta = e^{i theta J} rho e^{-i theta J}.
    const DensityMatrix f = DensityMatrix::from_pure(fock({1, 1, 0, 0}));
    const double step = 1e-5;
    const CMatrix fd = (evolve_phase(f, jx, step).matrix() - evolve_phase(f, jx, -step).matrix()) / (2 * step);
    CHECK(max_abs(fd - Complex(0, 1) * commutator(jx, f.matrix())) < 1e-9);

    CHECK_THROWS_AS((void)evolve_phase(rho, CMatrix::Zero(3, 3), 0.1), Error);
}

TEST_CASE("symmetric logarithmic derivative") {
    Rng rng(7);
    const auto space = enumerate_basis(2, 5);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_mixed(space, rng);
        const CMatrix j = random_hermitian(space->size(), rng);
        const CMatrix l = sld(rho, j);
        CHECK(max_abs(l - l.adjoint()) < 1e-12);
        const CMatrix lhs = 0.5 * (rho.matrix() * l + l * rho.matrix());
        CHECK(max_abs(lhs + Complex(0, 1) * commutator(j, rho.matrix())) < 1e-10);
        CHECK((rho.matrix() * l * l).trace().real() == doctest::Approx(qfi(rho, j)).epsilon(1e-9));
    }

    // Commuting generator gives L = 0.
    const DensityMatrix f = DensityMatrix::from_pure(fock({1, 0, 1, 0, 0}));
    CHECK(max_abs(sld(f, build_hamiltonian(Dispersion::linear(5), *space))) < 1e-14);

    // Pure state: Tr[rho L^2] = 4 Var(J).
    const StateVector psi = random_pure(space, rng);
    const DensityMatrix p = DensityMatrix::from_pure(psi);
    const CMatrix j = random_hermitian(space->size(), rng);
    const CMatrix l = sld(p, j);
    CHECK((p.matrix() * l * l).trace().real() == doctest::Approx(4.0 * variance(p, j)).epsilon(1e-9));
}

TEST_CASE("qfi matches the Lyapunov oracle on full-rank states and 4 Var on pure states") {
    Rng rng(8);
    const auto space = enumerate_basis(2, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_mixed(space, rng);
        const CMatrix j = random_hermitian(space->size(), rng);
        const CMatrix drho = Complex(0, -1) * commutator(j, rho.matrix());
        CHECK(qfi(rho, j) == doctest::Approx(oracle::qfi_lyapunov(rho.matrix(), drho)).epsilon(1e-9));

        const StateVector psi = random_pure(space, rng);
        CHECK(qfi(DensityMatrix::from_pure(psi), j) == doctest::Approx(oracle::pure_qfi(psi.amplitudes, j)).epsilon(1e-9));
    }
    // Maximally mixed input has no phase information.
    const DensityMatrix mix(space, CMatrix::Identity(6, 6) / 6.0);
    CHECK(qfi(mix, random_hermitian(6, rng)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("qfi examples from the Fock interferometer") {
    // Pure Fock input, J_x^(1), omega_k = k, N = 3, M = 6 -> 1 + 4 + 9.
    const auto space = enumerate_basis(3, 6);
    const DensityMatrix f = DensityMatrix::from_pure(fock({1, 1, 1, 0, 0, 0}));
    const CMatrix jx = build_j(Axis::X, 1, SpectralWeights::power(3, 1), ModeBipartition(3, 6), *space);
    CHECK(qfi(f, jx) == doctest::Approx(14.0).epsilon(1e-12));
    CHECK(oracle::pure_qfi(fock({1, 1, 1, 0, 0, 0}).amplitudes, jx) == doctest::Approx(14.0));
    const CMatrix j1 = build_j(Axis::X, 1, SpectralWeights::constant(3), ModeBipartition(3, 6), *space);
    CHECK(qfi(f, j1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("qfi properties") {
    Rng rng(9);
    const auto space = enumerate_basis(2, 5);
    const Index d = space->size();
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix a = random_mixed(space, rng, 1 + trial % 4);
        const DensityMatrix b = random_mixed(space, rng);
        const CMatrix j = random_hermitian(d, rng);
        const double fa = qfi(a, j);
        CHECK(fa <= 4.0 * variance(a, j) + 1e-9);
        CHECK(fa >= 0.0);
        const double lambda = 0.3;
        const DensityMatrix mix = DensityMatrix::mixture({a, b}, {lambda, 1.0 - lambda});
        CHECK(qfi(mix, j) <= lambda * fa + (1 - lambda) * qfi(b, j) + 1e-9);
        const CMatrix u = random_unitary(d, rng);
        const DensityMatrix ua(space, u * a.matrix() * u.adjoint());
        CHECK(qfi(ua, u * j * u.adjoint()) == doctest::Approx(fa).epsilon(1e-9));
        for (double theta : {0.3, 1.7}) CHECK(qfi(evolve_phase(a, j, theta), j) == doctest::Approx(fa).epsilon(1e-9));
    }
}

TEST_CASE("scenario_fock") {
    const auto r = scenario_fock(2, 4, 1);
    CHECK(r.qfi == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.closed_form == 5.0);
    CHECK(r.shot_noise_ref == 2.0);
    CHECK(r.heisenberg_ref == 4.0);
    CHECK(r.delta_theta * std::sqrt(r.qfi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.variance_bound == doctest::Approx(r.qfi));  // pure input
    CHECK(r.input_verdict == Status::Separable);

    CHECK(scenario_fock(2, 4, 0).qfi == doctest::Approx(2.0).epsilon(1e-12));
    for (int n = 1; n <= 6; ++n) {
        CHECK(scenario_fock(n, 2 * n, 1).qfi == doctest::Approx(n * (n + 1) * (2 * n + 1) / 6.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)scenario_fock(3, 5, 1), Error);
    CHECK_THROWS_AS((void)scenario_fock(3, 4, 1), Error);
    CHECK_THROWS_AS((void)scenario_fock(0, 4, 1), Error);
    CHECK_THROWS_AS((void)scenario_fock(1, 4, -1), Error);

    const auto custom = scenario_fock(2, 6, SpectralWeights{{0.5, -2.0, 7.0}});
    CHECK(custom.qfi == doctest::Approx(0.25 + 4.0).epsilon(1e-12));
}

TEST_CASE("scenario_bogolubov") {
    const auto a = scenario_bogolubov(1, 2, 0);
    CHECK(a.qfi == doctest::Approx(1.0));
    REQUIRE(a.qfi_transformed);
    CHECK(*a.qfi_transformed == doctest::Approx(1.0));
    CHECK(a.transformed_verdict == Status::Entangled);

    const auto b = scenario_bogolubov(2, 4, 1);
    CHECK(std::abs(b.qfi - 5.0) < 1e-9);
    CHECK(std::abs(*b.qfi_transformed - b.qfi) < 1e-9);
    CHECK(b.transformed_verdict == Status::Entangled);

    // U psi for N=1, M=2 is (|1,0> + |0,1>)/√2.
    const auto space = enumerate_basis(1, 2);
    const CVector out = bogolubov_pairwise(*space, 1) * fock({1, 0}).amplitudes;
    CHECK(std::abs(out(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(out(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("the transformed generator is partition-local") {
    // exp(i theta J_z^(1)) is diagonal and each diagonal entry splits into a
    // side-1 factor times a side-2 factor.
    const int m = 3;
    const auto space = enumerate_basis(2, 2 * m);
    const ModeBipartition bp(m, 2 * m);
    const SpectralWeights w = SpectralWeights::power(m, 1);
    const CMatrix jz = build_j(Axis::Z, 1, w, bp, *space);
    const double theta = 0.41;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(jz);
    const CMatrix u = eig.eigenvectors() *
                      (Complex(0, theta) * eig.eigenvalues().cast<Complex>()).array().exp().matrix().asDiagonal() *
                      eig.eigenvectors().adjoint();
    CHECK(max_abs(u - CMatrix(u.diagonal().asDiagonal())) < 1e-12);
    for (std::size_t i = 0; i < space->dimension(); ++i) {
        const auto s = space->state(i);
        Complex side1 = 1.0;
        Complex side2 = 1.0;
        for (int k = 1; k <= m; ++k) {
            side1 *= std::exp(Complex(0, 0.5 * theta * w.omega[static_cast<std::size_t>(k - 1)] * s.occupation(k)));
            side2 *= std::exp(Complex(0, -0.5 * theta * w.omega[static_cast<std::size_t>(k - 1)] * s.occupation(m + k)));
        }
        CHECK(std::abs(u(static_cast<Index>(i), static_cast<Index>(i)) - side1 * side2) < 1e-12);
    }
}

TEST_CASE("scenario_noon") {
    const auto r = scenario_noon(2, 3, Dispersion::linear(6));
    CHECK(r.qfi == doctest::Approx(36.0).epsilon(1e-9));
    CHECK(r.closed_form == 36.0);
    CHECK(r.input_verdict == Status::Entangled);

    const double omega = 1.7;
    CHECK(scenario_noon(1, 1, Dispersion{{0.0, omega}}).qfi == doctest::Approx(omega * omega).epsilon(1e-12));
    CHECK(scenario_noon(2, 2, Dispersion{{3.0, 3.0, 3.0, 3.0}}).qfi == doctest::Approx(0.0).epsilon(1e-14));

    for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {2, 3}, {3, 4}}) {
        CHECK(scenario_noon(n, m, Dispersion::linear(2 * m)).qfi == doctest::Approx(m * m * n * n).epsilon(1e-9));
    }
    const Dispersion odd{{0.3, -1.0, 2.5, 4.0, 0.0, 1.1}};
    CHECK(scenario_noon(2, 3, odd).qfi == doctest::Approx(noon_closed_form(2, 3, odd)).epsilon(1e-9));

    CHECK_THROWS_AS((void)scenario_noon(3, 2, Dispersion::linear(4)), Error);
    CHECK_THROWS_AS((void)scenario_noon(1, 2, Dispersion::linear(3)), Error);
}
