// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/metrology.hpp"

#include "fermient/error.hpp"
#include "fermient/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace fermient {

namespace {

void require_same_shape(const DensityMatrix& rho, const CMatrix& j) {
    if (j.rows() != rho.size() || j.cols() != rho.size()) {
        throw Error(ErrorCode::ShapeMismatch, "generator is " + std::to_string(j.rows()) + "x" +
                                                  std::to_string(j.cols()) + " but the state has dimension " +
                                                  std::to_string(rho.size()));
    }
}

StateVector filled(const SpacePtr& space, const std::vector<int>& occupied_modes) {
    std::vector<int> occ(static_cast<std::size_t>(space->modes()), 0);
    for (int mode : occupied_modes) occ[static_cast<std::size_t>(mode - 1)] = 1;
    return StateVector::basis_state(space, OccupationState(occ));
}

void check_fock_shape(int particles, int modes) {
    if (modes < 2 || modes % 2 != 0 || particles < 1 || particles > modes / 2) {
        throw Error(ErrorCode::InvalidShape, "the Fock scenario needs an even M >= 2 and 1 <= N <= M/2, got N=" +
                                                 std::to_string(particles) + ", M=" + std::to_string(modes));
    }
}

}  // namespace

DensityMatrix evolve_phase(const DensityMatrix& rho, const CMatrix& j, double theta) {
    require_same_shape(rho, j);
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(j);
    const Eigen::VectorXcd phases = (Complex(0.0, theta) * eig.eigenvalues().cast<Complex>()).array().exp();
    const CMatrix u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    CMatrix out = u * rho.matrix() * u.adjoint();
    out = (0.5 * (out + out.adjoint())).eval();
    return DensityMatrix(rho.space(), std::move(out));
}

CMatrix sld(const DensityMatrix& rho, const CMatrix& j, double eps) {
    require_same_shape(rho, j);
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.matrix());
    const Eigen::VectorXd& r = eig.eigenvalues();
    const CMatrix& v = eig.eigenvectors();
    const CMatrix j_eig = v.adjoint() * j * v;
    const Index n = r.size();
    CMatrix l = CMatrix::Zero(n, n);
    for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) {
            const double s = r(a) + r(b);
            if (s > eps) l(a, b) = Complex(0.0, 2.0 * (r(a) - r(b)) / s) * j_eig(a, b);
        }
    }
    return v * l * v.adjoint();
}

double qfi(const DensityMatrix& rho, const CMatrix& j, double eps) {
    require_same_shape(rho, j);
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.matrix());
    const CMatrix& v = eig.eigenvectors();
    return kernels::omp::qfi_pair_sum(eig.eigenvalues(), v.adjoint() * j * v, eps);
}

double variance(const DensityMatrix& rho, const CMatrix& j) {
    require_same_shape(rho, j);
    const CMatrix rj = rho.matrix() * j;
    const double mean = rj.trace().real();
    return (rj * j).trace().real() - mean * mean;
}

void finish_report(QfiReport& report, double var) {
    report.delta_theta =
        report.qfi > 0.0 ? 1.0 / std::sqrt(report.qfi) : std::numeric_limits<double>::infinity();
    report.variance_bound = 4.0 * var;
    report.shot_noise_ref = report.particles;
    report.heisenberg_ref = static_cast<double>(report.particles) * report.particles;
}

QfiReport scenario_fock(int particles, int modes, int p) {
    if (p < 0) throw Error(ErrorCode::InvalidShape, "exponent p must be >= 0");
    check_fock_shape(particles, modes);
    QfiReport report = scenario_fock(particles, modes, SpectralWeights::power(modes / 2, p));
    report.exponent = p;
    return report;
}

QfiReport scenario_fock(int particles, int modes, const SpectralWeights& w) {
    check_fock_shape(particles, modes);
    const int m = modes / 2;
    const SpacePtr space = enumerate_basis(particles, modes);
    const ModeBipartition bp = ModeBipartition(m, modes).bound_to(*space);

    std::vector<int> occupied;
    for (int k = 1; k <= particles; ++k) occupied.push_back(k);
    const StateVector psi = filled(space, occupied);
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    const CMatrix jx = build_j(Axis::X, 1, w, bp, *space);

    QfiReport report;
    report.scenario = "fock";
    report.particles = particles;
    report.modes = modes;
    report.first_modes = m;
    report.weights = w.omega;
    report.qfi = qfi(rho, jx);
    for (int k = 0; k < particles; ++k) report.closed_form += w.omega[static_cast<std::size_t>(k)] * w.omega[static_cast<std::size_t>(k)];
    report.input_verdict = pure_separability(psi, bp).status;
    finish_report(report, variance(rho, jx));
    return report;
}

QfiReport scenario_bogolubov(int particles, int modes, int p) {
    QfiReport report = scenario_fock(particles, modes, p);
    report.scenario = "bogolubov";
    const int m = modes / 2;
    const SpacePtr space = enumerate_basis(particles, modes);
    const ModeBipartition bp = ModeBipartition(m, modes).bound_to(*space);

    std::vector<int> occupied;
    for (int k = 1; k <= particles; ++k) occupied.push_back(k);
    const StateVector psi = filled(space, occupied);
    const CMatrix u = bogolubov_pairwise(*space, m);
    const StateVector rotated{space, u * psi.amplitudes};
    const CMatrix jz = build_j(Axis::Z, 1, SpectralWeights::power(m, p), bp, *space);

    report.qfi_transformed = qfi(DensityMatrix::from_pure(rotated), jz);
    report.transformed_verdict = pure_separability(rotated.normalized(), bp).status;
    return report;
}

double noon_closed_form(int particles, int first_modes, const Dispersion& d) {
    double sum = 0.0;
    for (int k = 1; k <= particles; ++k) {
        sum += d.omega[static_cast<std::size_t>(first_modes + k - 1)] - d.omega[static_cast<std::size_t>(k - 1)];
    }
    return sum * sum;
}

QfiReport scenario_noon(int particles, int first_modes, const Dispersion& d) {
    if (particles < 1 || first_modes < particles) {
        throw Error(ErrorCode::InvalidShape, "the NOON scenario needs 1 <= N <= m, got N=" +
                                                 std::to_string(particles) + ", m=" + std::to_string(first_modes));
    }
    const int modes = 2 * first_modes;
    if (static_cast<int>(d.omega.size()) != modes) {
        throw Error(ErrorCode::LengthMismatch, "dispersion must list " + std::to_string(modes) + " frequencies");
    }
    const SpacePtr space = enumerate_basis(particles, modes);
    const ModeBipartition bp = ModeBipartition(first_modes, modes).bound_to(*space);

    std::vector<int> left;
    std::vector<int> right;
    for (int k = 1; k <= particles; ++k) {
        left.push_back(k);
        right.push_back(first_modes + k);
    }
    StateVector phi{space, (filled(space, left).amplitudes + filled(space, right).amplitudes) / std::sqrt(2.0)};
    const DensityMatrix rho = DensityMatrix::from_pure(phi);
    const CMatrix h = build_hamiltonian(d, *space);

    QfiReport report;
    report.scenario = "noon";
    report.particles = particles;
    report.modes = modes;
    report.first_modes = first_modes;
    report.weights = d.omega;
    report.qfi = qfi(rho, h);
    report.closed_form = noon_closed_form(particles, first_modes, d);
    report.input_verdict = pure_separability(phi, bp).status;
    finish_report(report, variance(rho, h));
    return report;
}

}  // namespace fermient
