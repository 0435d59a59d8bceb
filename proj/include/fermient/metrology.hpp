// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file metrology.hpp
 * @brief Quantum Fisher information of phase-rotated fermion states and the
 *        three interferometric scenarios built on it.
 *
 * Phase convention: rho_theta = e^{i theta J} rho e^{-i theta J}, so that
 * d rho_theta / d theta at theta = 0 is +i[J, rho]. The symmetric logarithmic
 * derivative returned by sld() solves (rho L + L rho)/2 = -i[J, rho], i.e. it
 * belongs to the opposite rotation e^{-i theta J}. The two differ by L -> -L
 * and give the same Fisher information.
 */

#pragma once

#include "fermient/entanglement.hpp"
#include "fermient/fock_space.hpp"
#include "fermient/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fermient {

/// e^{i theta J} rho e^{-i theta J}. Throws ShapeMismatch when J does not act on rho's space.
DensityMatrix evolve_phase(const DensityMatrix& rho, const CMatrix& j, double theta);

/// Hermitian L with (rho L + L rho)/2 = -i[J, rho] on the pairs with r_i + r_j > eps; zero elsewhere.
CMatrix sld(const DensityMatrix& rho, const CMatrix& j, double eps = 1e-12);

/// 2 sum_{r_i + r_j > eps} (r_i - r_j)^2 / (r_i + r_j) |<r_i|J|r_j>|^2.
double qfi(const DensityMatrix& rho, const CMatrix& j, double eps = 1e-12);

/// Tr[rho J^2] - Tr[rho J]^2
double variance(const DensityMatrix& rho, const CMatrix& j);

struct QfiReport {
    std::string scenario;
    int particles = 0;
    int modes = 0;
    int first_modes = 0;
    std::optional<int> exponent;  ///< p of omega_k = k^p
    std::vector<double> weights;  ///< omega_k or Omega_k actually used

    double qfi = 0.0;
    double delta_theta = 0.0;     ///< F^{-1/2}; +inf when F = 0
    double variance_bound = 0.0;  ///< 4 Var(J)
    double shot_noise_ref = 0.0;  ///< N
    double heisenberg_ref = 0.0;  ///< N^2
    double closed_form = 0.0;     ///< value the scenario predicts analytically

    /// Scenario-specific checks.
    std::optional<double> qfi_transformed;  ///< bogolubov: F' of (U psi, J_z)
    std::optional<Status> input_verdict;    ///< verdict on the input state
    std::optional<Status> transformed_verdict;
};

/// Fills delta_theta, variance_bound and the reference lines from F, N and Var(J).
void finish_report(QfiReport& report, double var);

/**
 * Fock input with modes 1..N occupied, J_x^{(1)} on the balanced
 * bipartition with omega_k = k^p. Throws InvalidShape unless M is even and
 * 1 <= N <= M/2, or p < 0.
 */
QfiReport scenario_fock(int particles, int modes, int p);
/// Same, with explicit weights omega_1..omega_{M/2}.
QfiReport scenario_fock(int particles, int modes, const SpectralWeights& w);

/// scenario_fock, then the same F recomputed as F[U psi, J_z^{(1)}] after the
/// pairwise Bogolubov rotation, and U psi classified in the b-mode bipartition.
QfiReport scenario_bogolubov(int particles, int modes, int p);

/**
 * (|N;0> + |0;N>)/√2 with the N fermions in modes 1..N or m+1..m+N, and
 * H = sum_k Omega_k n_k on M = 2m modes. Throws InvalidShape unless
 * 1 <= N <= m, LengthMismatch unless |Omega| = 2m.
 */
QfiReport scenario_noon(int particles, int first_modes, const Dispersion& d);

/// (sum_{k<=N} (Omega_{m+k} - Omega_k))^2
double noon_closed_form(int particles, int first_modes, const Dispersion& d);

}  // namespace fermient
