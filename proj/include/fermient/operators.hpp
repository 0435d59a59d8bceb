// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file operators.hpp
 * @brief Collective pair operators J^{(n)}_{x,y,z}, quadratic Hamiltonians,
 *        the pairwise Bogolubov rotation and projector-sandwiched local flips.
 *
 * All pair operators use the balanced (m, m) bipartition and pair mode k with
 * mode m + k.
 */

#pragma once

#include "fermient/bipartition.hpp"
#include "fermient/fock_space.hpp"
#include "fermient/ladder.hpp"

#include <vector>

namespace fermient {

/// omega_1..omega_m. Any finite reals are accepted, including zero and negative ones.
struct SpectralWeights {
    std::vector<double> omega;

    /// omega_k = k^p
    static SpectralWeights power(int m, int p);
    static SpectralWeights constant(int m, double value = 1.0);
};

/// Omega_1..Omega_M of H = sum_k Omega_k a†_k a_k (hbar = 1).
struct Dispersion {
    std::vector<double> omega;

    /// Omega_k = k
    static Dispersion linear(int modes);
};

enum class Axis { X, Y, Z };

const char* to_string(Axis a) noexcept;

/// Symbolic J_axis^{(n)} = 1/2 sum_k omega_k^n (...). Throws
/// UnbalancedBipartition if m != M - m, LengthMismatch if |omega| != m,
/// InvalidShape for a non-finite weight or 0^n with n < 0.
OperatorExpr j_expr(Axis axis, int n, const SpectralWeights& w, const ModeBipartition& bp);

OperatorMatrix build_j(Axis axis, int n, const SpectralWeights& w, const ModeBipartition& bp,
                       const FockSpace& space);

/// Diagonal matrix with entries sum_i n_i Omega_i. Throws LengthMismatch.
OperatorMatrix build_hamiltonian(const Dispersion& d, const FockSpace& space);

/// Per-mode factors exp(-i t Omega_k n_k) multiplied together; equals
/// exp(-i t H) and is diagonal in the Fock basis.
OperatorMatrix mode_product_propagator(const Dispersion& d, const FockSpace& space, double t);

/**
 * Single-particle matrix V of a mode change b†_i = sum_j V_{j i} a†_j. For the
 * pairwise rotation b_k = (a_k + a_{m+k})/√2, b_{m+k} = (a_k - a_{m+k})/√2.
 */
CMatrix bogolubov_single_particle(int m);

/**
 * N-particle lift of a single-particle basis change: column n' holds the
 * a-basis coordinates of the b-Fock vector b†_{i_1} ... b†_{i_N}|0>, obtained
 * by applying the transformed creators to the vacuum one at a time.
 */
CMatrix lift_single_particle(const CMatrix& v, const FockSpace& space);

/**
 * U = W† with W the lift of the pairwise rotation. U maps a-basis coordinates
 * to b-basis coordinates, so U J_x^{(1)} U† = J_z^{(1)} as matrices and U psi
 * is psi written in the b modes. Throws UnbalancedBipartition unless M = 2m.
 */
CMatrix bogolubov_pairwise(const FockSpace& space, int m);

enum class Side { First, Second };

/**
 * A_side = (creators of p') · P_side · (annihilators of p), where P_side
 * projects onto states with no particle on that side. Patterns are occupation
 * bit lists over the side's modes. Sign-free in our basis convention, so
 * <psi|A|psi> reduces to a contraction of coefficients.
 */
class LocalFlip {
public:
    /// Throws PatternOutOfRange on wrong pattern length or entries other than 0/1.
    LocalFlip(Side side, std::vector<int> p, std::vector<int> p_prime, const ModeBipartition& bp);

    /// Side 1: sum_alpha conj(C_{p', alpha}) C_{p, alpha}; side 2 analogously.
    [[nodiscard]] Complex expectation(const StateVector& psi) const;
    /// Same quantity by applying the ladder operators and the projector.
    [[nodiscard]] Complex expectation_via_operators(const StateVector& psi) const;

private:
    Side side_;
    Mask p_;
    Mask p_prime_;
    ModeBipartition bp_;
};

/// A_1 A_2 = |p, beta><p', beta'| as a product of ladder operators around the vacuum projector.
class JointFlip {
public:
    JointFlip(std::vector<int> p, std::vector<int> beta, std::vector<int> p_prime,
              std::vector<int> beta_prime, const ModeBipartition& bp);

    /// conj(C_{p', beta'}) C_{p, beta}
    [[nodiscard]] Complex expectation(const StateVector& psi) const;
    [[nodiscard]] Complex expectation_via_operators(const StateVector& psi) const;

private:
    Mask from_;
    Mask to_;
    ModeBipartition bp_;
};

}  // namespace fermient
