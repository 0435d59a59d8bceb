// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

// Small helpers shared by the unit tests.

#pragma once

#include "fermient/fock_space.hpp"

#include <vector>

namespace fermient::testing {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Fock state from an occupation list.
inline StateVector fock(const std::vector<int>& occ) {
    const OccupationState s(occ);
    return StateVector::basis_state(enumerate_basis(s.particle_count(), s.modes()), s);
}

/// Normalized superposition sum_i c_i |occ_i> on one space.
inline StateVector superpose(const std::vector<std::vector<int>>& occs, const std::vector<Complex>& coeffs) {
    StateVector psi = fock(occs.front());
    psi.amplitudes.setZero();
    for (std::size_t i = 0; i < occs.size(); ++i) {
        psi.amplitudes(static_cast<Index>(psi.space->index_of(OccupationState(occs[i])))) += coeffs[i];
    }
    return psi.normalized();
}

/// The two-mode state (|1,0> + |0,1>)/√2.
inline StateVector bell_pair() { return superpose({{1, 0}, {0, 1}}, {1.0, 1.0}); }

}  // namespace fermient::testing
