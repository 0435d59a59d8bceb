// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file kernels.hpp
 * @brief Data-parallel inner loops.
 *
 * Each kernel exists twice with identical signatures: `serial` is the plain
 * reference loop, `omp` the OpenMP version the library calls. Tests check
 * that both agree; bench/ compares their speed.
 */

#pragma once

#include "fermient/fock_space.hpp"
#include "fermient/ladder.hpp"

#include <span>

namespace fermient::kernels {

namespace serial {

/// out = matrix of sum(terms) on `space`; `out` is resized. Terms must be
/// number-conserving and mode-checked by the caller.
void fill_operator_matrix(std::span<const LadderMonomial> terms, const FockSpace& space, CMatrix& out);

/// Tr[rho * M] for one number-conserving monomial M.
Complex monomial_expectation(const CMatrix& rho, const LadderMonomial& m, const FockSpace& space);

/// Partial transpose on the first factor of C^{d1} ⊗ C^{d2}; row index is a*d2 + b.
CMatrix partial_transpose(const CMatrix& embedded, Index d1, Index d2);

/// 2 * sum_{r_i + r_j > cutoff} (r_i - r_j)^2 / (r_i + r_j) |J_ij|^2, with J
/// already expressed in the eigenbasis of rho.
double qfi_pair_sum(const Eigen::VectorXd& r, const CMatrix& j_eig, double cutoff);

}  // namespace serial

namespace omp {

void fill_operator_matrix(std::span<const LadderMonomial> terms, const FockSpace& space, CMatrix& out);
Complex monomial_expectation(const CMatrix& rho, const LadderMonomial& m, const FockSpace& space);
CMatrix partial_transpose(const CMatrix& embedded, Index d1, Index d2);
double qfi_pair_sum(const Eigen::VectorXd& r, const CMatrix& j_eig, double cutoff);

}  // namespace omp

}  // namespace fermient::kernels
