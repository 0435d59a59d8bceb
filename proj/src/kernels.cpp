// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/kernels.hpp"

#include <omp.h>

namespace fermient::kernels {

namespace {

inline void fill_column(std::span<const LadderMonomial> terms, const FockSpace& space, Index col,
                        CMatrix& out) {
    const Mask mask = space.basis()[static_cast<std::size_t>(col)];
    for (const auto& term : terms) {
        const auto hit = act(mask, space.modes(), std::span<const LadderOp>(term.factors));
        if (!hit) continue;
        const auto row = space.find(hit->mask);
        out(static_cast<Index>(*row), col) += term.coefficient * static_cast<double>(hit->sign);
    }
}

inline Complex expectation_column(const CMatrix& rho, const LadderMonomial& m, const FockSpace& space,
                                  Index col) {
    const auto hit = act(space.basis()[static_cast<std::size_t>(col)], space.modes(),
                         std::span<const LadderOp>(m.factors));
    if (!hit) return {};
    const auto row = space.find(hit->mask);
    if (!row) return {};
    return rho(col, static_cast<Index>(*row)) * static_cast<double>(hit->sign);
}

inline double qfi_row(const Eigen::VectorXd& r, const CMatrix& j_eig, double cutoff, Index i) {
    double acc = 0.0;
    for (Index j = 0; j < r.size(); ++j) {
        const double s = r(i) + r(j);
        if (s <= cutoff) continue;
        const double d = r(i) - r(j);
        acc += d * d / s * std::norm(j_eig(i, j));
    }
    return acc;
}

}  // namespace

namespace serial {

void fill_operator_matrix(std::span<const LadderMonomial> terms, const FockSpace& space, CMatrix& out) {
    out = CMatrix::Zero(space.size(), space.size());
    for (Index col = 0; col < space.size(); ++col) fill_column(terms, space, col, out);
}

Complex monomial_expectation(const CMatrix& rho, const LadderMonomial& m, const FockSpace& space) {
    Complex acc{};
    for (Index col = 0; col < space.size(); ++col) acc += expectation_column(rho, m, space, col);
    return acc * m.coefficient;
}

CMatrix partial_transpose(const CMatrix& embedded, Index d1, Index d2) {
    CMatrix out(d1 * d2, d1 * d2);
    for (Index a = 0; a < d1; ++a)
        for (Index b = 0; b < d2; ++b)
            for (Index ap = 0; ap < d1; ++ap)
                for (Index bp = 0; bp < d2; ++bp)
                    out(a * d2 + b, ap * d2 + bp) = embedded(ap * d2 + b, a * d2 + bp);
    return out;
}

double qfi_pair_sum(const Eigen::VectorXd& r, const CMatrix& j_eig, double cutoff) {
    double acc = 0.0;
    for (Index i = 0; i < r.size(); ++i) acc += qfi_row(r, j_eig, cutoff, i);
    return 2.0 * acc;
}

}  // namespace serial

namespace omp {

void fill_operator_matrix(std::span<const LadderMonomial> terms, const FockSpace& space, CMatrix& out) {
    out = CMatrix::Zero(space.size(), space.size());
    const Index n = space.size();
    // one column per iteration: no two iterations write the same entry
#pragma omp parallel for schedule(static)
    for (Index col = 0; col < n; ++col) fill_column(terms, space, col, out);
}

Complex monomial_expectation(const CMatrix& rho, const LadderMonomial& m, const FockSpace& space) {
    double re = 0.0;
    double im = 0.0;
    const Index n = space.size();
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (Index col = 0; col < n; ++col) {
        const Complex v = expectation_column(rho, m, space, col);
        re += v.real();
        im += v.imag();
    }
    return Complex(re, im) * m.coefficient;
}

CMatrix partial_transpose(const CMatrix& embedded, Index d1, Index d2) {
    CMatrix out(d1 * d2, d1 * d2);
#pragma omp parallel for collapse(2) schedule(static)
    for (Index a = 0; a < d1; ++a)
        for (Index b = 0; b < d2; ++b)
            for (Index ap = 0; ap < d1; ++ap)
                for (Index bp = 0; bp < d2; ++bp)
                    out(a * d2 + b, ap * d2 + bp) = embedded(ap * d2 + b, a * d2 + bp);
    return out;
}

double qfi_pair_sum(const Eigen::VectorXd& r, const CMatrix& j_eig, double cutoff) {
    double acc = 0.0;
    const Index n = r.size();
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : acc)
    for (Index i = 0; i < n; ++i) acc += qfi_row(r, j_eig, cutoff, i);
    return 2.0 * acc;
}

}  // namespace omp

}  // namespace fermient::kernels
