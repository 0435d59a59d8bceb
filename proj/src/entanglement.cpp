// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/entanglement.hpp"

#include "fermient/error.hpp"
#include "fermient/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace fermient {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd singular_values(const CMatrix& c) {
    if (c.size() == 0) return {};
    return Eigen::JacobiSVD<CMatrix>(c).singularValues();
}

std::vector<double> above(const Eigen::VectorXd& values, double tol) {
    std::vector<double> out;
    for (Index i = 0; i < values.size(); ++i) {
        if (values(i) > tol) out.push_back(values(i));
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// Top eigenvector of a Hermitian matrix.
CVector dominant_vector(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    return eig.eigenvectors().col(h.rows() - 1);
}

/// Sum of the negative eigenvalues' magnitudes.
double negative_mass(const CMatrix& hermitian) {
    if (hermitian.size() == 0) return 0.0;
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(hermitian, Eigen::EigenvaluesOnly).eigenvalues();
    double acc = 0.0;
    for (Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < 0.0) acc -= ev(i);
    }
    return acc;
}

/// All k-subsets of `pool` in lexicographic order of the pool order.
void subsets(const std::vector<int>& pool, int k, std::size_t start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets(pool, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(const std::vector<int>& pool, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets(pool, k, 0, cur, out);
    return out;
}

/// Ordering key of a factor: a†_i < a_i < a†_{i+1}.
int factor_key(const LadderOp& op) { return 2 * op.mode + (op.dagger ? 0 : 1); }

bool factor_less(const LadderMonomial& a, const LadderMonomial& b) {
    return std::lexicographical_compare(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
                                        [](const LadderOp& x, const LadderOp& y) { return factor_key(x) < factor_key(y); });
}

std::vector<LadderMonomial> monomials_of_degree(int first_mode, int last_mode, int degree) {
    std::vector<int> ascending;
    for (int i = first_mode; i <= last_mode; ++i) ascending.push_back(i);
    std::vector<LadderMonomial> out;
    for (int creators = 0; creators <= degree; ++creators) {
        for (const auto& c : subsets(ascending, creators)) {
            for (const auto& a : subsets(ascending, degree - creators)) {
                LadderMonomial m;
                for (int mode : c) m.factors.push_back(cre(mode));
                for (auto it = a.rbegin(); it != a.rend(); ++it) m.factors.push_back(ann(*it));
                out.push_back(std::move(m));
            }
        }
    }
    std::sort(out.begin(), out.end(), factor_less);
    return out;
}

void require_normalized(const StateVector& psi) {
    if (!psi.is_normalized(1e-10)) {
        throw Error(ErrorCode::NotNormalized, "state must be normalized, got norm " + std::to_string(psi.norm()));
    }
}

/// Schmidt coefficients of a vector on C^a ⊗ C^b (index i*b + j).
Eigen::VectorXd product_schmidt(const CVector& v, Index a, Index b) {
    CMatrix c(a, b);
    for (Index i = 0; i < a; ++i)
        for (Index j = 0; j < b; ++j) c(i, j) = v(i * b + j);
    return singular_values(c);
}

}  // namespace

// ---------------------------------------------------------------------------

CMatrix BlockDecomposition::reconstruct() const {
    CMatrix out = eta;
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        const auto& blk = blocks[a];
        if (blk.state.size() == 0) continue;
        const Index off = layout.block_offset(a);
        const Index n = blk.state.rows();
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) {
                out(layout.basis_at(off + i), layout.basis_at(off + j)) += blk.weight * blk.state(i, j);
            }
        }
    }
    return out;
}

BlockDecomposition block_decompose(const DensityMatrix& rho, const ModeBipartition& bp,
                                   const EntanglementTolerances& tol) {
    const FockSpace& space = *rho.space();
    BlockDecomposition out{SectorLayout(space, bp), {}, rho.matrix(), 0.0};
    const auto& layout = out.layout;
    for (std::size_t a = 0; a < layout.blocks().size(); ++a) {
        const Index off = layout.block_offset(a);
        const auto n = static_cast<Index>(layout.blocks()[a].size());
        CMatrix blk(n, n);
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) {
                const Index bi = layout.basis_at(off + i);
                const Index bj = layout.basis_at(off + j);
                blk(i, j) = out.eta(bi, bj);
                out.eta(bi, bj) = 0.0;
            }
        }
        const double p = blk.trace().real();
        SectorBlock sb{layout.blocks()[a], p, {}};
        if (p >= tol.weight) sb.state = blk / p;
        out.blocks.push_back(std::move(sb));
    }
    out.eta_norm = max_abs(out.eta);
    return out;
}

// ---------------------------------------------------------------------------

const char* to_string(Status s) noexcept {
    switch (s) {
        case Status::Separable: return "Separable";
        case Status::Entangled: return "Entangled";
        case Status::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

const char* to_string(BlockRule r) noexcept {
    switch (r) {
        case BlockRule::TrivialFactor: return "trivial_factor";
        case BlockRule::ProductPure: return "product_pure";
        case BlockRule::Diagonal: return "diagonal";
        case BlockRule::PptSmall: return "ppt_small";
        case BlockRule::ProductOfMarginals: return "product_of_marginals";
        case BlockRule::EntangledPure: return "entangled_pure";
        case BlockRule::NegativePartialTranspose: return "negative_partial_transpose";
        case BlockRule::Unresolved: return "unresolved";
    }
    return "unresolved";
}

const char* to_string(Robustness::Kind k) noexcept {
    switch (k) {
        case Robustness::Kind::Exact: return "exact";
        case Robustness::Kind::Infinite: return "infinite";
        case Robustness::Kind::LowerBound: return "lower_bound";
    }
    return "lower_bound";
}

// ---------------------------------------------------------------------------

std::vector<LadderMonomial> odd_monomials(int first_mode, int last_mode, int max_degree) {
    std::vector<LadderMonomial> out;
    const int span = last_mode - first_mode + 1;
    if (span <= 0) return out;
    // A normal-ordered monomial over distinct modes has at most 2 * span factors.
    for (int d = 1; d <= std::min(max_degree, 2 * span); d += 2) {
        auto part = monomials_of_degree(first_mode, last_mode, d);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

std::optional<OddOddWitness> odd_odd_witness(const DensityMatrix& rho, const ModeBipartition& bp,
                                             int max_degree, const EntanglementTolerances& tol) {
    if (max_degree < 1 || max_degree % 2 == 0) {
        throw Error(ErrorCode::InvalidShape, "witness degree must be odd and >= 1");
    }
    const FockSpace& space = *rho.space();
    const ModeBipartition bound = bp.bound_to(space);
    const int m = bound.first_modes();
    const int modes = bound.modes();
    for (int d1 = 1; d1 <= std::min(max_degree, 2 * m); d1 += 2) {
        const auto side1 = monomials_of_degree(1, m, d1);
        for (int d2 = 1; d2 <= std::min(max_degree, 2 * (modes - m)); d2 += 2) {
            const auto side2 = monomials_of_degree(m + 1, modes, d2);
            for (const auto& a1 : side1) {
                for (const auto& a2 : side2) {
                    if (a1.particle_change() + a2.particle_change() != 0) continue;
                    const Complex value = kernels::omp::monomial_expectation(rho.matrix(), a1 * a2, space);
                    if (std::abs(value) > tol.witness) return OddOddWitness{a1, a2, value};
                }
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<double> schmidt_coefficients(const StateVector& psi, const ModeBipartition& bp) {
    const SectorLayout layout(*psi.space, bp);
    const Eigen::VectorXd s = singular_values(product_coefficients(psi, layout));
    return {s.data(), s.data() + s.size()};
}

Verdict pure_separability(const StateVector& psi, const ModeBipartition& bp, double tol) {
    require_normalized(psi);
    const SectorLayout layout(*psi.space, bp);
    const auto values = above(singular_values(product_coefficients(psi, layout)), tol);
    const Status status = values.size() == 1 ? Status::Separable : Status::Entangled;
    return Verdict{status, SchmidtSpectrum{values}};
}

CMatrix partial_transpose(const DensityMatrix& rho, const ModeBipartition& bp) {
    const SectorLayout layout(*rho.space(), bp);
    return kernels::omp::partial_transpose(product_embedding(rho.matrix(), layout), layout.product_first_dim(),
                                           layout.product_second_dim());
}

double negativity_of(const CMatrix& hermitian) { return negative_mass(hermitian); }

double negativity(const DensityMatrix& rho, const ModeBipartition& bp) {
    const SectorLayout layout(*rho.space(), bp);
    const Index d1 = layout.product_first_dim();
    const Index d2 = layout.product_second_dim();

    // Product position -> basis index, -1 on padding.
    std::vector<Index> basis_of(static_cast<std::size_t>(d1 * d2), -1);
    for (Index i = 0; i < layout.dimension(); ++i) basis_of[static_cast<std::size_t>(layout.product_index(i))] = i;

    std::map<int, std::vector<Index>> groups;
    for (Index a = 0; a < d1; ++a) {
        for (Index b = 0; b < d2; ++b) {
            groups[layout.first_count_at(a) - layout.second_count_at(b)].push_back(a * d2 + b);
        }
    }
    std::vector<const std::vector<Index>*> members;
    for (const auto& [q, idx] : groups) members.push_back(&idx);

    const CMatrix& r = rho.matrix();
    auto entry = [&](Index x, Index y) -> Complex {
        const Index bx = basis_of[static_cast<std::size_t>(x)];
        const Index by = basis_of[static_cast<std::size_t>(y)];
        return (bx < 0 || by < 0) ? Complex{} : r(bx, by);
    };

    double total = 0.0;
    const auto count = static_cast<int>(members.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
    for (int g = 0; g < count; ++g) {
        const auto& idx = *members[static_cast<std::size_t>(g)];
        const auto n = static_cast<Index>(idx.size());
        CMatrix block(n, n);
        for (Index j = 0; j < n; ++j) {
            const Index aj = idx[static_cast<std::size_t>(j)] / d2;
            const Index bj = idx[static_cast<std::size_t>(j)] % d2;
            for (Index i = 0; i < n; ++i) {
                const Index ai = idx[static_cast<std::size_t>(i)] / d2;
                const Index bi = idx[static_cast<std::size_t>(i)] % d2;
                block(i, j) = entry(aj * d2 + bi, ai * d2 + bj);
            }
        }
        total += negative_mass(block);
    }
    return total;
}

double product_negativity(const CMatrix& rho, Index a, Index b) {
    return negative_mass(kernels::omp::partial_transpose(rho, a, b));
}

BlockAnalysis analyze_block(const CMatrix& block, Index a, Index b, const EntanglementTolerances& tol) {
    BlockAnalysis out;
    if (a == 1 || b == 1) {
        out.rule = BlockRule::TrivialFactor;
        out.status = Status::Separable;
        return out;
    }
    if (block.squaredNorm() > 1.0 - tol.rank) {
        const auto s = above(product_schmidt(dominant_vector(block), a, b), tol.rank);
        out.schmidt = s;
        if (s.size() == 1) {
            out.rule = BlockRule::ProductPure;
            out.status = Status::Separable;
        } else {
            double sum = 0.0;
            for (double v : s) sum += v;
            out.rule = BlockRule::EntangledPure;
            out.status = Status::Entangled;
            out.negativity = (sum * sum - 1.0) / 2.0;
        }
        return out;
    }
    if (max_abs(block - CMatrix(block.diagonal().asDiagonal())) <= tol.coherence) {
        out.rule = BlockRule::Diagonal;
        out.status = Status::Separable;
        return out;
    }
    out.negativity = product_negativity(block, a, b);
    if (out.negativity > tol.negativity) {
        out.rule = BlockRule::NegativePartialTranspose;
        out.status = Status::Entangled;
        return out;
    }
    out.negativity = 0.0;
    if (a * b <= 6) {
        out.rule = BlockRule::PptSmall;
        out.status = Status::Separable;
        return out;
    }
    CMatrix first = CMatrix::Zero(a, a);
    CMatrix second = CMatrix::Zero(b, b);
    for (Index i = 0; i < a; ++i)
        for (Index ip = 0; ip < a; ++ip)
            for (Index j = 0; j < b; ++j) first(i, ip) += block(i * b + j, ip * b + j);
    for (Index j = 0; j < b; ++j)
        for (Index jp = 0; jp < b; ++jp)
            for (Index i = 0; i < a; ++i) second(j, jp) += block(i * b + j, i * b + jp);
    if (max_abs(block - CMatrix(Eigen::kroneckerProduct(first, second))) <= tol.coherence) {
        out.rule = BlockRule::ProductOfMarginals;
        out.status = Status::Separable;
        return out;
    }
    return out;
}

Verdict classify(const DensityMatrix& rho, const ModeBipartition& bp, const EntanglementTolerances& tol) {
    const ModeBipartition bound = bp.bound_to(*rho.space());
    if (rho.purity() > 1.0 - tol.rank) {
        StateVector psi{rho.space(), dominant_vector(rho.matrix())};
        return pure_separability(psi.normalized(), bound, tol.rank);
    }
    const BlockDecomposition bd = block_decompose(rho, bound, tol);
    if (bd.eta_norm > tol.coherence) return Verdict{Status::Entangled, NonBlockDiagonal{bd.eta_norm}};

    BlockCertificates certs;
    bool unresolved = false;
    for (const auto& blk : bd.blocks) {
        if (blk.state.size() == 0) continue;
        const auto an = analyze_block(blk.state, static_cast<Index>(blk.dims.first),
                                      static_cast<Index>(blk.dims.second), tol);
        if (an.status == Status::Entangled) {
            return Verdict{Status::Entangled, NegativeBlock{blk.dims.k, an.negativity}};
        }
        unresolved = unresolved || an.status == Status::Undetermined;
        certs.blocks.push_back({blk.dims.k, an.rule, an.negativity});
    }
    return Verdict{unresolved ? Status::Undetermined : Status::Separable, std::move(certs)};
}

Robustness robustness(const DensityMatrix& rho, const ModeBipartition& bp, const EntanglementTolerances& tol) {
    const BlockDecomposition bd = block_decompose(rho, bp, tol);
    if (bd.eta_norm > tol.coherence) {
        return {Robustness::Kind::Infinite, std::numeric_limits<double>::infinity()};
    }
    Robustness out{Robustness::Kind::Exact, 0.0};
    for (const auto& blk : bd.blocks) {
        if (blk.state.size() == 0) continue;
        const auto an = analyze_block(blk.state, static_cast<Index>(blk.dims.first),
                                      static_cast<Index>(blk.dims.second), tol);
        switch (an.rule) {
            case BlockRule::EntangledPure: {
                double sum = 0.0;
                for (double v : an.schmidt) sum += v;
                out.value += blk.weight * (sum * sum - 1.0);
                break;
            }
            case BlockRule::NegativePartialTranspose:
                // ρ + tσ = (1+t)ς with σ, ς separable gives ‖ρ^Γ‖₁ <= 1 + 2t, so t >= N(ρ).
                out.value += blk.weight * an.negativity;
                out.kind = Robustness::Kind::LowerBound;
                break;
            case BlockRule::Unresolved:
                out.kind = Robustness::Kind::LowerBound;
                break;
            default:
                break;
        }
    }
    return out;
}

DensityMatrix maximally_mixed(int particles, int modes) {
    const SpacePtr space = enumerate_basis(particles, modes);
    const Index d = space->size();
    return DensityMatrix(space, CMatrix::Identity(d, d) / static_cast<double>(d));
}

}  // namespace fermient
