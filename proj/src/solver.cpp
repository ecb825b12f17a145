// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hexrg::solver {

using hamiltonian::SparseHamiltonian;

namespace {

// Deterministic phase convention: largest-magnitude amplitude positive
// (first such index on ties).
void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (v[arg] < 0.0) v = -v;
}

double residual_norm(const SparseHamiltonian& h, double energy, const Eigen::VectorXd& v) {
    return (h.apply(v) - energy * v).norm();
}

EigenResult dense_lowest(const SparseHamiltonian& h, int k) {
    const Eigen::MatrixXd dense = hamiltonian::to_dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) {
        throw SolverError("dense eigensolver failed", std::numeric_limits<double>::infinity());
    }
    EigenResult result;
    result.sector = h.sector;
    result.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
    result.vectors = es.eigenvectors().leftCols(k);
    for (int i = 0; i < k; ++i) canonicalize_sign(result.vectors.col(i));
    return result;
}

// Thick-restart Lanczos with full reorthogonalization. The projected matrix
// is recomputed as V^T (H V) every cycle, which keeps restarts simple and
// the Ritz residuals exact.
EigenResult lanczos_lowest(const SparseHamiltonian& h, int k, const SolveOptions& options) {
    const int dim = h.dim;
    const int m = std::min(dim, std::max(4 * k + 48, 64));
    const int keep = std::min({k + 16, m - 8, dim});

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(dim) << 20) ^
                        static_cast<std::uint64_t>(k));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto random_vector = [&]() {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
        return v;
    };

    Eigen::MatrixXd basis(dim, m);   // orthonormal columns
    Eigen::MatrixXd image(dim, m);   // image.col(j) = H * basis.col(j)
    int nb = 0;

    // Normalize a candidate, orthogonalize it against the current basis (two
    // passes) and append it; a candidate that loses its norm to the
    // orthogonalization is replaced by a random direction.
    const auto push = [&](Eigen::VectorXd w) -> bool {
        if (nb >= m) return false;
        for (int attempt = 0; attempt < 3; ++attempt) {
            const double scale = w.norm();
            if (scale > 1e-300) {
                w /= scale;
                for (int pass = 0; pass < 2; ++pass) {
                    if (nb > 0) w -= basis.leftCols(nb) * (basis.leftCols(nb).transpose() * w);
                }
                const double norm = w.norm();
                if (norm > 1e-8) {
                    basis.col(nb) = w / norm;
                    image.col(nb) = h.apply(basis.col(nb));
                    ++nb;
                    return true;
                }
            }
            w = random_vector();
        }
        return false;
    };

    push(random_vector());
    double best_residual = std::numeric_limits<double>::infinity();

    // A Krylov space grown from one vector holds a single copy of each
    // degenerate level, so converged residuals alone are not enough. After
    // the window converges, a verification round injects one fresh random
    // direction and re-converges; the solve finishes only when a round leaves
    // the k lowest values unchanged.
    std::vector<double> snapshot;
    int confirmed_rounds = 0;

    for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
        while (nb < m) {
            if (!push(image.col(nb - 1))) break;  // invariant subspace: stop extending
        }
        Eigen::MatrixXd projected = basis.leftCols(nb).transpose() * image.leftCols(nb);
        projected = 0.5 * (projected + projected.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected);
        if (es.info() != Eigen::Success) {
            throw SolverError("projected eigensolver failed", best_residual);
        }

        const int r = std::min(keep, nb);
        Eigen::MatrixXd ritz = basis.leftCols(nb) * es.eigenvectors().leftCols(r);
        Eigen::MatrixXd ritz_image = image.leftCols(nb) * es.eigenvectors().leftCols(r);

        // Convergence is demanded for a few values beyond k as well, so that a
        // late-arriving degenerate copy still descending through the spectrum
        // cannot hide just outside the returned window.
        const int check_window = std::min(k + 4, r);
        bool converged = true;
        double worst = 0.0;
        int first_unconverged = -1;
        for (int i = 0; i < check_window; ++i) {
            const double theta = es.eigenvalues()[i];
            const double res = (ritz_image.col(i) - theta * ritz.col(i)).norm();
            if (i < k) worst = std::max(worst, res / std::max(1.0, std::abs(theta)));
            if (res > options.tol * std::max(1.0, std::abs(theta))) {
                converged = false;
                if (first_unconverged < 0) first_unconverged = i;
            }
        }
        best_residual = std::min(best_residual, worst);

        bool finished = nb >= dim;
        if (converged && !finished) {
            bool unchanged = snapshot.size() == static_cast<std::size_t>(k);
            for (int i = 0; unchanged && i < k; ++i) {
                unchanged = std::abs(es.eigenvalues()[i] - snapshot[i]) <=
                            options.tol * std::max(1.0, std::abs(es.eigenvalues()[i]));
            }
            confirmed_rounds = unchanged ? confirmed_rounds + 1 : 0;
            snapshot.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
            finished = confirmed_rounds >= 2;
        }

        if (finished) {
            EigenResult result;
            result.sector = h.sector;
            result.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
            result.vectors = ritz.leftCols(k);
            for (int i = 0; i < k; ++i) canonicalize_sign(result.vectors.col(i));
            return result;
        }

        // Thick restart: keep the r lowest Ritz pairs, then grow new Krylov
        // directions from the residual of the first unconverged pair, or from
        // a random direction when opening a verification round.
        basis.leftCols(r) = ritz;
        image.leftCols(r) = ritz_image;
        nb = r;
        if (converged) {
            push(random_vector());
        } else {
            push(ritz_image.col(first_unconverged) -
                 es.eigenvalues()[first_unconverged] * ritz.col(first_unconverged));
        }
    }
    throw SolverError("iterative eigensolver did not converge", best_residual);
}

}  // namespace

EigenResult lowest_eigenpairs(const SparseHamiltonian& h, int k, const SolveOptions& options) {
    if (k < 1 || k > h.dim) throw std::invalid_argument("lowest_eigenpairs: k out of range");
    SolveMethod method = options.method;
    if (method == SolveMethod::automatic) {
        method = (h.dim <= options.dense_threshold) ? SolveMethod::dense : SolveMethod::lanczos;
    }
    if (method == SolveMethod::lanczos && k > h.dim / 3) method = SolveMethod::dense;

    EigenResult result = (method == SolveMethod::dense) ? dense_lowest(h, k)
                                                        : lanczos_lowest(h, k, options);
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
        const double res = residual_norm(h, result.energies[i], result.vectors.col(i));
        worst = std::max(worst, res / std::max(1.0, std::abs(result.energies[i])));
    }
    if (worst > options.tol) {
        throw SolverError("eigenpair residual above tolerance", worst);
    }
    return result;
}

std::vector<std::pair<std::size_t, std::size_t>> detect_degeneracy(std::span<const double> energies,
                                                                   double rel_tol) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t start = 0;
    while (start < energies.size()) {
        const double anchor = energies[start];
        const double tol = rel_tol * std::max(1.0, std::abs(anchor));
        std::size_t end = start + 1;
        while (end < energies.size() && std::abs(energies[end] - anchor) <= tol) ++end;
        groups.emplace_back(start, end - start);
        start = end;
    }
    return groups;
}

Eigen::VectorXd project_a1(const Eigen::VectorXd& v, const std::vector<lattice::SymmetryOp>& ops,
                           const fock::SectorBasis& basis) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (const lattice::SymmetryOp& op : ops) {
        for (std::size_t s = 0; s < basis.size(); ++s) {
            if (v[static_cast<int>(s)] == 0.0) continue;
            const auto hop = fock::apply_site_permutation(basis.states[s], basis.n_sites, op);
            out[static_cast<int>(basis.index_of(hop.state))] += hop.sign * v[static_cast<int>(s)];
        }
    }
    return out / static_cast<double>(ops.size());
}

Eigen::MatrixXd symmetry_matrix(const lattice::SymmetryOp& op, const fock::SectorBasis& basis) {
    const int dim = static_cast<int>(basis.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        const auto hop = fock::apply_site_permutation(basis.states[s], basis.n_sites, op);
        m(static_cast<int>(basis.index_of(hop.state)), s) = hop.sign;
    }
    return m;
}

BlockStateChoice select_block_state(const EigenResult& multiplet,
                                    const std::vector<lattice::SymmetryOp>& ops,
                                    const lattice::LatticeBlock& block,
                                    const fock::SectorBasis& basis, bool project) {
    const int g = static_cast<int>(multiplet.vectors.cols());
    if (g == 0) throw std::invalid_argument("select_block_state: empty multiplet");
    (void)block;

    BlockStateChoice choice;
    choice.sector = multiplet.sector;
    choice.degeneracy = g;

    if (project) {
        // Orthonormalize the A1 projections of the multiplet members;
        // directions with projected norm below the cutoff are dropped.
        constexpr double kNormCutoff = 1e-8;
        std::vector<Eigen::VectorXd> a1_basis;
        for (int i = 0; i < g; ++i) {
            Eigen::VectorXd p = project_a1(multiplet.vectors.col(i), ops, basis);
            for (const Eigen::VectorXd& q : a1_basis) p -= q.dot(p) * q;
            const double norm = p.norm();
            if (norm > kNormCutoff) a1_basis.push_back(p / norm);
        }
        if (a1_basis.size() == 1) {
            choice.selection = BlockStateChoice::Selection::pure_a1;
            choice.weights = {1.0};
            choice.members.resize(multiplet.vectors.rows(), 1);
            choice.members.col(0) = a1_basis.front();
            canonicalize_sign(choice.members.col(0));
            return choice;
        }
    }

    choice.selection = BlockStateChoice::Selection::averaged;
    choice.weights.assign(g, 1.0 / g);
    choice.members = multiplet.vectors;
    return choice;
}

SectorSolution solve_sector(const lattice::LatticeBlock& block, const hamiltonian::HubbardParams& params,
                            int n_up, int n_dn, const BlockSolveOptions& options) {
    const fock::SectorBasis& basis = fock::cached_sector(block.n_sites, n_up, n_dn);
    // The constant K shifts every eigenvalue by K * n_sites and nothing else;
    // solving without it keeps the degeneracy tolerance anchored to the
    // physical scale. It is restored in the reported energy.
    const hamiltonian::HubbardParams unshifted{params.t, params.u, 0.0};
    const hamiltonian::SparseHamiltonian h = build_hubbard(block, unshifted, basis);
    const std::vector<lattice::SymmetryOp> ops = lattice::c6v_operations(block);

    const int dim = h.dim;
    EigenResult result;
    std::size_t multiplet_size = 0;
    // Escalate the eigenpair count until the ground multiplet is bounded from
    // above (or the whole spectrum is in hand). Large requests go dense.
    for (int k : {8, 24, 56, 512, dim}) {
        k = std::min(k, dim);
        SolveOptions solve = options.solve;
        if (k > 56) solve.method = SolveMethod::dense;
        result = lowest_eigenpairs(h, k, solve);
        multiplet_size = detect_degeneracy(result.energies, options.deg_rel_tol).front().second;
        if (multiplet_size < static_cast<std::size_t>(k) || k == dim) break;
    }

    EigenResult multiplet;
    multiplet.sector = result.sector;
    multiplet.energies.assign(result.energies.begin(), result.energies.begin() + multiplet_size);
    multiplet.vectors = result.vectors.leftCols(static_cast<int>(multiplet_size));

    SectorSolution solution;
    solution.energy = result.energies.front() + params.k * block.n_sites;
    solution.multiplet = static_cast<int>(multiplet_size);
    solution.choice = select_block_state(multiplet, ops, block, basis, options.irrep_projection);
    return solution;
}

}  // namespace hexrg::solver
