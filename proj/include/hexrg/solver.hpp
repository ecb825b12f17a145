// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solver.hpp
 * @brief Lowest eigenpairs of sector Hamiltonians, ground-multiplet detection,
 *        and the C6v state-selection rule for block states.
 */

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hexrg/hamiltonian.hpp"

namespace hexrg::solver {

/// Raised when an eigensolve does not reach the requested residual.
struct SolverError : std::runtime_error {
    double best_residual;
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), best_residual(residual) {}
};

enum class SolveMethod { automatic, dense, lanczos };

struct SolveOptions {
    double tol = 1e-10;           ///< residual tolerance, relative to max(1, |E|)
    SolveMethod method = SolveMethod::automatic;
    int dense_threshold = 256;    ///< automatic: dense at or below this dimension
    int max_cycles = 200;         ///< restart cap for the iterative path
};

/// k lowest eigenpairs; energies ascending, vectors orthonormal columns.
/// Every pair satisfies |H v - E v| <= tol * max(1, |E|). Vector phases are
/// fixed by making the largest-magnitude amplitude positive.
struct EigenResult {
    std::vector<double> energies;
    Eigen::MatrixXd vectors;  ///< dim x k
    std::pair<int, int> sector{0, 0};
};

EigenResult lowest_eigenpairs(const hamiltonian::SparseHamiltonian& h, int k,
                              const SolveOptions& options = {});

/// Consecutive near-degenerate groups (start, count), each anchored at its
/// first energy: |E_i - E_start| <= rel_tol * max(1, |E_start|).
/// The first group is the ground multiplet.
std::vector<std::pair<std::size_t, std::size_t>> detect_degeneracy(
    std::span<const double> energies, double rel_tol = 1e-9);

/// Chosen block state for one sector: either the unique totally symmetric
/// (A1) member of the ground multiplet, or the equal-weight ensemble over the
/// whole multiplet when no unique A1 member exists.
struct BlockStateChoice {
    enum class Selection { pure_a1, averaged };
    Selection selection = Selection::averaged;
    int degeneracy = 0;            ///< ground multiplet size
    std::vector<double> weights;   ///< nonnegative, sum 1
    Eigen::MatrixXd members;       ///< dim x |weights|, orthonormal
    std::pair<int, int> sector{0, 0};
};

/// Applies the totally symmetric projector P = (1/12) sum_g R(g) to a sector
/// vector, realizing each group element as a signed permutation of the basis.
Eigen::VectorXd project_a1(const Eigen::VectorXd& v, const std::vector<lattice::SymmetryOp>& ops,
                           const fock::SectorBasis& basis);

/// Signed permutation matrix of one symmetry operation on a sector basis.
Eigen::MatrixXd symmetry_matrix(const lattice::SymmetryOp& op, const fock::SectorBasis& basis);

/// Selection rule: project the ground multiplet onto A1; if the projected
/// span is one-dimensional (norm cutoff 1e-8), keep that pure state,
/// otherwise fall back to the equal-weight ensemble over the multiplet.
/// `multiplet` must contain the full ground multiplet (and nothing else).
BlockStateChoice select_block_state(const EigenResult& multiplet,
                                    const std::vector<lattice::SymmetryOp>& ops,
                                    const lattice::LatticeBlock& block,
                                    const fock::SectorBasis& basis, bool project = true);

struct BlockSolveOptions {
    SolveOptions solve;
    double deg_rel_tol = 1e-9;    ///< ground-multiplet grouping tolerance
    bool irrep_projection = true; ///< disable to always average over multiplets
};

/// One sector of the block solved end to end: ground energy, full ground
/// multiplet detection (escalating the eigenpair count until the multiplet is
/// bounded), and the state-selection rule.
struct SectorSolution {
    double energy = 0.0;          ///< ground energy, including the K
    int multiplet = 0;            ///< ground multiplet size
    BlockStateChoice choice;
};

SectorSolution solve_sector(const lattice::LatticeBlock& block, const hamiltonian::HubbardParams& params,
                            int n_up, int n_dn, const BlockSolveOptions& options = {});

}  // namespace hexrg::solver
