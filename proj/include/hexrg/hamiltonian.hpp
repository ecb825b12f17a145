// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamiltonian.hpp
 * @brief Sector-restricted Hubbard Hamiltonian in symmetric sparse storage.
 *
 * H = -t sum_{<i,j>,s} (c+_{is} c_{js} + h.c.)
 *     + U sum_i (1/2 - n_{i up})(1/2 - n_{i dn})
 *     + K sum_i 1.
 *
 * The interaction is kept in the symmetric particle-hole form above (not the
 * plain U n_up n_dn form); the coupling-flow equations downstream assume it.
 */

#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hexrg/fock.hpp"
#include "hexrg/lattice.hpp"

namespace hexrg::hamiltonian {

/// Couplings of the (effective) Hamiltonian at one RG stage.
struct HubbardParams {
    double t = 1.0;  ///< nearest-neighbor hopping
    double u = 0.0;  ///< on-site repulsion
    double k = 0.0;  ///< constant per-site shift
};

/// Real symmetric matrix in a fixed (n_up, n_dn) sector. Off-diagonal entries
/// are stored once with row < col.
struct SparseHamiltonian {
    struct Entry {
        std::int32_t row = 0;
        std::int32_t col = 0;
        double value = 0.0;
    };

    int dim = 0;
    int n_sites = 0;
    std::pair<int, int> sector{0, 0};
    std::vector<double> diag;
    std::vector<Entry> offdiag;

    /// y = H x. Throws std::invalid_argument on a length mismatch.
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

/// Assembles the sector Hamiltonian for an arbitrary bond graph.
SparseHamiltonian build_hubbard(int n_sites, std::span<const lattice::Bond> bonds,
                                const HubbardParams& params, const fock::SectorBasis& basis);

/// Assembles the sector Hamiltonian for the hexagonal block.
SparseHamiltonian build_hubbard(const lattice::LatticeBlock& block, const HubbardParams& params,
                                const fock::SectorBasis& basis);

/// Dense mirror of the sparse matrix (test oracle; guarded to dim <= 5000).
Eigen::MatrixXd to_dense(const SparseHamiltonian& h);

}  // namespace hexrg::hamiltonian
