// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracle.hpp
 * @brief Brute-force dense reference for small systems (n_sites <= 5).
 *
 * Everything here works on the full 4^n Fock space with its own operator
 * arithmetic, independent of the sector-basis pipeline, so it can serve as a
 * cross-check of that pipeline: dense Hamiltonian, sector ground states, and
 * the full single-site density matrix via a fermionic partial trace (including
 * off-diagonal elements, which must vanish for fixed-sector states).
 */

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hexrg/hamiltonian.hpp"

namespace hexrg::oracle {

struct FullSystem {
    int n_sites = 0;
    std::vector<lattice::Bond> bonds;
};

/// Dense Hamiltonian over all 4^n occupation patterns (pattern value = index).
Eigen::MatrixXd dense_hamiltonian(const FullSystem& system, const hamiltonian::HubbardParams& params);

/// Full-space indices of the (n_up, n_dn) sector, ascending.
std::vector<int> sector_indices(int n_sites, int n_up, int n_dn);

/// Ground data of one sector, embedded in the full space.
struct SectorGround {
    double energy = 0.0;
    int multiplicity = 0;           ///< ground-multiplet size (rel. tol. 1e-9)
    Eigen::MatrixXd multiplet;      ///< 4^n x multiplicity, orthonormal
};

SectorGround sector_ground(const FullSystem& system, const hamiltonian::HubbardParams& params,
                           int n_up, int n_dn);

/// Single-site density matrix of a full-space state in the local basis
/// |0>, |up>, |dn>, |updn>, with fermionic reordering signs.
Eigen::Matrix4d site_density_matrix(const Eigen::VectorXd& state, int n_sites, int site);

/// Ensemble version: weighted average of member density matrices.
Eigen::Matrix4d site_density_matrix(const Eigen::MatrixXd& members, const std::vector<double>& weights,
                                    int n_sites, int site);

/// Von Neumann entropy (base 2) of a density matrix via its eigenvalues.
double entropy_bits(const Eigen::Matrix4d& rho);

}  // namespace hexrg::oracle
