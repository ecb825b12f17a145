// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file entanglement.hpp
 * @brief Single-site reduced density matrices of the half-filled block and
 *        von Neumann entropies (base-2).
 *
 * Particle-number and S_z conservation between one site and the remainder
 * force the exact single-site density matrix to be diagonal in the local
 * basis |0>, |up>, |dn>, |updn>; only that diagonal is stored. The half-filled
 * block state is the (N_up, N_dn) = (4,3)/(3,4) doublet symmetrized 50/50.
 */

#pragma once

#include "hexrg/solver.hpp"

namespace hexrg::entanglement {

/// Diagonal of a single-site reduced density matrix.
struct SiteRDM {
    double p_empty = 0.0;
    double p_up = 0.0;
    double p_dn = 0.0;
    double p_double = 0.0;

    double sum() const { return p_empty + p_up + p_dn + p_double; }
};

/// Von Neumann entropy -sum p log2 p, with 0 log 0 = 0. Range [0, 2].
double entropy_bits(const SiteRDM& rdm);

/// Entanglement summary of one block solve. e_tot = 6 e7 + 3 e1 by
/// construction (the pairwise total over the 21 site pairs) and
/// e_avg = e_tot / 21.
struct EntanglementRecord {
    double e7 = 0.0;     ///< entropy of the central site (site 7)
    double e1 = 0.0;     ///< entropy of ring site 1
    double e_tot = 0.0;  ///< 6 e7 + 3 e1
    double e_avg = 0.0;  ///< e_tot / 21
    SiteRDM rdm7;
    SiteRDM rdm1;
};

/// Accumulates occupation probabilities of `site` from two spin-mirrored
/// sector choices, averaged 50/50. Ensemble members contribute with their
/// weights. Throws std::invalid_argument when the two choices are not a
/// spin-mirror pair.
SiteRDM site_rdm(const solver::BlockStateChoice& choice_up, const solver::BlockStateChoice& choice_dn,
                 const fock::SectorBasis& basis_up, const fock::SectorBasis& basis_dn, int site);

/// Record from already-solved half-filled sector choices.
EntanglementRecord record_from_choices(const solver::BlockStateChoice& choice_up,
                                       const solver::BlockStateChoice& choice_dn,
                                       const fock::SectorBasis& basis_up,
                                       const fock::SectorBasis& basis_dn,
                                       const lattice::LatticeBlock& block);

/// Solves the half-filled block sectors at `params` and assembles the record.
EntanglementRecord entanglement_profile(const hamiltonian::HubbardParams& params,
                                        const solver::BlockSolveOptions& options = {});

}  // namespace hexrg::entanglement
