// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace hexrg::entanglement {

namespace {

// Occupation probabilities of one site accumulated over an ensemble.
std::array<double, 4> bucket_probabilities(const solver::BlockStateChoice& choice,
                                           const fock::SectorBasis& basis, int site) {
    std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
    const std::uint32_t up_bit = 1u << site;
    const std::uint32_t dn_bit = 1u << (basis.n_sites + site);
    for (std::size_t m = 0; m < choice.weights.size(); ++m) {
        const double w = choice.weights[m];
        for (std::size_t s = 0; s < basis.size(); ++s) {
            const double amp = choice.members(static_cast<int>(s), static_cast<int>(m));
            if (amp == 0.0) continue;
            const std::uint32_t occ = basis.states[s].occ;
            const int local = ((occ & up_bit) ? 1 : 0) + ((occ & dn_bit) ? 2 : 0);
            p[local] += w * amp * amp;
        }
    }
    return p;
}

}  // namespace

double entropy_bits(const SiteRDM& rdm) {
    double s = 0.0;
    for (const double p : {rdm.p_empty, rdm.p_up, rdm.p_dn, rdm.p_double}) {
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

SiteRDM site_rdm(const solver::BlockStateChoice& choice_up, const solver::BlockStateChoice& choice_dn,
                 const fock::SectorBasis& basis_up, const fock::SectorBasis& basis_dn, int site) {
    if (basis_up.n_sites != basis_dn.n_sites) {
        throw std::invalid_argument("site_rdm: mismatched system sizes");
    }
    const int n = basis_up.n_sites;
    if (basis_up.n_up != basis_dn.n_dn || basis_up.n_dn != basis_dn.n_up) {
        throw std::invalid_argument("site_rdm: choices are not a spin-mirror pair");
    }
    if (choice_up.sector != std::pair{basis_up.n_up, basis_up.n_dn} ||
        choice_dn.sector != std::pair{basis_dn.n_up, basis_dn.n_dn}) {
        throw std::invalid_argument("site_rdm: choice/basis sector mismatch");
    }
    if (site < 0 || site >= n) throw std::out_of_range("site_rdm: site out of range");

    const auto pu = bucket_probabilities(choice_up, basis_up, site);
    const auto pd = bucket_probabilities(choice_dn, basis_dn, site);
    SiteRDM rdm;
    rdm.p_empty = 0.5 * (pu[0] + pd[0]);
    rdm.p_up = 0.5 * (pu[1] + pd[1]);
    rdm.p_dn = 0.5 * (pu[2] + pd[2]);
    rdm.p_double = 0.5 * (pu[3] + pd[3]);
    if (std::abs(rdm.sum() - 1.0) > 1e-10) {
        throw std::logic_error("site_rdm: probabilities do not sum to 1");
    }
    return rdm;
}

EntanglementRecord record_from_choices(const solver::BlockStateChoice& choice_up,
                                       const solver::BlockStateChoice& choice_dn,
                                       const fock::SectorBasis& basis_up,
                                       const fock::SectorBasis& basis_dn,
                                       const lattice::LatticeBlock& block) {
    EntanglementRecord rec;
    rec.rdm7 = site_rdm(choice_up, choice_dn, basis_up, basis_dn, block.central_site);
    rec.rdm1 = site_rdm(choice_up, choice_dn, basis_up, basis_dn, block.ring[0]);
    rec.e7 = entropy_bits(rec.rdm7);
    rec.e1 = entropy_bits(rec.rdm1);
    rec.e_tot = 6.0 * rec.e7 + 3.0 * rec.e1;
    rec.e_avg = rec.e_tot / 21.0;
    return rec;
}

EntanglementRecord entanglement_profile(const hamiltonian::HubbardParams& params,
                                        const solver::BlockSolveOptions& options) {
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const int up = (block.n_sites + 1) / 2;  // 4
    const int dn = block.n_sites - up;       // 3
    const solver::SectorSolution sol_up = solver::solve_sector(block, params, up, dn, options);
    const solver::SectorSolution sol_dn = solver::solve_sector(block, params, dn, up, options);
    return record_from_choices(sol_up.choice, sol_dn.choice, fock::cached_sector(block.n_sites, up, dn),
                               fock::cached_sector(block.n_sites, dn, up), block);
}

}  // namespace hexrg::entanglement
