// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hexrg/entanglement.hpp"
#include "hexrg/oracle.hpp"

using namespace hexrg;
using entanglement::SiteRDM;
using hamiltonian::HubbardParams;

namespace {

// Converts a full-space oracle multiplet into a sector-basis ensemble choice.
solver::BlockStateChoice choice_from_oracle(const oracle::SectorGround& ground,
                                            const fock::SectorBasis& basis) {
    solver::BlockStateChoice choice;
    choice.sector = {basis.n_up, basis.n_dn};
    choice.degeneracy = ground.multiplicity;
    choice.selection = solver::BlockStateChoice::Selection::averaged;
    choice.weights.assign(ground.multiplicity, 1.0 / ground.multiplicity);
    choice.members.resize(basis.size(), ground.multiplicity);
    for (std::size_t s = 0; s < basis.size(); ++s) {
        for (int m = 0; m < ground.multiplicity; ++m) {
            choice.members(static_cast<int>(s), m) =
                ground.multiplet(static_cast<int>(basis.states[s].occ), m);
        }
    }
    return choice;
}

}  // namespace

TEST_CASE("entropy reference values") {
    CHECK(entanglement::entropy_bits({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(entanglement::entropy_bits({0.0, 0.5, 0.5, 0.0}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(entanglement::entropy_bits({1.0, 0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("entropy bounds and maximum") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        double p[4];
        double sum = 0.0;
        for (double& x : p) sum += (x = dist(rng));
        const SiteRDM rdm{p[0] / sum, p[1] / sum, p[2] / sum, p[3] / sum};
        const double s = entanglement::entropy_bits(rdm);
        CHECK(s >= 0.0);
        CHECK(s <= 2.0 + 1e-12);
    }
}

TEST_CASE("product state gives one bit") {
    // All weight on basis states whose reference site is singly occupied with
    // the sector's majority spin; the mirrored sector supplies the other spin.
    const auto& basis_up = fock::cached_sector(2, 1, 0);
    const auto& basis_dn = fock::cached_sector(2, 0, 1);
    solver::BlockStateChoice up, dn;
    up.sector = {1, 0};
    up.degeneracy = 1;
    up.weights = {1.0};
    up.members = Eigen::MatrixXd::Zero(basis_up.size(), 1);
    up.members(static_cast<int>(basis_up.index_of(fock::FockState{0b01})), 0) = 1.0;  // up on site 0
    dn.sector = {0, 1};
    dn.degeneracy = 1;
    dn.weights = {1.0};
    dn.members = Eigen::MatrixXd::Zero(basis_dn.size(), 1);
    dn.members(static_cast<int>(basis_dn.index_of(fock::FockState{0b0100})), 0) = 1.0;  // dn on site 0

    const SiteRDM rdm = entanglement::site_rdm(up, dn, basis_up, basis_dn, 0);
    CHECK(rdm.p_up == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rdm.p_dn == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(entanglement::entropy_bits(rdm) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("deep insulator density matrix") {
    // t = 0: every site of the half-filled block is singly occupied, and the
    // sector-symmetrized probabilities are exactly (0, 1/2, 1/2, 0).
    const auto record = entanglement::entanglement_profile(HubbardParams{0.0, 1.0, 0.0});
    CHECK(record.rdm7.p_empty == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(record.rdm7.p_up == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(record.rdm7.p_dn == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(record.rdm7.p_double == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(record.e7 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(record.e1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(record.e_tot == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(record.e_avg == doctest::Approx(9.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("record identities and spin symmetrization") {
    for (const double u : {0.0, 6.0, 12.5, 20.0}) {
        const auto record = entanglement::entanglement_profile(HubbardParams{1.0, u, -u / 4.0});
        CHECK(record.e_tot == 6.0 * record.e7 + 3.0 * record.e1);
        CHECK(record.e_avg == record.e_tot / 21.0);
        CHECK(std::abs(record.rdm7.p_up - record.rdm7.p_dn) <= 1e-12);
        CHECK(std::abs(record.rdm1.p_up - record.rdm1.p_dn) <= 1e-12);
        CHECK(std::abs(record.rdm7.sum() - 1.0) <= 1e-12);
        CHECK(std::abs(record.rdm1.sum() - 1.0) <= 1e-12);
        CHECK(record.e7 >= 0.0);
        CHECK(record.e7 <= 2.0 + 1e-12);
    }
}

TEST_CASE("peripheral sites are equivalent") {
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const HubbardParams params{1.0, 12.5, -3.125};
    const auto up = solver::solve_sector(block, params, 4, 3);
    const auto dn = solver::solve_sector(block, params, 3, 4);
    const auto& basis_up = fock::cached_sector(7, 4, 3);
    const auto& basis_dn = fock::cached_sector(7, 3, 4);

    const SiteRDM first = entanglement::site_rdm(up.choice, dn.choice, basis_up, basis_dn, block.ring[0]);
    for (int r = 1; r < 6; ++r) {
        const SiteRDM other =
            entanglement::site_rdm(up.choice, dn.choice, basis_up, basis_dn, block.ring[r]);
        CHECK(std::abs(other.p_empty - first.p_empty) <= 1e-8);
        CHECK(std::abs(other.p_up - first.p_up) <= 1e-8);
        CHECK(std::abs(other.p_dn - first.p_dn) <= 1e-8);
        CHECK(std::abs(other.p_double - first.p_double) <= 1e-8);
    }
}

TEST_CASE("sector mismatch is rejected") {
    const auto& basis_up = fock::cached_sector(7, 4, 3);
    const auto& basis_dn = fock::cached_sector(7, 4, 3);  // not the mirror
    solver::BlockStateChoice up;
    up.sector = {4, 3};
    up.weights = {1.0};
    up.members = Eigen::MatrixXd::Zero(basis_up.size(), 1);
    CHECK_THROWS_AS(entanglement::site_rdm(up, up, basis_up, basis_dn, 0), std::invalid_argument);
}

TEST_CASE("bucket accumulation equals the brute-force partial trace") {
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> tdist(0.5, 2.0), udist(-5.0, 20.0), kdist(-2.0, 2.0);

    const std::vector<std::pair<int, std::vector<lattice::Bond>>> systems{
        {2, {{0, 1}}},
        {3, {{0, 1}, {1, 2}, {0, 2}}},
        {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}};

    for (int trial = 0; trial < 4; ++trial) {
        for (const auto& [n, bonds] : systems) {
            const HubbardParams params{tdist(rng), udist(rng), kdist(rng)};
            const int up = (n + 1) / 2, dn = n - up;
            const oracle::FullSystem system{n, bonds};
            const auto ground_up = oracle::sector_ground(system, params, up, dn);
            const auto ground_dn = oracle::sector_ground(system, params, dn, up);
            const auto& basis_up = fock::cached_sector(n, up, dn);
            const auto& basis_dn = fock::cached_sector(n, dn, up);
            const auto cu = choice_from_oracle(ground_up, basis_up);
            const auto cd = choice_from_oracle(ground_dn, basis_dn);
            const std::vector<double> wu(ground_up.multiplicity, 1.0 / ground_up.multiplicity);
            const std::vector<double> wd(ground_dn.multiplicity, 1.0 / ground_dn.multiplicity);

            for (int site = 0; site < n; ++site) {
                const Eigen::Matrix4d rho =
                    0.5 * (oracle::site_density_matrix(ground_up.multiplet, wu, n, site) +
                           oracle::site_density_matrix(ground_dn.multiplet, wd, n, site));
                // superselection: the exact off-diagonals vanish
                Eigen::Matrix4d off = rho;
                off.diagonal().setZero();
                CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);

                const SiteRDM rdm = entanglement::site_rdm(cu, cd, basis_up, basis_dn, site);
                CHECK(std::abs(rdm.p_empty - rho(0, 0)) <= 1e-12);
                CHECK(std::abs(rdm.p_up - rho(1, 1)) <= 1e-12);
                CHECK(std::abs(rdm.p_dn - rho(2, 2)) <= 1e-12);
                CHECK(std::abs(rdm.p_double - rho(3, 3)) <= 1e-12);
                CHECK(std::abs(entanglement::entropy_bits(rdm) - oracle::entropy_bits(rho)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("block profile matches the dense pipeline end to end") {
    const HubbardParams params{1.0, 12.5, -3.125};
    solver::BlockSolveOptions dense_path;
    dense_path.solve.method = solver::SolveMethod::dense;
    const auto fast = entanglement::entanglement_profile(params);
    const auto dense = entanglement::entanglement_profile(params, dense_path);
    CHECK(std::abs(fast.e7 - dense.e7) <= 1e-8);
    CHECK(std::abs(fast.e1 - dense.e1) <= 1e-8);
    CHECK(std::abs(fast.e_avg - dense.e_avg) <= 1e-8);
}
