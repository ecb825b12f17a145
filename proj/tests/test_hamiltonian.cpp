// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>

#include "hexrg/hamiltonian.hpp"
#include "hexrg/solver.hpp"

using namespace hexrg;
using hamiltonian::HubbardParams;
using hamiltonian::SparseHamiltonian;

TEST_CASE("sector dimension") {
    const auto block = lattice::build_hex_block();
    const auto& basis = fock::cached_sector(7, 4, 3);
    const auto h = build_hubbard(block, HubbardParams{1.0, 4.0, -1.0}, basis);
    CHECK(h.dim == 1225);
    CHECK(h.sector == std::pair{4, 3});
}

TEST_CASE("atomic limit has a purely diagonal matrix") {
    const auto block = lattice::build_hex_block();
    const auto& basis = fock::cached_sector(7, 3, 3);
    const double u = 1.0, k = 0.25;
    const auto h = build_hubbard(block, HubbardParams{0.0, u, k}, basis);
    CHECK(h.offdiag.empty());

    const std::uint32_t mask = (1u << 7) - 1u;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const std::uint32_t up = basis.states[s].occ & mask;
        const std::uint32_t dn = (basis.states[s].occ >> 7) & mask;
        const int d = std::popcount(up & dn);
        const int e = std::popcount(~(up | dn) & mask);
        const int single = 7 - d - e;
        CHECK(h.diag[s] == doctest::Approx(u * (d + e - single) / 4.0 + 7.0 * k).epsilon(1e-15));
    }
}

TEST_CASE("two-site chain ground energy at U = 0") {
    // Two free electrons fill the lowest single-particle level of energy -t.
    const std::vector<lattice::Bond> bonds{{0, 1}};
    const auto basis = fock::enumerate_sector(2, 1, 1);
    const auto h = build_hubbard(2, bonds, HubbardParams{1.0, 0.0, 0.0}, basis);
    CHECK(h.dim == 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(h));
    CHECK(es.eigenvalues()[0] == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("matvec") {
    const std::vector<lattice::Bond> bonds{{0, 1}};
    const auto basis = fock::enumerate_sector(2, 1, 1);
    const auto h = build_hubbard(2, bonds, HubbardParams{1.3, 2.7, -0.4}, basis);

    SUBCASE("zero maps to zero") {
        const Eigen::VectorXd y = h.apply(Eigen::VectorXd::Zero(h.dim));
        CHECK(y.norm() == 0.0);
    }

    SUBCASE("diagonal matrix acts diagonally") {
        const auto atomic = build_hubbard(2, bonds, HubbardParams{0.0, 2.7, -0.4}, basis);
        for (int i = 0; i < atomic.dim; ++i) {
            const Eigen::VectorXd y = atomic.apply(Eigen::VectorXd::Unit(atomic.dim, i));
            CHECK(y[i] == doctest::Approx(atomic.diag[i]).epsilon(1e-15));
            CHECK((y - atomic.diag[i] * Eigen::VectorXd::Unit(atomic.dim, i)).norm() == 0.0);
        }
    }

    SUBCASE("matches the dense product on random vectors") {
        const Eigen::MatrixXd dense = to_dense(h);
        std::mt19937_64 rng(7);
        std::normal_distribution<double> gauss;
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::VectorXd x(h.dim);
            for (int i = 0; i < h.dim; ++i) x[i] = gauss(rng);
            CHECK((h.apply(x) - dense * x).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }

    SUBCASE("length mismatch throws") {
        CHECK_THROWS_AS(h.apply(Eigen::VectorXd::Zero(3)), std::invalid_argument);
    }
}

TEST_CASE("basis/block size mismatch throws") {
    const auto block = lattice::build_hex_block();
    const auto basis = fock::enumerate_sector(2, 1, 1);
    CHECK_THROWS_AS(build_hubbard(block, HubbardParams{}, basis), std::invalid_argument);
}

TEST_CASE("hermiticity is exact") {
    const auto block = lattice::build_hex_block();
    for (const auto& [nu, nd] : {std::pair{4, 3}, std::pair{3, 3}, std::pair{4, 4}}) {
        const auto h = build_hubbard(block, HubbardParams{1.0, 12.5, -3.125},
                                     fock::cached_sector(7, nu, nd));
        const Eigen::MatrixXd dense = to_dense(h);
        CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("commutes with every lattice symmetry") {
    const auto block = lattice::build_hex_block();
    const auto ops = lattice::c6v_operations(block);
    const auto& basis = fock::cached_sector(7, 2, 1);
    const auto h = build_hubbard(block, HubbardParams{1.0, 7.0, -1.75}, basis);
    const Eigen::MatrixXd dense = to_dense(h);
    for (const auto& op : ops) {
        const Eigen::MatrixXd r = solver::symmetry_matrix(op, basis);
        CHECK((dense * r - r * dense).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("spin-flipped sectors share their ground energy") {
    const auto block = lattice::build_hex_block();
    const HubbardParams params{1.0, 12.5, -3.125};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> up(
        to_dense(build_hubbard(block, params, fock::cached_sector(7, 4, 3))));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dn(
        to_dense(build_hubbard(block, params, fock::cached_sector(7, 3, 4))));
    CHECK(std::abs(up.eigenvalues()[0] - dn.eigenvalues()[0]) <=
          1e-10 * std::max(1.0, std::abs(up.eigenvalues()[0])));
}

TEST_CASE("particle-hole energies are recorded, not asserted equal") {
    // The triangular block is not bipartite, so E(3,3) and E(4,4) may differ;
    // their gap feeds the ph_residual diagnostic downstream.
    const auto block = lattice::build_hex_block();
    const HubbardParams params{1.0, 12.5, -3.125};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> six(
        to_dense(build_hubbard(block, params, fock::cached_sector(7, 3, 3))));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eight(
        to_dense(build_hubbard(block, params, fock::cached_sector(7, 4, 4))));
    CHECK(std::isfinite(six.eigenvalues()[0]));
    CHECK(std::isfinite(eight.eigenvalues()[0]));
    MESSAGE("E(3,3) = ", six.eigenvalues()[0], ", E(4,4) = ", eight.eigenvalues()[0]);
}

TEST_CASE("dense mirror is guarded") {
    SparseHamiltonian h;
    h.dim = 5001;
    CHECK_THROWS_AS(to_dense(h), std::invalid_argument);
}
