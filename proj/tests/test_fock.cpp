// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include "hexrg/fock.hpp"

using namespace hexrg::fock;
using hexrg::lattice::SymmetryOp;

namespace {

// Dense realization of c_m / c+_m over all patterns of a small system.
Eigen::MatrixXd mode_matrix(int n_sites, int mode, bool dagger) {
    const int dim = 1 << (2 * n_sites);
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto hop = dagger ? create_mode(FockState{static_cast<std::uint32_t>(col)}, mode)
                                : annihilate_mode(FockState{static_cast<std::uint32_t>(col)}, mode);
        if (hop) op(static_cast<int>(hop->state.occ), col) = hop->sign;
    }
    return op;
}

}  // namespace

TEST_CASE("sector sizes") {
    CHECK(enumerate_sector(7, 4, 3).size() == 1225);
    CHECK(enumerate_sector(7, 0, 0).size() == 1);
    CHECK(enumerate_sector(2, 1, 1).size() == 4);
    CHECK_THROWS_AS(enumerate_sector(7, 8, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(7, -1, 0), std::invalid_argument);
}

TEST_CASE("sector basis ordering and lookup") {
    const SectorBasis basis = enumerate_sector(4, 2, 1);
    CHECK(basis.size() == 6 * 4);
    for (std::size_t i = 1; i < basis.size(); ++i) {
        CHECK(basis.states[i - 1].occ < basis.states[i].occ);
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(basis.index_of(basis.states[i]) == i);
    }
    CHECK(!basis.find(FockState{0}).has_value());
    CHECK_THROWS_AS(basis.index_of(FockState{0}), std::out_of_range);
}

TEST_CASE("creation examples") {
    const int n = 2;
    const FockState vacuum{0};

    auto hop = apply_creation(vacuum, n, 0, Spin::up);  // mode 0
    REQUIRE(hop.has_value());
    CHECK(hop->state.occ == 0b0001);
    CHECK(hop->sign == 1);

    hop = apply_creation(hop->state, n, 1, Spin::up);  // mode 1 above an occupied mode 0
    REQUIRE(hop.has_value());
    CHECK(hop->state.occ == 0b0011);
    CHECK(hop->sign == -1);

    CHECK(!apply_creation(FockState{0b0010}, n, 1, Spin::up).has_value());  // Pauli exclusion
    CHECK_THROWS_AS(apply_creation(vacuum, n, 2, Spin::up), std::out_of_range);
}

TEST_CASE("annihilation examples") {
    const int n = 2;
    auto hop = apply_annihilation(FockState{0b0001}, n, 0, Spin::up);
    REQUIRE(hop.has_value());
    CHECK(hop->state.occ == 0);
    CHECK(hop->sign == 1);

    CHECK(!apply_annihilation(FockState{0}, n, 0, Spin::up).has_value());

    hop = apply_annihilation(FockState{0b0011}, n, 1, Spin::up);
    REQUIRE(hop.has_value());
    CHECK(hop->state.occ == 0b0001);
    CHECK(hop->sign == -1);
}

TEST_CASE("creation then annihilation is the identity on empty modes") {
    const int n = 3;
    for (std::uint32_t occ = 0; occ < (1u << (2 * n)); ++occ) {
        for (int mode = 0; mode < 2 * n; ++mode) {
            if (occ & (1u << mode)) continue;
            const auto created = create_mode(FockState{occ}, mode);
            REQUIRE(created.has_value());
            const auto destroyed = annihilate_mode(created->state, mode);
            REQUIRE(destroyed.has_value());
            CHECK(destroyed->state.occ == occ);
            CHECK(created->sign * destroyed->sign == 1);
        }
    }
}

TEST_CASE("anticommutation identities on small systems") {
    for (int n : {2, 3}) {
        const int modes = 2 * n;
        const int dim = 1 << modes;
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
        for (int m = 0; m < modes; ++m) {
            const Eigen::MatrixXd cm = mode_matrix(n, m, false);
            for (int mp = 0; mp < modes; ++mp) {
                const Eigen::MatrixXd cp = mode_matrix(n, mp, true);
                Eigen::MatrixXd anti = cm * cp + cp * cm;
                if (m == mp) anti -= id;
                CHECK(anti.cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }
}

TEST_CASE("site permutations") {
    const auto block = hexrg::lattice::build_hex_block();
    const auto ops = hexrg::lattice::c6v_operations(block);
    const int n = 7;

    SUBCASE("vacuum is invariant") {
        for (const SymmetryOp& op : ops) {
            const Hop hop = apply_site_permutation(FockState{0}, n, op);
            CHECK(hop.state.occ == 0);
            CHECK(hop.sign == 1);
        }
    }

    SUBCASE("single particle moves without a sign") {
        // up electron on ring site 0, rotated one step -> ring site 1
        const FockState one_up{1u << 0};
        const Hop hop = apply_site_permutation(one_up, n, ops[1]);
        CHECK(hop.state.occ == (1u << 1));
        CHECK(hop.sign == 1);
    }

    SUBCASE("op followed by its inverse is the identity") {
        const SectorBasis basis = enumerate_sector(7, 2, 2);
        for (const SymmetryOp& op : ops) {
            // find the inverse permutation within the group
            for (const SymmetryOp& inv : ops) {
                const auto composed = hexrg::lattice::compose(inv, op);
                if (composed != std::array<int, 7>{0, 1, 2, 3, 4, 5, 6}) continue;
                for (std::size_t s = 0; s < basis.size(); s += 37) {
                    const Hop first = apply_site_permutation(basis.states[s], 7, op);
                    const Hop second = apply_site_permutation(first.state, 7, inv);
                    CHECK(second.state == basis.states[s]);
                    CHECK(first.sign * second.sign == 1);
                }
            }
        }
    }

    SUBCASE("permutation operators are orthogonal signed bijections") {
        const SectorBasis basis = enumerate_sector(7, 1, 1);
        for (const SymmetryOp& op : ops) {
            std::vector<int> hits(basis.size(), 0);
            for (std::size_t s = 0; s < basis.size(); ++s) {
                const Hop hop = apply_site_permutation(basis.states[s], 7, op);
                CHECK((hop.sign == 1 || hop.sign == -1));
                ++hits[basis.index_of(hop.state)];
            }
            CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
        }
    }
}

TEST_CASE("cached sectors are shared") {
    const SectorBasis& a = cached_sector(7, 4, 3);
    const SectorBasis& b = cached_sector(7, 4, 3);
    CHECK(&a == &b);
    CHECK(a.size() == 1225);
}
