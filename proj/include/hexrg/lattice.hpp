// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lattice.hpp
 * @brief Hexagonal 7-site block of the triangular lattice and its C6v symmetry.
 *
 * The block consists of a central site surrounded by a six-site ring. In the
 * 1-based site numbering used by all tool outputs, sites 1..6 form the ring
 * (counterclockwise) and site 7 is the center; internally sites are indexed
 * 0..6 with the center at index 6.
 */

#pragma once

#include <array>
#include <vector>

namespace hexrg::lattice {

/// 2-D axial coordinate on the triangular lattice (dimensionless lattice units).
struct Vec2 {
    double q = 0.0;
    double r = 0.0;
};

/// Unordered pair of sites connected by a nearest-neighbor bond. Always stored a < b.
struct Bond {
    int a = 0;
    int b = 0;
    friend bool operator==(const Bond&, const Bond&) = default;
    friend auto operator<=>(const Bond&, const Bond&) = default;
};

/// The 7-site hexagonal block: 6 spoke bonds plus 6 rim bonds.
struct LatticeBlock {
    int n_sites = 0;
    std::vector<Vec2> sites;      ///< axial coordinates, index = site
    std::vector<Bond> bonds;      ///< 12 bonds, sorted, no duplicates
    int central_site = 0;         ///< index 6 (site 7 in 1-based numbering)
    std::array<int, 6> ring{};    ///< ring sites counterclockwise, ring[0] = site 1

    /// Sites bonded to `site` within the block.
    std::vector<int> neighbors(int site) const;
    /// Number of block bonds touching `site`.
    int degree(int site) const;
};

/// Canonical hexagonal block. Deterministic: identical coordinates and bond
/// order on every call.
LatticeBlock build_hex_block();

enum class SymKind { rotation, reflection };

/// One C6v element realized as a permutation of the 7 site indices.
struct SymmetryOp {
    std::array<int, 7> perm{};  ///< site -> image
    SymKind kind = SymKind::rotation;
    int index = 0;              ///< rotation steps (0..5) or reflection axis (0..5)
};

/// All 12 C6v operations (6 rotations including identity, 6 reflections).
/// Every operation fixes the central site and maps the bond set onto itself.
/// Throws std::invalid_argument if the block's bond set is not C6v-symmetric.
std::vector<SymmetryOp> c6v_operations(const LatticeBlock& block);

/// Composition a∘b as a site permutation (apply b first, then a).
std::array<int, 7> compose(const SymmetryOp& a, const SymmetryOp& b);

/// True if applying `perm` to every bond reproduces the same bond set.
bool preserves_bonds(const std::array<int, 7>& perm, const LatticeBlock& block);

}  // namespace hexrg::lattice
