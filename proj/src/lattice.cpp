// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hexrg::lattice {

std::vector<int> LatticeBlock::neighbors(int site) const {
    std::vector<int> out;
    for (const Bond& bond : bonds) {
        if (bond.a == site) out.push_back(bond.b);
        if (bond.b == site) out.push_back(bond.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int LatticeBlock::degree(int site) const {
    return static_cast<int>(neighbors(site).size());
}

LatticeBlock build_hex_block() {
    LatticeBlock block;
    block.n_sites = 7;
    // Ring sites at the six unit displacements of the triangular lattice,
    // counterclockwise starting from (1, 0); center at the origin.
    block.sites = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {0, 0}};
    block.central_site = 6;
    block.ring = {0, 1, 2, 3, 4, 5};

    for (int i = 0; i < 6; ++i) {
        block.bonds.push_back(Bond{i, 6});                       // spoke
        const int j = (i + 1) % 6;
        block.bonds.push_back(Bond{std::min(i, j), std::max(i, j)});  // rim
    }
    std::sort(block.bonds.begin(), block.bonds.end());
    return block;
}

bool preserves_bonds(const std::array<int, 7>& perm, const LatticeBlock& block) {
    std::set<Bond> original(block.bonds.begin(), block.bonds.end());
    std::set<Bond> mapped;
    for (const Bond& bond : block.bonds) {
        const int a = perm[bond.a];
        const int b = perm[bond.b];
        mapped.insert(Bond{std::min(a, b), std::max(a, b)});
    }
    return mapped == original;
}

std::vector<SymmetryOp> c6v_operations(const LatticeBlock& block) {
    if (block.n_sites != 7) {
        throw std::invalid_argument("c6v_operations: block must have 7 sites");
    }
    std::vector<SymmetryOp> ops;
    ops.reserve(12);
    for (int k = 0; k < 6; ++k) {
        SymmetryOp op;
        op.kind = SymKind::rotation;
        op.index = k;
        for (int i = 0; i < 6; ++i) op.perm[block.ring[i]] = block.ring[(i + k) % 6];
        op.perm[block.central_site] = block.central_site;
        ops.push_back(op);
    }
    for (int m = 0; m < 6; ++m) {
        SymmetryOp op;
        op.kind = SymKind::reflection;
        op.index = m;
        for (int i = 0; i < 6; ++i) op.perm[block.ring[i]] = block.ring[((m - i) % 6 + 6) % 6];
        op.perm[block.central_site] = block.central_site;
        ops.push_back(op);
    }
    for (const SymmetryOp& op : ops) {
        if (!preserves_bonds(op.perm, block)) {
            throw std::invalid_argument("c6v_operations: bond set is not C6v-symmetric");
        }
    }
    return ops;
}

std::array<int, 7> compose(const SymmetryOp& a, const SymmetryOp& b) {
    std::array<int, 7> out{};
    for (int i = 0; i < 7; ++i) out[i] = a.perm[b.perm[i]];
    return out;
}

}  // namespace hexrg::lattice
