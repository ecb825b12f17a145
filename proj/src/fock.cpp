// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/fock.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace hexrg::fock {

namespace {

constexpr int kMaxSites = 15;  // 2*n_sites must fit the 32-bit pattern

int sign_below(std::uint32_t occ, int mode) {
    const std::uint32_t below = occ & ((1u << mode) - 1u);
    return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

}  // namespace

std::optional<Hop> create_mode(FockState state, int mode) {
    const std::uint32_t bit = 1u << mode;
    if (state.occ & bit) return std::nullopt;  // Pauli exclusion
    return Hop{FockState{state.occ | bit}, sign_below(state.occ, mode)};
}

std::optional<Hop> annihilate_mode(FockState state, int mode) {
    const std::uint32_t bit = 1u << mode;
    if (!(state.occ & bit)) return std::nullopt;
    return Hop{FockState{state.occ & ~bit}, sign_below(state.occ, mode)};
}

std::optional<Hop> apply_creation(FockState state, int n_sites, int site, Spin spin) {
    if (site < 0 || site >= n_sites) throw std::out_of_range("apply_creation: site out of range");
    return create_mode(state, mode_index(n_sites, site, spin));
}

std::optional<Hop> apply_annihilation(FockState state, int n_sites, int site, Spin spin) {
    if (site < 0 || site >= n_sites) throw std::out_of_range("apply_annihilation: site out of range");
    return annihilate_mode(state, mode_index(n_sites, site, spin));
}

Hop apply_site_permutation(FockState state, int n_sites, const lattice::SymmetryOp& op) {
    // Collect occupied modes in ascending order, map each to its image
    // (same spin, permuted site), then count inversions of the image list.
    int mapped[2 * kMaxSites];
    int count = 0;
    std::uint32_t occ = state.occ;
    while (occ) {
        const int mode = std::countr_zero(occ);
        occ &= occ - 1;
        const int site = mode % n_sites;
        const int base = mode - site;
        mapped[count++] = base + op.perm[site];
    }
    int inversions = 0;
    std::uint32_t new_occ = 0;
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            if (mapped[i] > mapped[j]) ++inversions;
        }
        new_occ |= 1u << mapped[i];
    }
    return Hop{FockState{new_occ}, (inversions % 2 == 0) ? 1 : -1};
}

std::size_t SectorBasis::index_of(FockState state) const {
    const auto pos = find(state);
    if (!pos) throw std::out_of_range("SectorBasis::index_of: state not in sector");
    return *pos;
}

std::optional<std::size_t> SectorBasis::find(FockState state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || !(*it == state)) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

SectorBasis enumerate_sector(int n_sites, int n_up, int n_dn) {
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw std::invalid_argument("enumerate_sector: n_sites out of range");
    }
    if (n_up < 0 || n_up > n_sites || n_dn < 0 || n_dn > n_sites) {
        throw std::invalid_argument("enumerate_sector: electron counts out of range");
    }
    SectorBasis basis;
    basis.n_sites = n_sites;
    basis.n_up = n_up;
    basis.n_dn = n_dn;

    std::vector<std::uint32_t> up_masks, dn_masks;
    for (std::uint32_t m = 0; m < (1u << n_sites); ++m) {
        if (std::popcount(m) == n_up) up_masks.push_back(m);
        if (std::popcount(m) == n_dn) dn_masks.push_back(m);
    }
    basis.states.reserve(up_masks.size() * dn_masks.size());
    // dn-major loop keeps the combined pattern strictly increasing.
    for (const std::uint32_t dn : dn_masks) {
        for (const std::uint32_t up : up_masks) {
            basis.states.push_back(FockState{up | (dn << n_sites)});
        }
    }
    return basis;
}

const SectorBasis& cached_sector(int n_sites, int n_up, int n_dn) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<const SectorBasis>> cache;
    const auto key = std::make_tuple(n_sites, n_up, n_dn);
    std::scoped_lock lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<const SectorBasis>(
                                    enumerate_sector(n_sites, n_up, n_dn)))
                 .first;
    }
    return *it->second;
}

CreationMap creation_map(const SectorBasis& from, const SectorBasis& to, int site, Spin spin) {
    if (from.n_sites != to.n_sites) {
        throw std::invalid_argument("creation_map: mismatched n_sites");
    }
    CreationMap map;
    map.target.resize(from.size(), -1);
    map.sign.resize(from.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        const auto hop = apply_creation(from.states[i], from.n_sites, site, spin);
        if (!hop) continue;
        const auto pos = to.find(hop->state);
        if (!pos) continue;
        map.target[i] = static_cast<std::int32_t>(*pos);
        map.sign[i] = static_cast<std::int8_t>(hop->sign);
    }
    return map;
}

}  // namespace hexrg::fock
