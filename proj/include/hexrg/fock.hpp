// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Occupation-number bases for fixed (N_up, N_dn) sectors and fermionic
 *        operators with canonical sign bookkeeping.
 *
 * Mode ordering convention (fixed once, everything downstream depends on it):
 * spin-up modes occupy bits [0, n_sites) and spin-down modes bits
 * [n_sites, 2*n_sites), each ascending by site index. A basis ket is the
 * ordered product of creation operators with ascending mode index applied to
 * the vacuum. All amplitudes are real.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "hexrg/lattice.hpp"

namespace hexrg::fock {

enum class Spin { up, dn };

/// Occupation bit pattern over 2*n_sites modes.
struct FockState {
    std::uint32_t occ = 0;
    friend auto operator<=>(const FockState&, const FockState&) = default;
};

constexpr int mode_index(int n_sites, int site, Spin spin) {
    return spin == Spin::up ? site : n_sites + site;
}

/// Result of applying a single fermionic operator: the new state and the
/// anticommutation sign picked up along the way.
struct Hop {
    FockState state;
    int sign = 1;  ///< +1 or -1
};

/// c+_m on a mode. Empty result when the target mode is already occupied.
std::optional<Hop> create_mode(FockState state, int mode);
/// c_m on a mode. Empty result when the target mode is empty.
std::optional<Hop> annihilate_mode(FockState state, int mode);

std::optional<Hop> apply_creation(FockState state, int n_sites, int site, Spin spin);
std::optional<Hop> apply_annihilation(FockState state, int n_sites, int site, Spin spin);

/// Relabels the sites of all occupied modes (spin preserved) and restores the
/// canonical ascending mode order; sign is the parity of that reordering.
Hop apply_site_permutation(FockState state, int n_sites, const lattice::SymmetryOp& op);

/// Enumerated basis of one (n_up, n_dn) sector, ascending in bit-pattern value.
struct SectorBasis {
    int n_sites = 0;
    int n_up = 0;
    int n_dn = 0;
    std::vector<FockState> states;

    std::size_t size() const { return states.size(); }
    /// Ordinal of a state; throws std::out_of_range if it is not in the sector.
    std::size_t index_of(FockState state) const;
    /// Ordinal of a state, or empty if it is not in the sector.
    std::optional<std::size_t> find(FockState state) const;
};

/// Builds the sector basis. Throws std::invalid_argument on out-of-range counts.
SectorBasis enumerate_sector(int n_sites, int n_up, int n_dn);

/// Shared immutable basis, built once per (n_sites, n_up, n_dn). Thread-safe.
const SectorBasis& cached_sector(int n_sites, int n_up, int n_dn);

/// Map realizing c+_{site,spin} from one sector basis into another:
/// entry i holds (target index in `to`, sign), or target = -1 when the
/// operator annihilates that basis state.
struct CreationMap {
    std::vector<std::int32_t> target;
    std::vector<std::int8_t> sign;
};
CreationMap creation_map(const SectorBasis& from, const SectorBasis& to, int site, Spin spin);

}  // namespace hexrg::fock
