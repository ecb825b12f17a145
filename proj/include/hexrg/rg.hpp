// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rg.hpp
 * @brief Block renormalization map for the hexagonal block: four-sector solve,
 *        hopping overlap lambda, coupling-flow step, multi-stage iteration,
 *        and the charge gap.
 */

#pragma once

#include <optional>
#include <string>

#include "hexrg/entanglement.hpp"

namespace hexrg::rg {

using hamiltonian::HubbardParams;

/// Each pair of adjacent hexagonal blocks on the triangular lattice is
/// bridged by 3 lattice bonds; this multiplicity is the constant factor in
/// the hopping renormalization t' = 3 lambda^2 t.
inline constexpr double kInterBlockBonds = 3.0;

/// Ground data of the four electron-number sectors of one block.
/// e_six = sector (3,3), e_seven_up = (4,3), e_seven_dn = (3,4),
/// e_eight = (4,4). Spin-flip symmetry makes e_seven_up and e_seven_dn agree
/// to solver accuracy.
struct BlockSpectrum {
    double e_six = 0.0;
    double e_seven_up = 0.0;
    double e_seven_dn = 0.0;
    double e_eight = 0.0;
    solver::BlockStateChoice c_six;
    solver::BlockStateChoice c_seven_up;
    solver::BlockStateChoice c_seven_dn;
    solver::BlockStateChoice c_eight;
};

/// Overlap amplitude of a peripheral-site creation operator between the
/// chosen block states. `value` is the six/seven-electron element; `second`
/// is the seven/eight-electron element kept as a consistency diagnostic.
struct LambdaResult {
    double value = 0.0;
    double second = 0.0;
    double diff = 0.0;
    bool consistent = true;
};

struct FlowOptions {
    solver::BlockSolveOptions block;
    int lambda_site = 0;                    ///< ring position (0 = site 1)
    fock::Spin lambda_spin = fock::Spin::up;
    double lambda_consistency_tol = 0.05;
};

/// One step of the flow. `params` are the couplings BEFORE this stage's map,
/// `next` the couplings after it; `n_rep` is the represented system size
/// 7^(stage+1).
struct RGStage {
    int stage = 0;
    HubbardParams params;
    double lambda = 0.0;
    double lambda_second = 0.0;
    double lambda_diff = 0.0;
    bool lambda_consistent = true;
    HubbardParams next;
    double gap = 0.0;
    double ph_residual = 0.0;  ///< |e_eight - e_six|, truncation diagnostic
    double n_rep = 7.0;
    entanglement::EntanglementRecord ent;
};

struct FlowResult {
    std::vector<RGStage> stages;
    std::string error;  ///< empty when all requested stages completed

    bool complete() const { return error.empty(); }
};

/// Solves the four sectors at `params` and applies the state-selection rule.
BlockSpectrum solve_block(const HubbardParams& params, const solver::BlockSolveOptions& options = {});

/// Both matrix elements of the overlap definition, on ensembles via the
/// weight-quadratic mean. Flags (but tolerates) disagreement above
/// `consistency_tol`; the first element is the value used by the flow.
LambdaResult compute_lambda(const BlockSpectrum& spectrum, const lattice::LatticeBlock& block,
                            int peripheral_site = 0, fock::Spin spin = fock::Spin::up,
                            double consistency_tol = 0.05);

/// t' = 3 lambda^2 t,  u' = 2 (e_six - e_seven_dn),  k' = (e_six + e_seven_dn) / 2.
HubbardParams flow_step(const HubbardParams& params, const BlockSpectrum& spectrum, double lambda);

/// E(N-1) + E(N+1) - 2 E(N) at half filling.
double charge_gap(const BlockSpectrum& spectrum);

/// Iterates the map for `n_stages` stages starting from `params0`. Aborts
/// cleanly on a solver failure, returning the completed stages plus the error.
FlowResult run_flow(const HubbardParams& params0, int n_stages, const FlowOptions& options = {});

}  // namespace hexrg::rg
