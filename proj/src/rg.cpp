// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/rg.hpp"

#include <cmath>
#include <stdexcept>

namespace hexrg::rg {

using fock::Spin;

namespace {

// Weighted quadratic mean of the creation-operator matrix elements between
// two ensembles: lambda^2 = sum_ij w_i x_j <v_j| c+ |u_i>^2. For pure states
// this reduces to the absolute matrix element; for full-multiplet ensembles
// it is basis-independent within the multiplet.
double ensemble_overlap(const solver::BlockStateChoice& from, const solver::BlockStateChoice& to,
                        const fock::SectorBasis& basis_from, const fock::SectorBasis& basis_to,
                        int site, Spin spin) {
    const fock::CreationMap map = fock::creation_map(basis_from, basis_to, site, spin);
    double sum = 0.0;
    Eigen::VectorXd image(static_cast<int>(basis_to.size()));
    for (std::size_t i = 0; i < from.weights.size(); ++i) {
        image.setZero();
        for (std::size_t s = 0; s < basis_from.size(); ++s) {
            if (map.target[s] < 0) continue;
            image[map.target[s]] += map.sign[s] * from.members(static_cast<int>(s), static_cast<int>(i));
        }
        const Eigen::VectorXd elements = to.members.transpose() * image;
        for (std::size_t j = 0; j < to.weights.size(); ++j) {
            sum += from.weights[i] * to.weights[j] * elements[static_cast<int>(j)] *
                   elements[static_cast<int>(j)];
        }
    }
    return std::sqrt(sum);
}

}  // namespace

BlockSpectrum solve_block(const HubbardParams& params, const solver::BlockSolveOptions& options) {
    const lattice::LatticeBlock block = lattice::build_hex_block();
    BlockSpectrum spectrum;
    const solver::SectorSolution six = solver::solve_sector(block, params, 3, 3, options);
    const solver::SectorSolution seven_up = solver::solve_sector(block, params, 4, 3, options);
    const solver::SectorSolution seven_dn = solver::solve_sector(block, params, 3, 4, options);
    const solver::SectorSolution eight = solver::solve_sector(block, params, 4, 4, options);
    spectrum.e_six = six.energy;
    spectrum.e_seven_up = seven_up.energy;
    spectrum.e_seven_dn = seven_dn.energy;
    spectrum.e_eight = eight.energy;
    spectrum.c_six = six.choice;
    spectrum.c_seven_up = seven_up.choice;
    spectrum.c_seven_dn = seven_dn.choice;
    spectrum.c_eight = eight.choice;
    return spectrum;
}

LambdaResult compute_lambda(const BlockSpectrum& spectrum, const lattice::LatticeBlock& block,
                            int peripheral_site, Spin spin, double consistency_tol) {
    if (peripheral_site < 0 || peripheral_site >= 6) {
        throw std::out_of_range("compute_lambda: peripheral site out of range");
    }
    const int site = block.ring[peripheral_site];
    const int n = block.n_sites;
    const fock::SectorBasis& b33 = fock::cached_sector(n, 3, 3);
    const fock::SectorBasis& b43 = fock::cached_sector(n, 4, 3);
    const fock::SectorBasis& b34 = fock::cached_sector(n, 3, 4);
    const fock::SectorBasis& b44 = fock::cached_sector(n, 4, 4);

    LambdaResult result;
    if (spin == Spin::up) {
        result.value = ensemble_overlap(spectrum.c_six, spectrum.c_seven_up, b33, b43, site, spin);
        result.second = ensemble_overlap(spectrum.c_seven_dn, spectrum.c_eight, b34, b44, site, spin);
    } else {
        result.value = ensemble_overlap(spectrum.c_six, spectrum.c_seven_dn, b33, b34, site, spin);
        result.second = ensemble_overlap(spectrum.c_seven_up, spectrum.c_eight, b43, b44, site, spin);
    }
    result.diff = std::abs(result.value - result.second);
    result.consistent = result.diff <= consistency_tol;

    if (result.value > 1.0 + 1e-9) {
        throw std::logic_error("compute_lambda: overlap above 1");
    }
    result.value = std::min(result.value, 1.0);
    return result;
}

HubbardParams flow_step(const HubbardParams& params, const BlockSpectrum& spectrum, double lambda) {
    HubbardParams next;
    next.t = kInterBlockBonds * lambda * lambda * params.t;
    next.u = 2.0 * (spectrum.e_six - spectrum.e_seven_dn);
    next.k = 0.5 * (spectrum.e_six + spectrum.e_seven_dn);
    return next;
}

double charge_gap(const BlockSpectrum& spectrum) {
    return spectrum.e_six + spectrum.e_eight - 2.0 * std::min(spectrum.e_seven_up, spectrum.e_seven_dn);
}

FlowResult run_flow(const HubbardParams& params0, int n_stages, const FlowOptions& options) {
    if (n_stages < 1) throw std::invalid_argument("run_flow: n_stages must be >= 1");
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const fock::SectorBasis& b43 = fock::cached_sector(block.n_sites, 4, 3);
    const fock::SectorBasis& b34 = fock::cached_sector(block.n_sites, 3, 4);

    FlowResult result;
    HubbardParams params = params0;
    double n_rep = 7.0;
    for (int s = 0; s < n_stages; ++s) {
        RGStage stage;
        stage.stage = s;
        stage.params = params;
        stage.n_rep = n_rep;
        try {
            const BlockSpectrum spectrum = solve_block(params, options.block);
            const LambdaResult lambda = compute_lambda(spectrum, block, options.lambda_site,
                                                       options.lambda_spin, options.lambda_consistency_tol);
            stage.lambda = lambda.value;
            stage.lambda_second = lambda.second;
            stage.lambda_diff = lambda.diff;
            stage.lambda_consistent = lambda.consistent;
            stage.next = flow_step(params, spectrum, lambda.value);
            stage.gap = charge_gap(spectrum);
            stage.ph_residual = std::abs(spectrum.e_eight - spectrum.e_six);
            stage.ent = entanglement::record_from_choices(spectrum.c_seven_up, spectrum.c_seven_dn,
                                                          b43, b34, block);
        } catch (const solver::SolverError& err) {
            result.error = "stage " + std::to_string(s) + ": " + err.what();
            return result;
        }
        result.stages.push_back(stage);
        params = stage.next;
        n_rep *= 7.0;
    }
    return result;
}

}  // namespace hexrg::rg
