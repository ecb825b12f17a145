// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "hexrg/entanglement.hpp"
#include "hexrg/io.hpp"
#include "hexrg/oracle.hpp"
#include "hexrg/rg.hpp"

namespace hexrg::selftest {

namespace {

using hamiltonian::HubbardParams;

// Matrix realization of c_m / c+_m over all patterns of a small system,
// with an optional broken sign rule to prove the check has teeth.
Eigen::MatrixXd mode_operator(int n_sites, int mode, bool dagger, Fault fault) {
    const int dim = 1 << (2 * n_sites);
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const fock::FockState state{static_cast<std::uint32_t>(col)};
        const auto hop = dagger ? fock::create_mode(state, mode) : fock::annihilate_mode(state, mode);
        if (!hop) continue;
        const int sign = (fault == Fault::sign_convention) ? 1 : hop->sign;
        op(static_cast<int>(hop->state.occ), col) = sign;
    }
    return op;
}

CheckResult check_anticommutation(Fault fault) {
    CheckResult check{"fermion_anticommutation", true, ""};
    double worst = 0.0;
    for (int n_sites : {2, 3}) {
        const int modes = 2 * n_sites;
        const int dim = 1 << modes;
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
        for (int m = 0; m < modes; ++m) {
            const Eigen::MatrixXd cm = mode_operator(n_sites, m, false, fault);
            for (int mp = 0; mp < modes; ++mp) {
                const Eigen::MatrixXd cp = mode_operator(n_sites, mp, true, fault);
                Eigen::MatrixXd anti = cm * cp + cp * cm;
                if (m == mp) anti -= id;
                worst = std::max(worst, anti.cwiseAbs().maxCoeff());
            }
        }
    }
    check.pass = worst == 0.0;
    check.detail = "max |{c, c+} - delta| = " + io::format_double(worst) + " on 2- and 3-site systems";
    return check;
}

CheckResult check_hermiticity() {
    CheckResult check{"hamiltonian_hermiticity", true, ""};
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const fock::SectorBasis& basis = fock::cached_sector(7, 4, 3);
    const auto h = build_hubbard(block, HubbardParams{1.0, 12.5, -3.125}, basis);
    const Eigen::MatrixXd dense = hamiltonian::to_dense(h);
    const double worst = (dense - dense.transpose()).cwiseAbs().maxCoeff();
    check.pass = worst == 0.0;
    check.detail = "max |H - H^T| = " + io::format_double(worst) + " in sector (4,3)";
    return check;
}

CheckResult check_symmetry_commutation() {
    CheckResult check{"c6v_commutation", true, ""};
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const auto ops = lattice::c6v_operations(block);
    const fock::SectorBasis& basis = fock::cached_sector(7, 2, 1);
    const auto h = build_hubbard(block, HubbardParams{1.0, 6.0, -1.5}, basis);
    const Eigen::MatrixXd dense = hamiltonian::to_dense(h);
    double worst = 0.0;
    for (const lattice::SymmetryOp& op : ops) {
        const Eigen::MatrixXd r = solver::symmetry_matrix(op, basis);
        worst = std::max(worst, (dense * r - r * dense).cwiseAbs().maxCoeff());
    }
    check.pass = worst <= 1e-12;
    check.detail = "max |[H, R]| = " + io::format_double(worst) + " over all 12 operations";
    return check;
}

CheckResult check_lambda(Fault fault) {
    CheckResult check{"lambda_range_uniformity", true, ""};
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const rg::BlockSpectrum spectrum = rg::solve_block(HubbardParams{1.0, 12.5, -3.125});
    const double reference = rg::compute_lambda(spectrum, block, 0, fock::Spin::up).value;
    double spread = 0.0;
    bool in_range = reference >= 0.0 && reference <= 1.0;
    for (int site = 1; site < 6; ++site) {
        const double lambda = rg::compute_lambda(spectrum, block, site, fock::Spin::up).value;
        spread = std::max(spread, std::abs(lambda - reference));
        in_range = in_range && lambda >= 0.0 && lambda <= 1.0;
    }
    (void)fault;
    check.pass = in_range && spread <= 1e-8;
    check.detail = "lambda = " + io::format_double(reference) +
                   ", peripheral spread = " + io::format_double(spread);
    return check;
}

CheckResult check_spin_flip() {
    CheckResult check{"spin_flip_energy_symmetry", true, ""};
    const lattice::LatticeBlock block = lattice::build_hex_block();
    const HubbardParams params{1.0, 9.0, -2.25};
    const double e_up = solver::solve_sector(block, params, 4, 3).energy;
    const double e_dn = solver::solve_sector(block, params, 3, 4).energy;
    const double diff = std::abs(e_up - e_dn) / std::max(1.0, std::abs(e_up));
    check.pass = diff <= 1e-9;
    check.detail = "relative |E(4,3) - E(3,4)| = " + io::format_double(diff);
    return check;
}

CheckResult check_rdm_normalization() {
    CheckResult check{"site_rdm_normalization", true, ""};
    double worst = 0.0;
    for (const double u : {0.0, 4.0, 12.5, 30.0}) {
        const auto record = entanglement::entanglement_profile(HubbardParams{1.0, u, -u / 4.0});
        for (const entanglement::SiteRDM& rdm : {record.rdm7, record.rdm1}) {
            worst = std::max(worst, std::abs(rdm.sum() - 1.0));
            worst = std::max(worst, std::abs(rdm.p_up - rdm.p_dn));
        }
    }
    check.pass = worst <= 1e-12;
    check.detail = "max |sum p - 1| and |p_up - p_dn| = " + io::format_double(worst);
    return check;
}

CheckResult check_entropy_values() {
    CheckResult check{"entropy_reference_values", true, ""};
    const double e_max = entanglement::entropy_bits({0.25, 0.25, 0.25, 0.25});
    const double e_half = entanglement::entropy_bits({0.0, 0.5, 0.5, 0.0});
    const double e_pure = entanglement::entropy_bits({1.0, 0.0, 0.0, 0.0});
    const double worst =
        std::max({std::abs(e_max - 2.0), std::abs(e_half - 1.0), std::abs(e_pure)});
    check.pass = worst <= 1e-12;
    check.detail = "entropies (2, 1, 0) reproduced to " + io::format_double(worst);
    return check;
}

CheckResult check_small_system_oracle() {
    CheckResult check{"rdm_small_system_oracle", true, ""};
    double worst = 0.0;
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> tdist(0.5, 2.0), udist(-4.0, 12.0);

    for (int trial = 0; trial < 3; ++trial) {
        for (const auto& [n, bonds] : std::vector<std::pair<int, std::vector<lattice::Bond>>>{
                 {2, {{0, 1}}},
                 {3, {{0, 1}, {1, 2}, {0, 2}}},
                 {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}}) {
            const HubbardParams params{tdist(rng), udist(rng), 0.0};
            const int up = (n + 1) / 2, dn = n - up;
            const oracle::FullSystem system{n, bonds};
            const auto ground_up = oracle::sector_ground(system, params, up, dn);
            const auto ground_dn = oracle::sector_ground(system, params, dn, up);

            // Pipeline side: sector basis, sparse build, dense solve, buckets.
            const fock::SectorBasis& basis_up = fock::cached_sector(n, up, dn);
            const fock::SectorBasis& basis_dn = fock::cached_sector(n, dn, up);
            const auto h_up = build_hubbard(n, bonds, params, basis_up);
            solver::SolveOptions dense_opts;
            dense_opts.method = solver::SolveMethod::dense;
            const auto result = solver::lowest_eigenpairs(h_up, 1, dense_opts);
            worst = std::max(worst, std::abs(result.energies[0] - ground_up.energy));

            const std::vector<double> w_up(ground_up.multiplicity, 1.0 / ground_up.multiplicity);
            const std::vector<double> w_dn(ground_dn.multiplicity, 1.0 / ground_dn.multiplicity);
            for (int site = 0; site < n; ++site) {
                const Eigen::Matrix4d rho_up =
                    oracle::site_density_matrix(ground_up.multiplet, w_up, n, site);
                const Eigen::Matrix4d rho_dn =
                    oracle::site_density_matrix(ground_dn.multiplet, w_dn, n, site);
                const Eigen::Matrix4d rho = 0.5 * (rho_up + rho_dn);
                Eigen::Matrix4d off = rho;
                off.diagonal().setZero();
                worst = std::max(worst, off.cwiseAbs().maxCoeff());

                solver::BlockStateChoice cu, cd;
                cu.sector = {up, dn};
                cu.degeneracy = ground_up.multiplicity;
                cu.weights = w_up;
                cu.members = Eigen::MatrixXd(basis_up.size(), ground_up.multiplicity);
                for (std::size_t s = 0; s < basis_up.size(); ++s) {
                    for (int m = 0; m < ground_up.multiplicity; ++m) {
                        cu.members(static_cast<int>(s), m) =
                            ground_up.multiplet(static_cast<int>(basis_up.states[s].occ), m);
                    }
                }
                cd.sector = {dn, up};
                cd.degeneracy = ground_dn.multiplicity;
                cd.weights = w_dn;
                cd.members = Eigen::MatrixXd(basis_dn.size(), ground_dn.multiplicity);
                for (std::size_t s = 0; s < basis_dn.size(); ++s) {
                    for (int m = 0; m < ground_dn.multiplicity; ++m) {
                        cd.members(static_cast<int>(s), m) =
                            ground_dn.multiplet(static_cast<int>(basis_dn.states[s].occ), m);
                    }
                }
                const auto rdm = entanglement::site_rdm(cu, cd, basis_up, basis_dn, site);
                worst = std::max(worst, std::abs(rdm.p_empty - rho(0, 0)));
                worst = std::max(worst, std::abs(rdm.p_up - rho(1, 1)));
                worst = std::max(worst, std::abs(rdm.p_dn - rho(2, 2)));
                worst = std::max(worst, std::abs(rdm.p_double - rho(3, 3)));
            }
        }
    }
    check.pass = worst <= 1e-10;
    check.detail = "max pipeline/brute-force deviation = " + io::format_double(worst);
    return check;
}

}  // namespace

Report run(Fault fault) {
    Report report;
    report.checks.push_back(check_anticommutation(fault));
    report.checks.push_back(check_hermiticity());
    report.checks.push_back(check_symmetry_commutation());
    report.checks.push_back(check_lambda(fault));
    report.checks.push_back(check_spin_flip());
    report.checks.push_back(check_rdm_normalization());
    report.checks.push_back(check_entropy_values());
    report.checks.push_back(check_small_system_oracle());
    report.all_pass = true;
    for (const CheckResult& c : report.checks) report.all_pass = report.all_pass && c.pass;
    return report;
}

}  // namespace hexrg::selftest
