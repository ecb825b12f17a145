// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace hexrg::oracle {

namespace {

// Local operator arithmetic on raw patterns, written out independently of the
// fock module. Up modes are bits [0, n), down modes bits [n, 2n).

int parity_below(unsigned pattern, int mode) {
    return std::popcount(pattern & ((1u << mode) - 1u)) % 2 == 0 ? 1 : -1;
}

}  // namespace

Eigen::MatrixXd dense_hamiltonian(const FullSystem& system, const hamiltonian::HubbardParams& params) {
    const int n = system.n_sites;
    if (n < 1 || n > 5) throw std::invalid_argument("dense_hamiltonian: n_sites must be 1..5");
    const int dim = 1 << (2 * n);
    const unsigned site_mask = (1u << n) - 1u;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const unsigned up = static_cast<unsigned>(col) & site_mask;
        const unsigned dn = (static_cast<unsigned>(col) >> n) & site_mask;
        const int d = std::popcount(up & dn);
        const int e = std::popcount(~(up | dn) & site_mask);
        const int s = n - d - e;
        h(col, col) = params.u * (d + e - s) / 4.0 + params.k * n;

        for (const lattice::Bond& bond : system.bonds) {
            for (int spin_offset : {0, n}) {
                for (const auto& [to, from] : {std::pair{bond.a, bond.b}, std::pair{bond.b, bond.a}}) {
                    const int m_from = from + spin_offset;
                    const int m_to = to + spin_offset;
                    const unsigned pattern = static_cast<unsigned>(col);
                    if (!(pattern & (1u << m_from)) || (pattern & (1u << m_to))) continue;
                    const int sign_ann = parity_below(pattern, m_from);
                    const unsigned removed = pattern & ~(1u << m_from);
                    const int sign_cre = parity_below(removed, m_to);
                    const unsigned row = removed | (1u << m_to);
                    h(static_cast<int>(row), col) += -params.t * sign_ann * sign_cre;
                }
            }
        }
    }
    return h;
}

std::vector<int> sector_indices(int n_sites, int n_up, int n_dn) {
    const int dim = 1 << (2 * n_sites);
    const unsigned site_mask = (1u << n_sites) - 1u;
    std::vector<int> indices;
    for (int i = 0; i < dim; ++i) {
        const unsigned up = static_cast<unsigned>(i) & site_mask;
        const unsigned dn = (static_cast<unsigned>(i) >> n_sites) & site_mask;
        if (std::popcount(up) == n_up && std::popcount(dn) == n_dn) indices.push_back(i);
    }
    return indices;
}

SectorGround sector_ground(const FullSystem& system, const hamiltonian::HubbardParams& params,
                           int n_up, int n_dn) {
    const Eigen::MatrixXd full = dense_hamiltonian(system, params);
    const std::vector<int> indices = sector_indices(system.n_sites, n_up, n_dn);
    const int m = static_cast<int>(indices.size());
    if (m == 0) throw std::invalid_argument("sector_ground: empty sector");

    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) sub(i, j) = full(indices[i], indices[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);

    SectorGround ground;
    ground.energy = es.eigenvalues()[0];
    const double tol = 1e-9 * std::max(1.0, std::abs(ground.energy));
    int mult = 1;
    while (mult < m && std::abs(es.eigenvalues()[mult] - ground.energy) <= tol) ++mult;
    ground.multiplicity = mult;
    ground.multiplet = Eigen::MatrixXd::Zero(full.rows(), mult);
    for (int k = 0; k < mult; ++k) {
        for (int i = 0; i < m; ++i) ground.multiplet(indices[i], k) = es.eigenvectors()(i, k);
    }
    return ground;
}

Eigen::Matrix4d site_density_matrix(const Eigen::VectorXd& state, int n_sites, int site) {
    const int dim = static_cast<int>(state.size());
    if (dim != (1 << (2 * n_sites))) throw std::invalid_argument("site_density_matrix: bad state length");
    const int m_up = site;
    const int m_dn = n_sites + site;

    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    // rho(s, s') = sum_rest sign(s, rest) sign(s', rest) psi(s, rest) psi(s', rest),
    // where sign is the fermionic reordering that pulls the site's two modes
    // (up first, then down) to the front of the canonical mode order.
    for (int pattern = 0; pattern < dim; ++pattern) {
        if (state[pattern] == 0.0) continue;
        const unsigned p = static_cast<unsigned>(pattern);
        const bool has_up = p & (1u << m_up);
        const bool has_dn = p & (1u << m_dn);
        const int local = (has_up ? 1 : 0) + (has_dn ? 2 : 0);
        const unsigned rest = p & ~(1u << m_up) & ~(1u << m_dn);

        int sign = 1;
        if (has_up) sign *= parity_below(rest, m_up);
        if (has_dn) sign *= parity_below(rest, m_dn);

        for (int other_local = 0; other_local < 4; ++other_local) {
            unsigned other = rest;
            if (other_local & 1) other |= 1u << m_up;
            if (other_local & 2) other |= 1u << m_dn;
            if (state[static_cast<int>(other)] == 0.0) continue;
            int other_sign = 1;
            if (other_local & 1) other_sign *= parity_below(rest, m_up);
            if (other_local & 2) other_sign *= parity_below(rest, m_dn);
            rho(local, other_local) += sign * other_sign * state[pattern] * state[static_cast<int>(other)];
        }
    }
    return rho;
}

Eigen::Matrix4d site_density_matrix(const Eigen::MatrixXd& members, const std::vector<double>& weights,
                                    int n_sites, int site) {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (std::size_t k = 0; k < weights.size(); ++k) {
        rho += weights[k] * site_density_matrix(members.col(static_cast<int>(k)), n_sites, site);
    }
    return rho;
}

double entropy_bits(const Eigen::Matrix4d& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double p = es.eigenvalues()[i];
        if (p > 1e-15) s -= p * std::log2(p);
    }
    return s;
}

}  // namespace hexrg::oracle
