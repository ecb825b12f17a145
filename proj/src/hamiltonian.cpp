// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/hamiltonian.hpp"

#include <bit>
#include <stdexcept>

namespace hexrg::hamiltonian {

using fock::FockState;
using fock::Spin;

void SparseHamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    if (x.size() != dim) throw std::invalid_argument("SparseHamiltonian::apply: length mismatch");
    y.resize(dim);
    for (int i = 0; i < dim; ++i) y[i] = diag[i] * x[i];
    for (const Entry& e : offdiag) {
        y[e.row] += e.value * x[e.col];
        y[e.col] += e.value * x[e.row];
    }
}

Eigen::VectorXd SparseHamiltonian::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y;
    apply(x, y);
    return y;
}

SparseHamiltonian build_hubbard(int n_sites, std::span<const lattice::Bond> bonds,
                                const HubbardParams& params, const fock::SectorBasis& basis) {
    if (basis.n_sites != n_sites) {
        throw std::invalid_argument("build_hubbard: basis/bond-graph size mismatch");
    }
    SparseHamiltonian h;
    h.dim = static_cast<int>(basis.size());
    h.n_sites = n_sites;
    h.sector = {basis.n_up, basis.n_dn};
    h.diag.resize(basis.size());

    const std::uint32_t site_mask = (1u << n_sites) - 1u;
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const std::uint32_t up = basis.states[col].occ & site_mask;
        const std::uint32_t dn = (basis.states[col].occ >> n_sites) & site_mask;
        const int doubly = std::popcount(up & dn);
        const int empty = std::popcount(~(up | dn) & site_mask);
        const int singly = n_sites - doubly - empty;
        h.diag[col] = params.u * (doubly + empty - singly) / 4.0 + params.k * n_sites;
    }

    if (params.t != 0.0) {
        for (std::size_t col = 0; col < basis.size(); ++col) {
            const FockState state = basis.states[col];
            for (const lattice::Bond& bond : bonds) {
                for (const Spin spin : {Spin::up, Spin::dn}) {
                    // Both directed hops are generated; each unordered matrix
                    // entry appears once per direction and only the row < col
                    // copy is stored (its transpose is the other direction).
                    for (const auto& [to, from] : {std::pair{bond.a, bond.b}, std::pair{bond.b, bond.a}}) {
                        const auto removed = fock::apply_annihilation(state, n_sites, from, spin);
                        if (!removed) continue;
                        const auto added = fock::apply_creation(removed->state, n_sites, to, spin);
                        if (!added) continue;
                        const auto row = basis.find(added->state);
                        if (!row) throw std::logic_error("build_hubbard: hop left the sector");
                        if (static_cast<std::size_t>(*row) >= col) continue;
                        h.offdiag.push_back({static_cast<std::int32_t>(*row),
                                             static_cast<std::int32_t>(col),
                                             -params.t * removed->sign * added->sign});
                    }
                }
            }
        }
    }
    return h;
}

SparseHamiltonian build_hubbard(const lattice::LatticeBlock& block, const HubbardParams& params,
                                const fock::SectorBasis& basis) {
    return build_hubbard(block.n_sites, block.bonds, params, basis);
}

Eigen::MatrixXd to_dense(const SparseHamiltonian& h) {
    if (h.dim > 5000) throw std::invalid_argument("to_dense: dimension above the dense mirror limit");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(h.dim, h.dim);
    for (int i = 0; i < h.dim; ++i) m(i, i) = h.diag[i];
    for (const SparseHamiltonian::Entry& e : h.offdiag) {
        m(e.row, e.col) += e.value;
        m(e.col, e.row) += e.value;
    }
    return m;
}

}  // namespace hexrg::hamiltonian
