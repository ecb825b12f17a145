// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hexrg::scaling {

SweepTable sweep(const SweepOptions& options) {
    if (!(options.u_min < options.u_max)) throw std::invalid_argument("sweep: u_min must be < u_max");
    if (options.n_points < 2) throw std::invalid_argument("sweep: need at least 2 grid points");
    if (options.n_stages < 1) throw std::invalid_argument("sweep: need at least 1 stage");

    SweepTable table;
    table.n_stages = options.n_stages;
    table.grid.resize(options.n_points);
    const double step = (options.u_max - options.u_min) / (options.n_points - 1);
    for (int i = 0; i < options.n_points; ++i) table.grid[i] = options.u_min + i * step;

    std::vector<rg::FlowResult> flows(options.n_points);
    std::atomic<int> cursor{0};
    const auto worker = [&]() {
        for (int i = cursor.fetch_add(1); i < options.n_points; i = cursor.fetch_add(1)) {
            const double u = table.grid[i];
            const hamiltonian::HubbardParams params0{1.0, u, -u / 4.0};
            flows[i] = rg::run_flow(params0, options.n_stages, options.flow);
        }
    };
    const int jobs = std::clamp(options.jobs, 1, options.n_points);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    for (int i = 0; i < options.n_points; ++i) {
        for (const rg::RGStage& stage : flows[i].stages) {
            table.rows.push_back(SweepRow{table.grid[i], stage.stage, stage.n_rep, stage.ent.e7,
                                          stage.ent.e1, stage.ent.e_avg, stage.gap});
        }
        if (!flows[i].complete()) {
            table.warnings.push_back("u_over_t=" + std::to_string(table.grid[i]) + ": " +
                                     flows[i].error);
        }
    }
    return table;
}

std::vector<ScalingCurve> curves_from_table(const SweepTable& table, Observable observable) {
    std::vector<ScalingCurve> curves(table.n_stages);
    for (int s = 0; s < table.n_stages; ++s) {
        curves[s].stage = s;
        curves[s].observable = observable;
    }
    for (int s = 0; s < table.n_stages; ++s) curves[s].n_rep = std::pow(7.0, s + 1);
    for (const SweepRow& row : table.rows) {
        ScalingCurve& curve = curves.at(row.stage);
        curve.u.push_back(row.u_over_t);
        switch (observable) {
            case Observable::e7: curve.value.push_back(row.e7); break;
            case Observable::e1: curve.value.push_back(row.e1); break;
            case Observable::e_avg: curve.value.push_back(row.e_avg); break;
            case Observable::gap: curve.value.push_back(row.gap); break;
        }
    }
    return curves;
}

std::optional<double> find_crossing(const ScalingCurve& a, const ScalingCurve& b) {
    if (a.u.size() != b.u.size() || !std::equal(a.u.begin(), a.u.end(), b.u.begin())) {
        throw std::invalid_argument("find_crossing: curves do not share a grid");
    }
    if (a.u.size() < 2) return std::nullopt;

    std::vector<double> roots;
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        const double d0 = a.value[i] - b.value[i];
        if (d0 == 0.0) {
            roots.push_back(a.u[i]);
            continue;
        }
        if (i + 1 == a.u.size()) break;
        const double d1 = a.value[i + 1] - b.value[i + 1];
        if (d0 * d1 < 0.0) {
            roots.push_back(a.u[i] + d0 * (a.u[i + 1] - a.u[i]) / (d0 - d1));
        }
    }
    if (roots.empty()) return std::nullopt;
    const double mid = 0.5 * (a.u.front() + a.u.back());
    return *std::min_element(roots.begin(), roots.end(), [mid](double x, double y) {
        const double dx = std::abs(x - mid), dy = std::abs(y - mid);
        return dx < dy || (dx == dy && x < y);
    });
}

std::vector<PairCrossing> all_crossings(const std::vector<ScalingCurve>& curves) {
    std::vector<const ScalingCurve*> sorted;
    for (const ScalingCurve& c : curves) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(),
              [](const ScalingCurve* a, const ScalingCurve* b) { return a->n_rep < b->n_rep; });
    std::vector<PairCrossing> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            PairCrossing pc;
            pc.stage_a = sorted[i]->stage;
            pc.stage_b = sorted[j]->stage;
            pc.n_a = sorted[i]->n_rep;
            pc.n_b = sorted[j]->n_rep;
            pc.u_cross = find_crossing(*sorted[i], *sorted[j]);
            out.push_back(pc);
        }
    }
    return out;
}

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::optional<double> auto_uc(const std::vector<PairCrossing>& crossings) {
    // Pairs ranked by size, largest first; the smallest-size curve carries the
    // strongest finite-size drift, so the estimate leans on the biggest pairs.
    std::vector<PairCrossing> ranked = crossings;
    std::sort(ranked.begin(), ranked.end(), [](const PairCrossing& a, const PairCrossing& b) {
        const double amin = std::min(a.n_a, a.n_b), bmin = std::min(b.n_a, b.n_b);
        if (amin != bmin) return amin > bmin;
        return std::max(a.n_a, a.n_b) > std::max(b.n_a, b.n_b);
    });
    std::vector<double> top;
    for (std::size_t i = 0; i < ranked.size() && i < 2; ++i) {
        if (ranked[i].u_cross) top.push_back(*ranked[i].u_cross);
    }
    if (!top.empty()) return median(top);
    std::vector<double> any;
    for (const PairCrossing& pc : crossings) {
        if (pc.u_cross) any.push_back(*pc.u_cross);
    }
    if (!any.empty()) return median(any);
    return std::nullopt;
}

CollapseResult collapse(const std::vector<ScalingCurve>& curves, double uc, double nu, double y_e,
                        double bandwidth_frac) {
    if (!(nu > 0.0)) throw std::invalid_argument("collapse: nu must be positive");
    if (curves.empty()) throw std::invalid_argument("collapse: no curves");

    CollapseResult result;
    result.uc = uc;
    result.nu = nu;
    result.y_e = y_e;
    for (const ScalingCurve& curve : curves) {
        const double scale = std::pow(curve.n_rep, 1.0 / (2.0 * nu));
        for (std::size_t i = 0; i < curve.u.size(); ++i) {
            const double q = curve.u[i] - uc;
            if (y_e != 0.0 && q == 0.0) continue;  // ordinate undefined
            const double y = (y_e == 0.0) ? curve.value[i] : curve.value[i] / std::pow(std::abs(q), y_e);
            result.points.push_back(CollapsePoint{q * scale, y, curve.stage, curve.n_rep});
        }
    }
    const std::size_t n = result.points.size();
    if (n < 5) throw std::invalid_argument("collapse: fewer than 5 merged points");

    double x_lo = result.points.front().x, x_hi = result.points.front().x;
    double y_mean = 0.0;
    for (const CollapsePoint& p : result.points) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_mean += p.y;
    }
    y_mean /= static_cast<double>(n);
    double y_var = 0.0;
    for (const CollapsePoint& p : result.points) y_var += (p.y - y_mean) * (p.y - y_mean);
    y_var /= static_cast<double>(n);

    const double h = std::max(bandwidth_frac * (x_hi - x_lo), 1e-300);
    // Local-linear regression with a tricube kernel, evaluated at every point.
    double mse = 0.0;
    for (const CollapsePoint& pi : result.points) {
        double s0 = 0, s1 = 0, s2 = 0, b0 = 0, b1 = 0;
        for (const CollapsePoint& pj : result.points) {
            const double d = std::abs(pj.x - pi.x) / h;
            if (d >= 1.0) continue;
            const double w = std::pow(1.0 - d * d * d, 3);
            const double dx = pj.x - pi.x;
            s0 += w;
            s1 += w * dx;
            s2 += w * dx * dx;
            b0 += w * pj.y;
            b1 += w * dx * pj.y;
        }
        const double det = s0 * s2 - s1 * s1;
        const double fit = (det > 1e-12 * std::max(s0 * s2, s1 * s1)) ? (s2 * b0 - s1 * b1) / det
                                                                      : b0 / s0;
        mse += (pi.y - fit) * (pi.y - fit);
    }
    mse /= static_cast<double>(n);
    result.residual = (mse == 0.0) ? 0.0 : mse / y_var;
    return result;
}

NuFit fit_nu(const std::vector<ScalingCurve>& curves, double uc, double nu_lo, double nu_hi,
             double y_e, double bandwidth_frac) {
    if (!(0.0 < nu_lo && nu_lo < nu_hi)) throw std::invalid_argument("fit_nu: bad interval");
    const auto score = [&](double nu) { return collapse(curves, uc, nu, y_e, bandwidth_frac).residual; };

    constexpr double kInvPhi = 0.6180339887498949;
    double a = nu_lo, b = nu_hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = score(c), fd = score(d);
    while (b - a > 1e-3) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = score(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = score(d);
        }
    }
    const double nu_star = 0.5 * (a + b);
    return NuFit{nu_star, score(nu_star)};
}

}  // namespace hexrg::scaling
