// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scaling.hpp
 * @brief Coupling sweeps across RG stages, crossing-point location, and
 *        one-parameter finite-size scaling collapse.
 *
 * All curves are functions of the bare stage-0 ratio U/t. A stage-s curve
 * represents a system of n_rep = 7^(s+1) sites; the collapse rescales the
 * abscissa as x = (U/t - uc) * n_rep^(1/(2 nu)).
 */

#pragma once

#include <optional>

#include "hexrg/rg.hpp"

namespace hexrg::scaling {

enum class Observable { e7, e1, e_avg, gap };

/// One observable of one represented size against the bare coupling ratio.
struct ScalingCurve {
    int stage = 0;
    double n_rep = 7.0;
    Observable observable = Observable::e7;
    std::vector<double> u;      ///< strictly increasing
    std::vector<double> value;  ///< same length as u
};

struct SweepRow {
    double u_over_t = 0.0;  ///< bare stage-0 ratio (grid value)
    int stage = 0;
    double n_rep = 7.0;
    double e7 = 0.0;
    double e1 = 0.0;
    double e_avg = 0.0;
    double gap = 0.0;
};

struct SweepOptions {
    double u_min = 8.0;
    double u_max = 18.0;
    int n_points = 41;
    int n_stages = 4;
    rg::FlowOptions flow;
    int jobs = 1;
};

/// Rows ordered by (grid index, stage). Failed grid points are recorded in
/// `warnings`; their missing stages are omitted from the rows.
struct SweepTable {
    std::vector<double> grid;
    int n_stages = 0;
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
};

/// Runs the flow at every grid point (t = 1, K = -U/4 at stage 0) and
/// tabulates per-stage observables. Grid points execute concurrently up to
/// `jobs`; the result is identical for any job count.
SweepTable sweep(const SweepOptions& options);

/// One curve per stage for the chosen observable.
std::vector<ScalingCurve> curves_from_table(const SweepTable& table, Observable observable);

/// Piecewise-linear crossing of two same-grid curves; of several sign
/// changes, the one nearest the grid midpoint. Empty when the curves do not
/// cross. Throws std::invalid_argument on mismatched grids.
std::optional<double> find_crossing(const ScalingCurve& a, const ScalingCurve& b);

struct PairCrossing {
    int stage_a = 0;
    int stage_b = 0;
    double n_a = 0.0;
    double n_b = 0.0;
    std::optional<double> u_cross;
};

/// Crossings of all curve pairs (ordered by ascending sizes).
std::vector<PairCrossing> all_crossings(const std::vector<ScalingCurve>& curves);

/// Default critical-coupling estimate: median of the crossings found for the
/// two largest-size pairs; falls back to the median of all found crossings.
std::optional<double> auto_uc(const std::vector<PairCrossing>& crossings);

struct CollapsePoint {
    double x = 0.0;
    double y = 0.0;
    int stage = 0;
    double n_rep = 0.0;
};

struct CollapseResult {
    double uc = 0.0;
    double nu = 1.0;
    double y_e = 0.0;
    double residual = 0.0;  ///< mean squared LOESS deviation / variance of y
    std::vector<CollapsePoint> points;
};

/// Rescales every point to (x, y) = ((u - uc) n^(1/(2 nu)), E / |u - uc|^y_e)
/// and scores the merged cloud against a local-linear regression with tricube
/// kernel and bandwidth = `bandwidth_frac` of the x-range. Throws
/// std::invalid_argument with fewer than 5 merged points. With a single input
/// curve the residual reduces to the regression's self-fit quality and is
/// insensitive to nu beyond the bandwidth effect of rescaling x.
CollapseResult collapse(const std::vector<ScalingCurve>& curves, double uc, double nu,
                        double y_e = 0.0, double bandwidth_frac = 0.1);

struct NuFit {
    double nu = 1.0;
    double residual = 0.0;
};

/// Golden-section minimization of the collapse residual over [nu_lo, nu_hi]
/// with y_e fixed; terminates at interval width 1e-3.
NuFit fit_nu(const std::vector<ScalingCurve>& curves, double uc, double nu_lo, double nu_hi,
             double y_e = 0.0, double bandwidth_frac = 0.1);

}  // namespace hexrg::scaling
