// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief Deterministic number formatting and the CSV schemas of the tool.
 *
 * All numeric fields are serialized with the shortest decimal representation
 * that round-trips to the same double. Data files carry no timestamps; every
 * file starts with `#` metadata lines, then the header row, and ends with a
 * single trailing newline.
 */

#pragma once

#include <string>
#include <vector>

#include "hexrg/scaling.hpp"

namespace hexrg::io {

/// Shortest round-trip decimal form; negative zero is canonicalized to "0".
std::string format_double(double value);

std::string format_int(long long value);

/// One `key=value` token list, keys in the given order.
std::string config_line(const std::vector<std::pair<std::string, std::string>>& entries);

/// Raised on malformed input files (maps to the usage exit code).
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSweepHeader = "u_over_t,stage,n_rep,e7,e1,e_avg,gap";
inline constexpr const char* kFlowHeader =
    "stage,n_rep,t,u,k,u_over_t,lambda,t_next,u_next,k_next,gap,ph_residual,e7,e1,e_avg";
inline constexpr const char* kCollapseHeader = "x,y,stage,n_rep";

/// Serializes a sweep table (metadata comments + header + rows).
std::string write_sweep_csv(const scaling::SweepTable& table,
                            const std::vector<std::pair<std::string, std::string>>& config);

/// Parses a sweep CSV produced by write_sweep_csv. Throws CsvError on any
/// deviation from the schema.
scaling::SweepTable read_sweep_csv(const std::string& text);

std::string write_flow_csv(const std::vector<rg::RGStage>& stages,
                           const std::vector<std::pair<std::string, std::string>>& config);

std::string write_collapse_csv(const scaling::CollapseResult& result,
                               const std::vector<std::pair<std::string, std::string>>& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hexrg::io
