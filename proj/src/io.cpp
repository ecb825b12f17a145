// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#include "hexrg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hexrg/version.hpp"

namespace hexrg::io {

std::string format_double(double value) {
    if (value == 0.0) return "0";  // covers negative zero
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string format_int(long long value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_int: conversion failed");
    return std::string(buf, ptr);
}

std::string config_line(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::string out;
    for (const auto& [key, value] : entries) {
        if (!out.empty()) out += ' ';
        out += key + '=' + value;
    }
    return out;
}

namespace {

std::string metadata_block(const std::vector<std::pair<std::string, std::string>>& config,
                           const char* kind) {
    std::string out;
    out += std::string("# hexrg ") + kind + " v" HEXRG_VERSION "\n";
    out += "# config: " + config_line(config) + "\n";
    return out;
}

double parse_double(std::string_view token, const char* what) {
    double value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw CsvError(std::string("malformed ") + what + " field: '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::string write_sweep_csv(const scaling::SweepTable& table,
                            const std::vector<std::pair<std::string, std::string>>& config) {
    std::string out = metadata_block(config, "sweep");
    out += "# warnings: " + format_int(static_cast<long long>(table.warnings.size())) + "\n";
    for (const std::string& w : table.warnings) out += "# warning: " + w + "\n";
    out += kSweepHeader;
    out += '\n';
    for (const scaling::SweepRow& row : table.rows) {
        out += format_double(row.u_over_t) + ',' + format_int(row.stage) + ',' +
               format_double(row.n_rep) + ',' + format_double(row.e7) + ',' + format_double(row.e1) +
               ',' + format_double(row.e_avg) + ',' + format_double(row.gap) + '\n';
    }
    return out;
}

scaling::SweepTable read_sweep_csv(const std::string& text) {
    scaling::SweepTable table;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kSweepHeader) throw CsvError("unexpected sweep CSV header: '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 7) throw CsvError("sweep CSV row does not have 7 fields: '" + line + "'");
        scaling::SweepRow row;
        row.u_over_t = parse_double(fields[0], "u_over_t");
        const double stage = parse_double(fields[1], "stage");
        if (stage < 0.0 || stage != std::floor(stage)) {
            throw CsvError("sweep CSV stage is not a nonnegative integer: '" + std::string(fields[1]) + "'");
        }
        row.stage = static_cast<int>(stage);
        row.n_rep = parse_double(fields[2], "n_rep");
        row.e7 = parse_double(fields[3], "e7");
        row.e1 = parse_double(fields[4], "e1");
        row.e_avg = parse_double(fields[5], "e_avg");
        row.gap = parse_double(fields[6], "gap");
        table.rows.push_back(row);
        table.n_stages = std::max(table.n_stages, row.stage + 1);
        if (table.grid.empty() || table.grid.back() != row.u_over_t) {
            if (!table.grid.empty() && row.u_over_t < table.grid.back()) {
                throw CsvError("sweep CSV rows are not ordered by u_over_t");
            }
            table.grid.push_back(row.u_over_t);
        }
    }
    if (!header_seen) throw CsvError("sweep CSV has no header row");
    if (table.rows.empty()) throw CsvError("sweep CSV has no data rows");
    return table;
}

std::string write_flow_csv(const std::vector<rg::RGStage>& stages,
                           const std::vector<std::pair<std::string, std::string>>& config) {
    std::string out = metadata_block(config, "flow");
    out += kFlowHeader;
    out += '\n';
    for (const rg::RGStage& s : stages) {
        const double ratio = s.params.u / s.params.t;
        out += format_int(s.stage) + ',' + format_double(s.n_rep) + ',' + format_double(s.params.t) +
               ',' + format_double(s.params.u) + ',' + format_double(s.params.k) + ',' +
               format_double(ratio) + ',' + format_double(s.lambda) + ',' + format_double(s.next.t) +
               ',' + format_double(s.next.u) + ',' + format_double(s.next.k) + ',' +
               format_double(s.gap) + ',' + format_double(s.ph_residual) + ',' +
               format_double(s.ent.e7) + ',' + format_double(s.ent.e1) + ',' +
               format_double(s.ent.e_avg) + '\n';
    }
    return out;
}

std::string write_collapse_csv(const scaling::CollapseResult& result,
                               const std::vector<std::pair<std::string, std::string>>& config) {
    std::string out = metadata_block(config, "collapse");
    out += kCollapseHeader;
    out += '\n';
    for (const scaling::CollapsePoint& p : result.points) {
        out += format_double(p.x) + ',' + format_double(p.y) + ',' + format_int(p.stage) + ',' +
               format_double(p.n_rep) + '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace hexrg::io
