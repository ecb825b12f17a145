// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hexrg_main.cpp
 * @brief hexrg command-line front end: flow, sweep, collapse, selftest.
 *
 * Exit codes: 0 success, 1 selftest failure, 2 usage error, 3 numerical
 * failure, 4 analysis not applicable (no crossings under --auto-uc).
 */

#include <algorithm>
#include <chrono>
#include <fstream>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hexrg/io.hpp"
#include "hexrg/selftest.hpp"
#include "hexrg/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using hexrg::hamiltonian::HubbardParams;
namespace io = hexrg::io;
namespace rgm = hexrg::rg;
namespace sc = hexrg::scaling;

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNotApplicable = 4;

using ConfigMap = std::vector<std::pair<std::string, std::string>>;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json metadata_json(const ConfigMap& config, bool with_timestamp) {
    json meta;
    meta["version"] = HEXRG_VERSION;
    json cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    meta["config"] = cfg;
    if (with_timestamp) meta["timestamp"] = iso_timestamp();
    return meta;
}

json rdm_json(const hexrg::entanglement::SiteRDM& rdm) {
    return json{{"p_empty", rdm.p_empty}, {"p_up", rdm.p_up}, {"p_dn", rdm.p_dn},
                {"p_double", rdm.p_double}};
}

struct CommonFlags {
    bool no_projection = false;
    int lambda_site = 1;  // 1-based ring site
    std::string lambda_spin = "up";
    double eig_tol = 1e-10;
    double deg_tol = 1e-9;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--no-irrep-projection", no_projection,
                      "Average over degenerate multiplets instead of projecting onto the totally symmetric irrep");
        cmd->add_option("--lambda-site", lambda_site, "Ring site (1-6) used for the hopping overlap")
            ->check(CLI::Range(1, 6))
            ->capture_default_str();
        cmd->add_option("--lambda-spin", lambda_spin, "Spin used for the hopping overlap")
            ->check(CLI::IsMember({"up", "down"}))
            ->capture_default_str();
        cmd->add_option("--eig-tol", eig_tol, "Eigenpair residual tolerance")->capture_default_str();
        cmd->add_option("--deg-tol", deg_tol, "Relative degeneracy grouping tolerance")
            ->capture_default_str();
    }

    rgm::FlowOptions flow_options() const {
        rgm::FlowOptions opts;
        opts.block.solve.tol = eig_tol;
        opts.block.deg_rel_tol = deg_tol;
        opts.block.irrep_projection = !no_projection;
        opts.lambda_site = lambda_site - 1;
        opts.lambda_spin = lambda_spin == "down" ? hexrg::fock::Spin::dn : hexrg::fock::Spin::up;
        return opts;
    }

    void append_config(ConfigMap& config) const {
        config.emplace_back("deg-tol", io::format_double(deg_tol));
        config.emplace_back("eig-tol", io::format_double(eig_tol));
        config.emplace_back("irrep-projection", no_projection ? "false" : "true");
        config.emplace_back("lambda-site", io::format_int(lambda_site));
        config.emplace_back("lambda-spin", lambda_spin);
    }
};

int run_flow_command(double t, double u, double k, int stages, const CommonFlags& common,
                     const std::string& out_csv, const std::string& out_json, bool no_timestamp) {
    ConfigMap config{{"command", "flow"},
                     {"t", io::format_double(t)},
                     {"u", io::format_double(u)},
                     {"k", io::format_double(k)},
                     {"stages", io::format_int(stages)}};
    common.append_config(config);

    const rgm::FlowResult flow = rgm::run_flow(HubbardParams{t, u, k}, stages, common.flow_options());
    io::write_file(out_csv, io::write_flow_csv(flow.stages, config));

    json summary = metadata_json(config, !no_timestamp);
    if (!flow.stages.empty()) {
        const rgm::RGStage& first = flow.stages.front();
        const rgm::RGStage& last = flow.stages.back();
        const double r0 = first.params.u / first.params.t;
        const double rn = last.next.u / last.next.t;
        summary["classification"] = rn > r0 ? "insulator" : (rn < r0 ? "metal" : "fixed");
        json stage_list = json::array();
        for (const rgm::RGStage& s : flow.stages) {
            stage_list.push_back(json{{"stage", s.stage},
                                      {"n_rep", s.n_rep},
                                      {"u_over_t", s.params.u / s.params.t},
                                      {"lambda", s.lambda},
                                      {"lambda_second", s.lambda_second},
                                      {"lambda_consistent", s.lambda_consistent},
                                      {"gap", s.gap},
                                      {"ph_residual", s.ph_residual},
                                      {"e7", s.ent.e7},
                                      {"e1", s.ent.e1},
                                      {"e_avg", s.ent.e_avg},
                                      {"rdm7", rdm_json(s.ent.rdm7)},
                                      {"rdm1", rdm_json(s.ent.rdm1)}});
        }
        summary["stages"] = stage_list;
        for (const rgm::RGStage& s : flow.stages) {
            if (!s.lambda_consistent) {
                std::cerr << "warning: overlap definitions disagree by " << s.lambda_diff
                          << " at stage " << s.stage << "\n";
            }
        }
    }
    if (!flow.complete()) summary["error"] = flow.error;
    io::write_file(out_json, summary.dump(2) + "\n");

    if (!flow.complete()) {
        std::cerr << "flow aborted: " << flow.error << "\n";
        return kExitNumerical;
    }
    std::cout << "wrote " << out_csv << " and " << out_json << " ("
              << summary["classification"].get<std::string>() << ")\n";
    return kExitOk;
}

int run_sweep_command(const sc::SweepOptions& options, const CommonFlags& common,
                      const std::string& observable, const std::string& out_csv) {
    // The jobs count never changes the table contents, so it stays out of the
    // embedded metadata; identical sweeps are byte-identical for any --jobs.
    ConfigMap config{{"command", "sweep"},
                     {"observable", observable},
                     {"points", io::format_int(options.n_points)},
                     {"stages", io::format_int(options.n_stages)},
                     {"u-max", io::format_double(options.u_max)},
                     {"u-min", io::format_double(options.u_min)}};
    common.append_config(config);

    const sc::SweepTable table = sc::sweep(options);
    io::write_file(out_csv, io::write_sweep_csv(table, config));
    for (const std::string& w : table.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << out_csv << " (" << table.rows.size() << " rows, "
              << table.warnings.size() << " warnings)\n";
    return table.warnings.empty() ? kExitOk : kExitNumerical;
}

sc::Observable parse_observable(const std::string& name) {
    if (name == "e7") return sc::Observable::e7;
    if (name == "e1") return sc::Observable::e1;
    if (name == "e_avg") return sc::Observable::e_avg;
    return sc::Observable::gap;
}

int run_collapse_command(const std::string& input, const std::string& observable, bool have_uc,
                         double uc, bool fit, double nu, double y_e, double bandwidth, double nu_lo,
                         double nu_hi, const std::string& out_csv, const std::string& out_json,
                         bool no_timestamp) {
    ConfigMap config{{"command", "collapse"},
                     {"bandwidth", io::format_double(bandwidth)},
                     {"input", input},
                     {"observable", observable},
                     {"y-e", io::format_double(y_e)}};

    const sc::SweepTable table = io::read_sweep_csv(io::read_file(input));
    const auto curves = sc::curves_from_table(table, parse_observable(observable));
    const auto crossings = sc::all_crossings(curves);

    if (!have_uc) {
        const auto estimate = sc::auto_uc(crossings);
        if (!estimate) {
            std::cerr << "error: no curve crossings found; cannot estimate the critical coupling\n";
            return kExitNotApplicable;
        }
        uc = *estimate;
        config.emplace_back("uc", "auto");
    } else {
        config.emplace_back("uc", io::format_double(uc));
    }

    sc::NuFit fitted{nu, 0.0};
    if (fit) {
        fitted = sc::fit_nu(curves, uc, nu_lo, nu_hi, y_e, bandwidth);
        nu = fitted.nu;
        config.emplace_back("nu", "fit");
    } else {
        config.emplace_back("nu", io::format_double(nu));
    }

    const sc::CollapseResult result = sc::collapse(curves, uc, nu, y_e, bandwidth);
    io::write_file(out_csv, io::write_collapse_csv(result, config));

    json report = metadata_json(config, !no_timestamp);
    report["uc"] = uc;
    report["nu"] = nu;
    report["y_e"] = y_e;
    report["residual"] = result.residual;
    report["n_points"] = result.points.size();
    json crossing_list = json::array();
    for (const sc::PairCrossing& pc : crossings) {
        json item{{"stage_a", pc.stage_a}, {"stage_b", pc.stage_b}, {"n_a", pc.n_a}, {"n_b", pc.n_b}};
        if (pc.u_cross) {
            item["u_cross"] = *pc.u_cross;
        } else {
            item["u_cross"] = nullptr;
        }
        crossing_list.push_back(item);
    }
    report["crossings"] = crossing_list;
    io::write_file(out_json, report.dump(2) + "\n");

    std::cout << "wrote " << out_csv << " and " << out_json << " (uc=" << io::format_double(uc)
              << " nu=" << io::format_double(nu)
              << " residual=" << io::format_double(result.residual) << ")\n";
    return kExitOk;
}

int run_selftest_command(const std::string& fault_name) {
    const auto fault = fault_name == "sign-convention" ? hexrg::selftest::Fault::sign_convention
                                                       : hexrg::selftest::Fault::none;
    const hexrg::selftest::Report report = hexrg::selftest::run(fault);
    json out;
    out["version"] = HEXRG_VERSION;
    out["pass"] = report.all_pass;
    json checks = json::array();
    for (const auto& check : report.checks) {
        checks.push_back(json{{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
    }
    out["checks"] = checks;
    std::cout << out.dump(2) << "\n";
    return report.all_pass ? kExitOk : kExitSelftest;
}

// Applies a key=value configuration file as defaults: every key becomes a
// long flag inserted after the subcommand unless that flag was given
// explicitly (command line wins over the file, the file wins over built-ins).
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    static const std::vector<std::string> subcommands{"flow", "sweep", "collapse", "selftest"};
    std::size_t sub_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (std::find(subcommands.begin(), subcommands.end(), args[i]) != subcommands.end()) {
            sub_pos = i;
            break;
        }
    }
    if (sub_pos == args.size()) return args;

    std::string config_path;
    for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        }
    }
    if (config_path.empty()) return args;

    const auto flag_given = [&](const std::string& flag) {
        for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
            if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };

    std::ifstream in(config_path);
    if (!in) throw hexrg::io::CsvError("cannot open config file: " + config_path);
    std::vector<std::string> inserted;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw hexrg::io::CsvError("malformed config line: '" + line + "'");
            }
            continue;
        }
        const auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\"");
            const auto b = s.find_last_not_of(" \t\r\"");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw hexrg::io::CsvError("malformed config line: '" + line + "'");
        if (!flag_given("--" + key)) {
            inserted.push_back("--" + key);
            inserted.push_back(value);
        }
    }

    std::vector<std::string> out(args.begin(), args.begin() + sub_pos + 1);
    out.insert(out.end(), inserted.begin(), inserted.end());
    out.insert(out.end(), args.begin() + sub_pos + 1, args.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-renormalization analysis of the Hubbard model on the triangular lattice"};
    app.set_version_flag("--version", HEXRG_VERSION);
    app.require_subcommand(1);

    bool no_timestamp = false;
    app.add_flag("--no-timestamp", no_timestamp, "Omit timestamps from JSON metadata");

    // flow
    auto* flow_cmd = app.add_subcommand("flow", "Iterate the block map and tabulate each stage");
    std::string flow_config;
    flow_cmd->add_option("--config", flow_config, "Read defaults from a key=value file");
    double flow_t = 1.0, flow_u = 12.5, flow_k = 0.0;
    int flow_stages = 4;
    std::string flow_csv = "flow.csv", flow_json = "flow.json";
    flow_cmd->add_option("--t", flow_t, "Bare hopping")->capture_default_str();
    flow_cmd->add_option("--u", flow_u, "Bare on-site repulsion")->capture_default_str();
    auto* k_opt = flow_cmd->add_option("--k", flow_k, "Constant per-site shift (default -u/4)");
    flow_cmd->add_option("--stages", flow_stages, "Number of stages")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    flow_cmd->add_option("--out-csv", flow_csv, "Stage table output")->capture_default_str();
    flow_cmd->add_option("--out-json", flow_json, "Summary output")->capture_default_str();
    CommonFlags flow_flags;
    flow_flags.attach(flow_cmd);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep U/t and tabulate per-stage observables");
    std::string sweep_config;
    sweep_cmd->add_option("--config", sweep_config, "Read defaults from a key=value file");
    sc::SweepOptions sweep_options;
    std::string sweep_observable = "e7";
    std::string sweep_csv = "sweep.csv";
    sweep_cmd->add_option("--u-min", sweep_options.u_min, "Lower end of the U/t grid")
        ->capture_default_str();
    sweep_cmd->add_option("--u-max", sweep_options.u_max, "Upper end of the U/t grid")
        ->capture_default_str();
    sweep_cmd->add_option("--points", sweep_options.n_points, "Grid points")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    sweep_cmd->add_option("--stages", sweep_options.n_stages, "Stages per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--observable", sweep_observable, "Observable of primary interest")
        ->check(CLI::IsMember({"e7", "e1", "e_avg", "gap"}))
        ->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_options.jobs, "Concurrent grid points")
        ->envname("HEXRG_JOBS")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
    sweep_cmd->add_option("--out-csv", sweep_csv, "Curve table output")->capture_default_str();
    CommonFlags sweep_flags;
    sweep_flags.attach(sweep_cmd);

    // collapse
    auto* collapse_cmd =
        app.add_subcommand("collapse", "Locate the critical coupling and collapse sweep curves");
    std::string collapse_config;
    collapse_cmd->add_option("--config", collapse_config, "Read defaults from a key=value file");
    std::string collapse_input, collapse_observable = "e7";
    std::string collapse_csv = "collapse.csv", collapse_json = "collapse.json";
    double collapse_uc = 0.0, collapse_nu = 1.0, collapse_ye = 0.0, collapse_bw = 0.1;
    double collapse_nu_lo = 0.5, collapse_nu_hi = 2.0;
    bool collapse_auto_uc = false, collapse_fit_nu = false;
    collapse_cmd->add_option("--input", collapse_input, "Sweep CSV to analyze")->required();
    collapse_cmd->add_option("--observable", collapse_observable, "Observable to collapse")
        ->check(CLI::IsMember({"e7", "e1", "e_avg", "gap"}))
        ->capture_default_str();
    auto* uc_opt = collapse_cmd->add_option("--uc", collapse_uc, "Critical coupling");
    collapse_cmd->add_flag("--auto-uc", collapse_auto_uc, "Estimate the critical coupling from crossings")
        ->excludes(uc_opt);
    auto* nu_opt = collapse_cmd->add_option("--nu", collapse_nu, "Correlation-length exponent")
                       ->capture_default_str();
    collapse_cmd->add_flag("--fit-nu", collapse_fit_nu, "Fit the exponent by residual minimization")
        ->excludes(nu_opt);
    collapse_cmd->add_option("--y-e", collapse_ye, "Amplitude exponent")->capture_default_str();
    collapse_cmd->add_option("--bandwidth", collapse_bw, "Regression bandwidth as a fraction of the x-range")
        ->capture_default_str();
    collapse_cmd->add_option("--nu-lo", collapse_nu_lo, "Fit interval lower end")->capture_default_str();
    collapse_cmd->add_option("--nu-hi", collapse_nu_hi, "Fit interval upper end")->capture_default_str();
    collapse_cmd->add_option("--out-csv", collapse_csv, "Collapsed points output")->capture_default_str();
    collapse_cmd->add_option("--out-json", collapse_json, "Report output")->capture_default_str();

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the embedded invariant suite");
    std::string fault = "none";
    selftest_cmd->add_option("--inject-fault", fault, "Deliberately break a convention (testing hook)")
        ->check(CLI::IsMember({"none", "sign-convention"}));

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config_file(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (flow_cmd->parsed()) {
            if (k_opt->count() == 0) flow_k = -flow_u / 4.0;
            if (!std::isfinite(flow_t) || !std::isfinite(flow_u) || !std::isfinite(flow_k)) {
                std::cerr << "error: couplings must be finite\n";
                return kExitUsage;
            }
            return run_flow_command(flow_t, flow_u, flow_k, flow_stages, flow_flags, flow_csv,
                                    flow_json, no_timestamp);
        }
        if (sweep_cmd->parsed()) {
            sweep_options.flow = sweep_flags.flow_options();
            return run_sweep_command(sweep_options, sweep_flags, sweep_observable, sweep_csv);
        }
        if (collapse_cmd->parsed()) {
            return run_collapse_command(collapse_input, collapse_observable, uc_opt->count() > 0,
                                        collapse_uc, collapse_fit_nu, collapse_nu, collapse_ye,
                                        collapse_bw, collapse_nu_lo, collapse_nu_hi, collapse_csv,
                                        collapse_json, no_timestamp);
        }
        if (selftest_cmd->parsed()) {
            return run_selftest_command(fault);
        }
    } catch (const hexrg::io::CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
