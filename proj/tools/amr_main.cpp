// amr: scenario runner, constraint and gas reporting, trace analysis.
// Exit codes: 0 = success and all audits pass, 1 = audit failure,
// 2 = configuration error.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "amr/gadget.hpp"
#include "amr/gas.hpp"
#include "amr/scenario.hpp"
#include "amr/trace.hpp"

namespace {

int run_command(const std::string& scenario_file, const std::string& log_file,
                const std::string& summary_file, const std::string& tree_file) {
    amr::Scenario scenario = amr::Scenario::from_file(scenario_file);
    amr::ScenarioResult result = amr::run_scenario(scenario);

    if (!log_file.empty()) {
        std::ofstream f(log_file);
        if (!f) throw amr::Error(amr::Err::ConfigError, "cannot write log file " + log_file);
        f << result.event_log;
    }
    if (!tree_file.empty()) {
        std::ofstream f(tree_file);
        if (!f) throw amr::Error(amr::Err::ConfigError, "cannot write tree file " + tree_file);
        f << result.tree_snapshot;
    }
    if (!summary_file.empty()) {
        std::ofstream f(summary_file);
        if (!f)
            throw amr::Error(amr::Err::ConfigError, "cannot write summary file " + summary_file);
        f << result.summary_json;
    }
    std::cout << result.summary_json;

    if (!result.audits.all_ok()) {
        for (const auto& why : result.audits.failures) std::cerr << "audit: " << why << "\n";
        return 1;
    }
    return 0;
}

int constraints_command(const std::string& kind_name, const std::vector<unsigned>& depths) {
    amr::HashKind kind = amr::hash_kind_from_name(kind_name);
    amr::CircuitCostModel model;
    std::cout << "kind depth constraints\n";
    for (unsigned d : depths)
        std::cout << amr::hash_kind_name(kind) << " " << d << " "
                  << amr::count_constraints(kind, d, model) << "\n";
    return 0;
}

int gas_command(const std::string& kind_name, const std::vector<unsigned>& depths,
                bool with_lending) {
    amr::HashKind kind = amr::hash_kind_from_name(kind_name);
    amr::GasModel model;
    std::cout << "kind depth lending deposit withdraw redeem\n";
    for (unsigned d : depths) {
        amr::GasReport report = amr::gas_report(model, kind, d, with_lending);
        std::cout << amr::hash_kind_name(kind) << " " << d << " "
                  << (with_lending ? "yes" : "no") << " " << report.deposit << " "
                  << report.withdraw << " " << report.redeem << "\n";
    }
    return 0;
}

int analyze_trace_command(const std::string& trace_file, const std::vector<uint64_t>& windows) {
    auto records = amr::parse_trace_file(trace_file);
    amr::TraceAnalysis analysis = amr::analyze_trace(records, windows);
    amr::write_trace_report(std::cout, analysis);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AMR privacy-mixer desk engine"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a scenario file and audit every block");
    std::string scenario_file, log_file, summary_file, tree_file;
    run->add_option("-s,--scenario", scenario_file, "scenario JSON file")->required();
    run->add_option("--log", log_file, "write the event log to this file");
    run->add_option("--summary", summary_file, "write the summary JSON to this file");
    run->add_option("--tree-out", tree_file, "export the final deposit-tree snapshot");

    auto* constraints = app.add_subcommand("constraints", "withdraw-circuit constraint counts");
    std::string c_kind = "mimc";
    std::vector<unsigned> c_depths;
    constraints->add_option("--kind", c_kind, "hash kind (mimc|poseidon)");
    constraints->add_option("--depth", c_depths, "tree depth (repeatable)")->required();

    auto* gas = app.add_subcommand("gas-report", "per-operation gas estimates");
    std::string g_kind = "mimc";
    std::vector<unsigned> g_depths;
    bool with_lending = false;
    gas->add_option("--kind", g_kind, "hash kind (mimc|poseidon)");
    gas->add_option("--depth", g_depths, "tree depth (repeatable)")->required();
    gas->add_flag("--with-lending", with_lending, "include lending-platform overheads");

    auto* trace = app.add_subcommand("analyze-trace", "deposit-frequency and gap analysis");
    std::string trace_file;
    std::vector<uint64_t> windows;
    trace->add_option("--trace", trace_file, "trace file (<height>,<deposit|withdraw> lines)")
        ->required();
    trace->add_option("--window", windows, "window size in blocks (repeatable)")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_command(scenario_file, log_file, summary_file, tree_file);
        if (constraints->parsed()) {
            for (unsigned d : c_depths)
                if (d == 0) throw amr::Error(amr::Err::BadConfig, "depth must be at least 1");
            return constraints_command(c_kind, c_depths);
        }
        if (gas->parsed()) return gas_command(g_kind, g_depths, with_lending);
        if (trace->parsed()) return analyze_trace_command(trace_file, windows);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const amr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == amr::Err::AuditFailure ? 1 : 2;
    }
    return 2;
}
