// treepin command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treepin/treepin.h"

namespace {

struct NetworkDeleter {
    void operator()(treepin_network* n) const { treepin_network_free(n); }
};
using NetworkHandle = std::unique_ptr<treepin_network, NetworkDeleter>;

struct StringDeleter {
    void operator()(char* s) const { treepin_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

int report_failure(treepin_status status, const std::string& what) {
    std::cerr << "treepin: " << what << ": " << treepin_last_error() << "\n";
    return static_cast<int>(status);
}

int write_output(const char* text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "treepin: cannot write '" << out_path << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

template <class F>
int run_report(const NetworkHandle& net, const std::string& what, const std::string& out_path, F&& call) {
    char* raw = nullptr;
    const treepin_status status = call(net.get(), &raw);
    OwnedString text(raw);
    if (status != TREEPIN_OK) return report_failure(status, what);
    return write_output(text.get(), out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiretap secret-key capacity and key agreement for tree-structured pairwise-independent networks"};
    app.set_version_flag("--version", std::string(treepin_version()));
    app.require_subcommand(1);

    std::string config_path, out_path, transcript_path;
    bool verify_lp = false, exact = false;
    long long rounds = 0;
    std::vector<std::uint64_t> sweep;

    auto* capacity = app.add_subcommand("capacity", "C_WSK, C_PK and R_CO of a network");
    capacity->add_option("config", config_path, "network config (JSON)")->required();
    capacity->add_flag("--verify-lp", verify_lp, "also solve the omniscience LP (m <= 8)");
    capacity->add_option("--out", out_path, "write the report to this file");

    auto* bounds = app.add_subcommand("bounds", "partition upper bound and Steiner-packing lower bound");
    bounds->add_option("config", config_path, "network config (JSON)")->required();
    bounds->add_option("--n", rounds, "block length for the packing multigraph")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--out", out_path, "write the report to this file");

    auto* simulate = app.add_subcommand("simulate", "run the key agreement protocol on sampled sources");
    simulate->add_option("config", config_path, "network config (JSON) with a protocol block")->required();
    simulate->add_flag("--exact-secrecy", exact, "evaluate secrecy exactly by enumeration");
    simulate->add_option("--sweep-n", sweep, "emit CSV of lambda/n for these block lengths")->delimiter(',');
    simulate->add_option("--transcript-out", transcript_path, "write the full public transcript as JSON");
    simulate->add_option("--out", out_path, "write the report to this file");

    auto* rates = app.add_subcommand("rates", "closed-form rate assignment and LP feasibility check");
    rates->add_option("config", config_path, "network config (JSON)")->required();
    rates->add_option("--out", out_path, "write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return TREEPIN_E_CONFIG;
    }

    treepin_network* raw = nullptr;
    if (auto status = treepin_network_load(config_path.c_str(), &raw); status != TREEPIN_OK)
        return report_failure(status, config_path);
    NetworkHandle net(raw);

    if (capacity->parsed()) {
        if (verify_lp && treepin_network_node_count(net.get()) > 8) {
            std::cerr << "treepin: --verify-lp supports at most 8 nodes; this network has "
                      << treepin_network_node_count(net.get()) << "\n";
            return TREEPIN_E_CAPABILITY;
        }
        return run_report(net, "capacity", out_path,
                          [&](auto* n, char** s) { return treepin_capacity_report(n, verify_lp ? 1 : 0, s); });
    }
    if (bounds->parsed())
        return run_report(net, "bounds", out_path, [&](auto* n, char** s) { return treepin_bounds_report(n, rounds, s); });
    if (rates->parsed()) return run_report(net, "rates", out_path, treepin_rates_report);

    if (!sweep.empty())
        return run_report(net, "rate sweep", out_path,
                          [&](auto* n, char** s) { return treepin_rate_sweep_csv(n, sweep.data(), sweep.size(), s); });
    if (!transcript_path.empty()) {
        if (int rc = run_report(net, "transcript", transcript_path, treepin_transcript); rc != 0) return rc;
    }
    treepin_simulate_options options{exact ? 1 : 0, 0};
    return run_report(net, "simulate", out_path,
                      [&](auto* n, char** s) { return treepin_simulate_report(n, &options, s); });
}
