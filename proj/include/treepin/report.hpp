#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treepin/config.hpp"
#include "treepin/protocol.hpp"

namespace treepin {

inline constexpr const char* kToolVersion = "0.1.0";

/// Rounds to 12 significant digits so that JSON output is stable.
double round12(double x);

/// Reports are deterministic functions of (config, options): fixed key
/// order, 12 significant digits, input hash over the canonical config.
std::string capacity_report_json(const NetworkConfig& config, bool verify_lp);
std::string rates_report_json(const NetworkConfig& config);
std::string bounds_report_json(const NetworkConfig& config, long long rounds);

struct SimulateOptions {
    bool exact_secrecy = false;
    std::uint64_t state_cap = 0;  // 0 = default_state_cap()
};

std::string simulate_report_json(const NetworkConfig& config, const SimulateOptions& options);

/// CSV "n,lambda,rate,target,note" of choose_lambda across `rounds`.
std::string rate_sweep_csv(const NetworkConfig& config, const std::vector<std::uint64_t>& rounds);

/// Full public transcript plus per-terminal keys, bit strings as hex.
std::string transcript_json(const Transcript& transcript);

/// Resolves the protocol block of a simulation config (sources required).
ProtocolConfig simulation_protocol(const NetworkConfig& config);

}  // namespace treepin
