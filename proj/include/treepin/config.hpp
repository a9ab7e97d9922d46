#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "treepin/network.hpp"
#include "treepin/protocol.hpp"

namespace treepin {

/// The optional "protocol" block of a network config.
struct ProtocolSection {
    ProtocolParams params;
    std::uint64_t seed = 1;
};

struct NetworkConfig {
    Network network;
    std::optional<ProtocolSection> protocol;
};

/// Parses the JSON network description. Channel shorthands ("bsc", "bec")
/// are expanded to explicit matrices. Throws ConfigError naming the line
/// (for syntax errors) or the offending field path.
NetworkConfig parse_network_config(std::string_view text);

/// Canonical JSON form: sorted edges, explicit channel matrices, fixed key
/// order. parse(serialize(c)) reproduces c.
std::string serialize_network_config(const NetworkConfig& config);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace treepin
