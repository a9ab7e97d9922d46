#include "treepin/treepin.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "treepin/capacity.hpp"
#include "treepin/config.hpp"
#include "treepin/error.hpp"
#include "treepin/report.hpp"

struct treepin_network {
    treepin::NetworkConfig config;
};

namespace {

thread_local std::string g_last_error;

treepin_status set_error(treepin_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <class F>
treepin_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return TREEPIN_OK;
    } catch (const treepin::ConfigError& e) {
        return set_error(TREEPIN_E_CONFIG, e.what());
    } catch (const treepin::CapabilityError& e) {
        return set_error(TREEPIN_E_CAPABILITY, e.what());
    } catch (const treepin::InvariantError& e) {
        return set_error(TREEPIN_E_INTERNAL, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(TREEPIN_E_CONFIG, e.what());
    } catch (const std::out_of_range& e) {
        return set_error(TREEPIN_E_CONFIG, e.what());
    } catch (const nlohmann::json::exception& e) {
        return set_error(TREEPIN_E_CONFIG, e.what());
    } catch (const std::exception& e) {
        return set_error(TREEPIN_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(TREEPIN_E_INTERNAL, "unknown error");
    }
}

char* copy_out(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
treepin_status emit(const treepin_network* network, char** out, F&& make) {
    if (network == nullptr || out == nullptr) return set_error(TREEPIN_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = copy_out(make(network->config)); });
}

}  // namespace

extern "C" {

const char* treepin_version(void) { return treepin::kToolVersion; }

const char* treepin_last_error(void) { return g_last_error.c_str(); }

void treepin_string_free(char* s) { std::free(s); }

treepin_status treepin_network_parse(const char* json_text, treepin_network** out) {
    if (json_text == nullptr || out == nullptr) return set_error(TREEPIN_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new treepin_network{treepin::parse_network_config(json_text)}; });
}

treepin_status treepin_network_load(const char* path, treepin_network** out) {
    if (path == nullptr || out == nullptr) return set_error(TREEPIN_E_ARGUMENT, "null argument");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) return set_error(TREEPIN_E_CONFIG, std::string("cannot open config file '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return guarded([&] { *out = new treepin_network{treepin::parse_network_config(text.str())}; });
}

void treepin_network_free(treepin_network* network) { delete network; }

treepin_status treepin_network_serialize(const treepin_network* network, char** out_json) {
    return emit(network, out_json, [](const auto& c) { return treepin::serialize_network_config(c); });
}

int treepin_network_node_count(const treepin_network* network) {
    return network == nullptr ? -1 : network->config.network.node_count();
}

treepin_status treepin_wsk_capacity(const treepin_network* network, double* capacity, int* argmin_i, int* argmin_j) {
    if (network == nullptr || capacity == nullptr) return set_error(TREEPIN_E_ARGUMENT, "null argument");
    return guarded([&] {
        const auto c = treepin::wsk_capacity(network->config.network);
        *capacity = c.value;
        if (argmin_i != nullptr) *argmin_i = c.argmin.u;
        if (argmin_j != nullptr) *argmin_j = c.argmin.v;
    });
}

treepin_status treepin_capacity_report(const treepin_network* network, int verify_lp, char** out_json) {
    return emit(network, out_json, [&](const auto& c) { return treepin::capacity_report_json(c, verify_lp != 0); });
}

treepin_status treepin_rates_report(const treepin_network* network, char** out_json) {
    return emit(network, out_json, [](const auto& c) { return treepin::rates_report_json(c); });
}

treepin_status treepin_bounds_report(const treepin_network* network, long long n, char** out_json) {
    return emit(network, out_json, [&](const auto& c) { return treepin::bounds_report_json(c, n); });
}

treepin_status treepin_simulate_report(const treepin_network* network, const treepin_simulate_options* options,
                                       char** out_json) {
    treepin::SimulateOptions opts;
    if (options != nullptr) {
        opts.exact_secrecy = options->exact_secrecy != 0;
        opts.state_cap = options->state_cap;
    }
    return emit(network, out_json, [&](const auto& c) { return treepin::simulate_report_json(c, opts); });
}

treepin_status treepin_transcript(const treepin_network* network, char** out_json) {
    return emit(network, out_json, [](const auto& c) {
        const auto pc = treepin::simulation_protocol(c);
        return treepin::transcript_json(treepin::run_protocol(c.network, pc, c.protocol->seed));
    });
}

treepin_status treepin_rate_sweep_csv(const treepin_network* network, const uint64_t* rounds, size_t count,
                                      char** out_csv) {
    if (rounds == nullptr && count != 0) return set_error(TREEPIN_E_ARGUMENT, "null rounds array");
    std::vector<std::uint64_t> ns(rounds, rounds + count);
    return emit(network, out_csv, [&](const auto& c) { return treepin::rate_sweep_csv(c, ns); });
}

}  // extern "C"
