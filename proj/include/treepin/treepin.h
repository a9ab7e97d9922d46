/* C interface to the treepin library: Tree-PIN wiretap key capacity,
 * bounds, and the XOR-propagation key agreement protocol.
 *
 * Every function returns a treepin_status; on failure the message is
 * available from treepin_last_error() on the calling thread. Strings
 * returned through char** must be released with treepin_string_free(). */
#ifndef TREEPIN_TREEPIN_H
#define TREEPIN_TREEPIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TREEPIN_BUILDING_LIBRARY)
#    define TREEPIN_API __declspec(dllexport)
#  else
#    define TREEPIN_API __declspec(dllimport)
#  endif
#else
#  define TREEPIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum treepin_status {
    TREEPIN_OK = 0,
    TREEPIN_E_ARGUMENT = 1,   /* null pointer or bad call */
    TREEPIN_E_CONFIG = 2,     /* invalid config or protocol parameters */
    TREEPIN_E_CAPABILITY = 3, /* enumeration / size cap exceeded */
    TREEPIN_E_INTERNAL = 4    /* internal invariant violation */
} treepin_status;

typedef struct treepin_network treepin_network;

typedef struct treepin_simulate_options {
    int exact_secrecy;    /* nonzero runs exhaustive secrecy evaluation */
    uint64_t state_cap;   /* 0: TREEPIN_STATE_CAP env var or 2^24 */
} treepin_simulate_options;

TREEPIN_API const char* treepin_version(void);
TREEPIN_API const char* treepin_last_error(void);
TREEPIN_API void treepin_string_free(char* s);

TREEPIN_API treepin_status treepin_network_parse(const char* json_text, treepin_network** out);
TREEPIN_API treepin_status treepin_network_load(const char* path, treepin_network** out);
TREEPIN_API void treepin_network_free(treepin_network* network);
TREEPIN_API treepin_status treepin_network_serialize(const treepin_network* network, char** out_json);
TREEPIN_API int treepin_network_node_count(const treepin_network* network);

TREEPIN_API treepin_status treepin_wsk_capacity(const treepin_network* network, double* capacity,
                                                int* argmin_i, int* argmin_j);

TREEPIN_API treepin_status treepin_capacity_report(const treepin_network* network, int verify_lp, char** out_json);
TREEPIN_API treepin_status treepin_rates_report(const treepin_network* network, char** out_json);
TREEPIN_API treepin_status treepin_bounds_report(const treepin_network* network, long long n, char** out_json);
TREEPIN_API treepin_status treepin_simulate_report(const treepin_network* network,
                                                   const treepin_simulate_options* options, char** out_json);
TREEPIN_API treepin_status treepin_transcript(const treepin_network* network, char** out_json);
TREEPIN_API treepin_status treepin_rate_sweep_csv(const treepin_network* network, const uint64_t* rounds,
                                                  size_t count, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* TREEPIN_TREEPIN_H */
