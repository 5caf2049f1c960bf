/*
 * radiot — protocol-agnostic radio-spectrum intrusion detection.
 *
 * C API over the C++ core: opaque session handle, integer status codes,
 * last-error text per session. Suitable for FFI bindings; the bundled CLI
 * is built exclusively on this surface.
 */
#ifndef RADIOT_H
#define RADIOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

#if defined(_WIN32)
#define RADIOT_API __declspec(dllexport)
#else
#define RADIOT_API __attribute__((visibility("default")))
#endif

typedef enum radiot_status {
    RADIOT_OK = 0,
    RADIOT_ERR_CONFIG = 1,   /* bad configuration, schedule or parameters */
    RADIOT_ERR_IO = 2,       /* filesystem failures */
    RADIOT_ERR_FORMAT = 3,   /* malformed waterfall/CSV/JSON input */
    RADIOT_ERR_TRAINING = 4, /* optimizer divergence */
    RADIOT_ERR_INTERNAL = 5
} radiot_status;

/* Opaque run session: a config document plus an output directory. */
typedef struct radiot_session radiot_session;

RADIOT_API const char* radiot_version(void);

/* Creates a session. The config JSON is loaded lazily by the run calls, so
 * errors surface there with a message. Returns NULL only on allocation
 * failure. */
RADIOT_API radiot_session* radiot_session_new(const char* config_path,
                                              const char* out_dir);

RADIOT_API void radiot_session_free(radiot_session* session);

/* Overrides the config seed for this session (reproducibility knob). */
RADIOT_API void radiot_session_set_seed(radiot_session* session, uint64_t seed);

/* Human-readable description of the last failure on this session; empty
 * string when the last call succeeded. The pointer stays valid until the
 * next call on the same session. */
RADIOT_API const char* radiot_session_last_error(const radiot_session* session);

/* simulate: write clean/heldout/attack waterfall captures plus the
 * ground-truth CSV into the session's output directory. */
RADIOT_API radiot_status radiot_run_simulate(radiot_session* session);

/* ingest: parse a sweep-tool CSV capture into <name>.wf. */
RADIOT_API radiot_status radiot_run_ingest(radiot_session* session,
                                           const char* csv_path, const char* name);

/* pipeline: split/train/calibrate per slice, detect on the attack capture,
 * evaluate, and write report files. reuse_models != 0 loads existing
 * per-slice models instead of retraining. */
RADIOT_API radiot_status radiot_run_pipeline(radiot_session* session,
                                             int reuse_models);

/* detect: score an arbitrary waterfall file with the stored profiles,
 * writing per-slice alarms_<tag>.csv / curve_<tag>.csv. */
RADIOT_API radiot_status radiot_run_detect(radiot_session* session,
                                           const char* waterfall_file, const char* tag);

/* evaluate: match alarms_<tag>.csv against a ground-truth CSV (NULL or empty
 * path = attack-free data) and write report_<tag>.csv/.txt. */
RADIOT_API radiot_status radiot_run_evaluate(radiot_session* session, const char* tag,
                                             const char* truth_csv);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* RADIOT_H */
