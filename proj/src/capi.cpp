#include "radiot.h"

#include <cstdint>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "radiot/errors.hpp"
#include "radiot/pipeline.hpp"
#include "radiot/run_config.hpp"

struct radiot_session {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    std::string last_error;
};

namespace {

radiot_status status_from_kind(radiot::ErrorKind kind) {
    switch (kind) {
        case radiot::ErrorKind::config: return RADIOT_ERR_CONFIG;
        case radiot::ErrorKind::io: return RADIOT_ERR_IO;
        case radiot::ErrorKind::format: return RADIOT_ERR_FORMAT;
        case radiot::ErrorKind::training: return RADIOT_ERR_TRAINING;
        case radiot::ErrorKind::internal: return RADIOT_ERR_INTERNAL;
    }
    return RADIOT_ERR_INTERNAL;
}

radiot::RunConfig load_config(radiot_session* s) {
    radiot::RunConfig cfg = radiot::load_run_config(s->config_path);
    if (s->seed_override) cfg.seed = *s->seed_override;
    return cfg;
}

template <typename Fn>
radiot_status guarded(radiot_session* session, Fn&& fn) {
    if (!session) return RADIOT_ERR_CONFIG;
    session->last_error.clear();
    try {
        fn();
        return RADIOT_OK;
    } catch (const radiot::Error& e) {
        session->last_error = e.what();
        return status_from_kind(e.kind());
    } catch (const std::exception& e) {
        session->last_error = e.what();
        return RADIOT_ERR_INTERNAL;
    } catch (...) {
        session->last_error = "unknown failure";
        return RADIOT_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* radiot_version(void) { return "1.0.0"; }

radiot_session* radiot_session_new(const char* config_path, const char* out_dir) {
    if (!config_path || !out_dir) return nullptr;
    return new (std::nothrow) radiot_session{config_path, out_dir, std::nullopt, {}};
}

void radiot_session_free(radiot_session* session) { delete session; }

void radiot_session_set_seed(radiot_session* session, uint64_t seed) {
    if (session) session->seed_override = seed;
}

const char* radiot_session_last_error(const radiot_session* session) {
    return session ? session->last_error.c_str() : "null session";
}

radiot_status radiot_run_simulate(radiot_session* session) {
    return guarded(session, [&] { radiot::run_simulate(load_config(session), session->out_dir); });
}

radiot_status radiot_run_ingest(radiot_session* session, const char* csv_path,
                                const char* name) {
    return guarded(session, [&] {
        if (!csv_path || !*csv_path) throw radiot::ConfigError("ingest needs a CSV path");
        std::string dataset = (name && *name) ? name : "ingested";
        radiot::run_ingest(load_config(session), csv_path, session->out_dir, dataset);
    });
}

radiot_status radiot_run_pipeline(radiot_session* session, int reuse_models) {
    return guarded(session, [&] {
        radiot::run_pipeline(load_config(session), session->out_dir, reuse_models != 0);
    });
}

radiot_status radiot_run_detect(radiot_session* session, const char* waterfall_file,
                                const char* tag) {
    return guarded(session, [&] {
        if (!waterfall_file || !*waterfall_file)
            throw radiot::ConfigError("detect needs a waterfall file");
        std::string t = (tag && *tag) ? tag : "detect";
        radiot::run_detect(load_config(session), session->out_dir, waterfall_file, t);
    });
}

radiot_status radiot_run_evaluate(radiot_session* session, const char* tag,
                                  const char* truth_csv) {
    return guarded(session, [&] {
        if (!tag || !*tag) throw radiot::ConfigError("evaluate needs a tag");
        radiot::run_evaluate(load_config(session), session->out_dir, tag,
                             truth_csv ? truth_csv : "");
    });
}

}  // extern "C"
