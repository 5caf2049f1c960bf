// Exercises the shared-library surface the way an FFI consumer would:
// opaque handles, status codes, last-error strings, artifact side effects.

#include "radiot.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

int failures = 0;

void check(bool ok, const char* what) {
    if (!ok) {
        std::fprintf(stderr, "FAIL: %s\n", what);
        ++failures;
    }
}

const char* kRunConfig = R"({
  "probe": {"ranges": [[2400000, 2500000]], "bin_width_khz": 5000,
            "sweep_interval_s": 0.25, "sweeps_per_waterfall": 20,
            "probe_id": "capi"},
  "noise": {"floor_mean_dbm": -90, "floor_std_db": 2.0},
  "devices": [{"name": "ap", "center_khz": 2437000, "width_khz": 20000,
               "tx_power_dbm": -60,
               "pattern": {"type": "duty", "on_s": 2, "off_s": 3}}],
  "schedule": {"explicit": [{"attack_id": 5, "start_s": 60, "intensity": "High"}]},
  "sessions": {"window_start_s": 0, "window_length_s": 180,
               "clean_days": [0, 1], "heldout_days": [3], "attack_days": [2]},
  "slices": [{"band": [2465000, 2475000]}],
  "training": {"max_epochs": 40, "batch_size": 8},
  "window_s": 60,
  "seed": 23
})";

}  // namespace

int main() {
    namespace fs = std::filesystem;
    fs::remove_all("t_out/capi");
    fs::create_directories("t_out/capi");
    const std::string dir = "t_out/capi";
    const std::string cfg_path = dir + "/run.json";
    {
        std::ofstream out(cfg_path);
        out << kRunConfig;
    }

    check(std::strlen(radiot_version()) > 0, "version string");
    check(radiot_session_new(nullptr, "x") == nullptr, "null config path rejected");

    radiot_session* s = radiot_session_new(cfg_path.c_str(), dir.c_str());
    check(s != nullptr, "session created");
    check(std::strlen(radiot_session_last_error(s)) == 0, "no error initially");

    radiot_session_set_seed(s, 23);

    check(radiot_run_simulate(s) == RADIOT_OK, "simulate");
    check(fs::exists(dir + "/clean.wf"), "clean capture written");
    check(fs::exists(dir + "/attack.wf"), "attack capture written");
    check(fs::exists(dir + "/ground_truth.csv"), "ground truth written");

    check(radiot_run_pipeline(s, 0) == RADIOT_OK, "pipeline");
    check(fs::exists(dir + "/report.csv"), "report written");
    check(fs::exists(dir + "/report_heldout.csv"), "heldout report written");
    check(fs::exists(dir + "/slices/2465000-2475000/profile.json"), "profile written");

    check(radiot_run_pipeline(s, 1) == RADIOT_OK, "pipeline with reused models");

    check(radiot_run_detect(s, (dir + "/heldout.wf").c_str(), "replay") == RADIOT_OK,
          "detect");
    check(fs::exists(dir + "/slices/2465000-2475000/alarms_replay.csv"),
          "detect artifacts written");
    check(radiot_run_evaluate(s, "replay", nullptr) == RADIOT_OK, "evaluate");
    check(fs::exists(dir + "/report_replay.csv"), "evaluate report written");

    // Error paths carry status codes and messages.
    check(radiot_run_detect(s, "no-such-file.wf", "x") != RADIOT_OK, "missing input fails");
    check(std::strlen(radiot_session_last_error(s)) > 0, "error message populated");

    radiot_session* missing = radiot_session_new("no-such-config.json", dir.c_str());
    check(radiot_run_simulate(missing) == RADIOT_ERR_IO, "missing config is an IO error");
    radiot_session_free(missing);

    {
        std::ofstream out(dir + "/bad.json");
        out << "{ not json";
    }
    radiot_session* bad = radiot_session_new((dir + "/bad.json").c_str(), dir.c_str());
    check(radiot_run_simulate(bad) == RADIOT_ERR_FORMAT, "malformed config is a format error");
    radiot_session_free(bad);

    {
        std::ofstream out(dir + "/badattack.json");
        out << R"({"schedule": {"explicit": [{"attack_id": 9, "start_s": 0}]}})";
    }
    radiot_session* badattack =
        radiot_session_new((dir + "/badattack.json").c_str(), dir.c_str());
    check(radiot_run_simulate(badattack) == RADIOT_ERR_CONFIG,
          "unknown attack id is a config error");
    check(std::strlen(radiot_session_last_error(badattack)) > 0, "config error message");
    radiot_session_free(badattack);

    radiot_session_free(s);
    radiot_session_free(nullptr);  // must be safe

    if (failures == 0) {
        std::printf("capi: all checks passed\n");
        return 0;
    }
    std::fprintf(stderr, "capi: %d checks failed\n", failures);
    return 1;
}
