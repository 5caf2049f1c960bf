// radiot command-line front end. Everything goes through the C API in
// radiot.h; this binary owns argument parsing and exit codes only.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "radiot.h"

namespace {

struct SessionDeleter {
    void operator()(radiot_session* s) const { radiot_session_free(s); }
};
using SessionPtr = std::unique_ptr<radiot_session, SessionDeleter>;

const char* status_label(radiot_status st) {
    switch (st) {
        case RADIOT_OK: return "ok";
        case RADIOT_ERR_CONFIG: return "configuration error";
        case RADIOT_ERR_IO: return "I/O error";
        case RADIOT_ERR_FORMAT: return "format error";
        case RADIOT_ERR_TRAINING: return "training error";
        case RADIOT_ERR_INTERNAL: return "internal error";
    }
    return "error";
}

int finish(radiot_session* session, radiot_status st) {
    if (st == RADIOT_OK) return 0;
    std::fprintf(stderr, "radiot: %s: %s\n", status_label(st),
                 radiot_session_last_error(session));
    return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radiot — radio-spectrum intrusion detection pipeline"};
    app.require_subcommand(1);
    app.fallthrough();  // --config/--out/--seed may follow the subcommand

    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    app.add_option("--config", config_path, "run configuration JSON")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "run output directory")->required();
    app.add_option("--seed", seed, "override the config seed");

    auto* simulate = app.add_subcommand("simulate", "synthesize captures + ground truth");

    std::string csv_path, dataset_name = "clean";
    auto* ingest = app.add_subcommand("ingest", "parse a sweep-tool CSV capture");
    ingest->add_option("--csv", csv_path, "sweep CSV file")->required()->check(CLI::ExistingFile);
    ingest->add_option("--name", dataset_name, "output dataset name (<name>.wf)");

    bool reuse_models = false;
    auto* pipeline = app.add_subcommand("pipeline", "train, calibrate, detect, evaluate");
    pipeline->add_flag("--reuse-models", reuse_models, "load saved per-slice models");

    std::string wf_path, tag = "detect";
    auto* detect = app.add_subcommand("detect", "score a waterfall file with saved profiles");
    detect->add_option("--input", wf_path, "waterfall file")->required()->check(CLI::ExistingFile);
    detect->add_option("--tag", tag, "artifact tag (alarms_<tag>.csv)");

    std::string eval_tag = "detect", truth_csv;
    auto* evaluate = app.add_subcommand("evaluate", "match alarms against ground truth");
    evaluate->add_option("--tag", eval_tag, "alarm artifact tag");
    evaluate->add_option("--truth", truth_csv, "ground-truth CSV (omit for attack-free data)");

    CLI11_PARSE(app, argc, argv);

    SessionPtr session(radiot_session_new(config_path.c_str(), out_dir.c_str()));
    if (!session) {
        std::fprintf(stderr, "radiot: cannot create session\n");
        return 1;
    }
    if (seed >= 0) radiot_session_set_seed(session.get(), static_cast<std::uint64_t>(seed));

    if (simulate->parsed())
        return finish(session.get(), radiot_run_simulate(session.get()));
    if (ingest->parsed())
        return finish(session.get(),
                      radiot_run_ingest(session.get(), csv_path.c_str(), dataset_name.c_str()));
    if (pipeline->parsed())
        return finish(session.get(), radiot_run_pipeline(session.get(), reuse_models ? 1 : 0));
    if (detect->parsed())
        return finish(session.get(),
                      radiot_run_detect(session.get(), wf_path.c_str(), tag.c_str()));
    if (evaluate->parsed())
        return finish(session.get(),
                      radiot_run_evaluate(session.get(), eval_tag.c_str(),
                                          truth_csv.empty() ? nullptr : truth_csv.c_str()));
    return 0;
}
