#ifndef RADIOT_PIPELINE_HPP
#define RADIOT_PIPELINE_HPP

#include <string>
#include <vector>

#include "radiot/eval.hpp"
#include "radiot/run_config.hpp"

namespace radiot {

// File layout inside a run directory:
//   manifest.json            config echo + hash + phase spans + stage records
//   clean.wf                 training/testing capture
//   heldout.wf               optional attack-free capture
//   attack.wf                capture with injections
//   ground_truth.csv         realized attack intervals
//   slices/<id>/             per-slice artifacts (scaler/model/profile JSON,
//                            feature CSVs, alarms, error curves)
//   report.csv, report.txt   attack-phase metrics summary
//   report_heldout.csv/.txt  heldout metrics when heldout.wf exists

struct PhaseSpans {
    std::vector<SimPhase> clean;
    std::vector<SimPhase> heldout;
    std::vector<SimPhase> attack;
};

// Capture phases implied by the configuration (sessions or flat durations).
PhaseSpans plan_phases(const RunConfig& cfg);

// Origin of the attack timeline: schedule start_s values are relative to it.
double attack_timeline_origin(const RunConfig& cfg);

struct SimulateResult {
    std::size_t clean_waterfalls = 0;
    std::size_t heldout_waterfalls = 0;
    std::size_t attack_waterfalls = 0;
    std::size_t attacks_realized = 0;
};

SimulateResult run_simulate(const RunConfig& cfg, const std::string& out_dir);

struct IngestResult {
    std::size_t waterfalls = 0;
    std::size_t sweeps = 0;
    std::size_t malformed_records = 0;
    std::size_t incomplete_sweeps = 0;
    std::size_t dropped_sweeps = 0;
};

// CSV capture -> <name>.wf in the run directory.
IngestResult run_ingest(const RunConfig& cfg, const std::string& csv_path,
                        const std::string& out_dir, const std::string& name);

struct PipelineResult {
    MetricsReport report;           // attack phase (or test replay when no attacks)
    MetricsReport heldout_report;   // present when heldout.wf exists
    bool has_heldout = false;
};

// Per slice: chronological 70/30 split, scaler + model fit on train, error
// stats + threshold on test, detection on the attack capture, evaluation.
// All intermediate artifacts persist under the run directory.
PipelineResult run_pipeline(const RunConfig& cfg, const std::string& out_dir,
                            bool reuse_models = false);

// Detection over an arbitrary waterfall file using the profiles of a prior
// pipeline run; writes alarms_<tag>.csv and curve_<tag>.csv per slice.
void run_detect(const RunConfig& cfg, const std::string& out_dir,
                const std::string& waterfall_file, const std::string& tag);

// Matches alarms_<tag>.csv against a ground-truth CSV (empty path = no
// attacks) and writes report_<tag>.csv/.txt.
MetricsReport run_evaluate(const RunConfig& cfg, const std::string& out_dir,
                           const std::string& tag, const std::string& truth_csv);

// Per-slice feature streams extracted from a waterfall file; the sliding
// window resets at capture discontinuities.
std::vector<std::vector<FeatureVector>> extract_feature_streams(
    const std::string& waterfall_file, const std::vector<FrequencyRange>& slices);

}  // namespace radiot

#endif  // RADIOT_PIPELINE_HPP
