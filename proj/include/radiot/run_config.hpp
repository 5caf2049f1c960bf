#ifndef RADIOT_RUN_CONFIG_HPP
#define RADIOT_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radiot/autoencoder.hpp"
#include "radiot/detector.hpp"
#include "radiot/rf_sim.hpp"

namespace radiot {

// One configured analysis slice: the full band, optionally subdivided into
// equal sub-slices that are analyzed alongside it.
struct SliceSpec {
    FrequencyRange band;
    std::uint64_t subdivide_khz = 0;  // 0 = no subdivision
};

// Repeated daily capture windows. Desk-scale runs capture the same
// wall-clock window on consecutive days so every phase sees the same
// time-of-day support, the way a multi-day deployment would.
struct SessionPlan {
    double daily_window_start_s = 0.0;     // seconds after midnight UTC
    double daily_window_length_s = 14400;  // per-day capture length
    std::vector<int> clean_days;
    std::vector<int> heldout_days;
    std::vector<int> attack_days;
};

// The operation-level default grid is {0.1..0.9}; pipeline runs default to
// this extended grid because a max-over-80-features score concentrates near
// 1 on clean data and the coarse grid saturates.
std::vector<double> default_calibration_grid();

struct RunConfig {
    Environment env;
    CampaignSchedule schedule;
    bool has_schedule = false;

    double sim_start_unix = 0.0;  // midnight-aligned origin of day 0

    std::optional<SessionPlan> sessions;
    // Flat mode (no sessions): consecutive phases starting at sim_start_unix.
    double clean_duration_s = 7200.0;
    double heldout_duration_s = 0.0;
    double attack_duration_s = 0.0;

    std::vector<SliceSpec> slices;
    double split_fraction = 0.7;
    TrainingConfig training;
    Activation training_activation = Activation::softplus;
    std::vector<double> calibration_grid = default_calibration_grid();
    std::size_t fp_target = 0;
    ScoreAggregation aggregation = ScoreAggregation::max;
    double window_s = 300.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Parses the run-config JSON document. An "environment_file" key pulls the
// probe/noise/devices/schedule from a separate JSON document; inline keys
// override nothing once the file is given. Paths resolve against base_dir.
RunConfig run_config_from_json(const std::string& text, const std::string& base_dir);
RunConfig load_run_config(const std::string& path);

// Canonical resolved echo of the configuration (environment inlined); the
// manifest embeds this and hashes it.
std::string run_config_to_json(const RunConfig& cfg);

// FNV-1a over the canonical echo, as a hex string.
std::string run_config_hash(const RunConfig& cfg);

// Expands slice specs into the analyzed slice list: each full band followed
// by its sub-slices.
std::vector<FrequencyRange> expanded_slices(const RunConfig& cfg);

}  // namespace radiot

#endif  // RADIOT_RUN_CONFIG_HPP
