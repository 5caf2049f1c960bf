#ifndef RADIOT_RF_SIM_HPP
#define RADIOT_RF_SIM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radiot/spectrum.hpp"

namespace radiot {

struct NoiseModel {
    double floor_mean_dbm = -90.0;
    double floor_std_db = 2.0;
    std::uint64_t rng_seed = 1;
};

enum class EmissionKind { periodic_beacon, duty_cycled, scheduled };

// Daily window in seconds since UTC midnight, [start_s, end_s).
struct DailyWindow {
    double start_s = 0.0;
    double end_s = 0.0;
};

struct EmissionPattern {
    EmissionKind kind = EmissionKind::periodic_beacon;
    double interval_s = 1.0;  // periodic_beacon
    double burst_s = 0.1;
    double on_s = 1.0;  // duty_cycled
    double off_s = 1.0;
    std::vector<DailyWindow> windows;  // scheduled: continuous inside each window
};

struct DeviceProfile {
    std::string name;
    std::uint64_t center_freq_khz = 0;
    std::uint64_t occupied_bandwidth_khz = 0;
    double tx_power_dbm = -60.0;
    EmissionPattern pattern;
    double jitter_fraction = 0.0;  // [0,1): per-cycle start jitter

    std::uint64_t band_lo_khz() const { return center_freq_khz - occupied_bandwidth_khz / 2; }
    std::uint64_t band_hi_khz() const { return band_lo_khz() + occupied_bandwidth_khz; }
};

// Activity of a device at absolute time t, ignoring attack suppression.
// Phase and jitter derive deterministically from the device index alone so
// that legitimate behavior is identical across simulation phases and seeds.
bool device_active(const DeviceProfile& device, std::size_t device_index, double t);

enum class AttackIntensity { high, normal, low };

// Label -> power offset above the noise floor mean. Normal sits at legitimate
// device level; High dominates everything.
double intensity_offset_db(AttackIntensity level);

struct AttackSpec {
    int attack_id = 0;  // 1..8
    std::string protocol;
    std::string type;
    AttackIntensity intensity = AttackIntensity::normal;
    double duration_s = 60.0;
    std::uint64_t band_start_khz = 0;
    std::uint64_t band_end_khz = 0;

    // DoS semantics (ids 1 and 8): a short high-power burst, then suppression
    // of the target device for the rest of the attack; on attack end the
    // target resumes on post_channel_khz, sending reconnection traffic
    // continuously for aftermath_s, before reverting to its normal pattern
    // and channel.
    bool is_dos = false;
    double burst_s = 10.0;
    std::string target_device;
    std::uint64_t post_channel_khz = 0;  // 0 = no channel change
    double aftermath_s = 240.0;
};

// The built-in catalog rows with this artifact's DoS linkage defaults.
AttackSpec default_attack_spec(int attack_id);
std::vector<AttackSpec> default_attack_catalog();

// Emission level of the attack at t_rel seconds after its start, or nullopt
// while it emits nothing (outside its span, or DoS past the burst).
// Throws ConfigError for an unknown attack id.
std::optional<double> attack_waveform(const AttackSpec& spec, double t_rel,
                                      const NoiseModel& noise);

struct CampaignSchedule {
    std::size_t campaign_count = 20;
    double campaign_length_s = 13200.0;     // 3 h 40 min
    double inter_campaign_gap_s = 3600.0;   // 1 h
    double intra_attack_gap_s = 1200.0;     // 20 min between starts
    std::vector<int> attack_order = {2, 3, 4, 5, 6, 7};

    struct DosEntry {
        int attack_id = 1;
        double start_s = 0.0;
    };
    std::vector<DosEntry> dos_attacks;  // scheduled once, outside campaigns

    struct ExplicitEntry {
        AttackSpec spec;
        double start_s = 0.0;
    };
    std::vector<ExplicitEntry> explicit_attacks;  // fully custom injections
};

// Paper-shaped default: 20 campaigns of attacks 2..7, DoS attacks 1 and 8
// once each after the campaigns.
CampaignSchedule default_campaign_schedule();

struct RealizedAttack {
    AttackSpec spec;
    double start_s = 0.0;  // relative to the timeline origin
};

// Expands campaigns + DoS + explicit entries into a time-sorted list.
// Validates attack ids and that no two attack intervals overlap.
std::vector<RealizedAttack> realize_schedule(const CampaignSchedule& schedule);

struct GroundTruthEntry {
    int attack_id = 0;
    double start_time = 0.0;  // absolute unix seconds (houses the send time)
    double end_time = 0.0;
    std::uint64_t band_start_khz = 0;
    std::uint64_t band_end_khz = 0;
};

struct GroundTruthLog {
    std::vector<GroundTruthEntry> entries;  // sorted, non-overlapping
};

void write_ground_truth_csv(const std::string& path, const GroundTruthLog& log);
GroundTruthLog read_ground_truth_csv(const std::string& path);

struct Environment {
    ProbeConfig probe;
    NoiseModel noise;
    std::vector<DeviceProfile> devices;
};

// Smart-home reference environment: 8 device profiles over the default probe
// ranges with a (-90 dBm, 2 dB) noise floor.
Environment default_environment();

// Throws ConfigError when a device or attack band falls outside the probe
// ranges or a profile is inconsistent.
void validate_environment(const Environment& env);
void validate_attacks(const Environment& env, const std::vector<RealizedAttack>& attacks);

// One contiguous capture: sweeps at start_time + j*T, j in [0, floor(duration/T)).
struct SimPhase {
    double start_time = 0.0;  // absolute unix seconds
    double duration_s = 0.0;
};

// Streaming core. Every bin power is max(noise draw, strongest active emitter
// overlapping the bin). Attack start_s values are relative to timeline_origin.
// Deterministic: the noise substream for a sweep derives from (seed, absolute
// sweep index), so disjoint phases can generate in parallel.
void generate_sweeps(const Environment& env, const std::vector<RealizedAttack>& attacks,
                     double timeline_origin, const SimPhase& phase,
                     const std::function<void(const Sweep&)>& sink);

// Ground truth for the realized attacks on an absolute timeline. For a DoS
// with a channel change the recorded band covers both the attack band and the
// target's post-change band, so aftermath alarms are creditable.
GroundTruthLog ground_truth_for(const Environment& env,
                                const std::vector<RealizedAttack>& attacks,
                                double timeline_origin);

// Batch form of the simulator: realizes the schedule, validates it against
// the duration, and returns the sweep stream plus the ground-truth log.
std::pair<std::vector<Sweep>, GroundTruthLog> simulate(const Environment& env,
                                                       const CampaignSchedule& schedule,
                                                       double duration_s,
                                                       double start_time = 0.0);

}  // namespace radiot

#endif  // RADIOT_RF_SIM_HPP
