#include "radiot/rf_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "radiot/errors.hpp"
#include "radiot/rng.hpp"

namespace radiot {

namespace {

// Stable per-device / per-cycle fractions, independent of the noise seed so
// legitimate timing is identical across simulation phases.
double hash01(std::uint64_t a, std::uint64_t b) {
    return static_cast<double>(mix_seed(0x7261646975ULL, a, b) >> 11) * 0x1.0p-53;
}

bool cyclic_active(double t, double period, double burst, double phase01,
                   double jitter_fraction, std::size_t device_index) {
    if (t < 0.0) return false;
    auto k = static_cast<std::int64_t>(std::floor(t / period));
    for (std::int64_t kk = k - 2; kk <= k; ++kk) {
        if (kk < 0) continue;
        double shift = phase01;
        if (jitter_fraction > 0.0)
            shift += jitter_fraction * hash01(device_index, static_cast<std::uint64_t>(kk));
        double start = (static_cast<double>(kk) + shift) * period;
        if (t >= start && t < start + burst) return true;
    }
    return false;
}

}  // namespace

bool device_active(const DeviceProfile& device, std::size_t device_index, double t) {
    const EmissionPattern& p = device.pattern;
    double phase = hash01(device_index, 0x9fa5e);
    switch (p.kind) {
        case EmissionKind::periodic_beacon:
            return cyclic_active(t, p.interval_s, p.burst_s, phase, device.jitter_fraction,
                                 device_index);
        case EmissionKind::duty_cycled:
            return cyclic_active(t, p.on_s + p.off_s, p.on_s, phase,
                                 device.jitter_fraction, device_index);
        case EmissionKind::scheduled: {
            double sod = std::fmod(t, 86400.0);
            if (sod < 0.0) sod += 86400.0;
            for (const auto& w : p.windows)
                if (sod >= w.start_s && sod < w.end_s) return true;
            return false;
        }
    }
    return false;
}

double intensity_offset_db(AttackIntensity level) {
    switch (level) {
        case AttackIntensity::high: return 45.0;
        case AttackIntensity::normal: return 25.0;
        case AttackIntensity::low: return 10.0;
    }
    return 25.0;
}

AttackSpec default_attack_spec(int attack_id) {
    auto band = [](std::uint64_t center, std::uint64_t width) {
        return std::pair<std::uint64_t, std::uint64_t>{center - width / 2,
                                                       center - width / 2 + width};
    };
    AttackSpec a;
    a.attack_id = attack_id;
    switch (attack_id) {
        case 1: {
            a.protocol = "WiFi";
            a.type = "DoS";
            a.intensity = AttackIntensity::high;
            a.duration_s = 1200.0;  // Long (20min)
            std::tie(a.band_start_khz, a.band_end_khz) = band(2430000, 20000);
            a.is_dos = true;
            a.target_device = "wifi_ap";
            a.post_channel_khz = 2412000;
            break;
        }
        case 2:
            a.protocol = "WiFi";
            a.type = "Deauthentification";
            a.intensity = AttackIntensity::normal;
            a.duration_s = 60.0;  // Short (1min)
            std::tie(a.band_start_khz, a.band_end_khz) = band(2437000, 20000);
            break;
        case 3:
            a.protocol = "WiFi";
            a.type = "Rogue AP";
            a.intensity = AttackIntensity::normal;
            a.duration_s = 240.0;  // Long (4min)
            std::tie(a.band_start_khz, a.band_end_khz) = band(2412000, 20000);
            break;
        case 4:
            a.protocol = "BLE";
            a.type = "Man in the Middle";
            a.intensity = AttackIntensity::normal;
            a.duration_s = 240.0;
            a.band_start_khz = 2400000;  // hops across the whole band
            a.band_end_khz = 2500000;
            break;
        case 5:
            a.protocol = "Zigbee";
            a.type = "Fake association";
            a.intensity = AttackIntensity::normal;
            a.duration_s = 60.0;
            std::tie(a.band_start_khz, a.band_end_khz) = band(2470000, 2000);
            break;
        case 6:
            a.protocol = "Zigbee";
            a.type = "Fake data send";
            a.intensity = AttackIntensity::normal;
            a.duration_s = 240.0;
            std::tie(a.band_start_khz, a.band_end_khz) = band(2470000, 2000);
            break;
        case 7:
            a.protocol = "868MHz";
            a.type = "Simulated";
            a.intensity = AttackIntensity::high;
            a.duration_s = 60.0;  // Short (1min)
            std::tie(a.band_start_khz, a.band_end_khz) = band(868000, 1000);
            break;
        case 8: {
            a.protocol = "433MHz";
            a.type = "DoS";
            a.intensity = AttackIntensity::high;
            a.duration_s = 600.0;  // Long (10min)
            std::tie(a.band_start_khz, a.band_end_khz) = band(433000, 400);
            a.is_dos = true;
            a.target_device = "domotic_433";
            a.post_channel_khz = 434000;
            break;
        }
        default:
            throw ConfigError("unknown attack id " + std::to_string(attack_id));
    }
    return a;
}

std::vector<AttackSpec> default_attack_catalog() {
    std::vector<AttackSpec> out;
    for (int id = 1; id <= 8; ++id) out.push_back(default_attack_spec(id));
    return out;
}

std::optional<double> attack_waveform(const AttackSpec& spec, double t_rel,
                                      const NoiseModel& noise) {
    if (spec.attack_id < 1 || spec.attack_id > 8)
        throw ConfigError("unknown attack id " + std::to_string(spec.attack_id));
    if (t_rel < 0.0 || t_rel >= spec.duration_s) return std::nullopt;
    if (spec.is_dos && t_rel >= spec.burst_s) return std::nullopt;  // suppression phase
    return noise.floor_mean_dbm + intensity_offset_db(spec.intensity);
}

CampaignSchedule default_campaign_schedule() {
    CampaignSchedule s;
    double campaigns_end =
        static_cast<double>(s.campaign_count) * (s.campaign_length_s + s.inter_campaign_gap_s);
    s.dos_attacks.push_back({1, campaigns_end + 1200.0});
    s.dos_attacks.push_back({8, campaigns_end + 1200.0 + 1200.0 + 1200.0});
    return s;
}

std::vector<RealizedAttack> realize_schedule(const CampaignSchedule& schedule) {
    std::vector<RealizedAttack> out;

    for (std::size_t c = 0; c < schedule.campaign_count; ++c) {
        double campaign_start = static_cast<double>(c) *
                                (schedule.campaign_length_s + schedule.inter_campaign_gap_s);
        // Attacks start on intra-gap boundaries from the campaign start; the
        // remainder of the campaign carries legitimate traffic only.
        for (std::size_t k = 0; k < schedule.attack_order.size(); ++k) {
            AttackSpec spec = default_attack_spec(schedule.attack_order[k]);
            double start = campaign_start + static_cast<double>(k) * schedule.intra_attack_gap_s;
            if (start + spec.duration_s > campaign_start + schedule.campaign_length_s)
                throw ConfigError("campaign " + std::to_string(c) +
                                  " cannot fit attack " + std::to_string(spec.attack_id));
            out.push_back({std::move(spec), start});
        }
    }
    for (const auto& d : schedule.dos_attacks)
        out.push_back({default_attack_spec(d.attack_id), d.start_s});
    for (const auto& e : schedule.explicit_attacks) {
        if (e.spec.attack_id < 1 || e.spec.attack_id > 8)
            throw ConfigError("unknown attack id " + std::to_string(e.spec.attack_id));
        out.push_back({e.spec, e.start_s});
    }

    std::sort(out.begin(), out.end(),
              [](const RealizedAttack& a, const RealizedAttack& b) {
                  return a.start_s < b.start_s;
              });
    for (std::size_t i = 1; i < out.size(); ++i) {
        double prev_end = out[i - 1].start_s + out[i - 1].spec.duration_s;
        if (out[i].start_s < prev_end)
            throw ConfigError("attack intervals overlap at t=" +
                              std::to_string(out[i].start_s));
    }
    return out;
}

Environment default_environment() {
    Environment env;
    env.probe = default_probe_config();
    env.noise = NoiseModel{-90.0, 2.0, 1};

    auto beacon = [](double interval, double burst) {
        EmissionPattern p;
        p.kind = EmissionKind::periodic_beacon;
        p.interval_s = interval;
        p.burst_s = burst;
        return p;
    };
    auto duty = [](double on, double off) {
        EmissionPattern p;
        p.kind = EmissionKind::duty_cycled;
        p.on_s = on;
        p.off_s = off;
        return p;
    };

    // Reference device population: one profile per deployed device class.
    env.devices.push_back({"wifi_ap", 2437000, 20000, -60.0, duty(2.0, 3.0), 0.1});
    env.devices.push_back({"camera_wifi", 2437000, 20000, -62.0, duty(5.0, 5.0), 0.1});
    env.devices.push_back({"bt_flowerpot", 2440000, 80000, -70.0, duty(0.4, 1.6), 0.2});
    env.devices.push_back({"ble_scale", 2441000, 78000, -68.0, beacon(2.0, 0.3), 0.2});
    env.devices.push_back({"zigbee_bulbs", 2470000, 2000, -60.0, beacon(5.0, 0.5), 0.1});
    {
        EmissionPattern p;
        p.kind = EmissionKind::scheduled;
        p.windows.push_back({3600.0, 5400.0});  // daily cleaning slot
        env.devices.push_back({"hoover_wifi", 2437000, 20000, -60.0, p, 0.0});
    }
    env.devices.push_back({"domotic_433", 433000, 400, -65.0, beacon(15.0, 0.5), 0.1});
    env.devices.push_back({"homeauto_868", 868000, 400, -65.0, beacon(15.0, 0.3), 0.1});
    return env;
}

namespace {

bool band_in_ranges(const ProbeConfig& probe, std::uint64_t lo, std::uint64_t hi) {
    for (const auto& r : probe.ranges)
        if (lo >= r.f_start_khz && hi <= r.f_end_khz) return true;
    return false;
}

}  // namespace

void validate_environment(const Environment& env) {
    env.probe.validate();
    if (env.noise.floor_std_db < 0.0)
        throw ConfigError("noise floor std must be non-negative");
    for (const auto& d : env.devices) {
        if (d.occupied_bandwidth_khz == 0)
            throw ConfigError("device " + d.name + " has zero bandwidth");
        if (!band_in_ranges(env.probe, d.band_lo_khz(), d.band_hi_khz()))
            throw ConfigError("device " + d.name + " band " +
                              FrequencyRange{d.band_lo_khz(), d.band_hi_khz()}.str() +
                              " lies outside the probe ranges");
        if (d.tx_power_dbm <= env.noise.floor_mean_dbm)
            throw ConfigError("device " + d.name + " transmit power must exceed the noise floor");
        if (d.jitter_fraction < 0.0 || d.jitter_fraction >= 1.0)
            throw ConfigError("device " + d.name + " jitter fraction must be in [0,1)");
        const auto& p = d.pattern;
        if (p.kind == EmissionKind::periodic_beacon &&
            (p.interval_s <= 0.0 || p.burst_s <= 0.0 || p.burst_s > p.interval_s))
            throw ConfigError("device " + d.name + " has a bad beacon pattern");
        if (p.kind == EmissionKind::duty_cycled && (p.on_s <= 0.0 || p.off_s <= 0.0))
            throw ConfigError("device " + d.name + " has a bad duty cycle");
        if (p.kind == EmissionKind::scheduled)
            for (const auto& w : p.windows)
                if (w.start_s < 0.0 || w.end_s <= w.start_s || w.end_s > 86400.0)
                    throw ConfigError("device " + d.name + " has a bad daily window");
    }
}

void validate_attacks(const Environment& env, const std::vector<RealizedAttack>& attacks) {
    for (const auto& ra : attacks) {
        const AttackSpec& a = ra.spec;
        if (a.attack_id < 1 || a.attack_id > 8)
            throw ConfigError("unknown attack id " + std::to_string(a.attack_id));
        if (a.band_end_khz <= a.band_start_khz)
            throw ConfigError("attack " + std::to_string(a.attack_id) + " has an empty band");
        if (!band_in_ranges(env.probe, a.band_start_khz, a.band_end_khz))
            throw ConfigError("attack " + std::to_string(a.attack_id) + " band " +
                              FrequencyRange{a.band_start_khz, a.band_end_khz}.str() +
                              " lies outside the probe ranges");
        if (a.duration_s <= 0.0)
            throw ConfigError("attack " + std::to_string(a.attack_id) +
                              " needs a positive duration");
        if (a.is_dos) {
            if (a.target_device.empty())
                throw ConfigError("DoS attack " + std::to_string(a.attack_id) +
                                  " needs a target device");
            const DeviceProfile* target = nullptr;
            for (const auto& d : env.devices)
                if (d.name == a.target_device) target = &d;
            if (!target)
                throw ConfigError("DoS attack " + std::to_string(a.attack_id) +
                                  " targets unknown device '" + a.target_device + "'");
            if (a.post_channel_khz != 0) {
                std::uint64_t lo = a.post_channel_khz - target->occupied_bandwidth_khz / 2;
                std::uint64_t hi = lo + target->occupied_bandwidth_khz;
                if (!band_in_ranges(env.probe, lo, hi))
                    throw ConfigError("DoS attack " + std::to_string(a.attack_id) +
                                      " post-change channel lies outside the probe ranges");
            }
        }
    }
}

namespace {

// Per-device DoS disruption windows, derived once per generate call.
struct Disruption {
    double suppress_from;   // absolute
    double suppress_until;  // = attack end
    double aftermath_until;
    std::uint64_t post_center_khz;  // 0 = unchanged
};

struct DeviceState {
    bool silenced = false;
    bool chattering = false;  // post-DoS reconnection burst: emits continuously
    std::uint64_t center_khz = 0;
};

struct EmitterState {
    std::vector<std::vector<Disruption>> per_device;

    // Suppressed during the attack; for aftermath_s after it the device
    // resumes on the (possibly shifted) channel sending reconnection traffic
    // continuously, then falls back to its normal pattern and channel.
    DeviceState at(std::size_t device_index, const DeviceProfile& d, double t) const {
        DeviceState st;
        st.center_khz = d.center_freq_khz;
        for (const auto& dis : per_device[device_index]) {
            if (t >= dis.suppress_from && t < dis.suppress_until) {
                st.silenced = true;
                return st;
            }
            if (t >= dis.suppress_until && t < dis.aftermath_until) {
                st.chattering = true;
                if (dis.post_center_khz != 0) st.center_khz = dis.post_center_khz;
                return st;
            }
        }
        return st;
    }
};

EmitterState build_emitter_state(const Environment& env,
                                 const std::vector<RealizedAttack>& attacks,
                                 double timeline_origin) {
    EmitterState st;
    st.per_device.resize(env.devices.size());
    for (const auto& ra : attacks) {
        if (!ra.spec.is_dos) continue;
        for (std::size_t i = 0; i < env.devices.size(); ++i) {
            if (env.devices[i].name != ra.spec.target_device) continue;
            double start = timeline_origin + ra.start_s;
            double end = start + ra.spec.duration_s;
            st.per_device[i].push_back({start + std::min(ra.spec.burst_s, ra.spec.duration_s),
                                        end, end + ra.spec.aftermath_s,
                                        ra.spec.post_channel_khz});
        }
    }
    return st;
}

}  // namespace

void generate_sweeps(const Environment& env, const std::vector<RealizedAttack>& attacks,
                     double timeline_origin, const SimPhase& phase,
                     const std::function<void(const Sweep&)>& sink) {
    validate_environment(env);
    validate_attacks(env, attacks);

    const ProbeConfig& probe = env.probe;
    const double T = probe.sweep_interval_s;
    const auto sweep_count = static_cast<std::size_t>(std::floor(phase.duration_s / T));
    EmitterState state = build_emitter_state(env, attacks, timeline_origin);

    struct Band {
        double lo, hi, power;
    };
    std::vector<Band> emitters;

    const std::size_t m = probe.ranges.size();
    std::vector<std::size_t> bins(m);
    for (std::size_t i = 0; i < m; ++i) bins[i] = probe.bins_in_range(i);

    for (std::size_t j = 0; j < sweep_count; ++j) {
        double t = phase.start_time + static_cast<double>(j) * T;

        emitters.clear();
        for (std::size_t i = 0; i < env.devices.size(); ++i) {
            const DeviceProfile& d = env.devices[i];
            DeviceState ds = state.at(i, d, t);
            if (ds.silenced) continue;
            if (!ds.chattering && !device_active(d, i, t)) continue;
            double lo = static_cast<double>(ds.center_khz) -
                        static_cast<double>(d.occupied_bandwidth_khz) / 2.0;
            emitters.push_back(
                {lo, lo + static_cast<double>(d.occupied_bandwidth_khz), d.tx_power_dbm});
        }
        for (const auto& ra : attacks) {
            auto level = attack_waveform(ra.spec, t - (timeline_origin + ra.start_s), env.noise);
            if (!level) continue;
            emitters.push_back({static_cast<double>(ra.spec.band_start_khz),
                                static_cast<double>(ra.spec.band_end_khz), *level});
        }

        // Noise substream keyed by the absolute sweep index: phases can be
        // generated independently and still agree.
        auto abs_index = static_cast<std::uint64_t>(std::llround(t / T));
        Rng rng(mix_seed(env.noise.rng_seed, 0x5107e, abs_index));

        Sweep sweep;
        sweep.timestamp = t;
        sweep.powers.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto& row = sweep.powers[i];
            row.resize(bins[i]);
            double f0 = static_cast<double>(probe.ranges[i].f_start_khz);
            for (std::size_t k = 0; k < bins[i]; ++k) {
                double bin_lo = f0 + static_cast<double>(k) * probe.bin_width_khz;
                double bin_hi = bin_lo + probe.bin_width_khz;
                double p = rng.normal(env.noise.floor_mean_dbm, env.noise.floor_std_db);
                for (const auto& e : emitters)
                    if (bin_lo < e.hi && e.lo < bin_hi) p = std::max(p, e.power);
                row[k] = p;
            }
        }
        sink(sweep);
    }
}

GroundTruthLog ground_truth_for(const Environment& env,
                                const std::vector<RealizedAttack>& attacks,
                                double timeline_origin) {
    GroundTruthLog log;
    for (const auto& ra : attacks) {
        GroundTruthEntry e;
        e.attack_id = ra.spec.attack_id;
        e.start_time = timeline_origin + ra.start_s;
        e.end_time = e.start_time + ra.spec.duration_s;
        e.band_start_khz = ra.spec.band_start_khz;
        e.band_end_khz = ra.spec.band_end_khz;
        if (ra.spec.is_dos && ra.spec.post_channel_khz != 0) {
            // Cover the post-change channel too: the aftermath there is the
            // recognizable effect of the attack.
            for (const auto& d : env.devices) {
                if (d.name != ra.spec.target_device) continue;
                std::uint64_t lo = ra.spec.post_channel_khz - d.occupied_bandwidth_khz / 2;
                std::uint64_t hi = lo + d.occupied_bandwidth_khz;
                e.band_start_khz = std::min(e.band_start_khz, lo);
                e.band_end_khz = std::max(e.band_end_khz, hi);
            }
        }
        log.entries.push_back(e);
    }
    std::sort(log.entries.begin(), log.entries.end(),
              [](const GroundTruthEntry& a, const GroundTruthEntry& b) {
                  return a.start_time < b.start_time;
              });
    return log;
}

std::pair<std::vector<Sweep>, GroundTruthLog> simulate(const Environment& env,
                                                       const CampaignSchedule& schedule,
                                                       double duration_s,
                                                       double start_time) {
    auto attacks = realize_schedule(schedule);
    for (const auto& ra : attacks)
        if (ra.start_s + ra.spec.duration_s > duration_s)
            throw ConfigError("schedule extends past the simulated duration (attack " +
                              std::to_string(ra.spec.attack_id) + " at t=" +
                              std::to_string(ra.start_s) + ")");

    std::vector<Sweep> sweeps;
    generate_sweeps(env, attacks, start_time, {start_time, duration_s},
                    [&](const Sweep& s) { sweeps.push_back(s); });
    return {std::move(sweeps), ground_truth_for(env, attacks, start_time)};
}

void write_ground_truth_csv(const std::string& path, const GroundTruthLog& log) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "attack_id,start_unix,end_unix,band_start_khz,band_end_khz\n";
    char buf[128];
    for (const auto& e : log.entries) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%llu,%llu\n", e.attack_id,
                      e.start_time, e.end_time,
                      static_cast<unsigned long long>(e.band_start_khz),
                      static_cast<unsigned long long>(e.band_end_khz));
        out << buf;
    }
    if (!out) throw IoError("failed writing " + path);
}

GroundTruthLog read_ground_truth_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    GroundTruthLog log;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.empty()) continue;
        GroundTruthEntry e;
        char* p = line.data();
        char* end = nullptr;
        e.attack_id = static_cast<int>(std::strtol(p, &end, 10));
        if (end == p || *end != ',') throw FormatError(path + ": bad ground-truth row");
        p = end + 1;
        e.start_time = std::strtod(p, &end);
        if (*end != ',') throw FormatError(path + ": bad ground-truth row");
        p = end + 1;
        e.end_time = std::strtod(p, &end);
        if (*end != ',') throw FormatError(path + ": bad ground-truth row");
        p = end + 1;
        e.band_start_khz = std::strtoull(p, &end, 10);
        if (*end != ',') throw FormatError(path + ": bad ground-truth row");
        p = end + 1;
        e.band_end_khz = std::strtoull(p, &end, 10);
        log.entries.push_back(e);
    }
    return log;
}

}  // namespace radiot
