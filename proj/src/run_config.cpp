#include "radiot/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "radiot/errors.hpp"

namespace radiot {

using nlohmann::json;

std::vector<double> default_calibration_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
    for (int k = 2; k <= 15; ++k) grid.push_back(1.0 - std::pow(10.0, -k));
    // Terminate at the largest representable score: even a testing split whose
    // maximum hits the numeric score ceiling calibrates without saturating.
    grid.push_back(std::nextafter(1.0, 0.0));
    return grid;
}

void RunConfig::validate() const {
    validate_environment(env);
    if (split_fraction <= 0.0 || split_fraction >= 1.0)
        throw ConfigError("split fraction must lie strictly in (0,1)");
    if (slices.empty()) throw ConfigError("slice list must not be empty");
    if (window_s <= 0.0) throw ConfigError("evaluation window must be positive");
    if (calibration_grid.empty()) throw ConfigError("calibration grid must not be empty");
    if (sessions) {
        const auto& s = *sessions;
        if (s.daily_window_length_s <= 0.0 || s.daily_window_start_s < 0.0 ||
            s.daily_window_start_s + s.daily_window_length_s > 86400.0)
            throw ConfigError("session window must fit within one day");
        if (s.clean_days.empty()) throw ConfigError("sessions need at least one clean day");
    } else if (clean_duration_s <= 0.0) {
        throw ConfigError("clean duration must be positive");
    }
    for (const auto& spec : slices) {
        if (spec.band.f_start_khz >= spec.band.f_end_khz)
            throw ConfigError("slice band " + spec.band.str() + " is empty or reversed");
        if (spec.subdivide_khz != 0 &&
            spec.band.width_khz() % spec.subdivide_khz != 0)
            throw ConfigError("slice band " + spec.band.str() +
                              " is not a whole number of " +
                              std::to_string(spec.subdivide_khz) + " KHz sub-slices");
    }
}

std::vector<FrequencyRange> expanded_slices(const RunConfig& cfg) {
    std::vector<FrequencyRange> out;
    for (const auto& spec : cfg.slices) {
        out.push_back(spec.band);
        if (spec.subdivide_khz == 0) continue;
        for (std::uint64_t lo = spec.band.f_start_khz; lo < spec.band.f_end_khz;
             lo += spec.subdivide_khz)
            out.push_back({lo, lo + spec.subdivide_khz});
    }
    return out;
}

namespace {

FrequencyRange range_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw FormatError("frequency range must be a two-element array [start,end] in KHz");
    return {j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>()};
}

json range_to_json(const FrequencyRange& r) { return json::array({r.f_start_khz, r.f_end_khz}); }

ProbeConfig probe_from_json(const json& j) {
    ProbeConfig p = default_probe_config();
    if (j.contains("ranges")) {
        p.ranges.clear();
        for (const auto& r : j["ranges"]) p.ranges.push_back(range_from_json(r));
    }
    if (j.contains("bin_width_khz")) p.bin_width_khz = j["bin_width_khz"].get<double>();
    if (j.contains("sweep_interval_s")) p.sweep_interval_s = j["sweep_interval_s"].get<double>();
    if (j.contains("sweeps_per_waterfall"))
        p.sweeps_per_waterfall = j["sweeps_per_waterfall"].get<std::uint32_t>();
    if (j.contains("probe_id")) p.probe_id = j["probe_id"].get<std::string>();
    return p;
}

json probe_to_json(const ProbeConfig& p) {
    json j;
    j["ranges"] = json::array();
    for (const auto& r : p.ranges) j["ranges"].push_back(range_to_json(r));
    j["bin_width_khz"] = p.bin_width_khz;
    j["sweep_interval_s"] = p.sweep_interval_s;
    j["sweeps_per_waterfall"] = p.sweeps_per_waterfall;
    j["probe_id"] = p.probe_id;
    return j;
}

AttackIntensity intensity_from_string(const std::string& s) {
    if (s == "High" || s == "high") return AttackIntensity::high;
    if (s == "Normal" || s == "normal") return AttackIntensity::normal;
    if (s == "Low" || s == "low") return AttackIntensity::low;
    throw FormatError("unknown intensity '" + s + "'");
}

std::string intensity_to_string(AttackIntensity i) {
    switch (i) {
        case AttackIntensity::high: return "High";
        case AttackIntensity::normal: return "Normal";
        case AttackIntensity::low: return "Low";
    }
    return "Normal";
}

EmissionPattern pattern_from_json(const json& j) {
    EmissionPattern p;
    std::string kind = j.at("type").get<std::string>();
    if (kind == "beacon") {
        p.kind = EmissionKind::periodic_beacon;
        p.interval_s = j.at("interval_s").get<double>();
        p.burst_s = j.at("burst_s").get<double>();
    } else if (kind == "duty") {
        p.kind = EmissionKind::duty_cycled;
        p.on_s = j.at("on_s").get<double>();
        p.off_s = j.at("off_s").get<double>();
    } else if (kind == "scheduled") {
        p.kind = EmissionKind::scheduled;
        for (const auto& w : j.at("windows"))
            p.windows.push_back({w[0].get<double>(), w[1].get<double>()});
    } else {
        throw FormatError("unknown emission pattern '" + kind + "'");
    }
    return p;
}

json pattern_to_json(const EmissionPattern& p) {
    json j;
    switch (p.kind) {
        case EmissionKind::periodic_beacon:
            j["type"] = "beacon";
            j["interval_s"] = p.interval_s;
            j["burst_s"] = p.burst_s;
            break;
        case EmissionKind::duty_cycled:
            j["type"] = "duty";
            j["on_s"] = p.on_s;
            j["off_s"] = p.off_s;
            break;
        case EmissionKind::scheduled: {
            j["type"] = "scheduled";
            j["windows"] = json::array();
            for (const auto& w : p.windows) j["windows"].push_back(json::array({w.start_s, w.end_s}));
            break;
        }
    }
    return j;
}

DeviceProfile device_from_json(const json& j) {
    DeviceProfile d;
    d.name = j.at("name").get<std::string>();
    d.center_freq_khz = j.at("center_khz").get<std::uint64_t>();
    d.occupied_bandwidth_khz = j.at("width_khz").get<std::uint64_t>();
    d.tx_power_dbm = j.at("tx_power_dbm").get<double>();
    d.pattern = pattern_from_json(j.at("pattern"));
    if (j.contains("jitter")) d.jitter_fraction = j["jitter"].get<double>();
    return d;
}

json device_to_json(const DeviceProfile& d) {
    json j;
    j["name"] = d.name;
    j["center_khz"] = d.center_freq_khz;
    j["width_khz"] = d.occupied_bandwidth_khz;
    j["tx_power_dbm"] = d.tx_power_dbm;
    j["pattern"] = pattern_to_json(d.pattern);
    j["jitter"] = d.jitter_fraction;
    return j;
}

AttackSpec attack_from_json(const json& j) {
    AttackSpec a = default_attack_spec(j.at("attack_id").get<int>());
    if (j.contains("intensity")) a.intensity = intensity_from_string(j["intensity"].get<std::string>());
    if (j.contains("duration_s")) a.duration_s = j["duration_s"].get<double>();
    if (j.contains("band")) {
        FrequencyRange r = range_from_json(j["band"]);
        a.band_start_khz = r.f_start_khz;
        a.band_end_khz = r.f_end_khz;
    } else if (j.contains("center_khz")) {
        auto center = j["center_khz"].get<std::uint64_t>();
        auto width = j.contains("width_khz") ? j["width_khz"].get<std::uint64_t>()
                                             : a.band_end_khz - a.band_start_khz;
        a.band_start_khz = center - width / 2;
        a.band_end_khz = a.band_start_khz + width;
    }
    if (j.contains("burst_s")) a.burst_s = j["burst_s"].get<double>();
    if (j.contains("aftermath_s")) a.aftermath_s = j["aftermath_s"].get<double>();
    if (j.contains("target_device")) a.target_device = j["target_device"].get<std::string>();
    if (j.contains("post_channel_khz")) a.post_channel_khz = j["post_channel_khz"].get<std::uint64_t>();
    return a;
}

json attack_to_json(const AttackSpec& a) {
    json j;
    j["attack_id"] = a.attack_id;
    j["intensity"] = intensity_to_string(a.intensity);
    j["duration_s"] = a.duration_s;
    j["band"] = json::array({a.band_start_khz, a.band_end_khz});
    if (a.is_dos) {
        j["burst_s"] = a.burst_s;
        j["aftermath_s"] = a.aftermath_s;
        j["target_device"] = a.target_device;
        j["post_channel_khz"] = a.post_channel_khz;
    }
    return j;
}

CampaignSchedule schedule_from_json(const json& j) {
    CampaignSchedule s;
    s.campaign_count = 0;  // only what the document asks for
    if (j.contains("campaigns") && !j["campaigns"].is_null()) {
        const json& c = j["campaigns"];
        s.campaign_count = c.value("count", std::size_t{20});
        s.campaign_length_s = c.value("length_s", 13200.0);
        s.inter_campaign_gap_s = c.value("gap_s", 3600.0);
        s.intra_attack_gap_s = c.value("intra_gap_s", 1200.0);
        if (c.contains("order")) s.attack_order = c["order"].get<std::vector<int>>();
    }
    if (j.contains("dos")) {
        for (const auto& d : j["dos"])
            s.dos_attacks.push_back(
                {d.at("attack_id").get<int>(), d.at("start_s").get<double>()});
    }
    if (j.contains("explicit")) {
        for (const auto& e : j["explicit"])
            s.explicit_attacks.push_back({attack_from_json(e), e.at("start_s").get<double>()});
    }
    return s;
}

json schedule_to_json(const CampaignSchedule& s) {
    json j;
    if (s.campaign_count > 0) {
        j["campaigns"]["count"] = s.campaign_count;
        j["campaigns"]["length_s"] = s.campaign_length_s;
        j["campaigns"]["gap_s"] = s.inter_campaign_gap_s;
        j["campaigns"]["intra_gap_s"] = s.intra_attack_gap_s;
        j["campaigns"]["order"] = s.attack_order;
    }
    j["dos"] = json::array();
    for (const auto& d : s.dos_attacks)
        j["dos"].push_back({{"attack_id", d.attack_id}, {"start_s", d.start_s}});
    j["explicit"] = json::array();
    for (const auto& e : s.explicit_attacks) {
        json je = attack_to_json(e.spec);
        je["start_s"] = e.start_s;
        j["explicit"].push_back(std::move(je));
    }
    return j;
}

void env_from_json(const json& j, RunConfig& cfg) {
    if (j.contains("probe")) cfg.env.probe = probe_from_json(j["probe"]);
    if (j.contains("noise")) {
        cfg.env.noise.floor_mean_dbm = j["noise"].value("floor_mean_dbm", -90.0);
        cfg.env.noise.floor_std_db = j["noise"].value("floor_std_db", 2.0);
    }
    if (j.contains("devices")) {
        if (j["devices"].is_string() && j["devices"].get<std::string>() == "default") {
            cfg.env.devices = default_environment().devices;
        } else {
            cfg.env.devices.clear();
            for (const auto& d : j["devices"]) cfg.env.devices.push_back(device_from_json(d));
        }
    }
    if (j.contains("schedule") && !j["schedule"].is_null()) {
        cfg.schedule = schedule_from_json(j["schedule"]);
        cfg.has_schedule = true;
    }
    if (j.contains("sim_start_unix")) cfg.sim_start_unix = j["sim_start_unix"].get<double>();
}

}  // namespace

RunConfig run_config_from_json(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("run config JSON: ") + e.what());
    }

    RunConfig cfg;
    cfg.env = default_environment();
    cfg.calibration_grid = default_calibration_grid();

    try {
        if (j.contains("environment_file")) {
            std::string path = j["environment_file"].get<std::string>();
            if (!path.empty() && path.front() != '/') path = base_dir + "/" + path;
            std::ifstream in(path);
            if (!in) throw IoError("cannot open environment file " + path);
            std::stringstream ss;
            ss << in.rdbuf();
            json env_doc = json::parse(ss.str());
            env_from_json(env_doc, cfg);
        }
        env_from_json(j, cfg);  // inline keys

        if (j.contains("sessions") && !j["sessions"].is_null()) {
            SessionPlan plan;
            const json& s = j["sessions"];
            plan.daily_window_start_s = s.value("window_start_s", 0.0);
            plan.daily_window_length_s = s.value("window_length_s", 14400.0);
            if (s.contains("clean_days")) plan.clean_days = s["clean_days"].get<std::vector<int>>();
            if (s.contains("heldout_days"))
                plan.heldout_days = s["heldout_days"].get<std::vector<int>>();
            if (s.contains("attack_days"))
                plan.attack_days = s["attack_days"].get<std::vector<int>>();
            cfg.sessions = plan;
        }
        cfg.clean_duration_s = j.value("clean_duration_s", 7200.0);
        cfg.heldout_duration_s = j.value("heldout_duration_s", 0.0);
        cfg.attack_duration_s = j.value("attack_duration_s", 0.0);

        if (j.contains("slices")) {
            cfg.slices.clear();
            for (const auto& s : j["slices"]) {
                SliceSpec spec;
                spec.band = range_from_json(s.at("band"));
                spec.subdivide_khz = s.value("subdivide_khz", std::uint64_t{0});
                cfg.slices.push_back(spec);
            }
        } else {
            for (const auto& r : cfg.env.probe.ranges) cfg.slices.push_back({r, 0});
        }

        cfg.split_fraction = j.value("split_fraction", 0.7);
        if (j.contains("training")) {
            const json& t = j["training"];
            cfg.training.learning_rate = t.value("learning_rate", 1e-3);
            cfg.training.batch_size = t.value("batch_size", std::size_t{32});
            cfg.training.max_epochs = t.value("max_epochs", std::size_t{200});
            cfg.training.momentum = t.value("momentum", 0.9);
            cfg.training.min_improvement = t.value("min_improvement", 1e-7);
            cfg.training.patience = t.value("patience", std::size_t{10});
            cfg.training.fit_target_fraction = t.value("fit_target_fraction", 0.0);
        }
        if (j.contains("activation")) {
            std::string a = j["activation"].get<std::string>();
            // applied when the pipeline builds the architecture
            if (a != "softplus" && a != "sigmoid")
                throw FormatError("unknown activation '" + a + "'");
            cfg.training_activation = a == "softplus" ? Activation::softplus : Activation::sigmoid;
        }
        if (j.contains("calibration")) {
            const json& c = j["calibration"];
            if (c.contains("grid")) {
                cfg.calibration_grid = c["grid"].get<std::vector<double>>();
                // The score ceiling (largest double below 1) is not
                // expressible in JSON; terminate every grid with it so
                // calibration cannot saturate on ceiling-valued test scores.
                double cap = std::nextafter(1.0, 0.0);
                if (!cfg.calibration_grid.empty() && cfg.calibration_grid.back() < cap)
                    cfg.calibration_grid.push_back(cap);
            }
            cfg.fp_target = c.value("fp_target", std::size_t{0});
        }
        if (j.contains("score_aggregation"))
            cfg.aggregation = j["score_aggregation"].get<std::string>() == "mean"
                                  ? ScoreAggregation::mean
                                  : ScoreAggregation::max;
        cfg.window_s = j.value("window_s", 300.0);
        cfg.seed = j.value("seed", std::uint64_t{1});
    } catch (const json::exception& e) {
        throw FormatError(std::string("run config JSON: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open run config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string base = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) base = path.substr(0, slash);
    return run_config_from_json(ss.str(), base);
}

std::string run_config_to_json(const RunConfig& cfg) {
    json j;
    j["probe"] = probe_to_json(cfg.env.probe);
    j["noise"]["floor_mean_dbm"] = cfg.env.noise.floor_mean_dbm;
    j["noise"]["floor_std_db"] = cfg.env.noise.floor_std_db;
    j["devices"] = json::array();
    for (const auto& d : cfg.env.devices) j["devices"].push_back(device_to_json(d));
    if (cfg.has_schedule) j["schedule"] = schedule_to_json(cfg.schedule);
    j["sim_start_unix"] = cfg.sim_start_unix;
    if (cfg.sessions) {
        j["sessions"]["window_start_s"] = cfg.sessions->daily_window_start_s;
        j["sessions"]["window_length_s"] = cfg.sessions->daily_window_length_s;
        j["sessions"]["clean_days"] = cfg.sessions->clean_days;
        j["sessions"]["heldout_days"] = cfg.sessions->heldout_days;
        j["sessions"]["attack_days"] = cfg.sessions->attack_days;
    } else {
        j["clean_duration_s"] = cfg.clean_duration_s;
        j["heldout_duration_s"] = cfg.heldout_duration_s;
        j["attack_duration_s"] = cfg.attack_duration_s;
    }
    j["slices"] = json::array();
    for (const auto& s : cfg.slices) {
        json js;
        js["band"] = range_to_json(s.band);
        if (s.subdivide_khz) js["subdivide_khz"] = s.subdivide_khz;
        j["slices"].push_back(std::move(js));
    }
    j["split_fraction"] = cfg.split_fraction;
    j["training"]["learning_rate"] = cfg.training.learning_rate;
    j["training"]["batch_size"] = cfg.training.batch_size;
    j["training"]["max_epochs"] = cfg.training.max_epochs;
    j["training"]["momentum"] = cfg.training.momentum;
    j["training"]["min_improvement"] = cfg.training.min_improvement;
    j["training"]["patience"] = cfg.training.patience;
    j["training"]["fit_target_fraction"] = cfg.training.fit_target_fraction;
    j["activation"] =
        cfg.training_activation == Activation::softplus ? "softplus" : "sigmoid";
    j["calibration"]["grid"] = cfg.calibration_grid;
    j["calibration"]["fp_target"] = cfg.fp_target;
    j["score_aggregation"] = cfg.aggregation == ScoreAggregation::max ? "max" : "mean";
    j["window_s"] = cfg.window_s;
    j["seed"] = cfg.seed;
    return j.dump(2);
}

std::string run_config_hash(const RunConfig& cfg) {
    std::string text = run_config_to_json(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace radiot
