#include "radiot/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "radiot/errors.hpp"
#include "radiot/rng.hpp"
#include "radiot/sweep_csv.hpp"
#include "radiot/waterfall_io.hpp"

namespace radiot {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

std::string slice_dir(const std::string& out_dir, const std::string& slice_id) {
    return out_dir + "/slices/" + slice_id;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Contiguous coverage spans from a sorted list of times with nominal step.
std::vector<SimPhase> spans_from_times(const std::vector<double>& times, double step) {
    std::vector<SimPhase> spans;
    if (times.empty()) return spans;
    double begin = times.front();
    double prev = times.front();
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] - prev > 1.5 * step) {
            spans.push_back({begin, prev + step - begin});
            begin = times[i];
        }
        prev = times[i];
    }
    spans.push_back({begin, prev + step - begin});
    return spans;
}

json phase_list_to_json(const std::vector<SimPhase>& phases) {
    json j = json::array();
    for (const auto& p : phases) j.push_back(json::array({p.start_time, p.duration_s}));
    return j;
}

json load_manifest(const std::string& out_dir) {
    std::ifstream in(out_dir + "/manifest.json");
    if (!in) return json::object();
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        throw FormatError(out_dir + "/manifest.json: " + std::string(e.what()));
    }
}

void store_manifest(const std::string& out_dir, const json& manifest) {
    std::ofstream out(out_dir + "/manifest.json", std::ios::trunc);
    if (!out) throw IoError("cannot write " + out_dir + "/manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw IoError("failed writing manifest");
}

void init_manifest(json& manifest, const RunConfig& cfg, const PhaseSpans& phases) {
    manifest["format_version"] = 1;
    manifest["config"] = json::parse(run_config_to_json(cfg));
    manifest["config_hash"] = run_config_hash(cfg);
    manifest["seed"] = cfg.seed;
    manifest["phases"]["clean"] = phase_list_to_json(phases.clean);
    manifest["phases"]["heldout"] = phase_list_to_json(phases.heldout);
    manifest["phases"]["attack"] = phase_list_to_json(phases.attack);
}

struct StreamWriteResult {
    std::size_t waterfalls = 0;
};

// Simulates a set of phases straight into a waterfall file.
StreamWriteResult simulate_phases_to_file(const RunConfig& cfg,
                                          const std::vector<RealizedAttack>& attacks,
                                          double timeline_origin,
                                          const std::vector<SimPhase>& phases,
                                          const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    StreamWriteResult res;
    for (const auto& phase : phases) {
        WaterfallAssembler assembler(cfg.env.probe);
        generate_sweeps(cfg.env, attacks, timeline_origin, phase, [&](const Sweep& s) {
            for (auto& w : assembler.push(s)) {
                write_waterfall(w, out);
                ++res.waterfalls;
            }
        });
    }
    out.flush();
    if (!out) throw IoError("failed writing " + path);
    return res;
}

double read_profile_threshold(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str()).at("threshold").get<double>();
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + std::string(e.what()));
    }
}

std::vector<int> attack_ids_for_slice(const GroundTruthLog& truth,
                                      const FrequencyRange& slice) {
    std::set<int> ids;
    for (const auto& e : truth.entries)
        if (e.band_start_khz < slice.f_end_khz && slice.f_start_khz < e.band_end_khz)
            ids.insert(e.attack_id);
    return {ids.begin(), ids.end()};
}

ConfusionCounts match_over_spans(const std::vector<Alarm>& alarms,
                                 const GroundTruthLog& truth, double window_s,
                                 const FrequencyRange& slice,
                                 const std::vector<SimPhase>& spans) {
    ConfusionCounts total;
    for (const auto& span : spans) {
        // Alarms inside this span; truth whose credit window reaches into it
        // (an attack ending during warm-up still owns its trailing alarms).
        std::vector<Alarm> in_span;
        for (const auto& a : alarms)
            if (a.time >= span.start_time && a.time < span.start_time + span.duration_s)
                in_span.push_back(a);
        GroundTruthLog t;
        for (const auto& e : truth.entries)
            if (e.end_time + window_s > span.start_time &&
                e.start_time - window_s < span.start_time + span.duration_s)
                t.entries.push_back(e);
        total += match(in_span, t, window_s, slice, span.start_time,
                       span.start_time + span.duration_s);
    }
    return total;
}

}  // namespace

PhaseSpans plan_phases(const RunConfig& cfg) {
    PhaseSpans out;
    if (cfg.sessions) {
        const SessionPlan& s = *cfg.sessions;
        auto spans_for = [&](std::vector<int> days) {
            std::sort(days.begin(), days.end());
            std::vector<SimPhase> spans;
            for (int d : days)
                spans.push_back({cfg.sim_start_unix + d * 86400.0 + s.daily_window_start_s,
                                 s.daily_window_length_s});
            return spans;
        };
        out.clean = spans_for(s.clean_days);
        out.heldout = spans_for(s.heldout_days);
        out.attack = spans_for(s.attack_days);
    } else {
        double t = cfg.sim_start_unix;
        out.clean.push_back({t, cfg.clean_duration_s});
        t += cfg.clean_duration_s;
        if (cfg.heldout_duration_s > 0.0) {
            out.heldout.push_back({t, cfg.heldout_duration_s});
            t += cfg.heldout_duration_s;
        }
        if (cfg.attack_duration_s > 0.0) out.attack.push_back({t, cfg.attack_duration_s});
    }
    return out;
}

double attack_timeline_origin(const RunConfig& cfg) {
    PhaseSpans phases = plan_phases(cfg);
    if (!phases.attack.empty()) return phases.attack.front().start_time;
    return cfg.sim_start_unix;
}

SimulateResult run_simulate(const RunConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    ensure_dir(out_dir);
    PhaseSpans phases = plan_phases(cfg);

    std::vector<RealizedAttack> attacks;
    if (cfg.has_schedule) attacks = realize_schedule(cfg.schedule);
    double origin = attack_timeline_origin(cfg);
    validate_attacks(cfg.env, attacks);

    if (!attacks.empty() && phases.attack.empty())
        throw ConfigError("schedule present but no attack phase is configured");
    for (const auto& ra : attacks) {
        double a0 = origin + ra.start_s;
        double a1 = a0 + ra.spec.duration_s;
        bool covered = false;
        for (const auto& p : phases.attack)
            if (a0 >= p.start_time && a1 <= p.start_time + p.duration_s) covered = true;
        if (!covered)
            throw ConfigError("attack " + std::to_string(ra.spec.attack_id) + " at t=" +
                              std::to_string(ra.start_s) +
                              " falls outside the attack capture windows");
    }

    SimulateResult res;
    res.attacks_realized = attacks.size();
    res.clean_waterfalls =
        simulate_phases_to_file(cfg, {}, origin, phases.clean, out_dir + "/clean.wf")
            .waterfalls;
    if (!phases.heldout.empty())
        res.heldout_waterfalls =
            simulate_phases_to_file(cfg, {}, origin, phases.heldout, out_dir + "/heldout.wf")
                .waterfalls;
    if (!phases.attack.empty())
        res.attack_waterfalls =
            simulate_phases_to_file(cfg, attacks, origin, phases.attack,
                                    out_dir + "/attack.wf")
                .waterfalls;
    if (cfg.has_schedule)
        write_ground_truth_csv(out_dir + "/ground_truth.csv",
                               ground_truth_for(cfg.env, attacks, origin));

    json manifest = json::object();
    init_manifest(manifest, cfg, phases);
    json outputs = json::array({"clean.wf"});
    if (!phases.heldout.empty()) outputs.push_back("heldout.wf");
    if (!phases.attack.empty()) outputs.push_back("attack.wf");
    if (cfg.has_schedule) outputs.push_back("ground_truth.csv");
    manifest["stages"]["simulate"]["outputs"] = outputs;
    manifest["stages"]["simulate"]["attacks_realized"] = attacks.size();
    store_manifest(out_dir, manifest);
    return res;
}

IngestResult run_ingest(const RunConfig& cfg, const std::string& csv_path,
                        const std::string& out_dir, const std::string& name) {
    cfg.validate();
    ensure_dir(out_dir);
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open " + csv_path);
    std::string out_path = out_dir + "/" + name + ".wf";
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + out_path + " for writing");

    SweepCsvReader reader(in, cfg.env.probe);
    WaterfallAssembler assembler(cfg.env.probe);
    IngestResult res;
    while (auto sweep = reader.next()) {
        ++res.sweeps;
        for (auto& w : assembler.push(*sweep)) {
            write_waterfall(w, out);
            ++res.waterfalls;
        }
    }
    out.flush();
    if (!out) throw IoError("failed writing " + out_path);
    res.malformed_records = reader.malformed_records();
    res.incomplete_sweeps = reader.incomplete_sweeps();
    res.dropped_sweeps = assembler.dropped_sweeps();

    json manifest = load_manifest(out_dir);
    if (manifest.empty()) init_manifest(manifest, cfg, plan_phases(cfg));
    json rec;
    rec["input"] = csv_path;
    rec["output"] = name + ".wf";
    rec["sweeps"] = res.sweeps;
    rec["waterfalls"] = res.waterfalls;
    rec["malformed_records"] = res.malformed_records;
    rec["incomplete_sweeps"] = res.incomplete_sweeps;
    rec["dropped_sweeps"] = res.dropped_sweeps;
    manifest["stages"]["ingest"][name] = rec;
    store_manifest(out_dir, manifest);
    return res;
}

std::vector<std::vector<FeatureVector>> extract_feature_streams(
    const std::string& waterfall_file, const std::vector<FrequencyRange>& slices) {
    std::vector<std::vector<FeatureVector>> streams(slices.size());
    std::vector<SlidingWindowBuilder> builders;
    builders.reserve(slices.size());
    for (const auto& s : slices) builders.emplace_back(s.str());

    WaterfallFileReader reader(waterfall_file);
    bool have_prev = false;
    double prev_start = 0.0, block_s = 0.0;
    while (auto w = reader.next()) {
        block_s = w->config().sweep_interval_s *
                  static_cast<double>(w->config().sweeps_per_waterfall);
        if (have_prev && w->start_time() - prev_start > 1.5 * block_s) {
            for (auto& b : builders) b.reset();  // capture gap: restart warm-up
        }
        prev_start = w->start_time();
        have_prev = true;

        TimeEncoding te = encode_time(w->start_time());
        for (std::size_t i = 0; i < slices.size(); ++i) {
            WaterfallSlice sl = slice_waterfall(*w, slices[i]);
            SliceObservation obs{slice_stats(sl), te, w->start_time()};
            if (auto v = builders[i].push(obs)) streams[i].push_back(std::move(*v));
        }
    }
    return streams;
}

namespace {

// Everything the per-slice pipeline stage produces.
struct SliceOutcome {
    MetricsRow attack_row;
    MetricsRow heldout_row;
    double waterfall_block_s = 0.0;
};

struct SliceJobContext {
    const RunConfig& cfg;
    const std::string& out_dir;
    const std::vector<FrequencyRange>& slices;
    const std::vector<std::vector<FeatureVector>>& clean_streams;
    const std::vector<std::vector<FeatureVector>>* attack_streams;
    const std::vector<std::vector<FeatureVector>>* heldout_streams;
    const GroundTruthLog& truth;
    double block_s;
    bool reuse_models;
};

SliceOutcome process_slice(const SliceJobContext& ctx, std::size_t idx) {
    const RunConfig& cfg = ctx.cfg;
    const FrequencyRange& slice = ctx.slices[idx];
    const std::string id = slice.str();
    const std::string dir = slice_dir(ctx.out_dir, id);
    ensure_dir(dir);

    const auto& vectors = ctx.clean_streams[idx];
    if (vectors.size() < 8)
        throw ConfigError("slice " + id + ": only " + std::to_string(vectors.size()) +
                          " clean feature vectors; not enough to train and test");
    std::size_t n_train = static_cast<std::size_t>(
        std::floor(cfg.split_fraction * static_cast<double>(vectors.size())));
    n_train = std::clamp<std::size_t>(n_train, 2, vectors.size() - 2);

    std::vector<FeatureVector> train_vecs(vectors.begin(), vectors.begin() + n_train);
    std::vector<FeatureVector> test_vecs(vectors.begin() + n_train, vectors.end());
    write_feature_csv(dir + "/features_train.csv", train_vecs);
    write_feature_csv(dir + "/features_test.csv", test_vecs);

    FeatureScaler scaler = fit_scaler(train_vecs);
    {
        std::ofstream out(dir + "/scaler.json", std::ios::trunc);
        if (!out) throw IoError("cannot write " + dir + "/scaler.json");
        out << scaler_to_json(scaler) << '\n';
    }

    Dataset train_data;
    train_data.reserve(train_vecs.size());
    for (const auto& v : train_vecs) {
        FeatureVector n = apply_scaler(scaler, v);
        train_data.emplace_back(n.values.begin(), n.values.end());
    }

    ModelParams model;
    const std::string model_path = dir + "/model.json";
    if (ctx.reuse_models && fs::exists(model_path)) {
        model = load_model(model_path);
    } else {
        Architecture arch = default_architecture(kFeatureDim, cfg.training_activation);
        TrainingConfig tcfg = cfg.training;
        tcfg.seed = mix_seed(cfg.seed, fnv1a(id));
        try {
            model = train(train_data, arch, tcfg).params;
        } catch (const TrainingError& e) {
            throw TrainingError("slice " + id + ": " + e.what());
        }
        save_model(model, model_path);
    }

    // Error statistics and the detection threshold come from the testing
    // split, never from attack-period data.
    std::vector<std::vector<double>> test_errors;
    std::vector<double> test_scores;
    std::vector<double> test_times;
    test_errors.reserve(test_vecs.size());
    for (const auto& v : test_vecs) {
        FeatureVector n = apply_scaler(scaler, v);
        test_errors.push_back(reconstruction_error(model, n.values));
        test_times.push_back(v.window_end_time);
    }
    ErrorStats stats = fit_error_stats(test_errors);
    for (const auto& e : test_errors)
        test_scores.push_back(score(stats, e, cfg.aggregation).value);
    CalibrationResult cal =
        calibrate_threshold(test_scores, cfg.calibration_grid, cfg.fp_target);

    DetectorProfile profile;
    profile.slice_id = id;
    profile.stats = stats;
    profile.threshold = cal.threshold;
    profile.saturated = cal.saturated;
    profile.aggregation = cfg.aggregation;
    profile.model = model;
    profile.scaler = scaler;
    {
        std::ofstream out(dir + "/profile.json", std::ios::trunc);
        if (!out) throw IoError("cannot write " + dir + "/profile.json");
        out << profile_to_json(profile, "model.json", "scaler.json") << '\n';
    }

    // Testing TNR: replay the calibration split through its own profile.
    ConfusionCounts test_counts;
    {
        std::vector<Alarm> replay;
        for (std::size_t k = 0; k < test_scores.size(); ++k)
            if (test_scores[k] > profile.threshold)
                replay.push_back({test_times[k], id, test_scores[k], 0});
        test_counts = match_over_spans(replay, {}, cfg.window_s, slice,
                                       spans_from_times(test_times, ctx.block_s));
    }

    SliceOutcome outcome;
    outcome.attack_row.slice_id = id;
    outcome.attack_row.threshold = profile.threshold;
    outcome.heldout_row.slice_id = id;
    outcome.heldout_row.threshold = profile.threshold;

    if (ctx.attack_streams) {
        const auto& stream = (*ctx.attack_streams)[idx];
        write_feature_csv(dir + "/features_attack.csv", stream);
        auto scored = score_stream(profile, stream);
        std::vector<Alarm> alarms;
        std::vector<double> times;
        for (const auto& sv : scored) {
            times.push_back(sv.time);
            if (sv.score > profile.threshold)
                alarms.push_back({sv.time, id, sv.score, sv.argmax});
        }
        write_alarm_csv(dir + "/alarms_attack.csv", alarms);
        write_error_curve_csv(dir + "/curve_attack.csv",
                              error_curve(scored, ctx.truth, slice));

        ConfusionCounts counts = match_over_spans(alarms, ctx.truth, cfg.window_s, slice,
                                                  spans_from_times(times, ctx.block_s));
        outcome.attack_row.counts = counts;
        outcome.attack_row.attack_ids = attack_ids_for_slice(ctx.truth, slice);
        outcome.attack_row.recall = recall(counts);
        outcome.attack_row.precision =
            (counts.tp + counts.fn > 0) ? precision(counts) : std::nullopt;
        outcome.attack_row.tnr = tnr(test_counts);  // summary convention: testing TNR
    } else {
        outcome.attack_row.counts = test_counts;
        outcome.attack_row.tnr = tnr(test_counts);
    }

    if (ctx.heldout_streams) {
        const auto& stream = (*ctx.heldout_streams)[idx];
        write_feature_csv(dir + "/features_heldout.csv", stream);
        auto scored = score_stream(profile, stream);
        std::vector<Alarm> alarms;
        std::vector<double> times;
        for (const auto& sv : scored) {
            times.push_back(sv.time);
            if (sv.score > profile.threshold)
                alarms.push_back({sv.time, id, sv.score, sv.argmax});
        }
        write_alarm_csv(dir + "/alarms_heldout.csv", alarms);
        write_error_curve_csv(dir + "/curve_heldout.csv", error_curve(scored, {}, slice));
        ConfusionCounts counts = match_over_spans(alarms, {}, cfg.window_s, slice,
                                                  spans_from_times(times, ctx.block_s));
        outcome.heldout_row.counts = counts;
        outcome.heldout_row.tnr = tnr(counts);
    }
    return outcome;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, const std::string& out_dir,
                            bool reuse_models) {
    cfg.validate();
    std::string clean_path = out_dir + "/clean.wf";
    if (!fs::exists(clean_path))
        throw ConfigError("pipeline needs " + clean_path + "; run simulate or ingest first");

    std::vector<FrequencyRange> slices = expanded_slices(cfg);
    auto clean_streams = extract_feature_streams(clean_path, slices);

    // Nominal waterfall block length for span reconstruction.
    double block_s = 0.0;
    {
        WaterfallFileReader reader(clean_path);
        auto w = reader.next();
        if (!w) throw ConfigError(clean_path + " holds no waterfalls");
        block_s = w->config().sweep_interval_s *
                  static_cast<double>(w->config().sweeps_per_waterfall);
    }

    std::optional<std::vector<std::vector<FeatureVector>>> attack_streams;
    if (fs::exists(out_dir + "/attack.wf"))
        attack_streams = extract_feature_streams(out_dir + "/attack.wf", slices);
    std::optional<std::vector<std::vector<FeatureVector>>> heldout_streams;
    if (fs::exists(out_dir + "/heldout.wf"))
        heldout_streams = extract_feature_streams(out_dir + "/heldout.wf", slices);

    GroundTruthLog truth;
    if (fs::exists(out_dir + "/ground_truth.csv"))
        truth = read_ground_truth_csv(out_dir + "/ground_truth.csv");

    SliceJobContext ctx{cfg,
                        out_dir,
                        slices,
                        clean_streams,
                        attack_streams ? &*attack_streams : nullptr,
                        heldout_streams ? &*heldout_streams : nullptr,
                        truth,
                        block_s,
                        reuse_models};

    std::vector<SliceOutcome> outcomes(slices.size());
    {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= slices.size()) return;
                try {
                    outcomes[i] = process_slice(ctx, i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
        n_threads = std::min<unsigned>(n_threads, slices.size());
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    PipelineResult result;
    for (auto& o : outcomes) result.report.rows.push_back(std::move(o.attack_row));
    write_report_csv(out_dir + "/report.csv", result.report);
    write_report_table(out_dir + "/report.txt", result.report);
    if (heldout_streams) {
        result.has_heldout = true;
        for (auto& o : outcomes) result.heldout_report.rows.push_back(std::move(o.heldout_row));
        write_report_csv(out_dir + "/report_heldout.csv", result.heldout_report);
        write_report_table(out_dir + "/report_heldout.txt", result.heldout_report);
    }

    json manifest = load_manifest(out_dir);
    if (manifest.empty()) init_manifest(manifest, cfg, plan_phases(cfg));
    manifest["stages"]["train"]["inputs"] = json::array({"clean.wf"});
    manifest["stages"]["calibrate"]["inputs"] = json::array({"clean.wf"});
    json detect_inputs = json::array();
    if (attack_streams) detect_inputs.push_back("attack.wf");
    if (heldout_streams) detect_inputs.push_back("heldout.wf");
    manifest["stages"]["detect"]["inputs"] = detect_inputs;
    manifest["stages"]["evaluate"]["outputs"] = json::array({"report.csv", "report.txt"});
    store_manifest(out_dir, manifest);
    return result;
}

void run_detect(const RunConfig& cfg, const std::string& out_dir,
                const std::string& waterfall_file, const std::string& tag) {
    cfg.validate();
    std::vector<FrequencyRange> slices = expanded_slices(cfg);
    auto streams = extract_feature_streams(waterfall_file, slices);
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const std::string id = slices[i].str();
        const std::string dir = slice_dir(out_dir, id);
        std::ifstream in(dir + "/profile.json");
        if (!in)
            throw ConfigError("missing profile for slice " + id + "; run pipeline first");
        std::stringstream ss;
        ss << in.rdbuf();
        DetectorProfile profile = profile_from_json(ss.str(), dir);

        auto scored = score_stream(profile, streams[i]);
        std::vector<Alarm> alarms;
        for (const auto& sv : scored)
            if (sv.score > profile.threshold)
                alarms.push_back({sv.time, id, sv.score, sv.argmax});
        write_alarm_csv(dir + "/alarms_" + tag + ".csv", alarms);
        write_error_curve_csv(dir + "/curve_" + tag + ".csv", error_curve(scored, {}, slices[i]));
    }
}

MetricsReport run_evaluate(const RunConfig& cfg, const std::string& out_dir,
                           const std::string& tag, const std::string& truth_csv) {
    cfg.validate();
    GroundTruthLog truth;
    if (!truth_csv.empty()) truth = read_ground_truth_csv(truth_csv);

    std::vector<FrequencyRange> slices = expanded_slices(cfg);
    MetricsReport report;
    for (const auto& slice : slices) {
        const std::string id = slice.str();
        const std::string dir = slice_dir(out_dir, id);
        auto alarms = read_alarm_csv(dir + "/alarms_" + tag + ".csv");

        // Coverage spans come from the scored stream (curve CSV times).
        std::vector<double> times;
        {
            std::ifstream in(dir + "/curve_" + tag + ".csv");
            if (!in) throw IoError("cannot open " + dir + "/curve_" + tag + ".csv");
            std::string line;
            bool first = true;
            while (std::getline(in, line)) {
                if (first) {
                    first = false;
                    continue;
                }
                if (!line.empty()) times.push_back(std::strtod(line.c_str(), nullptr));
            }
        }
        double block_s = times.size() > 1 ? times[1] - times[0] : cfg.window_s;

        MetricsRow row;
        row.slice_id = id;
        row.threshold = read_profile_threshold(dir + "/profile.json");
        row.counts = match_over_spans(alarms, truth, cfg.window_s, slice,
                                      spans_from_times(times, block_s));
        row.attack_ids = attack_ids_for_slice(truth, slice);
        row.tnr = tnr(row.counts);
        row.recall = recall(row.counts);
        row.precision =
            (row.counts.tp + row.counts.fn > 0) ? precision(row.counts) : std::nullopt;
        report.rows.push_back(std::move(row));
    }
    write_report_csv(out_dir + "/report_" + tag + ".csv", report);
    write_report_table(out_dir + "/report_" + tag + ".txt", report);
    return report;
}

}  // namespace radiot
