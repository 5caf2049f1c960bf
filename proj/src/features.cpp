#include "radiot/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "radiot/errors.hpp"
#include "json.hpp"

namespace radiot {

SliceStats slice_stats(const WaterfallSlice& slice) {
    const std::size_t n = slice.cell_count();
    if (n == 0) throw ConfigError("slice_stats on an empty slice");

    std::vector<double> cells;
    cells.reserve(n);
    for (std::size_t r = 0; r < slice.rows(); ++r)
        for (std::size_t c = 0; c < slice.cols(); ++c) cells.push_back(slice.at(r, c));

    SliceStats s;
    s.max = *std::max_element(cells.begin(), cells.end());
    s.min = *std::min_element(cells.begin(), cells.end());

    double sum = 0.0;
    for (double v : cells) sum += v;
    s.sum = sum;
    s.mean = sum / static_cast<double>(n);

    double sq = 0.0;
    for (double v : cells) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(n));

    std::sort(cells.begin(), cells.end());
    if (n % 2 == 1)
        s.median = cells[n / 2];
    else
        s.median = 0.5 * (cells[n / 2 - 1] + cells[n / 2]);
    return s;
}

TimeEncoding encode_time(double unix_seconds) {
    double s = std::fmod(unix_seconds, 86400.0);
    if (s < 0.0) s += 86400.0;
    double angle = 6.283185307179586476925286766559 * (s / 86400.0);
    return TimeEncoding{std::sin(angle), std::cos(angle)};
}

namespace {

void append_group(std::array<double, kFeatureDim>& out, std::size_t group,
                  const SliceObservation& obs) {
    double* p = out.data() + group * (kStatsPerSlice + kTimeComponents);
    p[0] = obs.stats.max;
    p[1] = obs.stats.min;
    p[2] = obs.stats.mean;
    p[3] = obs.stats.median;
    p[4] = obs.stats.std;
    p[5] = obs.stats.sum;
    p[6] = obs.time.sin_component;
    p[7] = obs.time.cos_component;
}

}  // namespace

FeatureVector window_features(const std::vector<SliceObservation>& history,
                              const std::string& band_id) {
    if (history.size() != kWindowWaterfalls)
        throw ConfigError("feature window needs exactly " +
                          std::to_string(kWindowWaterfalls) + " waterfalls, got " +
                          std::to_string(history.size()));
    for (std::size_t i = 1; i < history.size(); ++i)
        if (history[i].waterfall_start_time <= history[i - 1].waterfall_start_time)
            throw ConfigError("feature window timestamps must strictly increase");

    FeatureVector v;
    v.band_id = band_id;
    v.window_end_time = history.back().waterfall_start_time;
    for (std::size_t g = 0; g < kWindowWaterfalls; ++g) append_group(v.values, g, history[g]);
    return v;
}

SlidingWindowBuilder::SlidingWindowBuilder(std::string band_id)
    : band_id_(std::move(band_id)) {}

std::optional<FeatureVector> SlidingWindowBuilder::push(const SliceObservation& obs) {
    if (!window_.empty() && obs.waterfall_start_time <= window_.back().waterfall_start_time)
        throw ConfigError("sliding window fed non-increasing waterfall times");
    window_.push_back(obs);
    if (window_.size() > kWindowWaterfalls) window_.pop_front();
    if (window_.size() < kWindowWaterfalls) return std::nullopt;  // warm-up
    return window_features({window_.begin(), window_.end()}, band_id_);
}

void SlidingWindowBuilder::reset() { window_.clear(); }

FeatureScaler fit_scaler(const std::vector<FeatureVector>& training) {
    if (training.size() < 2)
        throw ConfigError("scaler fit needs at least 2 training vectors");
    FeatureScaler sc;
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        double lo = training[0].values[i], hi = training[0].values[i];
        for (const auto& v : training) {
            lo = std::min(lo, v.values[i]);
            hi = std::max(hi, v.values[i]);
        }
        sc.mins[i] = lo;
        sc.maxs[i] = hi;
    }
    return sc;
}

FeatureVector apply_scaler(const FeatureScaler& scaler, const FeatureVector& v) {
    FeatureVector out = v;
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        double lo = scaler.mins[i], hi = scaler.maxs[i];
        if (hi < lo) throw ConfigError("scaler has max < min");
        if (hi == lo) {
            out.values[i] = 0.5;  // degenerate feature
        } else {
            double x = (v.values[i] - lo) / (hi - lo);
            out.values[i] = std::clamp(x, 0.0, 1.0);
        }
    }
    out.normalized = true;
    return out;
}

std::string scaler_to_json(const FeatureScaler& scaler) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["mins"] = std::vector<double>(scaler.mins.begin(), scaler.mins.end());
    j["maxs"] = std::vector<double>(scaler.maxs.begin(), scaler.maxs.end());
    return j.dump(2);
}

FeatureScaler scaler_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("scaler JSON: ") + e.what());
    }
    if (!j.contains("mins") || !j.contains("maxs"))
        throw FormatError("scaler JSON missing mins/maxs");
    auto mins = j["mins"].get<std::vector<double>>();
    auto maxs = j["maxs"].get<std::vector<double>>();
    if (mins.size() != kFeatureDim || maxs.size() != kFeatureDim)
        throw FormatError("scaler JSON has wrong dimension");
    FeatureScaler sc;
    std::copy(mins.begin(), mins.end(), sc.mins.begin());
    std::copy(maxs.begin(), maxs.end(), sc.maxs.begin());
    return sc;
}

void write_feature_csv(const std::string& path, const std::vector<FeatureVector>& vs) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "band_id,window_end_unix";
    for (std::size_t i = 0; i < kFeatureDim; ++i) out << ",f" << i;
    out << '\n';
    char buf[40];
    for (const auto& v : vs) {
        out << v.band_id;
        std::snprintf(buf, sizeof(buf), ",%.17g", v.window_end_time);
        out << buf;
        for (double x : v.values) {
            std::snprintf(buf, sizeof(buf), ",%.17g", x);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

std::vector<FeatureVector> read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<FeatureVector> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;  // header
            continue;
        }
        if (line.empty()) continue;
        FeatureVector v;
        std::stringstream ss(line);
        std::string field;
        if (!std::getline(ss, field, ',')) throw FormatError(path + ": short row");
        v.band_id = field;
        if (!std::getline(ss, field, ',')) throw FormatError(path + ": short row");
        v.window_end_time = std::strtod(field.c_str(), nullptr);
        for (std::size_t i = 0; i < kFeatureDim; ++i) {
            if (!std::getline(ss, field, ','))
                throw FormatError(path + ": feature row with fewer than 80 values");
            v.values[i] = std::strtod(field.c_str(), nullptr);
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace radiot
