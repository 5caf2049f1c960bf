#include "radiot/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "radiot/errors.hpp"

namespace radiot {

ErrorStats fit_error_stats(const std::vector<std::vector<double>>& test_errors) {
    if (test_errors.size() < 2)
        throw ConfigError("error-stats fit needs at least 2 error vectors");
    const std::size_t dim = test_errors.front().size();
    for (const auto& e : test_errors)
        if (e.size() != dim) throw ConfigError("error vectors have mixed dimensions");

    ErrorStats st;
    st.mu.assign(dim, 0.0);
    st.sigma.assign(dim, 0.0);
    const double n = static_cast<double>(test_errors.size());
    for (const auto& e : test_errors)
        for (std::size_t i = 0; i < dim; ++i) st.mu[i] += e[i];
    for (std::size_t i = 0; i < dim; ++i) st.mu[i] /= n;
    for (const auto& e : test_errors)
        for (std::size_t i = 0; i < dim; ++i) {
            double d = e[i] - st.mu[i];
            st.sigma[i] += d * d;
        }
    for (std::size_t i = 0; i < dim; ++i)
        st.sigma[i] = std::max(std::sqrt(st.sigma[i] / n), kSigmaFloor);
    return st;
}

Score score(const ErrorStats& stats, std::span<const double> error, ScoreAggregation agg) {
    if (error.size() != stats.mu.size() || stats.mu.size() != stats.sigma.size())
        throw ConfigError("score: dimension mismatch");

    // Keep the score strictly below 1 even when exp(-z^2/2) underflows.
    const double top = std::nextafter(1.0, 0.0);
    Score result;
    double best = -1.0;
    double mean_acc = 0.0;
    for (std::size_t i = 0; i < error.size(); ++i) {
        double z = (error[i] - stats.mu[i]) / stats.sigma[i];
        double p = -std::expm1(-0.5 * z * z);  // 1 - exp(-z^2/2)
        p = std::min(p, top);
        mean_acc += p;
        if (p > best) {
            best = p;
            result.argmax = i;
        }
    }
    result.value = agg == ScoreAggregation::max
                       ? best
                       : std::min(mean_acc / static_cast<double>(error.size()), top);
    return result;
}

CalibrationResult calibrate_threshold(const std::vector<double>& test_scores,
                                      const std::vector<double>& grid,
                                      std::size_t fp_target) {
    if (grid.empty()) throw ConfigError("calibration grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw ConfigError("calibration grid must be sorted ascending");

    for (double t : grid) {
        std::size_t above = 0;
        for (double s : test_scores)
            if (s > t) ++above;
        if (above <= fp_target) return {t, false};
    }
    return {grid.back(), true};
}

std::vector<ScoredVector> score_stream(const DetectorProfile& profile,
                                       const std::vector<FeatureVector>& stream) {
    std::vector<ScoredVector> out;
    out.reserve(stream.size());
    for (const auto& v : stream) {
        FeatureVector norm = v.normalized ? v : apply_scaler(profile.scaler, v);
        auto err = reconstruction_error(profile.model, norm.values);
        Score s = score(profile.stats, err, profile.aggregation);
        double worst = 0.0;
        for (double e : err) worst = std::max(worst, std::abs(e));
        out.push_back({v.window_end_time, s.value, s.argmax, worst});
    }
    return out;
}

std::vector<Alarm> detect(const DetectorProfile& profile,
                          const std::vector<FeatureVector>& stream) {
    std::vector<Alarm> alarms;
    for (const auto& sv : score_stream(profile, stream)) {
        if (sv.score > profile.threshold)
            alarms.push_back({sv.time, profile.slice_id, sv.score, sv.argmax});
    }
    return alarms;
}

std::string profile_to_json(const DetectorProfile& profile, const std::string& model_file,
                            const std::string& scaler_file) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["slice_id"] = profile.slice_id;
    j["mu"] = profile.stats.mu;
    j["sigma"] = profile.stats.sigma;
    j["threshold"] = profile.threshold;
    j["saturated"] = profile.saturated;
    j["aggregation"] = profile.aggregation == ScoreAggregation::max ? "max" : "mean";
    j["model_file"] = model_file;
    j["scaler_file"] = scaler_file;
    return j.dump(2);
}

DetectorProfile profile_from_json(const std::string& text, const std::string& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("profile JSON: ") + e.what());
    }
    try {
        DetectorProfile p;
        p.slice_id = j.at("slice_id").get<std::string>();
        p.stats.mu = j.at("mu").get<std::vector<double>>();
        p.stats.sigma = j.at("sigma").get<std::vector<double>>();
        p.threshold = j.at("threshold").get<double>();
        p.saturated = j.at("saturated").get<bool>();
        p.aggregation = j.at("aggregation").get<std::string>() == "mean"
                            ? ScoreAggregation::mean
                            : ScoreAggregation::max;
        if (p.threshold <= 0.0 || p.threshold >= 1.0)
            throw FormatError("profile threshold must lie strictly in (0,1)");
        std::string model_file = j.at("model_file").get<std::string>();
        std::string scaler_file = j.at("scaler_file").get<std::string>();
        p.model = load_model(base_dir + "/" + model_file);
        {
            std::ifstream in(base_dir + "/" + scaler_file);
            if (!in) throw IoError("cannot open " + base_dir + "/" + scaler_file);
            std::stringstream ss;
            ss << in.rdbuf();
            p.scaler = scaler_from_json(ss.str());
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("profile JSON: ") + e.what());
    }
}

void write_alarm_csv(const std::string& path, const std::vector<Alarm>& alarms) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "unix_time,slice_id,score,argmax_feature\n";
    char buf[80];
    for (const auto& a : alarms) {
        std::snprintf(buf, sizeof(buf), "%.17g,", a.time);
        out << buf << a.slice_id;
        std::snprintf(buf, sizeof(buf), ",%.17g,%zu\n", a.score, a.argmax_feature);
        out << buf;
    }
    if (!out) throw IoError("failed writing " + path);
}

std::vector<Alarm> read_alarm_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<Alarm> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f0, f1, f2, f3;
        if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
            !std::getline(ss, f2, ',') || !std::getline(ss, f3))
            throw FormatError(path + ": short alarm row");
        Alarm a;
        a.time = std::strtod(f0.c_str(), nullptr);
        a.slice_id = f1;
        a.score = std::strtod(f2.c_str(), nullptr);
        a.argmax_feature = static_cast<std::size_t>(std::strtoull(f3.c_str(), nullptr, 10));
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace radiot
