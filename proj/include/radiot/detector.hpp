#ifndef RADIOT_DETECTOR_HPP
#define RADIOT_DETECTOR_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "radiot/autoencoder.hpp"
#include "radiot/features.hpp"

namespace radiot {

// Floor on the fitted per-feature sigma (normalized-feature units) so that
// near-constant error components cannot blow up the z-scores.
inline constexpr double kSigmaFloor = 1e-6;

// Per-feature Gaussian fit of reconstruction errors, estimated on the
// testing split.
struct ErrorStats {
    std::vector<double> mu;     // one per feature
    std::vector<double> sigma;  // floored at kSigmaFloor
};

// Population mean/std per component. Needs at least 2 vectors.
ErrorStats fit_error_stats(const std::vector<std::vector<double>>& test_errors);

enum class ScoreAggregation { max, mean };

struct Score {
    double value = 0.0;        // in [0, 1)
    std::size_t argmax = 0;    // feature with the largest per-feature score
};

// Per-feature score p_i = 1 - exp(-((e_i-mu_i)/sigma_i)^2 / 2); the vector
// score aggregates over features (max by default).
Score score(const ErrorStats& stats, std::span<const double> error,
            ScoreAggregation agg = ScoreAggregation::max);

struct CalibrationResult {
    double threshold = 0.0;
    bool saturated = false;  // no grid value met the FP target
};

// Smallest grid value t with |{s > t}| <= target; the largest grid value,
// flagged, when none qualifies. Grid must be sorted ascending.
CalibrationResult calibrate_threshold(const std::vector<double>& test_scores,
                                      const std::vector<double>& grid = {
                                          0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9},
                                      std::size_t fp_target = 0);

struct Alarm {
    double time = 0.0;  // window end of the offending vector
    std::string slice_id;
    double score = 0.0;
    std::size_t argmax_feature = 0;
};

// Everything needed to score a feature stream for one slice.
struct DetectorProfile {
    std::string slice_id;
    ErrorStats stats;
    double threshold = 0.0;
    bool saturated = false;
    ScoreAggregation aggregation = ScoreAggregation::max;
    ModelParams model;
    FeatureScaler scaler;
};

// normalize -> forward -> error -> score for each vector in stream order;
// emits an alarm whenever score > threshold.
std::vector<Alarm> detect(const DetectorProfile& profile,
                          const std::vector<FeatureVector>& stream);

// Scored stream entry (used by detect and the evaluation curves).
struct ScoredVector {
    double time = 0.0;
    double score = 0.0;
    std::size_t argmax = 0;
    double max_abs_error = 0.0;
};

std::vector<ScoredVector> score_stream(const DetectorProfile& profile,
                                       const std::vector<FeatureVector>& stream);

// Profile persistence: stats arrays, threshold and the model/scaler file
// names it was built against.
std::string profile_to_json(const DetectorProfile& profile, const std::string& model_file,
                            const std::string& scaler_file);
// Loads stats/threshold; model and scaler are loaded from the referenced
// files resolved relative to `base_dir`.
DetectorProfile profile_from_json(const std::string& text, const std::string& base_dir);

void write_alarm_csv(const std::string& path, const std::vector<Alarm>& alarms);
std::vector<Alarm> read_alarm_csv(const std::string& path);

}  // namespace radiot

#endif  // RADIOT_DETECTOR_HPP
