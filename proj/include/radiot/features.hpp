#ifndef RADIOT_FEATURES_HPP
#define RADIOT_FEATURES_HPP

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "radiot/spectrum.hpp"

namespace radiot {

inline constexpr std::size_t kWindowWaterfalls = 10;
inline constexpr std::size_t kStatsPerSlice = 6;
inline constexpr std::size_t kTimeComponents = 2;
inline constexpr std::size_t kFeatureDim =
    kWindowWaterfalls * (kStatsPerSlice + kTimeComponents);  // 80

// Signal-power statistics over every cell of one waterfall slice, in dBm.
// Std is the population standard deviation: the cell set is the whole
// population of the slice, not a sample from it.
struct SliceStats {
    double max = 0.0;
    double min = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0;
    double sum = 0.0;
};

SliceStats slice_stats(const WaterfallSlice& slice);

// Daily-cycle encoding of a timestamp: (sin, cos) of the fraction of the day
// elapsed. Times are UTC throughout, so the cycle anchors at UTC midnight.
struct TimeEncoding {
    double sin_component = 0.0;
    double cos_component = 1.0;
};

TimeEncoding encode_time(double unix_seconds);

// One autoencoder input: ten consecutive waterfalls' (stats, time) groups in
// order, oldest first, 8 values per group.
struct FeatureVector {
    std::array<double, kFeatureDim> values{};
    double window_end_time = 0.0;
    std::string band_id;       // "fstart-fend" in KHz
    bool normalized = false;
};

// Per-waterfall observation fed to the sliding window.
struct SliceObservation {
    SliceStats stats;
    TimeEncoding time;
    double waterfall_start_time = 0.0;
};

// Concatenates exactly ten consecutive observations of one slice.
// Throws ConfigError unless there are ten with strictly increasing times.
FeatureVector window_features(const std::vector<SliceObservation>& history,
                              const std::string& band_id);

// Streaming form: emits one vector per waterfall once warmed up (the first
// ten observations produce a single vector; the window then slides by one).
class SlidingWindowBuilder {
public:
    explicit SlidingWindowBuilder(std::string band_id);

    // nullopt during warm-up.
    std::optional<FeatureVector> push(const SliceObservation& obs);

    // Drops accumulated history (e.g. at a capture discontinuity).
    void reset();

private:
    std::string band_id_;
    std::deque<SliceObservation> window_;
};

// Per-feature min-max scaler fitted on a training set; transform maps into
// [0,1] with clamping, degenerate features (max == min) map to 0.5.
struct FeatureScaler {
    std::array<double, kFeatureDim> mins{};
    std::array<double, kFeatureDim> maxs{};
};

FeatureScaler fit_scaler(const std::vector<FeatureVector>& training);
FeatureVector apply_scaler(const FeatureScaler& scaler, const FeatureVector& v);

std::string scaler_to_json(const FeatureScaler& scaler);
FeatureScaler scaler_from_json(const std::string& text);

// Feature CSV persistence: band id, window_end_unix, 80 values.
void write_feature_csv(const std::string& path, const std::vector<FeatureVector>& vs);
std::vector<FeatureVector> read_feature_csv(const std::string& path);

}  // namespace radiot

#endif  // RADIOT_FEATURES_HPP
