#ifndef RADIOT_EVAL_HPP
#define RADIOT_EVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "radiot/detector.hpp"
#include "radiot/rf_sim.hpp"

namespace radiot {

struct ConfusionCounts {
    std::size_t tp = 0;  // truth intervals with >= 1 alarm in the credit window
    std::size_t fp = 0;  // alarms outside every credit window
    std::size_t fn = 0;  // truth intervals with no alarm
    std::size_t tn = 0;  // attack-free window_s segments with no alarm

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
};

// Time-window matching over one evaluated span [span_start, span_end):
//  - truth intervals whose band overlaps `slice` are considered; one counts
//    TP when an alarm falls inside [start - window_s, end + window_s], else FN
//  - alarms inside no credit window count FP
//  - TN counts non-overlapping window_s segments of attack-free time that
//    contain no alarm
// Alarms must be time-sorted.
ConfusionCounts match(const std::vector<Alarm>& alarms, const GroundTruthLog& truth,
                      double window_s, const FrequencyRange& slice, double span_start,
                      double span_end);

// Exact ratios; absent when the denominator is zero.
std::optional<double> precision(const ConfusionCounts& c);
std::optional<double> recall(const ConfusionCounts& c);
std::optional<double> tnr(const ConfusionCounts& c);

struct MetricsRow {
    std::string slice_id;
    std::vector<int> attack_ids;  // truth ids overlapping the slice band
    double threshold = 0.0;
    ConfusionCounts counts;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> tnr;
};

struct MetricsReport {
    std::vector<MetricsRow> rows;
};

void write_report_csv(const std::string& path, const MetricsReport& report);
// Aligned text table: bandwidth, attack ids, threshold, TNR, precision, recall.
void write_report_table(const std::string& path, const MetricsReport& report);
std::string format_report_table(const MetricsReport& report);

struct ErrorCurveRow {
    double time = 0.0;
    double score = 0.0;
    double max_abs_error = 0.0;
    bool attack_start_marker = false;
};

// One row per scored vector; the marker flag is set on the row nearest each
// truth start whose band overlaps the slice.
std::vector<ErrorCurveRow> error_curve(const std::vector<ScoredVector>& scored,
                                       const GroundTruthLog& truth,
                                       const FrequencyRange& slice);

void write_error_curve_csv(const std::string& path, const std::vector<ErrorCurveRow>& rows);

}  // namespace radiot

#endif  // RADIOT_EVAL_HPP
