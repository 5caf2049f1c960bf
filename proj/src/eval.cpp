#include "radiot/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "radiot/errors.hpp"

namespace radiot {

namespace {

bool band_overlaps(const GroundTruthEntry& e, const FrequencyRange& slice) {
    return e.band_start_khz < slice.f_end_khz && slice.f_start_khz < e.band_end_khz;
}

}  // namespace

ConfusionCounts match(const std::vector<Alarm>& alarms, const GroundTruthLog& truth,
                      double window_s, const FrequencyRange& slice, double span_start,
                      double span_end) {
    if (window_s <= 0.0) throw ConfigError("match window must be positive");
    if (span_end < span_start) throw ConfigError("evaluation span is reversed");
    for (std::size_t i = 1; i < alarms.size(); ++i)
        if (alarms[i].time < alarms[i - 1].time)
            throw ConfigError("alarms must be time-sorted");

    // Credit windows of the truth intervals on this slice.
    struct Window {
        double lo, hi;
    };
    std::vector<Window> credit;
    std::vector<const GroundTruthEntry*> considered;
    for (const auto& e : truth.entries) {
        if (!band_overlaps(e, slice)) continue;
        considered.push_back(&e);
        credit.push_back({e.start_time - window_s, e.end_time + window_s});
    }

    ConfusionCounts c;
    for (const auto* e : considered) {
        bool hit = false;
        for (const auto& a : alarms) {
            if (a.time >= e->start_time - window_s && a.time <= e->end_time + window_s) {
                hit = true;
                break;
            }
        }
        hit ? ++c.tp : ++c.fn;
    }

    std::vector<double> fp_times;
    for (const auto& a : alarms) {
        bool covered = false;
        for (const auto& w : credit)
            if (a.time >= w.lo && a.time <= w.hi) {
                covered = true;
                break;
            }
        if (!covered) {
            ++c.fp;
            fp_times.push_back(a.time);
        }
    }

    // Attack-free time: the span minus the credit windows, chopped into
    // non-overlapping window_s segments; each segment without an alarm is TN.
    std::vector<Window> sorted = credit;
    std::sort(sorted.begin(), sorted.end(),
              [](const Window& a, const Window& b) { return a.lo < b.lo; });
    double cursor = span_start;
    std::vector<Window> gaps;
    for (const auto& w : sorted) {
        if (w.lo > cursor) gaps.push_back({cursor, std::min(w.lo, span_end)});
        cursor = std::max(cursor, w.hi);
        if (cursor >= span_end) break;
    }
    if (cursor < span_end) gaps.push_back({cursor, span_end});

    for (const auto& g : gaps) {
        auto segments = static_cast<std::size_t>(std::floor((g.hi - g.lo) / window_s));
        for (std::size_t s = 0; s < segments; ++s) {
            double lo = g.lo + static_cast<double>(s) * window_s;
            double hi = lo + window_s;
            bool has_alarm = false;
            for (double t : fp_times)
                if (t >= lo && t < hi) {
                    has_alarm = true;
                    break;
                }
            if (!has_alarm) ++c.tn;
        }
    }
    return c;
}

std::optional<double> precision(const ConfusionCounts& c) {
    std::size_t d = c.tp + c.fp;
    if (d == 0) return std::nullopt;
    return static_cast<double>(c.tp) / static_cast<double>(d);
}

std::optional<double> recall(const ConfusionCounts& c) {
    std::size_t d = c.tp + c.fn;
    if (d == 0) return std::nullopt;
    return static_cast<double>(c.tp) / static_cast<double>(d);
}

std::optional<double> tnr(const ConfusionCounts& c) {
    std::size_t d = c.tn + c.fp;
    if (d == 0) return std::nullopt;
    return static_cast<double>(c.tn) / static_cast<double>(d);
}

namespace {

std::string ratio_or_dash(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", *v);
    return buf;
}

std::string percent_or_dash(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", *v * 100.0);
    return buf;
}

std::string ids_str(const std::vector<int>& ids) {
    if (ids.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += '+';
        s += std::to_string(ids[i]);
    }
    return s;
}

}  // namespace

void write_report_csv(const std::string& path, const MetricsReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "slice_id,attack_ids,threshold,tp,fp,fn,tn,precision,recall,tnr\n";
    char buf[64];
    for (const auto& r : report.rows) {
        out << r.slice_id << ',' << ids_str(r.attack_ids);
        std::snprintf(buf, sizeof(buf), ",%.17g,%zu,%zu,%zu,%zu,", r.threshold,
                      r.counts.tp, r.counts.fp, r.counts.fn, r.counts.tn);
        out << buf << ratio_or_dash(r.precision) << ',' << ratio_or_dash(r.recall) << ','
            << ratio_or_dash(r.tnr) << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

std::string format_report_table(const MetricsReport& report) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Bandwidth (KHz)", "Attacks", "Threshold", "TNR", "Precision", "Recall"});
    for (const auto& r : report.rows) {
        char thr[32];
        std::snprintf(thr, sizeof(thr), "%.12g", r.threshold);
        cells.push_back({r.slice_id, ids_str(r.attack_ids), thr, percent_or_dash(r.tnr),
                         percent_or_dash(r.precision), percent_or_dash(r.recall)});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());

    std::string out;
    for (std::size_t ri = 0; ri < cells.size(); ++ri) {
        for (std::size_t i = 0; i < cells[ri].size(); ++i) {
            out += cells[ri][i];
            out.append(width[i] - cells[ri][i].size(), ' ');
            if (i + 1 < cells[ri].size()) out += "  ";
        }
        out += '\n';
        if (ri == 0) {
            for (std::size_t i = 0; i < width.size(); ++i) {
                out.append(width[i], '-');
                if (i + 1 < width.size()) out += "  ";
            }
            out += '\n';
        }
    }
    return out;
}

void write_report_table(const std::string& path, const MetricsReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << format_report_table(report);
    if (!out) throw IoError("failed writing " + path);
}

std::vector<ErrorCurveRow> error_curve(const std::vector<ScoredVector>& scored,
                                       const GroundTruthLog& truth,
                                       const FrequencyRange& slice) {
    std::vector<ErrorCurveRow> rows;
    rows.reserve(scored.size());
    for (const auto& sv : scored)
        rows.push_back({sv.time, sv.score, sv.max_abs_error, false});

    for (const auto& e : truth.entries) {
        if (!band_overlaps(e, slice) || rows.empty()) continue;
        std::size_t best = 0;
        double best_dist = std::abs(rows[0].time - e.start_time);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            double d = std::abs(rows[i].time - e.start_time);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        rows[best].attack_start_marker = true;
    }
    return rows;
}

void write_error_curve_csv(const std::string& path, const std::vector<ErrorCurveRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "unix_time,score,max_abs_error,attack_start\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", r.time, r.score,
                      r.max_abs_error, r.attack_start_marker ? 1 : 0);
        out << buf;
    }
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace radiot
