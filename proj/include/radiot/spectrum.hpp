#ifndef RADIOT_SPECTRUM_HPP
#define RADIOT_SPECTRUM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace radiot {

// Frequencies are integer KHz throughout; power is dBm stored as float-64.

// Closed-open range [f_start, f_end) so adjacent ranges tile without
// double-counting a bin.
struct FrequencyRange {
    std::uint64_t f_start_khz = 0;
    std::uint64_t f_end_khz = 0;

    std::uint64_t width_khz() const { return f_end_khz - f_start_khz; }
    bool contains(const FrequencyRange& sub) const {
        return sub.f_start_khz >= f_start_khz && sub.f_end_khz <= f_end_khz;
    }
    bool overlaps(const FrequencyRange& other) const {
        return f_start_khz < other.f_end_khz && other.f_start_khz < f_end_khz;
    }
    bool operator==(const FrequencyRange&) const = default;

    std::string str() const;  // "400000-500000"
};

// Number of FFT bins covered by a range at the given bin width.
// Throws ConfigError when the width does not divide the range.
std::size_t bin_count(const FrequencyRange& range, double bin_width_khz);

struct ProbeConfig {
    std::vector<FrequencyRange> ranges;  // ordered, pairwise non-overlapping
    double bin_width_khz = 200.0;        // b
    double sweep_interval_s = 0.0375;    // T
    std::uint32_t sweeps_per_waterfall = 100;  // N
    std::string probe_id = "probe0";

    std::size_t range_count() const { return ranges.size(); }  // M
    std::size_t bins_in_range(std::size_t i) const;            // L_i
    std::size_t total_bins() const;                            // sum L_i

    // Column offset of range i within an assembled waterfall row.
    std::size_t range_col_offset(std::size_t i) const;

    // Validates every invariant; throws ConfigError with a description.
    void validate() const;

    bool operator==(const ProbeConfig&) const = default;
};

// Probe configuration mirroring the reference deployment: 400-500 MHz,
// 800-900 MHz and 2.4-2.5 GHz, 200 KHz bins, T = 0.0375 s, N = 100.
ProbeConfig default_probe_config();

// One pass over all configured ranges at a single instant.
struct Sweep {
    double timestamp = 0.0;                   // Unix seconds, sub-second resolution
    std::vector<std::vector<double>> powers;  // powers[i].size() == L_i, dBm

    // Throws ConfigError when the vector shape or values violate `config`.
    void validate(const ProbeConfig& config) const;
};

// N consecutive sweeps stacked into a time x frequency power matrix.
// Immutable after construction.
class Waterfall {
public:
    Waterfall(double start_time, std::string probe_id, ProbeConfig config,
              std::vector<double> row_major_cells);

    double start_time() const { return start_time_; }
    const std::string& probe_id() const { return probe_id_; }
    const ProbeConfig& config() const { return config_; }

    std::size_t rows() const { return config_.sweeps_per_waterfall; }  // N
    std::size_t cols() const { return cols_; }                         // sum L_i

    double at(std::size_t row, std::size_t col) const {
        return cells_[row * cols_ + col];
    }
    std::span<const double> cells() const { return cells_; }

    // Frequency of a column (KHz, low edge of the bin) and time of a row.
    double col_frequency_khz(std::size_t col) const;
    double row_time(std::size_t row) const {
        return start_time_ + static_cast<double>(row) * config_.sweep_interval_s;
    }

private:
    double start_time_;
    std::string probe_id_;
    ProbeConfig config_;
    std::size_t cols_;
    std::vector<double> cells_;  // row-major N x cols
};

// Non-owning column window into a parent waterfall. Valid only while the
// parent is alive; the pipeline hands waterfalls around as immutable values,
// so slices are consumed before their parent goes away.
class WaterfallSlice {
public:
    WaterfallSlice(const Waterfall& parent, FrequencyRange slice_range,
                   std::size_t col_begin, std::size_t bin_cols);

    double start_time() const { return parent_->start_time(); }
    const std::string& probe_id() const { return parent_->probe_id(); }
    const FrequencyRange& slice_range() const { return range_; }

    std::size_t rows() const { return parent_->rows(); }
    std::size_t cols() const { return cols_; }
    std::size_t cell_count() const { return rows() * cols_; }

    double at(std::size_t row, std::size_t col) const {
        return parent_->at(row, col_begin_ + col);
    }
    std::size_t parent_col(std::size_t col) const { return col_begin_ + col; }

private:
    const Waterfall* parent_;
    FrequencyRange range_;
    std::size_t col_begin_;
    std::size_t cols_;
};

// Builds a waterfall from exactly N time-ordered sweeps.
// `jitter_tolerance` bounds |dt - T| as a fraction of T; streams with larger
// timing jitter are rejected rather than silently repaired.
Waterfall assemble_waterfall(std::span<const Sweep> sweeps, const ProbeConfig& config,
                             double jitter_tolerance = 0.5);

// Extracts the columns of `sub` from one configured range. `sub` must lie in
// exactly one range and start/end on bin boundaries.
WaterfallSlice slice_waterfall(const Waterfall& w, const FrequencyRange& sub);

// Streaming grouping of a sweep sequence into back-to-back blocks of N.
// A timestamp gap beyond the jitter tolerance drops the partial block and
// starts over (counted, so capture glitches surface in ingest stats).
class WaterfallAssembler {
public:
    explicit WaterfallAssembler(ProbeConfig config, double jitter_tolerance = 0.5);

    // Returns a waterfall every N accepted sweeps; empty otherwise.
    std::vector<Waterfall> push(const Sweep& sweep);

    std::size_t dropped_sweeps() const { return dropped_; }
    std::size_t pending_sweeps() const { return pending_.size(); }

private:
    ProbeConfig config_;
    double jitter_tolerance_;
    std::vector<Sweep> pending_;
    std::size_t dropped_ = 0;
};

}  // namespace radiot

#endif  // RADIOT_SPECTRUM_HPP
