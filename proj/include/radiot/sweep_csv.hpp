#ifndef RADIOT_SWEEP_CSV_HPP
#define RADIOT_SWEEP_CSV_HPP

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "radiot/spectrum.hpp"

namespace radiot {

// Reader for the de facto sweep-tool CSV dialect, one FFT segment per record:
//   date, time, hz_low, hz_high, hz_bin_width, num_samples, dB, dB, ...
// e.g. "2023-06-01, 10:00:00.123456, 400000000, 401000000, 200000.00, 8192, -70.1, ..."
//
// Adjacent records sharing a timestamp merge into one Sweep; bins outside the
// configured ranges are dropped. Malformed records are skipped and counted;
// a bin width that disagrees with the config is fatal, as is a timestamp
// that regresses (capture glitches should surface, not be repaired).
class SweepCsvReader {
public:
    SweepCsvReader(std::istream& lines, ProbeConfig config);

    // Next complete sweep, or nullopt at end of input. Sweeps missing bins
    // (e.g. capture started mid-sweep) are dropped and counted.
    std::optional<Sweep> next();

    std::size_t malformed_records() const { return malformed_; }
    std::size_t incomplete_sweeps() const { return incomplete_; }

private:
    std::optional<Sweep> finish_pending();
    bool apply_record(const std::string& line);

    std::istream& in_;
    ProbeConfig config_;
    bool done_ = false;
    bool have_pending_ = false;
    double pending_time_ = 0.0;
    std::vector<std::vector<double>> pending_powers_;
    std::vector<std::vector<bool>> pending_filled_;
    std::optional<Sweep> ready_;
    std::size_t malformed_ = 0;
    std::size_t incomplete_ = 0;
    double last_time_ = -std::numeric_limits<double>::infinity();
};

// Convenience: parse a whole stream.
std::vector<Sweep> parse_sweep_csv(std::istream& lines, const ProbeConfig& config,
                                   std::size_t* malformed = nullptr,
                                   std::size_t* incomplete = nullptr);

// Writes sweeps back out in the same dialect (one record per configured
// range), with enough digits that a parse round-trip is value-exact.
void write_sweep_csv(std::ostream& out, const std::vector<Sweep>& sweeps,
                     const ProbeConfig& config);

// Unix seconds (UTC) from "YYYY-MM-DD" + "HH:MM:SS[.frac]".
double parse_csv_timestamp(const std::string& date, const std::string& time);

}  // namespace radiot

#endif  // RADIOT_SWEEP_CSV_HPP
