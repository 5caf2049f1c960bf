#ifndef RADIOT_WATERFALL_IO_HPP
#define RADIOT_WATERFALL_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radiot/spectrum.hpp"

namespace radiot {

// Waterfall binary record, little-endian:
//   magic "RDIO" | version u16 | probe_id_len u16 + bytes | start_time f64 |
//   T f64 | b f64 (KHz) | N u32 | M u32 | per range: f_start u64, f_end u64 |
//   payload: N * sum(L_i) f64 values, row-major.
// Records concatenate, so one file can hold a whole capture.

inline constexpr std::uint16_t kWaterfallFormatVersion = 1;

// Returns the number of bytes written (header + payload).
std::size_t write_waterfall(const Waterfall& w, std::ostream& sink);

// Reads one record. Returns nullopt on clean end-of-stream; throws
// FormatError on a corrupt or truncated record.
std::optional<Waterfall> read_waterfall(std::istream& source);

// Header size in bytes for a given probe id / range count; the payload that
// follows is exactly 8 * N * sum(L_i) bytes.
std::size_t waterfall_header_size(std::size_t probe_id_len, std::size_t range_count);

// Whole-file helpers used by the pipeline stages.
void write_waterfall_file(const std::string& path, const std::vector<Waterfall>& ws);
std::vector<Waterfall> read_waterfall_file(const std::string& path);

// Streaming reader, keeps one record in memory at a time.
class WaterfallFileReader {
public:
    explicit WaterfallFileReader(const std::string& path);
    ~WaterfallFileReader();
    WaterfallFileReader(const WaterfallFileReader&) = delete;
    WaterfallFileReader& operator=(const WaterfallFileReader&) = delete;

    std::optional<Waterfall> next();

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace radiot

#endif  // RADIOT_WATERFALL_IO_HPP
