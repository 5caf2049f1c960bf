#include "radiot/waterfall_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "radiot/errors.hpp"

namespace radiot {

namespace {

constexpr char kMagic[4] = {'R', 'D', 'I', 'O'};
constexpr std::size_t kMaxProbeIdLen = 4096;
constexpr std::size_t kMaxCells = std::size_t{1} << 31;  // 16 GiB payload cap

void put_bytes(std::ostream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

template <typename T>
void put_le(std::ostream& os, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(buf[i], buf[sizeof(T) - 1 - i]);
    }
    put_bytes(os, buf, sizeof(T));
}

void put_f64(std::ostream& os, double v) { put_le(os, std::bit_cast<std::uint64_t>(v)); }

bool get_bytes(std::istream& is, void* p, std::size_t n) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(is.gcount()) == n;
}

template <typename T>
T get_le(std::istream& is, const char* what) {
    unsigned char buf[sizeof(T)];
    if (!get_bytes(is, buf, sizeof(T)))
        throw FormatError(std::string("truncated waterfall record while reading ") + what);
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(buf[i], buf[sizeof(T) - 1 - i]);
    }
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

double get_f64(std::istream& is, const char* what) {
    return std::bit_cast<double>(get_le<std::uint64_t>(is, what));
}

}  // namespace

std::size_t waterfall_header_size(std::size_t probe_id_len, std::size_t range_count) {
    return 4 + 2 + 2 + probe_id_len + 8 + 8 + 8 + 4 + 4 + 16 * range_count;
}

std::size_t write_waterfall(const Waterfall& w, std::ostream& sink) {
    const ProbeConfig& cfg = w.config();
    if (w.probe_id().size() > kMaxProbeIdLen)
        throw ConfigError("probe id too long to serialize");

    put_bytes(sink, kMagic, 4);
    put_le<std::uint16_t>(sink, kWaterfallFormatVersion);
    put_le<std::uint16_t>(sink, static_cast<std::uint16_t>(w.probe_id().size()));
    put_bytes(sink, w.probe_id().data(), w.probe_id().size());
    put_f64(sink, w.start_time());
    put_f64(sink, cfg.sweep_interval_s);
    put_f64(sink, cfg.bin_width_khz);
    put_le<std::uint32_t>(sink, cfg.sweeps_per_waterfall);
    put_le<std::uint32_t>(sink, static_cast<std::uint32_t>(cfg.ranges.size()));
    for (const auto& r : cfg.ranges) {
        put_le<std::uint64_t>(sink, r.f_start_khz);
        put_le<std::uint64_t>(sink, r.f_end_khz);
    }

    std::span<const double> cells = w.cells();
    if constexpr (std::endian::native == std::endian::little) {
        put_bytes(sink, cells.data(), cells.size() * sizeof(double));
    } else {
        for (double v : cells) put_f64(sink, v);
    }
    if (!sink)
        throw IoError("failed writing waterfall record");
    return waterfall_header_size(w.probe_id().size(), cfg.ranges.size()) +
           cells.size() * sizeof(double);
}

std::optional<Waterfall> read_waterfall(std::istream& source) {
    char magic[4];
    source.read(magic, 4);
    if (source.gcount() == 0 && source.eof())
        return std::nullopt;  // clean end of stream
    if (source.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("bad waterfall magic");

    std::uint16_t version = get_le<std::uint16_t>(source, "version");
    if (version != kWaterfallFormatVersion)
        throw FormatError("unsupported waterfall format version " + std::to_string(version));

    std::uint16_t id_len = get_le<std::uint16_t>(source, "probe id length");
    std::string probe_id(id_len, '\0');
    if (id_len > 0 && !get_bytes(source, probe_id.data(), id_len))
        throw FormatError("truncated waterfall record while reading probe id");

    ProbeConfig cfg;
    cfg.probe_id = probe_id;
    double start_time = get_f64(source, "start time");
    cfg.sweep_interval_s = get_f64(source, "sweep interval");
    cfg.bin_width_khz = get_f64(source, "bin width");
    cfg.sweeps_per_waterfall = get_le<std::uint32_t>(source, "N");
    std::uint32_t m = get_le<std::uint32_t>(source, "M");
    if (m == 0)
        throw FormatError("waterfall record declares zero ranges");
    for (std::uint32_t i = 0; i < m; ++i) {
        FrequencyRange r;
        r.f_start_khz = get_le<std::uint64_t>(source, "range start");
        r.f_end_khz = get_le<std::uint64_t>(source, "range end");
        cfg.ranges.push_back(r);
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw FormatError(std::string("waterfall header inconsistent: ") + e.what());
    }

    std::size_t cells_n =
        static_cast<std::size_t>(cfg.sweeps_per_waterfall) * cfg.total_bins();
    if (cells_n == 0 || cells_n > kMaxCells)
        throw FormatError("waterfall dimensions out of bounds");

    std::vector<double> cells(cells_n);
    if constexpr (std::endian::native == std::endian::little) {
        if (!get_bytes(source, cells.data(), cells_n * sizeof(double)))
            throw FormatError("truncated waterfall payload");
    } else {
        for (auto& v : cells) v = get_f64(source, "payload");
    }
    return Waterfall(start_time, probe_id, std::move(cfg), std::move(cells));
}

void write_waterfall_file(const std::string& path, const std::vector<Waterfall>& ws) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    for (const auto& w : ws) write_waterfall(w, out);
    out.flush();
    if (!out)
        throw IoError("failed writing " + path);
}

std::vector<Waterfall> read_waterfall_file(const std::string& path) {
    WaterfallFileReader reader(path);
    std::vector<Waterfall> out;
    while (auto w = reader.next()) out.push_back(std::move(*w));
    return out;
}

struct WaterfallFileReader::Impl {
    std::ifstream in;
    std::string path;
};

WaterfallFileReader::WaterfallFileReader(const std::string& path)
    : impl_(new Impl{std::ifstream(path, std::ios::binary), path}) {
    if (!impl_->in) {
        delete impl_;
        throw IoError("cannot open " + path);
    }
}

WaterfallFileReader::~WaterfallFileReader() { delete impl_; }

std::optional<Waterfall> WaterfallFileReader::next() {
    try {
        return read_waterfall(impl_->in);
    } catch (const FormatError& e) {
        throw FormatError(impl_->path + ": " + e.what());
    }
}

}  // namespace radiot
