#include "radiot/sweep_csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>

#include "radiot/errors.hpp"

namespace radiot {

namespace {

// Howard Hinnant's civil-date algorithms; keeps timestamp handling in UTC and
// independent of the host timezone database.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;           // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        std::size_t a = pos, b = comma;
        while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
        while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t' || line[b - 1] == '\r'))
            --b;
        fields.emplace_back(line.substr(a, b - a));
        pos = comma + 1;
        if (comma == line.size()) break;
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

double parse_csv_timestamp(const std::string& date, const std::string& time) {
    int y, mo, d;
    if (std::sscanf(date.c_str(), "%d-%d-%d", &y, &mo, &d) != 3 || mo < 1 || mo > 12 ||
        d < 1 || d > 31)
        throw FormatError("bad date field '" + date + "'");
    int h, mi;
    double sec;
    if (std::sscanf(time.c_str(), "%d:%d:%lf", &h, &mi, &sec) != 3 || h < 0 || h > 23 ||
        mi < 0 || mi > 59 || sec < 0.0 || sec >= 61.0)
        throw FormatError("bad time field '" + time + "'");
    return static_cast<double>(days_from_civil(y, static_cast<unsigned>(mo),
                                               static_cast<unsigned>(d))) *
               86400.0 +
           h * 3600.0 + mi * 60.0 + sec;
}

SweepCsvReader::SweepCsvReader(std::istream& lines, ProbeConfig config)
    : in_(lines), config_(std::move(config)) {
    config_.validate();
    pending_powers_.resize(config_.ranges.size());
    pending_filled_.resize(config_.ranges.size());
    for (std::size_t i = 0; i < config_.ranges.size(); ++i) {
        pending_powers_[i].assign(config_.bins_in_range(i), 0.0);
        pending_filled_[i].assign(config_.bins_in_range(i), false);
    }
}

std::optional<Sweep> SweepCsvReader::finish_pending() {
    if (!have_pending_) return std::nullopt;
    have_pending_ = false;

    bool complete = true;
    for (const auto& filled : pending_filled_)
        for (bool f : filled)
            if (!f) complete = false;

    Sweep sweep;
    sweep.timestamp = pending_time_;
    sweep.powers = pending_powers_;
    for (auto& filled : pending_filled_)
        filled.assign(filled.size(), false);

    if (!complete) {
        ++incomplete_;
        return std::nullopt;
    }
    return sweep;
}

bool SweepCsvReader::apply_record(const std::string& line) {
    auto fields = split_fields(line);
    if (fields.size() < 7) {
        ++malformed_;
        return false;
    }

    double t;
    try {
        t = parse_csv_timestamp(fields[0], fields[1]);
    } catch (const FormatError&) {
        ++malformed_;
        return false;
    }

    double hz_low, hz_high, hz_width, num_samples;
    if (!parse_double(fields[2], hz_low) || !parse_double(fields[3], hz_high) ||
        !parse_double(fields[4], hz_width) || !parse_double(fields[5], num_samples) ||
        hz_width <= 0.0 || hz_high <= hz_low) {
        ++malformed_;
        return false;
    }

    std::vector<double> db(fields.size() - 6);
    for (std::size_t j = 0; j < db.size(); ++j) {
        if (!parse_double(fields[6 + j], db[j])) {
            ++malformed_;
            return false;  // skip the whole record, no state change
        }
    }

    double width_khz = hz_width / 1000.0;
    if (std::abs(width_khz - config_.bin_width_khz) >
        1e-6 * std::max(1.0, config_.bin_width_khz))
        throw ConfigError("sweep CSV bin width " + std::to_string(width_khz) +
                          " KHz does not match configured " +
                          std::to_string(config_.bin_width_khz) + " KHz");

    if (t < last_time_)
        throw FormatError("sweep CSV timestamp regresses at '" + fields[0] + " " +
                          fields[1] + "'");
    last_time_ = t;

    if (have_pending_ && t != pending_time_)
        ready_ = finish_pending();
    if (!have_pending_) {
        have_pending_ = true;
        pending_time_ = t;
    }

    for (std::size_t j = 0; j < db.size(); ++j) {
        double f_khz = hz_low / 1000.0 + static_cast<double>(j) * width_khz;
        for (std::size_t i = 0; i < config_.ranges.size(); ++i) {
            const auto& r = config_.ranges[i];
            if (f_khz + 1e-9 < static_cast<double>(r.f_start_khz) ||
                f_khz + 1e-9 >= static_cast<double>(r.f_end_khz))
                continue;
            double idx = (f_khz - static_cast<double>(r.f_start_khz)) / width_khz;
            std::size_t k = static_cast<std::size_t>(std::llround(idx));
            if (std::abs(idx - std::round(idx)) > 1e-6 || k >= pending_powers_[i].size())
                continue;  // off-grid bin: not representable, drop
            pending_powers_[i][k] = db[j];
            pending_filled_[i][k] = true;
            break;
        }
    }
    return true;
}

std::optional<Sweep> SweepCsvReader::next() {
    while (true) {
        if (ready_) {
            auto out = std::move(ready_);
            ready_.reset();
            return out;
        }
        if (done_) return std::nullopt;

        std::string line;
        if (!std::getline(in_, line)) {
            done_ = true;
            if (auto s = finish_pending()) return s;
            return std::nullopt;
        }
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        apply_record(line);
    }
}

std::vector<Sweep> parse_sweep_csv(std::istream& lines, const ProbeConfig& config,
                                   std::size_t* malformed, std::size_t* incomplete) {
    SweepCsvReader reader(lines, config);
    std::vector<Sweep> out;
    while (auto s = reader.next()) out.push_back(std::move(*s));
    if (malformed) *malformed = reader.malformed_records();
    if (incomplete) *incomplete = reader.incomplete_sweeps();
    return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<Sweep>& sweeps,
                     const ProbeConfig& config) {
    config.validate();
    char buf[64];
    for (const auto& sweep : sweeps) {
        sweep.validate(config);
        double t = sweep.timestamp;
        auto days = static_cast<std::int64_t>(std::floor(t / 86400.0));
        double sod = t - static_cast<double>(days) * 86400.0;
        // Round to whole microseconds for a stable text form.
        std::int64_t usod = std::llround(sod * 1e6);
        if (usod >= 86400000000LL) {
            usod -= 86400000000LL;
            ++days;
        }
        std::int64_t y;
        unsigned mo, d;
        civil_from_days(days, y, mo, d);
        int h = static_cast<int>(usod / 3600000000LL);
        int mi = static_cast<int>((usod / 60000000LL) % 60);
        int s = static_cast<int>((usod / 1000000LL) % 60);
        int us = static_cast<int>(usod % 1000000LL);

        for (std::size_t i = 0; i < config.ranges.size(); ++i) {
            const auto& r = config.ranges[i];
            std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u, %02d:%02d:%02d.%06d",
                          static_cast<long long>(y), mo, d, h, mi, s, us);
            out << buf;
            std::snprintf(buf, sizeof(buf), ", %llu, %llu, %.2f, 8192",
                          static_cast<unsigned long long>(r.f_start_khz * 1000),
                          static_cast<unsigned long long>(r.f_end_khz * 1000),
                          config.bin_width_khz * 1000.0);
            out << buf;
            for (double v : sweep.powers[i]) {
                std::snprintf(buf, sizeof(buf), ", %.17g", v);
                out << buf;
            }
            out << '\n';
        }
    }
    if (!out) throw IoError("failed writing sweep CSV");
}

}  // namespace radiot
