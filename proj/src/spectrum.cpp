#include "radiot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "radiot/errors.hpp"

namespace radiot {

std::string FrequencyRange::str() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%llu-%llu",
                  static_cast<unsigned long long>(f_start_khz),
                  static_cast<unsigned long long>(f_end_khz));
    return buf;
}

std::size_t bin_count(const FrequencyRange& range, double bin_width_khz) {
    if (bin_width_khz <= 0.0)
        throw ConfigError("bin width must be positive");
    if (range.f_end_khz <= range.f_start_khz)
        throw ConfigError("frequency range " + range.str() + " is empty or reversed");
    double width = static_cast<double>(range.width_khz());
    double q = width / bin_width_khz;
    double rounded = std::round(q);
    if (rounded < 1.0 || std::abs(q - rounded) > 1e-9 * std::max(1.0, q))
        throw ConfigError("range " + range.str() + " is not a whole number of " +
                          std::to_string(bin_width_khz) + " KHz bins");
    return static_cast<std::size_t>(rounded);
}

std::size_t ProbeConfig::bins_in_range(std::size_t i) const {
    return bin_count(ranges.at(i), bin_width_khz);
}

std::size_t ProbeConfig::total_bins() const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < ranges.size(); ++i) total += bins_in_range(i);
    return total;
}

std::size_t ProbeConfig::range_col_offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t j = 0; j < i; ++j) off += bins_in_range(j);
    return off;
}

void ProbeConfig::validate() const {
    if (ranges.empty())
        throw ConfigError("probe config needs at least one frequency range");
    if (bin_width_khz <= 0.0)
        throw ConfigError("bin width must be positive");
    if (sweep_interval_s <= 0.0)
        throw ConfigError("sweep interval must be positive");
    if (sweeps_per_waterfall == 0)
        throw ConfigError("sweeps per waterfall must be positive");
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        const auto& r = ranges[i];
        if (r.f_start_khz == 0)
            throw ConfigError("range " + r.str() + " must have a positive start");
        if (r.f_start_khz >= r.f_end_khz)
            throw ConfigError("range " + r.str() + " must satisfy f_start < f_end");
        bin_count(r, bin_width_khz);  // throws when off-grid
        for (std::size_t j = i + 1; j < ranges.size(); ++j) {
            if (r.overlaps(ranges[j]))
                throw ConfigError("ranges " + r.str() + " and " + ranges[j].str() +
                                  " overlap");
        }
    }
}

ProbeConfig default_probe_config() {
    ProbeConfig cfg;
    cfg.ranges = {{400000, 500000}, {800000, 900000}, {2400000, 2500000}};
    cfg.bin_width_khz = 200.0;
    cfg.sweep_interval_s = 0.0375;
    cfg.sweeps_per_waterfall = 100;
    cfg.probe_id = "probe0";
    return cfg;
}

void Sweep::validate(const ProbeConfig& config) const {
    if (powers.size() != config.ranges.size())
        throw ConfigError("sweep covers " + std::to_string(powers.size()) +
                          " ranges, config has " + std::to_string(config.ranges.size()));
    for (std::size_t i = 0; i < powers.size(); ++i) {
        std::size_t want = config.bins_in_range(i);
        if (powers[i].size() != want)
            throw ConfigError("sweep range " + std::to_string(i) + " has " +
                              std::to_string(powers[i].size()) + " bins, expected " +
                              std::to_string(want));
        for (double v : powers[i])
            if (!std::isfinite(v))
                throw ConfigError("sweep range " + std::to_string(i) +
                                  " contains a non-finite power value");
    }
}

Waterfall::Waterfall(double start_time, std::string probe_id, ProbeConfig config,
                     std::vector<double> row_major_cells)
    : start_time_(start_time),
      probe_id_(std::move(probe_id)),
      config_(std::move(config)),
      cols_(config_.total_bins()),
      cells_(std::move(row_major_cells)) {
    if (cells_.size() != static_cast<std::size_t>(config_.sweeps_per_waterfall) * cols_)
        throw ConfigError("waterfall cell buffer does not match N x sum(L_i)");
}

double Waterfall::col_frequency_khz(std::size_t col) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < config_.ranges.size(); ++i) {
        std::size_t li = config_.bins_in_range(i);
        if (col < off + li) {
            return static_cast<double>(config_.ranges[i].f_start_khz) +
                   static_cast<double>(col - off) * config_.bin_width_khz;
        }
        off += li;
    }
    throw ConfigError("column index out of range");
}

WaterfallSlice::WaterfallSlice(const Waterfall& parent, FrequencyRange slice_range,
                               std::size_t col_begin, std::size_t bin_cols)
    : parent_(&parent), range_(slice_range), col_begin_(col_begin), cols_(bin_cols) {}

Waterfall assemble_waterfall(std::span<const Sweep> sweeps, const ProbeConfig& config,
                             double jitter_tolerance) {
    config.validate();
    const std::size_t n = config.sweeps_per_waterfall;
    if (sweeps.size() != n)
        throw ConfigError("assembly needs exactly " + std::to_string(n) + " sweeps, got " +
                          std::to_string(sweeps.size()));

    const double t_nominal = config.sweep_interval_s;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            sweeps[i].validate(config);
        } catch (const Error& e) {
            throw ConfigError("sweep " + std::to_string(i) + ": " + e.what());
        }
        if (i > 0) {
            double dt = sweeps[i].timestamp - sweeps[i - 1].timestamp;
            if (dt <= 0.0)
                throw ConfigError("sweep " + std::to_string(i) +
                                  " timestamp does not increase");
            if (std::abs(dt - t_nominal) > jitter_tolerance * t_nominal)
                throw ConfigError("sweep " + std::to_string(i) + " interval " +
                                  std::to_string(dt) + "s deviates from T=" +
                                  std::to_string(t_nominal) + "s beyond tolerance");
        }
    }

    const std::size_t cols = config.total_bins();
    std::vector<double> cells(n * cols);
    for (std::size_t row = 0; row < n; ++row) {
        double* out = cells.data() + row * cols;
        for (const auto& range_powers : sweeps[row].powers) {
            std::copy(range_powers.begin(), range_powers.end(), out);
            out += range_powers.size();
        }
    }
    return Waterfall(sweeps.front().timestamp, config.probe_id, config, std::move(cells));
}

WaterfallSlice slice_waterfall(const Waterfall& w, const FrequencyRange& sub) {
    const ProbeConfig& cfg = w.config();
    if (sub.f_start_khz >= sub.f_end_khz)
        throw ConfigError("slice range " + sub.str() + " is empty or reversed");

    for (std::size_t i = 0; i < cfg.ranges.size(); ++i) {
        const FrequencyRange& r = cfg.ranges[i];
        if (!r.overlaps(sub)) continue;
        if (!r.contains(sub))
            throw ConfigError("slice " + sub.str() + " crosses the boundary of range " +
                              r.str());
        double b = cfg.bin_width_khz;
        double lo = static_cast<double>(sub.f_start_khz - r.f_start_khz) / b;
        double hi = static_cast<double>(sub.f_end_khz - r.f_start_khz) / b;
        if (std::abs(lo - std::round(lo)) > 1e-9 || std::abs(hi - std::round(hi)) > 1e-9)
            throw ConfigError("slice " + sub.str() + " endpoints are not on the " +
                              std::to_string(b) + " KHz bin grid");
        std::size_t first = static_cast<std::size_t>(std::llround(lo));
        std::size_t count = static_cast<std::size_t>(std::llround(hi)) - first;
        return WaterfallSlice(w, sub, cfg.range_col_offset(i) + first, count);
    }
    throw ConfigError("slice " + sub.str() + " lies outside every configured range");
}

WaterfallAssembler::WaterfallAssembler(ProbeConfig config, double jitter_tolerance)
    : config_(std::move(config)), jitter_tolerance_(jitter_tolerance) {
    config_.validate();
}

std::vector<Waterfall> WaterfallAssembler::push(const Sweep& sweep) {
    sweep.validate(config_);
    if (!pending_.empty()) {
        double dt = sweep.timestamp - pending_.back().timestamp;
        bool ok = dt > 0.0 &&
                  std::abs(dt - config_.sweep_interval_s) <=
                      jitter_tolerance_ * config_.sweep_interval_s;
        if (!ok) {
            if (dt <= 0.0)
                throw ConfigError("sweep timestamps regress at t=" +
                                  std::to_string(sweep.timestamp));
            // Gap in the capture: the partial block cannot be completed.
            dropped_ += pending_.size();
            pending_.clear();
        }
    }
    pending_.push_back(sweep);

    std::vector<Waterfall> out;
    if (pending_.size() == config_.sweeps_per_waterfall) {
        out.push_back(assemble_waterfall(pending_, config_, jitter_tolerance_));
        pending_.clear();
    }
    return out;
}

}  // namespace radiot
