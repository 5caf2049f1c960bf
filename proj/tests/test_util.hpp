#ifndef RADIOT_TEST_UTIL_HPP
#define RADIOT_TEST_UTIL_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "radiot/rng.hpp"
#include "radiot/spectrum.hpp"

namespace radiot::test {

// Fresh scratch directory under the build tree, wiped per call site name.
inline std::string scratch_dir(const std::string& name) {
    std::filesystem::path p = std::filesystem::path("t_out") / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

inline ProbeConfig small_config(std::size_t bins = 10, double b_khz = 100.0,
                                double t_s = 0.05, std::uint32_t n = 20) {
    ProbeConfig cfg;
    cfg.ranges = {{100000, 100000 + static_cast<std::uint64_t>(bins * b_khz)}};
    cfg.bin_width_khz = b_khz;
    cfg.sweep_interval_s = t_s;
    cfg.sweeps_per_waterfall = n;
    cfg.probe_id = "test-probe";
    return cfg;
}

inline std::vector<Sweep> random_sweeps(const ProbeConfig& cfg, std::size_t count,
                                        double t0, Rng& rng) {
    std::vector<Sweep> out;
    for (std::size_t j = 0; j < count; ++j) {
        Sweep s;
        s.timestamp = t0 + static_cast<double>(j) * cfg.sweep_interval_s;
        s.powers.resize(cfg.ranges.size());
        for (std::size_t i = 0; i < cfg.ranges.size(); ++i) {
            s.powers[i].resize(cfg.bins_in_range(i));
            for (auto& v : s.powers[i]) v = rng.uniform(-100.0, -20.0);
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline Waterfall random_waterfall(const ProbeConfig& cfg, double t0, Rng& rng) {
    auto sweeps = random_sweeps(cfg, cfg.sweeps_per_waterfall, t0, rng);
    return assemble_waterfall(sweeps, cfg);
}

}  // namespace radiot::test

#endif
