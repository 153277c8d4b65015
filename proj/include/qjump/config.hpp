#pragma once

// Run configuration and its flat key/value file format. The format is
// line-based: [section] headers, key = value pairs, '#' comments, blank
// lines ignored. Sections: model, run, sweep, histogram.

#include <cstdint>
#include <string>
#include <vector>

#include "qjump/model.hpp"

namespace qjump {

struct RunConfig {
    DemonParams model;
    double horizon_t = 3.0;
    long n_trajectories = 10000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    double grid_dt = 0.01;
    std::string output_dir = ".";
    bool all_visible = false;
    std::vector<double> sweep_gamma_x;
    std::vector<double> sweep_gamma_y;
    bool sweep_diagonal = false;
    double hist_lo = -12.0;
    double hist_hi = 12.0;
    double hist_bin_width = 0.25;

    void validate() const;  // throws ConfigError
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

} // namespace qjump
