#pragma once

// Experiment orchestration: parallel trajectory ensembles, sweeps over the
// feedback parameters, histograms and CSV emission. All statistics are
// worker-count invariant: trajectory i is fully determined by
// mix_seed(seed, i) and results are merged in index order.

#include <cstdint>
#include <string>
#include <vector>

#include "qjump/config.hpp"
#include "qjump/entropy.hpp"
#include "qjump/unravel.hpp"

namespace qjump {

/// A copy of the model with every channel marked visible (k_Y empty).
LindbladModel make_all_visible(const LindbladModel& m);

struct EnsembleResult {
    std::vector<EntropyLedger> ledgers;  // ordered by trajectory index
    SteadyState steady;
};

/// Sample n trajectories of the configured model and assemble their ledgers.
EnsembleResult run_ensemble(const LindbladModel& model, long n, double horizon,
                            std::uint64_t seed, int threads);

struct SweepPoint {
    double gamma_x = 0, gamma_y = 0;
    long n = 0;
    MeanStderr ds_env, dsigma_y, ds_env_plus_dsigma_y, dsigma, ift;
};

/// One ensemble per (gamma_x, gamma_y) grid point (full product grid, or the
/// diagonal when requested).
std::vector<SweepPoint> run_sweep(const RunConfig& cfg);

struct Histogram {
    double lo = 0, width = 0;
    std::vector<long> counts;     // counts.size() bins in [lo, lo + n*width)
    long underflow = 0, overflow = 0;

    static Histogram collect(const std::vector<double>& values, double lo, double hi,
                             double width);
};

// CSV emission. Schemas are documented in the README; every file starts with
// a header row.
void write_ledger_csv(const std::string& path, const std::vector<EntropyLedger>& ledgers);
void write_steady_csv(const std::string& path, const LindbladModel& m, const SteadyState& ss);
void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points);
void write_series_csv(const std::string& path, const std::vector<ConditionedPoint>& series);
void write_histogram_csv(const std::string& path,
                         const std::vector<std::pair<std::string, Histogram>>& histograms);

std::string format_double(double v);

} // namespace qjump
