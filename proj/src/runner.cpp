#include "qjump/runner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qjump/rng.hpp"

namespace qjump {

LindbladModel make_all_visible(const LindbladModel& m) {
    LindbladModel out = m;
    for (auto& j : out.jumps) j.visible = true;
    return out;
}

EnsembleResult run_ensemble(const LindbladModel& model, long n, double horizon,
                            std::uint64_t seed, int threads) {
    EnsembleResult result;
    result.steady = steady_state(model);
    result.ledgers.resize(n);

    const TrajectorySampler sampler(model, result.steady);
    const KernelEvaluator kernels(model);

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = static_cast<int>(std::min<long>(n_threads, n));

    std::atomic<long> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&]() {
        try {
            while (true) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                const std::uint64_t traj_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
                Trajectory t = sampler.sample(traj_seed, horizon);
                result.ledgers[i] = make_ledger(model, kernels, result.steady, t, i, traj_seed);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return result;
}

std::vector<SweepPoint> run_sweep(const RunConfig& cfg) {
    if (cfg.sweep_gamma_x.empty() || (cfg.sweep_gamma_y.empty() && !cfg.sweep_diagonal))
        throw ConfigError("sweep: empty grid (set sweep.gamma_x and sweep.gamma_y)");

    std::vector<std::pair<double, double>> points;
    if (cfg.sweep_diagonal) {
        for (double g : cfg.sweep_gamma_x) points.emplace_back(g, g);
    } else {
        for (double gx : cfg.sweep_gamma_x)
            for (double gy : cfg.sweep_gamma_y) points.emplace_back(gx, gy);
    }

    std::vector<SweepPoint> out;
    for (auto [gx, gy] : points) {
        DemonParams p = cfg.model;
        p.gamma_x = gx;
        p.gamma_y = gy;
        LindbladModel model = build_demon_model(p);
        if (cfg.all_visible) model = make_all_visible(model);
        EnsembleResult res =
            run_ensemble(model, cfg.n_trajectories, cfg.horizon_t, cfg.seed, cfg.threads);
        SecondLawSummary law = second_law_check(res.ledgers);
        SweepPoint pt;
        pt.gamma_x = gx;
        pt.gamma_y = gy;
        pt.n = cfg.n_trajectories;
        pt.ds_env = law.ds_env;
        pt.dsigma_y = law.dsigma_y;
        pt.ds_env_plus_dsigma_y = law.ds_env_plus_dsigma_y;
        pt.dsigma = law.dsigma;
        pt.ift = ift_estimate(res.ledgers, IftQuantity::dsigma);
        out.push_back(pt);
    }
    return out;
}

Histogram Histogram::collect(const std::vector<double>& values, double lo, double hi,
                             double width) {
    Histogram h;
    h.lo = lo;
    h.width = width;
    const long nbins = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / width)));
    h.counts.assign(nbins, 0);
    for (double v : values) {
        if (v < lo) {
            ++h.underflow;
        } else {
            const long bin = static_cast<long>((v - lo) / width);
            if (bin >= nbins) ++h.overflow;
            else ++h.counts[bin];
        }
    }
    return h;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    return out;
}

} // namespace

void write_ledger_csv(const std::string& path, const std::vector<EntropyLedger>& ledgers) {
    auto out = open_out(path);
    out << "trajectory_index,seed,a,b,n_visible,n_hidden,ds_env_visible,"
           "ds_env_hidden_actual,dsigma_y,ds_sys,dsigma\n";
    for (const auto& l : ledgers)
        out << l.trajectory_index << ',' << l.seed << ',' << l.a << ',' << l.b << ','
            << l.n_visible << ',' << l.n_hidden << ',' << format_double(l.ds_env_visible) << ','
            << format_double(l.ds_env_hidden_actual) << ',' << format_double(l.dsigma_y) << ','
            << format_double(l.ds_sys) << ',' << format_double(l.dsigma) << '\n';
}

void write_steady_csv(const std::string& path, const LindbladModel& m, const SteadyState& ss) {
    auto out = open_out(path);
    out << "state,probability\n";
    for (Index i = 0; i < ss.probabilities.size(); ++i)
        out << m.basis_labels[i] << ',' << format_double(ss.probabilities(i)) << '\n';
}

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points) {
    auto out = open_out(path);
    out << "gamma_x,gamma_y,n,mean_ds_env,se_ds_env,mean_dsigma_y,se_dsigma_y,"
           "mean_ds_env_plus_dsigma_y,se_ds_env_plus_dsigma_y,mean_dsigma,se_dsigma,"
           "ift_mean,ift_se\n";
    for (const auto& p : points)
        out << format_double(p.gamma_x) << ',' << format_double(p.gamma_y) << ',' << p.n << ','
            << format_double(p.ds_env.mean) << ',' << format_double(p.ds_env.se) << ','
            << format_double(p.dsigma_y.mean) << ',' << format_double(p.dsigma_y.se) << ','
            << format_double(p.ds_env_plus_dsigma_y.mean) << ','
            << format_double(p.ds_env_plus_dsigma_y.se) << ',' << format_double(p.dsigma.mean)
            << ',' << format_double(p.dsigma.se) << ',' << format_double(p.ift.mean) << ','
            << format_double(p.ift.se) << '\n';
}

void write_series_csv(const std::string& path, const std::vector<ConditionedPoint>& series) {
    auto out = open_out(path);
    out << "t,p00,p01,p10,p11,pY0,pY1,re_rhoY01,im_rhoY01,lognorm\n";
    for (const auto& pt : series)
        out << format_double(pt.t) << ',' << format_double(pt.p00) << ','
            << format_double(pt.p01) << ',' << format_double(pt.p10) << ','
            << format_double(pt.p11) << ',' << format_double(pt.py0) << ','
            << format_double(pt.py1) << ',' << format_double(pt.rho_y_01.real()) << ','
            << format_double(pt.rho_y_01.imag()) << ',' << format_double(pt.lognorm) << '\n';
}

void write_histogram_csv(const std::string& path,
                         const std::vector<std::pair<std::string, Histogram>>& histograms) {
    auto out = open_out(path);
    out << "quantity,bin_lo,bin_hi,count\n";
    for (const auto& [name, h] : histograms)
        for (size_t i = 0; i < h.counts.size(); ++i)
            out << name << ',' << format_double(h.lo + i * h.width) << ','
                << format_double(h.lo + (i + 1) * h.width) << ',' << h.counts[i] << '\n';
}

} // namespace qjump
