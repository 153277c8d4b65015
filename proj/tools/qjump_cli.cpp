// Command-line driver: steady-state inspection, trajectory ensembles with
// entropy ledgers, feedback-parameter sweeps, conditioned-state series and
// fluctuation-theorem estimates.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 statistical acceptance failure (with --check).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qjump/config.hpp"
#include "qjump/entropy.hpp"
#include "qjump/runner.hpp"
#include "qjump/svg.hpp"
#include "qjump/unravel.hpp"

namespace {

using namespace qjump;

struct CliOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out_dir;
    bool all_visible = false;
    bool check = false;
};

RunConfig load_config(const CliOptions& opt) {
    RunConfig cfg = opt.config_path.empty() ? RunConfig{} : parse_config_file(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.threads) cfg.threads = *opt.threads;
    if (opt.out_dir) cfg.output_dir = *opt.out_dir;
    if (opt.all_visible) cfg.all_visible = true;
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);
    return cfg;
}

LindbladModel effective_model(const RunConfig& cfg) {
    LindbladModel m = build_demon_model(cfg.model);
    for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
    if (cfg.all_visible) m = make_all_visible(m);
    return m;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

void print_mean(const char* label, const MeanStderr& ms) {
    std::printf("%-22s % .6f +- %.6f\n", label, ms.mean, ms.se);
}

int cmd_steady(const RunConfig& cfg) {
    const LindbladModel m = effective_model(cfg);
    const SteadyState ss = steady_state(m);
    for (Index i = 0; i < ss.probabilities.size(); ++i)
        std::printf("P(%s) = %.12f\n", m.basis_labels[i].c_str(), ss.probabilities(i));
    std::printf("uniqueness gap     = %.3e\n", ss.gap);
    std::printf("max |off-diagonal| = %.3e\n", ss.max_offdiag);
    write_steady_csv(out_path(cfg, "steady.csv"), m, ss);
    return 0;
}

int cmd_sample(const RunConfig& cfg, bool check) {
    const LindbladModel m = effective_model(cfg);
    const EnsembleResult res = run_ensemble(m, cfg.n_trajectories, cfg.horizon_t, cfg.seed,
                                            cfg.threads);
    write_ledger_csv(out_path(cfg, "ledger.csv"), res.ledgers);

    std::vector<double> env, hid, tot;
    for (const auto& l : res.ledgers) {
        env.push_back(l.ds_env_visible);
        hid.push_back(l.dsigma_y);
        tot.push_back(l.dsigma);
    }
    write_histogram_csv(out_path(cfg, "histogram.csv"),
                        {{"ds_env", Histogram::collect(env, cfg.hist_lo, cfg.hist_hi,
                                                       cfg.hist_bin_width)},
                         {"dsigma_y", Histogram::collect(hid, cfg.hist_lo, cfg.hist_hi,
                                                         cfg.hist_bin_width)},
                         {"dsigma", Histogram::collect(tot, cfg.hist_lo, cfg.hist_hi,
                                                       cfg.hist_bin_width)}});

    const SecondLawSummary law = second_law_check(res.ledgers);
    const MeanStderr ift = ift_estimate(res.ledgers, IftQuantity::dsigma);
    std::printf("n = %ld, T = %g, gamma_x = %g, gamma_y = %g\n", cfg.n_trajectories,
                cfg.horizon_t, cfg.model.gamma_x, cfg.model.gamma_y);
    print_mean("<ds_env>", law.ds_env);
    print_mean("<dsigma_Y>", law.dsigma_y);
    print_mean("<ds_env + dsigma_Y>", law.ds_env_plus_dsigma_y);
    print_mean("<dsigma>", law.dsigma);
    print_mean("<exp(-dsigma)>", ift);
    if (check && std::abs(ift.mean - 1.0) > 3 * ift.se) {
        std::fprintf(stderr, "check failed: |<exp(-dsigma)> - 1| > 3 stderr\n");
        return 3;
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, bool check) {
    const auto points = run_sweep(cfg);
    write_sweep_csv(out_path(cfg, "sweep.csv"), points);
    bool ok = true;
    for (const auto& p : points) {
        std::printf("gamma_x=%.3f gamma_y=%.3f  <ds_env>=% .4f(%.4f)  <dsigma_Y>=% .4f(%.4f)  "
                    "<sum>=% .4f(%.4f)  IFT=%.4f(%.4f)\n",
                    p.gamma_x, p.gamma_y, p.ds_env.mean, p.ds_env.se, p.dsigma_y.mean,
                    p.dsigma_y.se, p.ds_env_plus_dsigma_y.mean, p.ds_env_plus_dsigma_y.se,
                    p.ift.mean, p.ift.se);
        if (p.ds_env_plus_dsigma_y.mean < -3 * p.ds_env_plus_dsigma_y.se) ok = false;
    }
    if (check && !ok) {
        std::fprintf(stderr, "check failed: modified second law violated on the grid\n");
        return 3;
    }
    return 0;
}

VisibleTrajectory parse_trajectory_spec(const LindbladModel& m, const std::string& spec) {
    std::vector<std::string> tokens;
    std::string item;
    std::stringstream ss(spec);
    while (std::getline(ss, item, ';')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) tokens.push_back(item.substr(b, e - b + 1));
    }
    if (tokens.size() < 3)
        throw ConfigError("trajectory spec needs 'initial; [k@t;...] final; T=..'");
    auto label_index = [&](const std::string& label) {
        for (size_t i = 0; i < m.basis_labels.size(); ++i)
            if (m.basis_labels[i] == label) return static_cast<int>(i);
        throw ConfigError("unknown basis label '" + label + "'");
    };

    VisibleTrajectory v;
    v.initial_state = label_index(tokens.front());
    const std::string& t_token = tokens.back();
    if (t_token.rfind("T=", 0) != 0)
        throw ConfigError("trajectory spec must end with 'T=<horizon>'");
    v.horizon = std::stod(t_token.substr(2));
    v.final_state = label_index(tokens[tokens.size() - 2]);
    for (size_t i = 1; i + 2 < tokens.size(); ++i) {
        const auto at = tokens[i].find('@');
        if (at == std::string::npos)
            throw ConfigError("bad event '" + tokens[i] + "' (expected k@t)");
        JumpEvent ev;
        ev.jump_id = std::stoi(tokens[i].substr(0, at));
        ev.time = std::stod(tokens[i].substr(at + 1));
        if (!(ev.time > 0) || !(ev.time < v.horizon))
            throw ConfigError("event '" + tokens[i] + "' outside (0, T)");
        v.events.push_back(ev);
    }
    return v;
}

int cmd_observe(const RunConfig& cfg, const std::string& spec, bool svg) {
    const LindbladModel m = effective_model(cfg);
    const VisibleTrajectory v = parse_trajectory_spec(m, spec);
    const auto series = conditioned_state_series(m, v, cfg.grid_dt);
    write_series_csv(out_path(cfg, "series.csv"), series);
    if (svg) write_series_svg(out_path(cfg, "series.svg"), series, cfg.model.drive);
    std::printf("%zu points written; final lognorm = %.9f\n", series.size(),
                series.back().lognorm);
    return 0;
}

int cmd_ift(const RunConfig& cfg, bool check) {
    const LindbladModel m = effective_model(cfg);
    const EnsembleResult res = run_ensemble(m, cfg.n_trajectories, cfg.horizon_t, cfg.seed,
                                            cfg.threads);
    const MeanStderr ift = ift_estimate(res.ledgers, IftQuantity::dsigma);
    std::printf("n = %ld\n", cfg.n_trajectories);
    print_mean("<exp(-dsigma)>", ift);
    bool ok = std::abs(ift.mean - 1.0) <= 3 * ift.se;
    if (cfg.all_visible) {
        const MeanStderr tot = ift_estimate(res.ledgers, IftQuantity::ds_tot);
        print_mean("<exp(-ds_tot)>", tot);
        ok = ok && std::abs(tot.mean - 1.0) <= 3 * tot.se;
    }
    if (check && !ok) {
        std::fprintf(stderr, "check failed: IFT estimate off by more than 3 stderr\n");
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-jump trajectory sampler and hidden-entropy accounting "
                 "for the two-qubit demon model"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "configuration file");
    app.add_option("--seed", opt.seed, "override run.seed");
    app.add_option("--threads", opt.threads, "override run.threads (0 = auto)");
    app.add_option("--out", opt.out_dir, "override run.output_dir");
    app.add_flag("--all-visible", opt.all_visible, "mark every jump channel visible");
    app.add_flag("--check", opt.check, "exit 3 when a statistical acceptance check fails");

    auto* steady = app.add_subcommand("steady", "steady-state populations and uniqueness gap");
    auto* sample = app.add_subcommand("sample", "trajectory ensemble with entropy ledger");
    auto* sweep = app.add_subcommand("sweep", "ensembles over a (gamma_x, gamma_y) grid");
    auto* observe = app.add_subcommand("observe", "conditioned demon state along a record");
    auto* ift = app.add_subcommand("ift", "integral fluctuation theorem estimate");

    std::string trajectory_spec;
    bool svg = false;
    observe->add_option("--trajectory", trajectory_spec,
                        "visible record, e.g. 'g0; 4@0.9; 1@1.5; 4@2.4; e1; T=3'")
        ->required();
    observe->add_flag("--svg", svg, "also render a minimal SVG plot");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(opt);
        if (steady->parsed()) return cmd_steady(cfg);
        if (sample->parsed()) return cmd_sample(cfg, opt.check);
        if (sweep->parsed()) return cmd_sweep(cfg, opt.check);
        if (observe->parsed()) return cmd_observe(cfg, trajectory_spec, svg);
        if (ift->parsed()) return cmd_ift(cfg, opt.check);
    } catch (const qjump::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const qjump::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
