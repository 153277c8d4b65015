#pragma once

// Forward/backward visible-record kernels, the coarse-grained hidden entropy
// (general log-ratio form and the gamma_x = 0 reconstruction), per-trajectory
// entropy ledgers and fluctuation-theorem estimators.

#include <cstdint>
#include <vector>

#include "qjump/model.hpp"
#include "qjump/propagator.hpp"
#include "qjump/unravel.hpp"

namespace qjump {

struct EntropyLedger {
    long trajectory_index = 0;
    std::uint64_t seed = 0;
    int a = 0, b = 0;
    int n_visible = 0, n_hidden = 0;
    double ds_env_visible = 0;        // sum of ds over visible events
    double ds_env_hidden_actual = 0;  // ground truth from the full unraveling
    double dsigma_y = 0;              // coarse-grained hidden entropy
    double ds_sys = 0;                // log P(b) - log P(a)
    double dsigma = 0;                // ds_env_visible + dsigma_y + ds_sys
};

/// Evaluates the visible-record kernels
///   <<b| e^{G dt_M} J_kM ... J_k1 e^{G dt_0} |a>>
/// (and the e^{Gbar^dag .} analogue) in log space with per-segment
/// renormalization. Construction precomputes the propagators; evaluation is
/// const and thread-safe.
class KernelEvaluator {
public:
    explicit KernelEvaluator(const LindbladModel& m);

    /// log of the forward kernel (the dt^M factor is excluded throughout).
    double forward_log_kernel(const VisibleTrajectory& v) const;
    /// log of the backward kernel, without the e^{-ds_env} entropy factor.
    double backward_log_kernel(const VisibleTrajectory& v) const;
    /// forward_log_kernel - backward_log_kernel
    double hidden_entropy(const VisibleTrajectory& v) const;

private:
    KernelEvaluator(const LindbladModel& m, const LiouvilleGenerators& gen);
    double log_kernel(const VisibleTrajectory& v, const Propagator& prop) const;

    Propagator forward_, backward_;
    std::vector<Matrix> jump_super_;  // by channel id
    std::vector<bool> visible_;
    Index dim_;
};

double forward_kernel(const LindbladModel& m, const VisibleTrajectory& v);
double backward_kernel(const LindbladModel& m, const VisibleTrajectory& v);
double hidden_entropy(const LindbladModel& m, const VisibleTrajectory& v);

/// Probability that hidden transition k caused the state change of interval j
/// (j in [0, M], between the post state of the j-th visible jump and the pre
/// state of the (j+1)-th; endpoints use |a> and |b>). Requires every visible
/// jump operator to connect a unique state pair (gamma_x = 0 in the demon
/// model). Same-state intervals return 0 for every k by convention.
double hidden_transition_probability(const LindbladModel& m, const VisibleTrajectory& v,
                                     int interval, int k);

/// Interval-product reconstruction of the hidden entropy,
///   -sum_j ln sum_k p_k^j e^{-ds_k},
/// valid when visible jumps connect unique state pairs (gamma_x = 0).
double hidden_entropy_reconstructed(const LindbladModel& m, const VisibleTrajectory& v);

/// log P(b) - log P(a) under the steady-state populations.
double system_entropy(const SteadyState& steady, int a, int b);

/// Per-trajectory ledger: visible entropy, kernel-ratio hidden entropy,
/// stochastic system entropy, and the actual hidden environmental entropy of
/// the underlying full trajectory.
EntropyLedger make_ledger(const LindbladModel& m, const KernelEvaluator& kernels,
                          const SteadyState& steady, const Trajectory& t,
                          long index, std::uint64_t seed);

struct MeanStderr {
    double mean = 0;
    double se = 0;
};

MeanStderr mean_stderr(const std::vector<double>& values);

enum class IftQuantity { dsigma, ds_tot };

/// Sample mean and standard error of e^{-x} with x = dsigma or
/// x = ds_env_visible + ds_env_hidden_actual + ds_sys (the full-trajectory
/// total entropy).
MeanStderr ift_estimate(const std::vector<EntropyLedger>& ledgers, IftQuantity which);

struct SecondLawSummary {
    MeanStderr ds_env;
    MeanStderr dsigma_y;
    MeanStderr ds_env_plus_dsigma_y;  // the modified second-law combination
    MeanStderr dsigma;
    bool violation = false;  // mean of the combination below -3 standard errors
};

SecondLawSummary second_law_check(const std::vector<EntropyLedger>& ledgers);

} // namespace qjump
