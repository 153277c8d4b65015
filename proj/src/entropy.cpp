#include "qjump/entropy.hpp"

#include <cmath>

#include "qjump/linops.hpp"

namespace qjump {

KernelEvaluator::KernelEvaluator(const LindbladModel& m)
    : KernelEvaluator(m, liouville_generators(m)) {}

KernelEvaluator::KernelEvaluator(const LindbladModel& m, const LiouvilleGenerators& gen)
    : forward_(gen.g), backward_(gen.g_bar_dag), dim_(m.dim) {
    int max_id = 0;
    for (const auto& j : m.jumps) max_id = std::max(max_id, j.id);
    jump_super_.resize(max_id + 1);
    visible_.resize(max_id + 1, false);
    for (const auto& j : m.jumps) {
        jump_super_[j.id] = kron(j.matrix.conjugate(), j.matrix);
        visible_[j.id] = j.visible;
    }
}

double KernelEvaluator::log_kernel(const VisibleTrajectory& v, const Propagator& prop) const {
    for (size_t i = 0; i < v.events.size(); ++i) {
        const auto& ev = v.events[i];
        if (ev.jump_id <= 0 || ev.jump_id >= static_cast<int>(visible_.size()) ||
            !visible_[ev.jump_id])
            throw Error("kernel: event " + std::to_string(i) + " is not a visible channel");
        const double prev = i == 0 ? 0.0 : v.events[i - 1].time;
        if (!(ev.time > prev) || !(ev.time < v.horizon))
            throw Error("kernel: event times must be increasing inside (0, T)");
    }

    Vector state = Vector::Zero(dim_ * dim_);
    state(v.initial_state * dim_ + v.initial_state) = 1;
    double logn = 0;
    double t_prev = 0;
    for (const auto& ev : v.events) {
        state = prop.apply(ev.time - t_prev, state);
        state = jump_super_[ev.jump_id] * state;
        const double nrm = state.norm();
        if (!(nrm > 0) || !std::isfinite(nrm))
            throw NumericalError("kernel: impossible trajectory (vanishing record weight)");
        state /= nrm;
        logn += std::log(nrm);
        t_prev = ev.time;
    }
    state = prop.apply(v.horizon - t_prev, state);
    const Complex value = state(v.final_state * dim_ + v.final_state);
    if (std::abs(value.imag()) > 1e-10)
        throw NumericalError("kernel: imaginary residue " + std::to_string(value.imag()));
    if (!(value.real() > 0))
        throw NumericalError("kernel: non-positive kernel (impossible trajectory)");
    return std::log(value.real()) + logn;
}

double KernelEvaluator::forward_log_kernel(const VisibleTrajectory& v) const {
    return log_kernel(v, forward_);
}

double KernelEvaluator::backward_log_kernel(const VisibleTrajectory& v) const {
    return log_kernel(v, backward_);
}

double KernelEvaluator::hidden_entropy(const VisibleTrajectory& v) const {
    return forward_log_kernel(v) - backward_log_kernel(v);
}

double forward_kernel(const LindbladModel& m, const VisibleTrajectory& v) {
    return KernelEvaluator(m).forward_log_kernel(v);
}

double backward_kernel(const LindbladModel& m, const VisibleTrajectory& v) {
    return KernelEvaluator(m).backward_log_kernel(v);
}

double hidden_entropy(const LindbladModel& m, const VisibleTrajectory& v) {
    return KernelEvaluator(m).hidden_entropy(v);
}

namespace {

// Unique (pre, post) basis states of a jump operator with a single nonzero
// entry; throws if the operator links multiple state pairs.
struct StatePair {
    int pre = -1, post = -1;
};

StatePair unique_states(const Matrix& op, int id) {
    StatePair sp;
    for (Index r = 0; r < op.rows(); ++r)
        for (Index c = 0; c < op.cols(); ++c)
            if (std::abs(op(r, c)) > 1e-14) {
                if (sp.pre >= 0)
                    throw NumericalError("visible jump " + std::to_string(id) +
                                         " does not connect a unique state pair "
                                         "(requires gamma_x = 0)");
                sp.pre = static_cast<int>(c);
                sp.post = static_cast<int>(r);
            }
    if (sp.pre < 0)
        throw NumericalError("visible jump " + std::to_string(id) + " is identically zero");
    return sp;
}

// Interval endpoints (chi_from, chi_to) for interval j of a visible record.
StatePair interval_states(const LindbladModel& m, const VisibleTrajectory& v, int interval) {
    const int n_intervals = static_cast<int>(v.events.size()) + 1;
    if (interval < 0 || interval >= n_intervals)
        throw Error("interval index out of range");
    StatePair out;
    out.pre = interval == 0
                  ? v.initial_state
                  : unique_states(m.jump(v.events[interval - 1].jump_id).matrix,
                                  v.events[interval - 1].jump_id)
                        .post;
    out.post = interval == n_intervals - 1
                   ? v.final_state
                   : unique_states(m.jump(v.events[interval].jump_id).matrix,
                                   v.events[interval].jump_id)
                         .pre;
    return out;
}

} // namespace

double hidden_transition_probability(const LindbladModel& m, const VisibleTrajectory& v,
                                     int interval, int k) {
    if (m.jump(k).visible)
        throw Error("hidden_transition_probability: channel " + std::to_string(k) +
                    " is visible");
    const StatePair states = interval_states(m, v, interval);
    if (states.pre == states.post) return 0.0;

    double numer = 0, denom = 0;
    for (const auto& j : m.jumps) {
        if (j.visible) continue;
        const double amp = std::norm(j.matrix(states.post, states.pre));
        denom += amp;
        if (j.id == k) numer = amp;
    }
    if (!(denom > 0))
        throw NumericalError("hidden_transition_probability: interval " +
                             std::to_string(interval) +
                             " connects states unreachable by hidden transitions");
    return numer / denom;
}

double hidden_entropy_reconstructed(const LindbladModel& m, const VisibleTrajectory& v) {
    const int n_intervals = static_cast<int>(v.events.size()) + 1;
    double total = 0;
    for (int j = 0; j < n_intervals; ++j) {
        const StatePair states = interval_states(m, v, j);
        if (states.pre == states.post) continue;
        double weighted = 0, denom = 0;
        for (const auto& jump : m.jumps) {
            if (jump.visible) continue;
            const double amp = std::norm(jump.matrix(states.post, states.pre));
            denom += amp;
            weighted += amp * std::exp(-jump.delta_s);
        }
        if (!(denom > 0))
            throw NumericalError("hidden_entropy_reconstructed: interval " + std::to_string(j) +
                                 " connects states unreachable by hidden transitions");
        total += -std::log(weighted / denom);
    }
    return total;
}

double system_entropy(const SteadyState& steady, int a, int b) {
    if (a < 0 || b < 0 || a >= steady.probabilities.size() || b >= steady.probabilities.size())
        throw Error("system_entropy: state index out of range");
    const double pa = steady.probabilities(a), pb = steady.probabilities(b);
    if (!(pa > 0) || !(pb > 0))
        throw NumericalError("system_entropy: zero-probability endpoint");
    return std::log(pb) - std::log(pa);
}

EntropyLedger make_ledger(const LindbladModel& m, const KernelEvaluator& kernels,
                          const SteadyState& steady, const Trajectory& t,
                          long index, std::uint64_t seed) {
    EntropyLedger led;
    led.trajectory_index = index;
    led.seed = seed;
    led.a = t.initial_state;
    led.b = t.final_state;

    const VisibleTrajectory v = visible_filter(m, t);
    led.n_visible = static_cast<int>(v.events.size());
    led.n_hidden = static_cast<int>(t.events.size() - v.events.size());
    for (const auto& ev : v.events) led.ds_env_visible += m.jump(ev.jump_id).delta_s;
    led.ds_env_hidden_actual = hidden_env_entropy(m, t);
    led.dsigma_y = kernels.hidden_entropy(v);
    led.ds_sys = system_entropy(steady, t.initial_state, t.final_state);
    led.dsigma = led.ds_env_visible + led.dsigma_y + led.ds_sys;
    return led;
}

MeanStderr mean_stderr(const std::vector<double>& values) {
    MeanStderr out;
    const size_t n = values.size();
    if (n == 0) return out;
    double sum = 0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
    return out;
}

MeanStderr ift_estimate(const std::vector<EntropyLedger>& ledgers, IftQuantity which) {
    if (ledgers.size() < 2)
        throw Error("ift_estimate: need at least 2 trajectories");
    std::vector<double> values;
    values.reserve(ledgers.size());
    for (const auto& l : ledgers) {
        const double x = which == IftQuantity::dsigma
                             ? l.dsigma
                             : l.ds_env_visible + l.ds_env_hidden_actual + l.ds_sys;
        values.push_back(std::exp(-x));
    }
    return mean_stderr(values);
}

SecondLawSummary second_law_check(const std::vector<EntropyLedger>& ledgers) {
    if (ledgers.size() < 2)
        throw Error("second_law_check: need at least 2 trajectories");
    std::vector<double> env, hid, both, tot;
    env.reserve(ledgers.size());
    hid.reserve(ledgers.size());
    both.reserve(ledgers.size());
    tot.reserve(ledgers.size());
    for (const auto& l : ledgers) {
        env.push_back(l.ds_env_visible);
        hid.push_back(l.dsigma_y);
        both.push_back(l.ds_env_visible + l.dsigma_y);
        tot.push_back(l.dsigma);
    }
    SecondLawSummary out;
    out.ds_env = mean_stderr(env);
    out.dsigma_y = mean_stderr(hid);
    out.ds_env_plus_dsigma_y = mean_stderr(both);
    out.dsigma = mean_stderr(tot);
    out.violation = out.ds_env_plus_dsigma_y.mean < -3 * out.ds_env_plus_dsigma_y.se;
    return out;
}

} // namespace qjump
