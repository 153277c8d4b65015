#include "qjump/unravel.hpp"

#include <algorithm>
#include <cmath>

#include "qjump/linops.hpp"
#include "qjump/rng.hpp"

namespace qjump {

SteadyState steady_state(const LindbladModel& m) {
    const auto gen = liouville_generators(m);
    const auto null = null_vector(gen.g_full, 1e-9);
    if (null.gap <= 1e6)
        throw NumericalError("steady_state: degenerate steady state (gap " +
                             std::to_string(null.gap) + ")");

    Matrix rho = unvec(null.vector, m.dim, m.dim);
    rho = 0.5 * (rho + rho.adjoint().eval());
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw NumericalError("steady_state: traceless null vector");
    rho /= tr;

    SteadyState ss;
    ss.rho = rho;
    ss.gap = null.gap;
    ss.max_offdiag = 0;
    for (Index i = 0; i < m.dim; ++i)
        for (Index j = 0; j < m.dim; ++j)
            if (i != j) ss.max_offdiag = std::max(ss.max_offdiag, std::abs(rho(i, j)));

    RealVector p = rho.diagonal().real();
    if (p.minCoeff() < -1e-9)
        throw NumericalError("steady_state: negative population " + std::to_string(p.minCoeff()));
    p = p.cwiseMax(0.0);
    p /= p.sum();
    ss.probabilities = p;
    return ss;
}

VisibleTrajectory visible_filter(const LindbladModel& m, const Trajectory& t) {
    VisibleTrajectory v;
    v.initial_state = t.initial_state;
    v.final_state = t.final_state;
    v.horizon = t.horizon;
    for (const auto& ev : t.events)
        if (m.jump(ev.jump_id).visible) v.events.push_back(ev);
    return v;
}

double hidden_env_entropy(const LindbladModel& m, const Trajectory& t) {
    double sum = 0;
    for (const auto& ev : t.events)
        if (!m.jump(ev.jump_id).visible) sum += m.jump(ev.jump_id).delta_s;
    return sum;
}

namespace {

Matrix effective_hamiltonian_generator(const LindbladModel& m) {
    Matrix h_eff = m.hamiltonian;
    Matrix damp = Matrix::Zero(m.dim, m.dim);
    for (const auto& j : m.jumps) damp += j.matrix.adjoint() * j.matrix;
    h_eff -= Complex(0, 0.5) * damp;
    return Complex(0, -1) * h_eff;  // generator of U_eff(t)
}

int draw_index(const RealVector& cdf, double u) {
    for (Index i = 0; i < cdf.size(); ++i)
        if (u < cdf(i)) return static_cast<int>(i);
    return static_cast<int>(cdf.size() - 1);
}

} // namespace

TrajectorySampler::TrajectorySampler(const LindbladModel& model, const SteadyState& steady)
    : u_eff_(effective_hamiltonian_generator(model)), dim_(model.dim) {
    for (const auto& j : model.jumps) channels_.push_back({j.id, j.matrix});
    initial_cdf_ = steady.probabilities;
    for (Index i = 1; i < initial_cdf_.size(); ++i) initial_cdf_(i) += initial_cdf_(i - 1);
}

Trajectory TrajectorySampler::sample(std::uint64_t seed, double horizon) const {
    if (!(horizon > 0))
        throw Error("sample: horizon must be > 0");
    Rng rng(seed);

    Trajectory traj;
    traj.horizon = horizon;
    traj.initial_state = draw_index(initial_cdf_, rng.uniform());

    Vector psi = Vector::Zero(dim_);
    psi(traj.initial_state) = 1;

    double t = 0;
    const double time_tol = 1e-10 * horizon;
    auto survival = [&](const Vector& from, double dt) { return u_eff_.apply(dt, from).squaredNorm(); };

    while (true) {
        const double remaining = horizon - t;
        const double r = rng.uniform();
        if (survival(psi, remaining) >= r) {
            psi = u_eff_.apply(remaining, psi);
            break;
        }
        // Bracketed bisection for ||U_eff(dt) psi||^2 = r on [0, remaining].
        double lo = 0, hi = remaining;
        while (hi - lo > time_tol) {
            const double mid = 0.5 * (lo + hi);
            (survival(psi, mid) >= r ? lo : hi) = mid;
        }
        const double dt = 0.5 * (lo + hi);
        psi = u_eff_.apply(dt, psi);
        t += dt;

        double total = 0;
        std::vector<double> weight(channels_.size());
        for (size_t k = 0; k < channels_.size(); ++k) {
            weight[k] = (channels_[k].matrix * psi).squaredNorm();
            total += weight[k];
        }
        if (!(total > 0) || !std::isfinite(total))
            throw NumericalError("sample: vanishing jump weights at the jump time");

        double u = rng.uniform() * total;
        size_t chosen = channels_.size() - 1;
        for (size_t k = 0; k < channels_.size(); ++k) {
            if (u < weight[k]) {
                chosen = k;
                break;
            }
            u -= weight[k];
        }
        psi = channels_[chosen].matrix * psi;
        const double nrm = psi.norm();
        if (!(nrm > 0) || !std::isfinite(nrm))
            throw NumericalError("sample: non-finite state after jump");
        psi /= nrm;
        traj.events.push_back({channels_[chosen].id, t});
    }

    const double nrm = psi.norm();
    if (!(nrm > 0) || !std::isfinite(nrm))
        throw NumericalError("sample: non-finite state at the horizon");
    psi /= nrm;
    RealVector born = psi.cwiseAbs2();
    RealVector cdf = born;
    for (Index i = 1; i < cdf.size(); ++i) cdf(i) += cdf(i - 1);
    cdf /= cdf(cdf.size() - 1);
    traj.final_state = draw_index(cdf, rng.uniform());
    return traj;
}

std::vector<ConditionedPoint> conditioned_state_series(const LindbladModel& m,
                                                       const VisibleTrajectory& v,
                                                       double grid_dt) {
    if (!(grid_dt > 0))
        throw Error("conditioned_state_series: grid_dt must be > 0");
    for (size_t i = 0; i < v.events.size(); ++i) {
        const auto& ev = v.events[i];
        if (!(ev.time > 0) || !(ev.time < v.horizon))
            throw Error("conditioned_state_series: event time outside (0, T)");
        if (i > 0 && !(ev.time > v.events[i - 1].time))
            throw Error("conditioned_state_series: event times must be increasing");
        if (!m.jump(ev.jump_id).visible)
            throw Error("conditioned_state_series: hidden jump id in visible record");
    }

    const auto gen = liouville_generators(m);
    Propagator prop(gen.g);

    Matrix rho0 = Matrix::Zero(m.dim, m.dim);
    rho0(v.initial_state, v.initial_state) = 1;
    Vector state = vec(rho0);
    double lognorm = 0;
    double t = 0;

    std::vector<ConditionedPoint> series;
    auto emit = [&](double at) {
        Matrix rho = unvec(state, m.dim, m.dim);
        Matrix rho_y = partial_trace_x(rho, 2, 2);
        ConditionedPoint pt;
        pt.t = at;
        pt.p00 = rho(0, 0).real();
        pt.p01 = rho(1, 1).real();
        pt.p10 = rho(2, 2).real();
        pt.p11 = rho(3, 3).real();
        pt.py0 = rho_y(0, 0).real();
        pt.py1 = rho_y(1, 1).real();
        pt.rho_y_01 = rho_y(0, 1);
        pt.lognorm = lognorm;
        series.push_back(pt);
    };
    auto renormalize = [&](const char* what) {
        const double tr = unvec(state, m.dim, m.dim).trace().real();
        if (!(tr > 0) || !std::isfinite(tr))
            throw NumericalError(std::string("conditioned_state_series: trace vanished ") + what);
        state /= tr;
        lognorm += std::log(tr);
    };
    auto advance = [&](double to) {
        if (to > t) {
            state = prop.apply(to - t, state);
            renormalize("during no-visible-jump evolution");
            t = to;
        }
    };

    emit(0.0);
    size_t next_event = 0;
    long grid_index = 1;
    while (true) {
        const double grid_t = grid_index * grid_dt;
        const bool event_first = next_event < v.events.size() &&
                                 v.events[next_event].time <= std::min(grid_t, v.horizon);
        if (event_first) {
            const auto& ev = v.events[next_event++];
            advance(ev.time);
            state = jump_superoperator(m, ev.jump_id) * state;
            renormalize(("at jump " + std::to_string(ev.jump_id)).c_str());
            emit(t);
        } else if (grid_t < v.horizon) {
            advance(grid_t);
            emit(t);
            ++grid_index;
        } else {
            advance(v.horizon);
            emit(v.horizon);
            break;
        }
    }
    return series;
}

} // namespace qjump
