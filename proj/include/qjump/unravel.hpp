#pragma once

// Full quantum-jump unraveling: steady state, trajectory sampling with exact
// waiting times, visible filtering, and the observer's conditioned state
// along a visible record.

#include <cstdint>
#include <vector>

#include "qjump/model.hpp"
#include "qjump/propagator.hpp"
#include "qjump/types.hpp"

namespace qjump {

struct JumpEvent {
    int jump_id = 0;
    double time = 0;
};

struct Trajectory {
    int initial_state = 0;
    std::vector<JumpEvent> events;
    int final_state = 0;
    double horizon = 0;
};

/// Same shape as Trajectory, events restricted to visible channels.
struct VisibleTrajectory {
    int initial_state = 0;
    std::vector<JumpEvent> events;
    int final_state = 0;
    double horizon = 0;
};

struct SteadyState {
    RealVector probabilities;  // basis-state populations, >= 0, sum 1
    double gap = 0;            // null-space uniqueness gap
    double max_offdiag = 0;    // largest coherence magnitude (expected ~0)
    Matrix rho;                // trace-normalized steady density operator
};

/// Steady state from the null vector of the full Liouvillian. Throws
/// NumericalError on a degenerate null space (gap <= 1e6) or populations
/// below -1e-9.
SteadyState steady_state(const LindbladModel& m);

/// Strip the hidden events of a full trajectory; endpoints and horizon unchanged.
VisibleTrajectory visible_filter(const LindbladModel& m, const Trajectory& t);

/// Sum of per-jump entropies over the hidden events of a full trajectory.
double hidden_env_entropy(const LindbladModel& m, const Trajectory& t);

/// Samples full trajectories: initial state from the steady-state populations,
/// exact waiting times by bracketing + bisection on the no-jump survival
/// probability, channel selection by Born weights, final projective
/// measurement in the fixed joint basis. Const and thread-safe; all
/// randomness comes from the per-call seed.
class TrajectorySampler {
public:
    TrajectorySampler(const LindbladModel& model, const SteadyState& steady);

    Trajectory sample(std::uint64_t seed, double horizon) const;

private:
    struct Channel {
        int id;
        Matrix matrix;
    };
    std::vector<Channel> channels_;
    Propagator u_eff_;  // generator -i H_eff on the Hilbert space
    RealVector initial_cdf_;
    Index dim_;
};

struct ConditionedPoint {
    double t = 0;
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;  // joint populations
    double py0 = 0, py1 = 0;                    // demon populations
    Complex rho_y_01;                           // demon coherence
    double lognorm = 0;                         // accumulated log trace norm
};

/// Observer's conditioned state along a visible record: propagate with
/// e^{G dt}, apply J_k at event times, renormalize by the trace while
/// accumulating its logarithm. Emits a point at every grid time, just after
/// every jump, and at the horizon. The final kernel of the record equals
/// born(b) * exp(final lognorm).
std::vector<ConditionedPoint> conditioned_state_series(const LindbladModel& m,
                                                       const VisibleTrajectory& v,
                                                       double grid_dt);

} // namespace qjump
