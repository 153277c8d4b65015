#include "qjump/oracle.hpp"

#include <cmath>

namespace qjump {

namespace {

struct ChannelRates {
    std::array<double, 9> gamma2{};  // squared channel amplitudes, index 1..8
    std::array<double, 9> ds{};      // per-jump entropies
};

ChannelRates channel_rates(const DemonParams& p) {
    ChannelRates r;
    const double n_xh = mean_occupation(p.beta_x_hot, p.omega0);
    const double n_xc = mean_occupation(p.beta_x_cold, p.omega0);
    const double n_yh = mean_occupation(p.beta_y_hot, p.omega0);
    const double n_yc = mean_occupation(p.beta_y_cold, p.omega0);
    r.gamma2[1] = p.bath_rates[0] * (n_xh + 1);
    r.gamma2[2] = p.bath_rates[0] * n_xh;
    r.gamma2[3] = p.bath_rates[1] * (n_xc + 1);
    r.gamma2[4] = p.bath_rates[1] * n_xc;
    r.gamma2[5] = p.bath_rates[2] * (n_yh + 1);
    r.gamma2[6] = p.bath_rates[2] * n_yh;
    r.gamma2[7] = p.bath_rates[3] * (n_yc + 1);
    r.gamma2[8] = p.bath_rates[3] * n_yc;
    r.ds[1] = p.beta_x_hot * p.omega0;
    r.ds[2] = -r.ds[1];
    r.ds[3] = p.beta_x_cold * p.omega0;
    r.ds[4] = -r.ds[3];
    r.ds[5] = p.beta_y_hot * p.omega0;
    r.ds[6] = -r.ds[5];
    r.ds[7] = p.beta_y_cold * p.omega0;
    r.ds[8] = -r.ds[7];
    return r;
}

// Amplitude of the system-state-x part of hidden channel k: the demon's
// hot-bath channels (5,6) carry the gamma_Y suppression on |g>, the
// cold-bath channels (7,8) on |e>.
double split_amplitude(const DemonParams& p, const ChannelRates& r, int k, SystemState x) {
    const double g = std::sqrt(r.gamma2[k]);
    const bool hot = k == 5 || k == 6;
    const bool suppressed = (hot && x == SystemState::g) || (!hot && x == SystemState::e);
    return suppressed ? g * p.gamma_y : g;
}

void require_lambda_zero(const DemonParams& p, const char* where) {
    if (p.lambda != 0)
        throw NumericalError(std::string(where) + ": closed forms require lambda = 0");
}

} // namespace

AlphaTable alpha_table(const DemonParams& p) {
    require_lambda_zero(p, "alpha_table");
    const ChannelRates r = channel_rates(p);
    const double gx2 = p.gamma_x * p.gamma_x;
    const double gy2 = p.gamma_y * p.gamma_y;
    const double a5e = (1 - gx2) * (r.gamma2[3] - r.gamma2[1]) +
                       (r.gamma2[6] - r.gamma2[5]) + gy2 * (r.gamma2[8] - r.gamma2[7]);
    const double a5g = (1 - gx2) * (r.gamma2[4] - r.gamma2[2]) +
                       (r.gamma2[8] - r.gamma2[7]) + gy2 * (r.gamma2[6] - r.gamma2[5]);
    AlphaTable t;
    t.alpha[0] = {a5e, a5g};    // k = 5
    t.alpha[1] = {-a5e, -a5g};  // k = 6
    t.alpha[2] = {a5e, a5g};    // k = 7
    t.alpha[3] = {-a5e, -a5g};  // k = 8
    return t;
}

double a_coefficient(int k, SystemState x, SystemState x2, double t, const AlphaTable& table) {
    const double s = table(k, x) + table(k, x2);
    if (std::abs(s) < 1e-8) {
        const double u = s * t / 2;
        return t * (1.0 + u / 2 + u * u / 6);
    }
    return 2 * std::expm1(s * t / 2) / s;
}

Matrix closed_form_hidden_block(const DemonParams& p, double t, bool backward) {
    require_lambda_zero(p, "closed_form_hidden_block");
    if (p.drive)
        throw NumericalError("closed_form_hidden_block: requires no drive");

    const ChannelRates r = channel_rates(p);
    const AlphaTable table = alpha_table(p);
    const std::array<SystemState, 2> states = {SystemState::e, SystemState::g};

    Matrix block = Matrix::Zero(16, 16);
    for (SystemState x : states) {
        for (SystemState x2 : states) {
            // Aggregate weights of demon-lowering (5,7) and demon-raising (6,8)
            // channels; their product is the script-A combination of the paper.
            double down = 0, up = 0;
            std::array<double, 9> w{};
            for (int k = 5; k <= 8; ++k) {
                w[k] = a_coefficient(k, x, x2, t, table) *
                       split_amplitude(p, r, k, x) * split_amplitude(p, r, k, x2);
                if (backward) w[k] *= std::exp(-r.ds[k]);
                (k % 2 == 1 ? down : up) += w[k];
            }
            const double script_a = down * up;
            const double sq = std::sqrt(script_a);
            const double sinh_fac = sq < 1e-8 ? 1.0 + script_a / 6 : std::sinh(sq) / sq;

            // L_k^x (x) L_k^x2 has a single nonzero entry per factor: a demon
            // flip at fixed system state. Column side carries x, row side x2.
            const int xc = x == SystemState::g ? 0 : 1;
            const int xr = x2 == SystemState::g ? 0 : 1;
            for (int k = 5; k <= 8; ++k) {
                const bool raising = k % 2 == 0;
                const int col_from = 2 * xc + (raising ? 0 : 1);
                const int col_to = 2 * xc + (raising ? 1 : 0);
                const int row_from = 2 * xr + (raising ? 0 : 1);
                const int row_to = 2 * xr + (raising ? 1 : 0);
                block(col_to * 4 + row_to, col_from * 4 + row_from) += sinh_fac * w[k];
            }
        }
    }
    return block;
}

double interval_hidden_entropy(const DemonParams& p, int chi_from, int chi_to, double t) {
    if (p.gamma_x != 0)
        throw NumericalError("interval_hidden_entropy: requires gamma_x = 0");
    if (chi_from < 0 || chi_from > 3 || chi_to < 0 || chi_to > 3)
        throw DimensionError("interval_hidden_entropy: basis index out of range");
    if (chi_from == chi_to)
        return 0.0;
    if (chi_from / 2 != chi_to / 2)
        throw NumericalError("interval_hidden_entropy: states differ in the system qubit; "
                             "not reachable by hidden transitions");

    const Matrix fwd = closed_form_hidden_block(p, t, false);
    const Matrix bwd = closed_form_hidden_block(p, t, true);
    const double f = fwd(5 * chi_to, 5 * chi_from).real();
    const double b = bwd(5 * chi_to, 5 * chi_from).real();
    if (!(f > 0) || !(b > 0))
        throw NumericalError("interval_hidden_entropy: interval not reachable at these parameters");
    return std::log(f / b);
}

} // namespace qjump
