#include "qjump/model.hpp"

#include <cmath>

#include "qjump/linops.hpp"

namespace qjump {

const JumpOperator& LindbladModel::jump(int id) const {
    for (const auto& j : jumps)
        if (j.id == id) return j;
    throw Error("unknown jump id " + std::to_string(id));
}

std::vector<int> LindbladModel::visible_ids() const {
    std::vector<int> out;
    for (const auto& j : jumps)
        if (j.visible) out.push_back(j.id);
    return out;
}

std::vector<int> LindbladModel::hidden_ids() const {
    std::vector<int> out;
    for (const auto& j : jumps)
        if (!j.visible) out.push_back(j.id);
    return out;
}

void DemonParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw ConfigError(std::string(name) + " must be > 0");
    };
    positive(omega0, "omega0");
    positive(beta_x_hot, "beta_x_hot");
    positive(beta_x_cold, "beta_x_cold");
    positive(beta_y_hot, "beta_y_hot");
    positive(beta_y_cold, "beta_y_cold");
    if (!(gamma_x >= 0 && gamma_x <= 1))
        throw ConfigError("gamma_x must be in [0,1]");
    if (!(gamma_y >= 0 && gamma_y <= 1))
        throw ConfigError("gamma_y must be in [0,1]");
    if (!std::isfinite(lambda))
        throw ConfigError("lambda must be finite");
    for (double r : bath_rates)
        if (!(r >= 0) || !std::isfinite(r))
            throw ConfigError("bath_rates must be >= 0");
    if (!std::isfinite(drive_strength))
        throw ConfigError("drive_strength must be finite");
}

double mean_occupation(double beta, double omega0) {
    return 1.0 / std::expm1(beta * omega0);
}

LindbladModel build_demon_model(const DemonParams& p) {
    p.validate();

    // Single-qubit blocks in (g,e) and (0,1) ordering.
    Matrix sp = Matrix::Zero(2, 2);  // raising |e><g| resp. |1><0|
    sp(1, 0) = 1;
    Matrix sm = sp.adjoint();
    Matrix p_lo = Matrix::Zero(2, 2), p_hi = Matrix::Zero(2, 2);
    p_lo(0, 0) = 1;  // |g><g| resp. |0><0|
    p_hi(1, 1) = 1;
    Matrix id2 = Matrix::Identity(2, 2);
    Matrix sz = p_hi - p_lo;

    LindbladModel m;
    m.dim = 4;
    m.basis_labels = {"g0", "g1", "e0", "e1"};

    Matrix h = 0.5 * p.omega0 * (kron(sz, id2) + kron(id2, sz));
    if (p.lambda != 0) {
        // lambda (|g,1><e,0| + |e,0><g,1|), indices 1 and 2
        h(1, 2) += p.lambda;
        h(2, 1) += p.lambda;
    }
    if (p.drive)
        h += p.drive_strength * kron(id2, Matrix(sp + sm));
    m.hamiltonian = h;

    const double n_xh = mean_occupation(p.beta_x_hot, p.omega0);
    const double n_xc = mean_occupation(p.beta_x_cold, p.omega0);
    const double n_yh = mean_occupation(p.beta_y_hot, p.omega0);
    const double n_yc = mean_occupation(p.beta_y_cold, p.omega0);
    const double g_xh = p.bath_rates[0], g_xc = p.bath_rates[1];
    const double g_yh = p.bath_rates[2], g_yc = p.bath_rates[3];

    // Channel amplitudes: odd = relaxation sqrt(Gamma(n+1)), even = excitation sqrt(Gamma n).
    std::array<double, 9> rate{};
    rate[1] = std::sqrt(g_xh * (n_xh + 1));
    rate[2] = std::sqrt(g_xh * n_xh);
    rate[3] = std::sqrt(g_xc * (n_xc + 1));
    rate[4] = std::sqrt(g_xc * n_xc);
    rate[5] = std::sqrt(g_yh * (n_yh + 1));
    rate[6] = std::sqrt(g_yh * n_yh);
    rate[7] = std::sqrt(g_yc * (n_yc + 1));
    rate[8] = std::sqrt(g_yc * n_yc);

    std::array<double, 9> ds{};
    ds[1] = p.beta_x_hot * p.omega0;
    ds[2] = -ds[1];
    ds[3] = p.beta_x_cold * p.omega0;
    ds[4] = -ds[3];
    ds[5] = p.beta_y_hot * p.omega0;
    ds[6] = -ds[5];
    ds[7] = p.beta_y_cold * p.omega0;
    ds[8] = -ds[7];

    // Demon-state controlled couplings for the system, system-state controlled
    // couplings for the demon.
    Matrix hot_gate_y = p_hi + p.gamma_x * p_lo;   // |1><1| + gx |0><0|
    Matrix cold_gate_y = p.gamma_x * p_hi + p_lo;
    Matrix hot_gate_x = p_hi + p.gamma_y * p_lo;   // |e><e| + gy |g><g|
    Matrix cold_gate_x = p.gamma_y * p_hi + p_lo;

    std::array<Matrix, 9> op;
    op[1] = rate[1] * kron(sm, hot_gate_y);
    op[2] = rate[2] * kron(sp, hot_gate_y);
    op[3] = rate[3] * kron(sm, cold_gate_y);
    op[4] = rate[4] * kron(sp, cold_gate_y);
    op[5] = rate[5] * kron(hot_gate_x, sm);
    op[6] = rate[6] * kron(hot_gate_x, sp);
    op[7] = rate[7] * kron(cold_gate_x, sm);
    op[8] = rate[8] * kron(cold_gate_x, sp);

    const std::array<int, 9> partner = {0, 2, 1, 4, 3, 6, 5, 8, 7};
    for (int k = 1; k <= 8; ++k)
        m.jumps.push_back({k, op[k], ds[k], partner[k], k <= 4});

    if (p.lambda > 0.2 * p.omega0)
        m.warnings.push_back("lambda = " + std::to_string(p.lambda) +
                             " exceeds 0.2*omega0; the weak-coupling master equation "
                             "is only a rough approximation in this regime");
    return m;
}

DetailedBalanceReport validate_detailed_balance(const LindbladModel& m) {
    DetailedBalanceReport report;
    for (const auto& j : m.jumps) {
        if (j.id > j.partner_id) continue;  // one row per pair
        const auto& jt = m.jump(j.partner_id);
        Matrix res = j.matrix - jt.matrix.adjoint() * std::exp(j.delta_s / 2);
        double r = max_abs(res);
        report.pairs.push_back({j.id, jt.id, r});
        report.max_residual = std::max(report.max_residual, r);
    }
    return report;
}

LiouvilleGenerators liouville_generators(const LindbladModel& m) {
    const Index n = m.dim;
    const Matrix id = Matrix::Identity(n, n);
    const Complex i_unit(0, 1);

    LiouvilleGenerators gen;
    gen.h_cal = -i_unit * (kron(id, m.hamiltonian) - kron(m.hamiltonian.transpose(), id));
    gen.l_nj = Matrix::Zero(n * n, n * n);
    gen.l_y = Matrix::Zero(n * n, n * n);
    gen.l_x = Matrix::Zero(n * n, n * n);
    for (const auto& j : m.jumps) {
        Matrix ldl = j.matrix.adjoint() * j.matrix;
        gen.l_nj -= 0.5 * (kron(id, ldl) + kron(Matrix(j.matrix.transpose() * j.matrix.conjugate()), id));
        Matrix jsuper = kron(j.matrix.conjugate(), j.matrix);
        (j.visible ? gen.l_x : gen.l_y) += jsuper;
    }
    gen.g = gen.h_cal + gen.l_nj + gen.l_y;
    gen.g_bar_dag = gen.h_cal + gen.l_nj + gen.l_y.adjoint();
    gen.g_full = gen.g + gen.l_x;
    return gen;
}

Matrix jump_superoperator(const LindbladModel& m, int id) {
    const auto& j = m.jump(id);
    return kron(j.matrix.conjugate(), j.matrix);
}

} // namespace qjump
