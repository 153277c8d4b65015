#pragma once

// Shared test utilities: seeded random matrices and the independent oracles
// used to pin expected values (Hilbert-space products, rate-equation steady
// states, classical population-block exponentials).

#include <cmath>
#include <random>

#include "qjump/linops.hpp"
#include "qjump/model.hpp"

namespace qtest {

using qjump::Complex;
using qjump::Index;
using qjump::Matrix;
using qjump::Vector;

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = scale * Complex(dist(rng), dist(rng));
    return m;
}

inline Matrix random_hermitian(Index n, std::uint64_t seed) {
    Matrix m = random_matrix(n, n, seed);
    return 0.5 * (m + m.adjoint().eval());
}

inline Matrix random_density(Index n, std::uint64_t seed) {
    Matrix m = random_matrix(n, n, seed);
    Matrix rho = m * m.adjoint();
    return rho / rho.trace();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Right side of the Lindblad master equation evaluated directly in Hilbert
// space: -i[H, rho] - 1/2 sum_k (Lk^dag Lk rho + rho Lk^dag Lk - 2 Lk rho Lk^dag).
inline Matrix lindblad_rhs(const qjump::LindbladModel& m, const Matrix& rho) {
    const Complex i_unit(0, 1);
    Matrix out = -i_unit * (m.hamiltonian * rho - rho * m.hamiltonian);
    for (const auto& j : m.jumps) {
        const Matrix ldl = j.matrix.adjoint() * j.matrix;
        out -= 0.5 * (ldl * rho + rho * ldl - 2.0 * j.matrix * rho * j.matrix.adjoint());
    }
    return out;
}

// Effective Hamiltonian H - (i/2) sum Lk^dag Lk.
inline Matrix effective_hamiltonian(const qjump::LindbladModel& m) {
    Matrix damp = Matrix::Zero(m.dim, m.dim);
    for (const auto& j : m.jumps) damp += j.matrix.adjoint() * j.matrix;
    return m.hamiltonian - Complex(0, 0.5) * damp;
}

// Trajectory probability by the Hilbert-space product: |<b| U_eff(dt_N) L_kN
// ... L_k1 U_eff(dt_0) |a>|^2 (valid when every channel is monitored).
inline double hilbert_product_probability(const qjump::LindbladModel& m, int a, int b,
                                          const std::vector<std::pair<int, double>>& events,
                                          double horizon) {
    const Matrix h_eff = effective_hamiltonian(m);
    Vector psi = Vector::Zero(m.dim);
    psi(a) = 1;
    double t_prev = 0;
    for (const auto& [k, t] : events) {
        psi = qjump::expm(Matrix(Complex(0, -1) * h_eff), t - t_prev) * psi;
        psi = m.jump(k).matrix * psi;
        t_prev = t;
    }
    psi = qjump::expm(Matrix(Complex(0, -1) * h_eff), horizon - t_prev) * psi;
    return std::norm(psi(b));
}

// Steady state of a single driven qubit coupled to two baths, by the 2-level
// rate equation: P(excited) = up / (up + down).
inline double two_level_excited_population(double up_rate, double down_rate) {
    return up_rate / (up_rate + down_rate);
}

// Exact demon-flip block of e^{G t} for lambda = 0: the populations at fixed
// system state evolve under a classical 2x2 matrix [[-S0, dn], [up, -S1]]
// whose exponential is known in closed form. Returns the four entries
// (00, 0->1, 1->0, 11) for the system state block starting at basis index c0.
struct PopulationBlock {
    double e00, e01, e10, e11;  // e01 = entry (to=1, from=0)
};

inline PopulationBlock exact_population_block(const qjump::LindbladModel& m, int c0, double t) {
    const int c1 = c0 + 1;
    double up = 0, dn = 0;
    for (const auto& j : m.jumps)
        if (!j.visible) {
            up += std::norm(j.matrix(c1, c0));
            dn += std::norm(j.matrix(c0, c1));
        }
    Matrix damp = Matrix::Zero(m.dim, m.dim);
    for (const auto& j : m.jumps) damp += j.matrix.adjoint() * j.matrix;
    const double s0 = damp(c0, c0).real(), s1 = damp(c1, c1).real();
    const double avg = -(s0 + s1) / 2, half_delta = (s1 - s0) / 2;
    const double omega = std::sqrt(half_delta * half_delta + up * dn);
    const double f = omega > 0 ? std::sinh(omega * t) / omega : t;
    const double pref = std::exp(avg * t), ch = std::cosh(omega * t);
    PopulationBlock blk;
    blk.e00 = pref * (ch + half_delta * f);
    blk.e11 = pref * (ch - half_delta * f);
    blk.e01 = pref * f * up;
    blk.e10 = pref * f * dn;
    return blk;
}

} // namespace qtest
